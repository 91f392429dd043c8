//! Exactness of `M (x) DR(P)` at finite levels for stratified modules.

use jetcrys::derham::psi::verify_psi_exactness;
use jetcrys::exact::field::Field;
use jetcrys::fixtures;
use jetcrys::jet::JetMode;

fn main() -> jetcrys::Result<()> {
    for (field, mode) in [(Field::Rational, JetMode::Plain), (Field::Prime(2), JetMode::Divided)] {
        println!("char {} ({mode})", field.characteristic());
        for (name, m) in fixtures::stratified(field, mode, 3)? {
            let r = verify_psi_exactness(&m, 3, 1)?;
            let certs: Vec<String> = r.levels.iter().map(|l| format!("{:?}", l.certificate)).collect();
            println!("  {name:16} exact {} [{}]", r.pass, certs.join(", "));
        }
    }
    Ok(())
}
