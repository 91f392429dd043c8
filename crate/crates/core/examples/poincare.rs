//! Homology of the linearized De Rham levels, over Q and over F_p, with
//! and without divided powers.

use jetcrys::derham::complexes::linearized_derham_level;
use jetcrys::exact::field::Field;
use jetcrys::jet::JetMode;

fn main() -> jetcrys::Result<()> {
    for (field, mode) in [
        (Field::Rational, JetMode::Plain),
        (Field::Prime(2), JetMode::Plain),
        (Field::Prime(2), JetMode::Divided),
        (Field::Prime(3), JetMode::Plain),
    ] {
        println!("char {} ({mode})", field.characteristic());
        for d in 1..=2 {
            for n in 0..=4 {
                let c = linearized_derham_level(n, d, field, mode)?;
                println!("  d={d} n={n} ranks {:?} homology {:?}", c.ranks(), c.homology_ranks()?);
            }
        }
    }
    Ok(())
}
