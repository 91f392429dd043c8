//! Taylor expansion, multiplication and comultiplication in `P^m`.

use jetcrys::exact::field::Field;
use jetcrys::exact::parse::parse_poly;
use jetcrys::jet::{JetAlgebra, JetMode};

fn main() -> jetcrys::Result<()> {
    let q = Field::Rational;
    let f = parse_poly("x1^2*x2 + 3*x2", q, 2)?;
    for mode in [JetMode::Plain, JetMode::Divided] {
        let alg = JetAlgebra::new(2, 3, q, mode);
        let t = alg.taylor(&f);
        println!("{mode}: taylor(f) = {t}");
        println!("  counit = {}", t.counit());
        println!("  comult at (2, 1) = {}", t.comult(1)?);
    }

    // x^2 in characteristic 2: the derivative vanishes, the Hasse one does not
    let f2 = Field::Prime(2);
    let alg = JetAlgebra::new(1, 2, f2, JetMode::Plain);
    println!("char 2: taylor(x^2) = {}", alg.taylor(&parse_poly("x1^2", f2, 1)?));

    let xi = JetAlgebra::new(1, 4, q, JetMode::Divided).xi(0);
    println!("divided: xi * xi = {}", xi.mul(&xi)?);
    Ok(())
}
