//! Evaluating a stratified module on a thickening `k[t]/(t^3)`: comparison
//! maps between two sections and the cocycle identity.

use jetcrys::crystal::{comparison_iso, verify_cocycle, Section, Thickening};
use jetcrys::exact::field::Field;
use jetcrys::exact::parse::parse_poly_in;
use jetcrys::fixtures;
use jetcrys::jet::JetMode;
use jetcrys::strat::taylor_stratification;

fn main() -> jetcrys::Result<()> {
    let q = Field::Rational;
    let t = Thickening::new(q, 1, 2);
    let sec = |s: &str| Section::new(&t, &[parse_poly_in(s, q, 1, "t")?]);
    let (h0, h1, h2) = (sec("1")?, sec("1 + t1")?, sec("1 - t1^2")?);

    let m = taylor_stratification(&fixtures::skew(q), 2, JetMode::Plain)?;
    let chi = comparison_iso(&m, &t, &h0, &h1)?;
    println!("chi(h0, h1) =\n{}", chi.display(&t));
    let r = verify_cocycle(&m, &t, &h0, &h1, &h2)?;
    println!("cocycle {} inverse {} identity {}", r.cocycle, r.inverse, r.identity);

    // divided powers: in characteristic 2, (t^[2])^[2] = 3 t^[4] = t^[4]
    let f2 = Field::Prime(2);
    let pd = Thickening::divided(f2, 1, 4);
    let t2 = pd.monomial(&jetcrys::exact::multi::Multi(vec![2]));
    println!("(t^[2])^[2] = {}", pd.display(&pd.divided_power(&t2, 2)?));
    Ok(())
}
