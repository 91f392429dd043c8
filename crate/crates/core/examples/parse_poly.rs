//! Parsing and printing exact polynomials over Q and F_p.

use jetcrys::exact::field::Field;
use jetcrys::exact::multi::Multi;
use jetcrys::exact::parse::parse_poly;

fn main() -> jetcrys::Result<()> {
    for field in [Field::Rational, Field::Prime(5)] {
        let p = parse_poly("(x1 + 1/2*x2)^3 - x1^3", field, 2)?;
        println!("char {}: {p}", field.characteristic());
        println!("  hasse (1,1): {}", p.hasse(&Multi(vec![1, 1]))?);
        println!("  d/dx2: {}", p.derivative(1));
    }
    for bad in ["x1 +", "x3", "1/0"] {
        if let Err(e) = parse_poly(bad, Field::Rational, 2) {
            println!("{bad:6} -> {e}");
        }
    }
    Ok(())
}
