//! A differential operator, its application to sections, composition and
//! the linearized maps `Q^0(D)_n`.

use jetcrys::diffop::{DiffOperator, FreeModule};
use jetcrys::exact::field::Field;
use jetcrys::exact::multi::Multi;
use jetcrys::exact::parse::parse_poly;
use jetcrys::exact::polymatrix::PolyMatrix;
use jetcrys::jet::JetMode;

fn main() -> jetcrys::Result<()> {
    let q = Field::Rational;
    let p = |s: &str| parse_poly(s, q, 1);
    // D = x d/dx + 1 on O
    let bar = [
        (Multi(vec![0]), PolyMatrix::from_rows(q, 1, vec![vec![p("1")?]])?),
        (Multi(vec![1]), PolyMatrix::from_rows(q, 1, vec![vec![p("x1")?]])?),
    ];
    let d = DiffOperator::new(FreeModule::new(1, 1), FreeModule::new(1, 1), q, JetMode::Plain, 1, bar)?;
    let s = [p("x1^3 + x1")?];
    println!("D(x^3 + x) = {}", d.apply(&s)?[0]);

    let dd = d.compose(&d)?;
    println!("order of D o D: {}", dd.order());
    println!("D(D(x^3 + x)) = {}", dd.apply(&s)?[0]);

    for n in 0..=2 {
        let lin = dd.linearize(n);
        println!("Q0(D o D)_{n}: {}x{}", lin.rows(), lin.cols());
    }
    let lhs = dd.linearize(1);
    let rhs = d.linearize(1).checked_mul(&d.linearize(2))?;
    println!("Q0(D o D)_1 = Q0(D)_1 Q0(D)_2: {}", lhs == rhs);
    Ok(())
}
