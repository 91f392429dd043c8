//! The contracting homotopy of the graded pieces `I^n/I^{n+1} (x) Omega^p`.
//! In characteristic p the plain homotopy needs `1/n`, so it is refused
//! once `p` divides `n`.

use jetcrys::derham::complexes::graded_derham_level;
use jetcrys::exact::field::Field;
use jetcrys::jet::JetMode;

fn main() -> jetcrys::Result<()> {
    for field in [Field::Rational, Field::Prime(3)] {
        for n in 1..=4 {
            let g = graded_derham_level(n, 2, field, JetMode::Plain)?;
            match &g.refused {
                Some(why) => println!("char {} n={n}: refused ({why})", field.characteristic()),
                None => println!(
                    "char {} n={n}: ranks {:?}, Ds + sD = id: {}",
                    field.characteristic(),
                    g.complex.ranks(),
                    g.complex.check_homotopy_identity()?.pass
                ),
            }
        }
    }
    // the divided graded pieces stay exact even where the verbatim homotopy breaks
    let g = graded_derham_level(2, 2, Field::Prime(2), JetMode::Divided)?;
    println!(
        "divided char 2 d=2 n=2: exact {}, verbatim homotopy {}",
        g.complex.is_exact()?,
        g.complex.check_homotopy_identity()?.pass
    );
    Ok(())
}
