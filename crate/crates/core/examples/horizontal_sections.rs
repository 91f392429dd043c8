//! Horizontal sections: of a connection, and of the induced towers
//! `P^n (x) O`, whose stable kernel is all of `O` in each degree.

use jetcrys::diffop::FreeModule;
use jetcrys::exact::field::Field;
use jetcrys::fixtures;
use jetcrys::jet::JetMode;
use jetcrys::strat::{horizontal_sections, horizontal_sections_induced, induced_stratification, taylor_stratification};

fn main() -> jetcrys::Result<()> {
    let q = Field::Rational;
    let m = taylor_stratification(&fixtures::nilpotent(q), 1, JetMode::Plain)?;
    let h = horizontal_sections(&m, 3)?;
    println!("nilpotent connection, degree <= 3: {} sections", h.basis.len());
    for s in &h.basis {
        println!("  ({}, {})", s[0], s[1]);
    }

    for d in 1..=2 {
        let tower = induced_stratification(&FreeModule::new(d, 1), q, JetMode::Plain, 4);
        for deg in 0..=2 {
            let h = horizontal_sections_induced(&tower, deg, 1, 2)?;
            println!("induced O, d={d}, degree <= {deg}: dimension {} (stable: {})", h.basis.len(), h.stabilized);
        }
    }
    Ok(())
}
