//! The map from the linearization bicomplex to `Q^0(F)`: chain-map
//! identities level by level and `Phi d^1 = id`.

use jetcrys::derham::phi::{total_complex, derham_linearization_bicomplex, verify_phi_chainmap};
use jetcrys::exact::field::Field;
use jetcrys::fixtures;
use jetcrys::jet::JetMode;

fn main() -> jetcrys::Result<()> {
    let q = Field::Rational;
    for (name, f) in fixtures::derham_fixtures(q, JetMode::Plain)? {
        let r = verify_phi_chainmap(&f, 2)?;
        println!("{name:20} {} identities, all hold: {}, Phi d1 = id: {:?}", r.checks.len(), r.pass, r.inverse_to_d1);
    }
    let bad = fixtures::corrupted_complex(q, JetMode::Plain)?;
    println!("corrupted complex passes: {}", verify_phi_chainmap(&bad, 1)?.pass);

    let f = jetcrys::derham::complexes::derham_complex(q, 2, JetMode::Plain)?;
    let b = derham_linearization_bicomplex(&f, 2, 1)?;
    // building the total complex checks that it squares to zero
    let tot = total_complex(&b)?;
    println!("total complex of the plane at level 2: ranks {:?}", tot.ranks());
    Ok(())
}
