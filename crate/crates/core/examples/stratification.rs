//! Taylor stratification of a flat connection, the axiom checks, and a
//! corrupted control.

use jetcrys::exact::field::Field;
use jetcrys::fixtures;
use jetcrys::io::Document;
use jetcrys::jet::JetMode;
use jetcrys::strat::{extract_connection, taylor_stratification, verify_stratification};

fn main() -> jetcrys::Result<()> {
    let q = Field::Rational;
    for (name, conn) in fixtures::flat_connections(q) {
        let m = taylor_stratification(&conn, 4, JetMode::Plain)?;
        let report = verify_stratification(&m)?;
        let back = extract_connection(&m)? == conn;
        println!("{name:16} axioms {} round trip {back}", report.pass);
    }
    let m = taylor_stratification(&fixtures::nilpotent(q), 2, JetMode::Divided)?;
    println!("{}", m.to_json());

    let bad = fixtures::corrupted_stratification(q, JetMode::Plain, 3)?;
    println!("corrupted: {:?}", verify_stratification(&bad)?.failures);

    match taylor_stratification(&fixtures::curved_plane(q), 2, JetMode::Plain) {
        Ok(_) => println!("curved connection accepted?"),
        Err(e) => println!("curved connection: {e}"),
    }
    Ok(())
}
