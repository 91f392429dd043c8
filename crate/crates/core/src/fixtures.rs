//! Named objects used by the examples, the suite runner and the tests.

use crate::crystal::{Section, Thickening};
use crate::derham::complexes::{derham_complex, derham_of_strat};
use crate::diffop::{DifferentialComplex, DiffOperator};
use crate::error::Result;
use crate::exact::field::Field;
use crate::exact::multi::Multi;
use crate::exact::parse::{parse_poly, parse_poly_in};
use crate::exact::polymatrix::PolyMatrix;
use crate::jet::JetMode;
use crate::strat::{taylor_stratification, Connection, StratModule};

fn matrix(field: Field, d: usize, rows: &[&[&str]]) -> PolyMatrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_poly(s, field, d).expect("fixture polynomial")).collect())
        .collect();
    PolyMatrix::from_rows(field, d, rows).expect("fixture shape")
}

/// `nabla = d` on `O^rank`.
pub fn trivial(field: Field, d: usize, rank: usize) -> Connection {
    Connection::trivial(field, d, rank)
}

/// `d = 1`, rank 2, `nabla(f1 e1 + f2 e2) = (f1' + f2) e1 + f2' e2`.
pub fn nilpotent(field: Field) -> Connection {
    Connection::new(field, 1, 2, vec![matrix(field, 1, &[&["0", "1"], &["0", "0"]])]).expect("fixture")
}

/// `d = 1`, rank 1, `A = c`.
pub fn constant_twist(field: Field, c: i64) -> Connection {
    Connection::new(field, 1, 1, vec![matrix(field, 1, &[&[&c.to_string()]])]).expect("fixture")
}

/// `d = 1`, rank 1, `A = x`.
pub fn polynomial_twist(field: Field) -> Connection {
    Connection::new(field, 1, 1, vec![matrix(field, 1, &[&["x1"]])]).expect("fixture")
}

/// `d = 1`, rank 2, `A = [[x, 1], [0, 0]]`; `A` does not commute with `A'`,
/// so the order of composition in co-associativity matters.
pub fn skew(field: Field) -> Connection {
    Connection::new(field, 1, 2, vec![matrix(field, 1, &[&["x1", "1"], &["0", "0"]])]).expect("fixture")
}

/// `d = 2`, rank 2, `A_1 = [[0, x2], [0, 0]]`, `A_2 = [[0, x1], [0, 0]]`.
pub fn flat_plane(field: Field) -> Connection {
    Connection::new(
        field,
        2,
        2,
        vec![
            matrix(field, 2, &[&["0", "x2"], &["0", "0"]]),
            matrix(field, 2, &[&["0", "x1"], &["0", "0"]]),
        ],
    )
    .expect("fixture")
}

/// `d = 2`, rank 2, `A_1 = [[0, 1], [0, 0]]`, `A_2 = [[0, x1^2], [0, 0]]`;
/// not flat.
pub fn curved_plane(field: Field) -> Connection {
    Connection::new(
        field,
        2,
        2,
        vec![
            matrix(field, 2, &[&["0", "1"], &["0", "0"]]),
            matrix(field, 2, &[&["0", "x1^2"], &["0", "0"]]),
        ],
    )
    .expect("fixture")
}

/// The flat connection fixtures by name.
pub fn flat_connections(field: Field) -> Vec<(String, Connection)> {
    vec![
        ("trivial".into(), trivial(field, 1, 1)),
        ("trivial-plane".into(), trivial(field, 2, 1)),
        ("nilpotent".into(), nilpotent(field)),
        ("constant-twist".into(), constant_twist(field, 3)),
        ("polynomial-twist".into(), polynomial_twist(field)),
        ("skew".into(), skew(field)),
        ("flat-plane".into(), flat_plane(field)),
    ]
}

/// Taylor stratifications of [`flat_connections`] up to `top`.
pub fn stratified(field: Field, mode: JetMode, top: u32) -> Result<Vec<(String, StratModule)>> {
    flat_connections(field)
        .into_iter()
        .map(|(name, c)| Ok((name, taylor_stratification(&c, top, mode)?)))
        .collect()
}

/// The nilpotent stratification with one coefficient of `s'_top` altered,
/// which breaks co-associativity (`top >= 2`; a change at level 1 is just
/// another connection).
pub fn corrupted_stratification(field: Field, mode: JetMode, top: u32) -> Result<StratModule> {
    if top < 2 {
        return Err(crate::error::Error::OrderOutOfRange("corruption needs level >= 2".into()));
    }
    let m = taylor_stratification(&nilpotent(field), top, mode)?;
    let alpha = Multi(vec![top]);
    let mut entry = m.table_at(top, &alpha);
    let bumped = &entry.get(0, 1).clone() + &parse_poly("1", field, 1)?;
    entry.set(0, 1, bumped);
    m.with_entry(top, alpha, entry)
}

/// De Rham complexes of affine space of dimension 1, 2, 3 and the `DR`
/// complexes of the flat fixtures.
pub fn derham_fixtures(field: Field, mode: JetMode) -> Result<Vec<(String, DifferentialComplex)>> {
    let mut out = Vec::new();
    for d in 1..=3 {
        out.push((format!("derham-A{d}"), derham_complex(field, d, mode)?));
    }
    for (name, m) in stratified(field, mode, 1)? {
        out.push((format!("dr-{name}"), derham_of_strat(&m)?));
    }
    Ok(out)
}

/// The De Rham complex of the plane with the `dx_1` part of `d^0` negated.
pub fn corrupted_complex(field: Field, mode: JetMode) -> Result<DifferentialComplex> {
    let f = derham_complex(field, 2, mode)?;
    let op = &f.ops()[0];
    let xi1 = Multi::unit(2, 0);
    let bar = op
        .bar()
        .iter()
        .map(|(a, m)| (a.clone(), if *a == xi1 { m.scale(&field.from_i64(-1)) } else { m.clone() }));
    let op = DiffOperator::new(op.source().clone(), op.target().clone(), field, mode, op.order(), bar)?;
    f.with_op(0, op)
}

/// Thickenings used by the cocycle checks: `k[t]/(t^2)`, `k[t]/(t^3)` and
/// two variables with `nu = 2`.
pub fn thickenings(field: Field) -> Vec<Thickening> {
    vec![Thickening::new(field, 1, 1), Thickening::new(field, 1, 2), Thickening::new(field, 2, 2)]
}

/// Section triples over `t` for a base of dimension `d`, all agreeing
/// modulo `J`. The first triple is constant.
pub fn section_triples(t: &Thickening, d: usize) -> Result<Vec<[Section; 3]>> {
    let s = t.vars();
    let tv = |i: usize| format!("t{}", i % s + 1);
    let mut out = Vec::new();
    let shapes: [[&dyn Fn(usize) -> String; 3]; 3] = [
        [&|i| format!("{}", i + 1), &|i| format!("{}", i + 1), &|i| format!("{}", i + 1)],
        [
            &|i| format!("{}", i + 1),
            &|i| format!("{} + {}", i + 1, tv(i)),
            &|i| format!("{} - 2*{} + {}^2", i + 1, tv(i), tv(i + 1)),
        ],
        [
            &|i| format!("{} + 3*{}*{}", -(i as i64), tv(i), tv(i + 1)),
            &|i| format!("{} + 1/2*{}", -(i as i64), tv(i + 1)),
            &|i| format!("{} - {} + 5*{}", -(i as i64), tv(i), tv(i + 1)),
        ],
    ];
    for shape in shapes {
        let mut triple = Vec::new();
        for f in shape {
            let images = (0..d)
                .map(|i| parse_poly_in(&f(i), t.field(), s, "t"))
                .collect::<Result<Vec<_>>>()?;
            triple.push(Section::new(t, &images)?);
        }
        let [a, b, c]: [Section; 3] = triple.try_into().expect("three sections");
        out.push([a, b, c]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::verify_cocycle;
    use crate::derham::phi::verify_phi_chainmap;
    use crate::diffop::verify_order1_relations;
    use crate::strat::verify_stratification;

    #[test]
    fn connections_flat() {
        for (name, c) in flat_connections(Field::Rational) {
            assert!(c.flatness_check().pass, "{name}");
        }
        assert!(!curved_plane(Field::Rational).flatness_check().pass);
    }

    #[test]
    fn corrupted_controls_fail() {
        let q = Field::Rational;
        assert!(!verify_stratification(&corrupted_stratification(q, JetMode::Plain, 2).unwrap()).unwrap().pass);
        let f = corrupted_complex(q, JetMode::Plain).unwrap();
        assert!(!verify_order1_relations(&f).unwrap().pass);
        assert!(!verify_phi_chainmap(&f, 1).unwrap().pass);
    }

    #[test]
    fn complexes_pass() {
        for (name, f) in derham_fixtures(Field::Rational, JetMode::Plain).unwrap() {
            assert!(verify_order1_relations(&f).unwrap().pass, "{name}");
            assert!(verify_phi_chainmap(&f, 2).unwrap().pass, "{name}");
        }
    }

    #[test]
    fn cocycles() {
        let q = Field::Rational;
        for t in thickenings(q) {
            for (name, m) in stratified(q, JetMode::Plain, t.nu()).unwrap() {
                for [h0, h1, h2] in section_triples(&t, m.dim()).unwrap() {
                    assert!(verify_cocycle(&m, &t, &h0, &h1, &h2).unwrap().pass, "{name} nu={}", t.nu());
                }
            }
            if t.nu() < 2 {
                continue;
            }
            let bad = corrupted_stratification(q, JetMode::Plain, t.nu()).unwrap();
            let triples = section_triples(&t, 1).unwrap();
            let [h0, h1, h2] = &triples[1];
            assert!(!verify_cocycle(&bad, &t, h0, h1, h2).unwrap().pass, "nu={}", t.nu());
        }
    }
}
