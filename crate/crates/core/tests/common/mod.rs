#![allow(dead_code)]

use jetcrys::diffop::{DiffOperator, FreeModule};
use jetcrys::exact::field::Field;
use jetcrys::exact::multi::{Multi, MultiBasis};
use jetcrys::exact::poly::Poly;
use jetcrys::exact::polymatrix::PolyMatrix;
use jetcrys::jet::JetMode;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q() -> Field {
    Field::Rational
}

/// A polynomial in `d` variables of degree `<= deg` with small integer
/// coefficients, about half of them zero.
pub fn random_poly(rng: &mut ChaCha8Rng, field: Field, d: usize, deg: u32) -> Poly {
    let terms = MultiBasis::up_to(d, deg)
        .iter()
        .filter_map(|m| {
            if rng.gen_bool(0.5) {
                None
            } else {
                Some((m.clone(), field.from_i64(rng.gen_range(-3..=3))))
            }
        })
        .collect::<Vec<_>>();
    Poly::from_terms(field, d, terms)
}

pub fn random_poly_matrix(rng: &mut ChaCha8Rng, field: Field, d: usize, rows: usize, cols: usize, deg: u32) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(field, d, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_poly(rng, field, d, deg));
        }
    }
    m
}

/// A random operator `O^source -> O^target` of order `<= order`.
pub fn random_operator(
    rng: &mut ChaCha8Rng,
    field: Field,
    mode: JetMode,
    d: usize,
    source: usize,
    target: usize,
    order: u32,
) -> DiffOperator {
    let bar: Vec<(Multi, PolyMatrix)> = MultiBasis::up_to(d, order)
        .iter()
        .map(|a| (a.clone(), random_poly_matrix(rng, field, d, target, source, 2)))
        .collect();
    DiffOperator::new(FreeModule::new(d, source), FreeModule::new(d, target), field, mode, order, bar).unwrap()
}

pub fn random_section(rng: &mut ChaCha8Rng, field: Field, d: usize, rank: usize) -> Vec<Poly> {
    (0..rank).map(|_| random_poly(rng, field, d, 3)).collect()
}
