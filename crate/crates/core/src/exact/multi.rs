//! Exponent vectors (multi-indices) and the enumerations built on them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::field::{Field, Scalar};

/// An exponent vector in `N^d`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors lexicographically with `x1` most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multi(pub Vec<u32>);

impl Multi {
    pub fn zero(d: usize) -> Self {
        Multi(vec![0; d])
    }

    pub fn unit(d: usize, j: usize) -> Self {
        let mut v = vec![0; d];
        v[j] = 1;
        Multi(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Multi) -> Multi {
        Multi(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when componentwise nonnegative.
    pub fn checked_sub(&self, other: &Multi) -> Option<Multi> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Multi)
    }

    pub fn divides(&self, other: &Multi) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `alpha!` as a field element.
    pub fn factorial(&self, field: Field) -> Scalar {
        self.0
            .iter()
            .fold(field.one(), |acc, &e| &acc * &field.factorial(e as u64))
    }

    /// Product of binomials `C(self_i, sub_i)`.
    pub fn binomial(&self, sub: &Multi, field: Field) -> Scalar {
        self.0
            .iter()
            .zip(&sub.0)
            .fold(field.one(), |acc, (&n, &k)| &acc * &field.binomial(n as u64, k as u64))
    }

    /// All `beta <= self` componentwise, in graded-lex order.
    pub fn divisors(&self) -> Vec<Multi> {
        let mut out = vec![Multi(Vec::with_capacity(self.dim()))];
        for &e in &self.0 {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..=e).map(move |k| {
                        let mut v = m.0.clone();
                        v.push(k);
                        Multi(v)
                    })
                })
                .collect();
        }
        out.sort();
        out
    }
}

impl Ord for Multi {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Multi {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All exponent vectors in `N^d` of total degree exactly `n`, ascending.
pub fn multis_of_degree(d: usize, n: u32) -> Vec<Multi> {
    fn rec(d: usize, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Multi>) {
        if prefix.len() + 1 == d {
            prefix.push(n);
            out.push(Multi(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in 0..=n {
            prefix.push(k);
            rec(d, n - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if n == 0 {
            out.push(Multi(vec![]));
        }
        return out;
    }
    rec(d, n, &mut Vec::with_capacity(d), &mut out);
    out.sort();
    out
}

/// All exponent vectors of total degree at most `m`, ascending.
pub fn multis_up_to(d: usize, m: u32) -> Vec<Multi> {
    (0..=m).flat_map(|n| multis_of_degree(d, n)).collect()
}

/// An indexed list of multi-indices, used as a module basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiBasis {
    elems: Vec<Multi>,
    index: HashMap<Multi, usize>,
}

impl MultiBasis {
    pub fn new(elems: Vec<Multi>) -> Self {
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MultiBasis { elems, index }
    }

    pub fn up_to(d: usize, m: u32) -> Self {
        Self::new(multis_up_to(d, m))
    }

    pub fn of_degree(d: usize, n: u32) -> Self {
        Self::new(multis_of_degree(d, n))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &Multi {
        &self.elems[i]
    }

    pub fn position(&self, m: &Multi) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Multi> {
        self.elems.iter()
    }
}
