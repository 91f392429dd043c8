//! Differential forms on affine `d`-space with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::field::Field;
use crate::exact::poly::Poly;

/// Strictly increasing index tuples of length `p` drawn from `0..d`, in
/// lexicographic order.
pub fn wedge_basis(d: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            if d - i < left {
                break;
            }
            cur.push(i);
            go(i + 1, d, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= d {
        go(0, d, p, &mut Vec::new(), &mut out);
    }
    out
}

/// `dx_I ^ dx_J = sign * dx_K`, or `None` when an index repeats.
pub fn wedge_indices(a: &[usize], b: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1;
    // bubble sort, counting transpositions
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// The free module `Omega^p` of rank `C(d, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormModule {
    pub d: usize,
    pub p: usize,
    basis: Vec<Vec<usize>>,
}

impl FormModule {
    pub fn new(d: usize, p: usize) -> Self {
        FormModule {
            d,
            p,
            basis: wedge_basis(d, p),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn position(&self, idx: &[usize]) -> Option<usize> {
        self.basis.iter().position(|b| b == idx)
    }

    /// Labels such as `dx1^dx3`; `1` for degree zero.
    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|i| form_label(i)).collect()
    }
}

pub fn form_label(idx: &[usize]) -> String {
    if idx.is_empty() {
        "1".into()
    } else {
        idx.iter().map(|i| format!("dx{}", i + 1)).collect::<Vec<_>>().join("^")
    }
}

/// A homogeneous form `sum f_I dx_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    d: usize,
    p: usize,
    field: Field,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl Form {
    pub fn zero(field: Field, d: usize, p: usize) -> Self {
        Form {
            d,
            p,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(f: Poly) -> Self {
        let mut w = Form::zero(f.field(), f.nvars(), 0);
        w.add_term(Vec::new(), f);
        w
    }

    /// `f dx_{i_1} ^ ... ^ dx_{i_p}` for any (not necessarily sorted) indices.
    pub fn monomial(f: Poly, idx: &[usize]) -> Self {
        let mut w = Form::zero(f.field(), f.nvars(), idx.len());
        if let Some((s, sorted)) = wedge_indices(idx, &[]) {
            w.add_term(sorted, f.scale(&f.field().from_i64(s)));
        }
        w
    }

    pub fn dx(field: Field, d: usize, j: usize) -> Self {
        Form::monomial(Poly::one(field, d), &[j])
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> Poly {
        self.terms.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.field, self.d))
    }

    fn add_term(&mut self, idx: Vec<usize>, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(v) => {
                *v = &*v + &f;
                if v.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, f);
            }
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        if self.p != other.p || self.d != other.d {
            return Err(Error::Shape("adding forms of different degree".into()));
        }
        let mut out = self.clone();
        for (i, f) in &other.terms {
            out.add_term(i.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Form {
        let mut out = Form::zero(self.field, self.d, self.p);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), -f);
        }
        out
    }

    pub fn mul_function(&self, g: &Poly) -> Form {
        let mut out = Form::zero(self.field, self.d, self.p);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), f * g);
        }
        out
    }

    /// Exterior product; degree above `d` gives the zero form.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        let mut out = Form::zero(self.field, self.d, self.p + other.p);
        for (i, f) in &self.terms {
            for (j, g) in &other.terms {
                if let Some((s, k)) = wedge_indices(i, j) {
                    out.add_term(k, (f * g).scale(&self.field.from_i64(s)));
                }
            }
        }
        Ok(out)
    }

    /// `d(f dx_I) = sum_j d_j f dx_j ^ dx_I`.
    pub fn exterior_derivative(&self) -> Form {
        let mut out = Form::zero(self.field, self.d, self.p + 1);
        for (i, f) in &self.terms {
            for j in 0..self.d {
                let df = f.derivative(j);
                if df.is_zero() {
                    continue;
                }
                if let Some((s, k)) = wedge_indices(&[j], i) {
                    out.add_term(k, df.scale(&self.field.from_i64(s)));
                }
            }
        }
        out
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| {
                if i.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", form_label(i))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    #[test]
    fn basis_sizes() {
        assert_eq!(wedge_basis(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(wedge_basis(3, 2).len(), 3);
        assert!(wedge_basis(2, 3).is_empty());
    }

    #[test]
    fn antisymmetry() {
        let q = Field::Rational;
        let a = Form::dx(q, 2, 0).wedge(&Form::dx(q, 2, 1)).unwrap();
        let b = Form::dx(q, 2, 1).wedge(&Form::dx(q, 2, 0)).unwrap();
        assert_eq!(a, b.neg());
        assert!(Form::dx(q, 2, 0).wedge(&Form::dx(q, 2, 0)).unwrap().is_zero());
    }

    #[test]
    fn derivative_of_product() {
        let q = Field::Rational;
        let f = Form::function(parse_poly("x1*x2", q, 2).unwrap());
        let df = f.exterior_derivative();
        assert_eq!(df.coeff(&[0]), parse_poly("x2", q, 2).unwrap());
        assert_eq!(df.coeff(&[1]), parse_poly("x1", q, 2).unwrap());
        assert!(df.exterior_derivative().is_zero());
    }
}
