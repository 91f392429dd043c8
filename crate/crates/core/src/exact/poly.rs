//! Sparse multivariate polynomials over an exact [`Field`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use super::multi::Multi;
use crate::error::{Error, Result};

/// A polynomial in `x1..xd`. Zero coefficients are never stored, so
/// structural equality is coefficient-wise equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Multi, Scalar>,
}

impl Poly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Poly {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        Self::monomial(field, Multi::zero(nvars), c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn from_i64(field: Field, nvars: usize, c: i64) -> Self {
        Self::constant(field, nvars, field.from_i64(c))
    }

    /// The coordinate function `x_{j+1}` (zero-based `j`).
    pub fn var(field: Field, nvars: usize, j: usize) -> Self {
        Self::monomial(field, Multi::unit(nvars, j), field.one())
    }

    pub fn monomial(field: Field, exponent: Multi, c: Scalar) -> Self {
        let nvars = exponent.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Poly {
            nvars,
            field,
            terms,
        }
    }

    pub fn from_terms(field: Field, nvars: usize, terms: impl IntoIterator<Item = (Multi, Scalar)>) -> Self {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Multi::is_zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Multi::zero(self.nvars))
    }

    pub fn coeff(&self, m: &Multi) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Multi, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Multi::degree).max()
    }

    pub fn add_term(&mut self, m: Multi, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.dim(), self.nvars);
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Ordinary partial derivative in `x_{j+1}`.
    pub fn derivative(&self, j: usize) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[j] -= 1;
            out.add_term(m2, &(c * &self.field.from_i64(e as i64)));
        }
        out
    }

    /// Coefficient of `t^alpha` in `f(x + t)`: `sum C(e, alpha) c x^(e - alpha)`.
    /// Defined in every characteristic; equals `d^alpha f / alpha!` in
    /// characteristic 0.
    pub fn hasse(&self, alpha: &Multi) -> Result<Poly> {
        if alpha.dim() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: alpha.dim(),
            });
        }
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            if let Some(rest) = m.checked_sub(alpha) {
                out.add_term(rest, &(c * &m.binomial(alpha, self.field)));
            }
        }
        Ok(out)
    }

    /// Substitutes `x_i := images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = images.first().map(Poly::nvars).unwrap_or(0);
        let mut out = Poly::zero(self.field, target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(self.field, target, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &img.pow(e);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Drops every term of total degree above `bound`.
    pub fn truncate_degree(&self, bound: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at a scalar point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                t = &t * &x.pow(e);
            }
            acc += &t;
        }
        acc
    }

    fn combine(&self, other: &Poly, negate: bool) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomials in different variable counts");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            if negate {
                out.add_term(m.clone(), &-c);
            } else {
                out.add_term(m.clone(), c);
            }
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.combine(rhs, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials in different variable counts");
        let mut out = Poly::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.add(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-self.field.one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Multi, var: &str) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{var}{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl Poly {
    /// Canonical text form using the given variable prefix (`x` or `t`).
    pub fn display_with(&self, var: &str) -> String {
        struct D<'a>(&'a Poly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, self.1)
            }
        }
        D(self, var).to_string()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_zero() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write_monomial(f, m, var)?;
            } else {
                write!(f, "{abs}*")?;
                write_monomial(f, m, var)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "x")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    /// Oracle for Hasse derivatives: expand `f(x + t)` in the doubled ring
    /// `k[x1..xd, t1..td]` and read off the coefficient of `t^alpha`.
    fn hasse_by_expansion(f: &Poly, alpha: &Multi) -> Poly {
        let d = f.nvars();
        let images: Vec<Poly> = (0..d)
            .map(|i| &Poly::var(f.field(), 2 * d, i) + &Poly::var(f.field(), 2 * d, d + i))
            .collect();
        let shifted = f.substitute(&images).unwrap();
        let mut out = Poly::zero(f.field(), d);
        for (m, c) in shifted.terms() {
            if m.0[d..] == alpha.0[..] {
                out.add_term(Multi(m.0[..d].to_vec()), c);
            }
        }
        out
    }

    #[test]
    fn hasse_of_cube() {
        let x = Poly::var(q(), 1, 0);
        let f = x.pow(3);
        let alpha = Multi(vec![2]);
        let expected = hasse_by_expansion(&f, &alpha);
        assert_eq!(expected, x.scale(&q().from_i64(3)));
        assert_eq!(f.hasse(&alpha).unwrap(), expected);
    }

    #[test]
    fn hasse_zero_index_is_identity() {
        let f = &Poly::var(q(), 2, 0).pow(2) + &Poly::var(q(), 2, 1);
        assert_eq!(f.hasse(&Multi::zero(2)).unwrap(), f);
    }

    #[test]
    fn hasse_char_two() {
        let f2 = Field::Prime(2);
        let f = Poly::var(f2, 1, 0).pow(2);
        let alpha = Multi(vec![1]);
        assert!(hasse_by_expansion(&f, &alpha).is_zero());
        assert!(f.hasse(&alpha).unwrap().is_zero());
    }

    #[test]
    fn hasse_dimension_mismatch() {
        let f = Poly::var(q(), 2, 0);
        assert!(f.hasse(&Multi(vec![1])).is_err());
    }

    #[test]
    fn display_canonical() {
        let x1 = Poly::var(q(), 2, 0);
        let x2 = Poly::var(q(), 2, 1);
        let f = &(&x1.pow(2) * &x2) - &x2.scale(&q().parse_scalar("3/2").unwrap());
        assert_eq!(f.to_string(), "x1^2*x2 - 3/2*x2");
        assert_eq!(Poly::zero(q(), 2).to_string(), "0");
        assert_eq!((-&Poly::one(q(), 1)).to_string(), "-1");
    }
}
