//! Matrices with polynomial entries: module maps between free modules over
//! the polynomial ring.

use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};
use super::matrix::Matrix;
use super::multi::MultiBasis;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    field: Field,
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(field: Field, nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            nvars,
            rows,
            cols,
            data: vec![Poly::zero(field, nvars); rows * cols],
        }
    }

    pub fn identity(field: Field, nvars: usize, n: usize) -> Self {
        let mut m = Self::zeros(field, nvars, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field, nvars));
        }
        m
    }

    pub fn from_constant(m: &Matrix, nvars: usize) -> Self {
        let mut out = Self::zeros(m.field(), nvars, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, Poly::constant(m.field(), nvars, m.get(i, j).clone()));
            }
        }
        out
    }

    pub fn from_rows(field: Field, nvars: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        if rows.iter().flatten().any(|p| p.nvars() != nvars) {
            return Err(Error::Shape("entry in the wrong number of variables".into()));
        }
        Ok(PolyMatrix {
            field,
            nvars,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from its columns (each of length `rows`).
    pub fn from_columns(field: Field, nvars: usize, rows: usize, columns: Vec<Vec<Poly>>) -> Self {
        let mut out = Self::zeros(field, nvars, rows, columns.len());
        for (j, col) in columns.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, p) in col.into_iter().enumerate() {
                out.set(i, j, p);
            }
        }
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn add_at(&mut self, i: usize, j: usize, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let idx = i * self.cols + j;
        self.data[idx] = &self.data[idx] + p;
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let p = self.get(i, j);
                    if i == j {
                        p.is_constant() && p.constant_term().is_one()
                    } else {
                        p.is_zero()
                    }
                })
            })
    }

    /// Largest total degree among the entries (`None` if all vanish).
    pub fn degree(&self) -> Option<u32> {
        self.data.iter().filter_map(Poly::degree).max()
    }

    /// The scalar matrix, when every entry is constant.
    pub fn to_constant(&self) -> Option<Matrix> {
        if !self.data.iter().all(Poly::is_constant) {
            return None;
        }
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).constant_term());
            }
        }
        Some(m)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            field: self.field,
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = Self::zeros(self.field, self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.nvars, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column of polynomials.
    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(self.field, self.nvars);
                for (a, b) in (0..self.cols).map(|j| self.get(i, j)).zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product with a scalar matrix on the right.
    pub fn kron_constant(&self, rhs: &Matrix) -> PolyMatrix {
        let mut out = Self::zeros(self.field, self.nvars, self.rows * rhs.rows(), self.cols * rhs.cols());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows() {
                    for l in 0..rhs.cols() {
                        out.set(i * rhs.rows() + k, j * rhs.cols() + l, a.scale(rhs.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// The `k`-linear map induced on coefficient vectors: source entries of
    /// degree at most `deg_in`, target entries of degree at most `deg_out`.
    ///
    /// Basis of a source (resp. target) space: index `k * n + mu`, where `k`
    /// is the module coordinate and `mu` runs over the graded-lex monomials
    /// of degree `<= deg_in` (resp. `deg_out`).
    pub fn k_linearize(&self, deg_in: u32, deg_out: u32) -> Result<Matrix> {
        let src = MultiBasis::up_to(self.nvars, deg_in);
        let dst = MultiBasis::up_to(self.nvars, deg_out);
        let mut out = Matrix::zeros(self.field, self.rows * dst.len(), self.cols * src.len());
        for k in 0..self.cols {
            for (mi, mu) in src.iter().enumerate() {
                for i in 0..self.rows {
                    for (m, c) in self.get(i, k).terms() {
                        let target = m.add(mu);
                        let pos = dst.position(&target).ok_or_else(|| {
                            Error::DegreeBound(format!("image term of degree {} above {deg_out}", target.degree()))
                        })?;
                        out.add_at(i * dst.len() + pos, k * src.len() + mi, c);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl<'a> Mul<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_mul(rhs).expect("matrix shapes agree")
    }
}

impl<'a> Add<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shapes agree");
        PolyMatrix {
            field: self.field,
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        self + &(-rhs)
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        self.map(|p| -p)
    }
}

/// Vectors of polynomials: elements of a free module `O^r`.
pub fn zero_vector(field: Field, nvars: usize, r: usize) -> Vec<Poly> {
    vec![Poly::zero(field, nvars); r]
}

/// Coefficient vector of a polynomial vector in the `k_linearize` basis.
pub fn flatten_vector(v: &[Poly], deg: u32) -> Result<Vec<Scalar>> {
    let field = v.first().map(Poly::field).unwrap_or_default();
    let nvars = v.first().map_or(0, Poly::nvars);
    let basis = MultiBasis::up_to(nvars, deg);
    let mut out = vec![field.zero(); v.len() * basis.len()];
    for (k, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            let pos = basis
                .position(m)
                .ok_or_else(|| Error::DegreeBound(format!("term of degree {} above {deg}", m.degree())))?;
            out[k * basis.len() + pos] = c.clone();
        }
    }
    Ok(out)
}

/// Inverse of [`flatten_vector`].
pub fn unflatten_vector(field: Field, nvars: usize, coeffs: &[Scalar], deg: u32) -> Vec<Poly> {
    let basis = MultiBasis::up_to(nvars, deg);
    coeffs
        .chunks(basis.len())
        .map(|chunk| Poly::from_terms(field, nvars, basis.iter().cloned().zip(chunk.iter().cloned())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    #[test]
    fn k_linearize_multiplication_by_x() {
        let q = Field::Rational;
        let x = parse_poly("x1", q, 1).unwrap();
        let m = PolyMatrix::from_rows(q, 1, vec![vec![x]]).unwrap();
        let lin = m.k_linearize(1, 2).unwrap();
        assert_eq!((lin.rows(), lin.cols()), (3, 2));
        assert_eq!(lin.rank().unwrap(), 2);
        assert!(m.k_linearize(1, 1).is_err());
    }

    #[test]
    fn flatten_roundtrip() {
        let q = Field::Rational;
        let v = vec![parse_poly("x1*x2 - 2", q, 2).unwrap(), parse_poly("x2", q, 2).unwrap()];
        let flat = flatten_vector(&v, 2).unwrap();
        assert_eq!(unflatten_vector(q, 2, &flat, 2), v);
    }
}
