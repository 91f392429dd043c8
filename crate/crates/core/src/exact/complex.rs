//! Finite cochain complexes of finite-dimensional vector spaces, their
//! homology, contracting-homotopy checks, and stable kernels of towers.

use serde::{Deserialize, Serialize};

use super::field::{Field, Scalar};
use super::matrix::{same_column_span, Matrix};
use crate::error::{Error, Result};

/// `C^0 -> C^1 -> ... -> C^L` with `d_i : C^i -> C^{i+1}` stored as an
/// `r_{i+1} x r_i` matrix. Optional homotopy maps `s_i : C^i -> C^{i-1}`
/// (with `s_0 = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    ranks: Vec<usize>,
    differentials: Vec<Matrix>,
    homotopy: Option<Vec<Matrix>>,
}

/// Outcome of the homotopy identity `s_{i+1} d_i + d_{i-1} s_i = id` at
/// one position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionCheck {
    pub position: usize,
    pub pass: bool,
    /// Up to eight `(row, col)` entries where the identity fails.
    pub defects: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub positions: Vec<PositionCheck>,
    pub pass: bool,
}

impl ChainComplex {
    /// Builds a complex, checking shapes and `d_{i+1} d_i = 0`.
    pub fn new(field: Field, ranks: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        if differentials.len() + 1 != ranks.len().max(1) {
            return Err(Error::Shape(format!(
                "{} modules need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[i + 1] || d.cols() != ranks[i] {
                return Err(Error::Shape(format!(
                    "differential {i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[i + 1],
                    ranks[i]
                )));
            }
        }
        for i in 0..differentials.len().saturating_sub(1) {
            if !(&differentials[i + 1] * &differentials[i]).is_zero() {
                return Err(Error::Invalid(format!("d_{} d_{} != 0", i + 1, i)));
            }
        }
        Ok(ChainComplex {
            field,
            ranks,
            differentials,
            homotopy: None,
        })
    }

    /// Attaches homotopy maps `s_i : C^i -> C^{i-1}` for every position.
    pub fn with_homotopy(mut self, homotopy: Vec<Matrix>) -> Result<Self> {
        if homotopy.len() != self.ranks.len() {
            return Err(Error::Shape(format!(
                "homotopy needs {} maps, got {}",
                self.ranks.len(),
                homotopy.len()
            )));
        }
        for (i, s) in homotopy.iter().enumerate() {
            let rows = if i == 0 { 0 } else { self.ranks[i - 1] };
            if s.rows() != rows || s.cols() != self.ranks[i] {
                return Err(Error::Shape(format!(
                    "homotopy s_{i} is {}x{}, expected {}x{}",
                    s.rows(),
                    s.cols(),
                    rows,
                    self.ranks[i]
                )));
            }
        }
        self.homotopy = Some(homotopy);
        Ok(self)
    }

    pub fn without_homotopy(mut self) -> Self {
        self.homotopy = None;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    pub fn homotopy(&self) -> Option<&[Matrix]> {
        self.homotopy.as_deref()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `dim ker d_i - rank d_{i-1}` at each position.
    pub fn homology_ranks(&self) -> Result<Vec<usize>> {
        let ranks: Vec<usize> = self
            .differentials
            .iter()
            .map(Matrix::rank)
            .collect::<Result<_>>()?;
        Ok((0..self.ranks.len())
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i == 0 { 0 } else { ranks[i - 1] };
                self.ranks[i] - out - inc
            })
            .collect())
    }

    pub fn is_exact(&self) -> Result<bool> {
        Ok(self.homology_ranks()?.iter().all(|&h| h == 0))
    }

    /// Checks `s_{i+1} d_i + d_{i-1} s_i = id` at every position.
    pub fn check_homotopy_identity(&self) -> Result<HomotopyReport> {
        let s = self
            .homotopy
            .as_ref()
            .ok_or_else(|| Error::Invalid("complex carries no homotopy".into()))?;
        let n = self.ranks.len();
        let mut positions = Vec::with_capacity(n);
        for i in 0..n {
            let mut total = Matrix::zeros(self.field, self.ranks[i], self.ranks[i]);
            if i + 1 < n {
                total = &total + &(&s[i + 1] * &self.differentials[i]);
            }
            if i > 0 {
                total = &total + &(&self.differentials[i - 1] * &s[i]);
            }
            let defect = &total - &Matrix::identity(self.field, self.ranks[i]);
            let mut defects = Vec::new();
            'outer: for r in 0..defect.rows() {
                for c in 0..defect.cols() {
                    if !defect.get(r, c).is_zero() {
                        defects.push((r, c));
                        if defects.len() == 8 {
                            break 'outer;
                        }
                    }
                }
            }
            positions.push(PositionCheck {
                position: i,
                pass: defects.is_empty(),
                defects,
            });
        }
        let pass = positions.iter().all(|p| p.pass);
        Ok(HomotopyReport { positions, pass })
    }

    /// Direct sum of two complexes of the same length.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.ranks.len() != other.ranks.len() {
            return Err(Error::Shape("direct sum of complexes of different length".into()));
        }
        let ranks: Vec<usize> = self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect();
        let diffs = self
            .differentials
            .iter()
            .zip(&other.differentials)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        let mut out = ChainComplex::new(self.field, ranks, diffs)?;
        if let (Some(s1), Some(s2)) = (&self.homotopy, &other.homotopy) {
            out = out.with_homotopy(s1.iter().zip(s2).map(|(a, b)| block_diag(a, b)).collect())?;
        }
        Ok(out)
    }

    /// Tensor with an identity of rank `r`: every module `C^i` becomes
    /// `C^i ⊗ k^r` (index `i * r + k`) and every map `f` becomes `f ⊗ id`.
    pub fn tensor_identity(&self, r: usize) -> Result<ChainComplex> {
        let id = Matrix::identity(self.field, r);
        let ranks = self.ranks.iter().map(|x| x * r).collect();
        let diffs = self.differentials.iter().map(|d| d.kron(&id)).collect();
        let mut out = ChainComplex::new(self.field, ranks, diffs)?;
        if let Some(s) = &self.homotopy {
            out = out.with_homotopy(s.iter().map(|m| m.kron(&id)).collect())?;
        }
        Ok(out)
    }
}

pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    m
}

/// A tower of linear maps `K_n : V_n -> W_n` with transition maps
/// `V_{n+1} -> V_n` and `W_{n+1} -> W_n`.
#[derive(Clone, Debug)]
pub struct MatrixTower {
    maps: Vec<Matrix>,
    source_transitions: Vec<Matrix>,
    target_transitions: Vec<Matrix>,
}

/// Result of [`stable_kernel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableKernel {
    /// Basis (as coordinate vectors in `V_probe`) of the image of the
    /// kernel at level `probe + margin`.
    pub basis: Vec<Vec<Scalar>>,
    /// Whether the image from level `probe + margin + 1` spans the same space.
    pub stabilized: bool,
}

impl MatrixTower {
    /// Checks that every transition square commutes.
    pub fn new(maps: Vec<Matrix>, source_transitions: Vec<Matrix>, target_transitions: Vec<Matrix>) -> Result<Self> {
        let n = maps.len();
        if source_transitions.len() + 1 != n || target_transitions.len() + 1 != n {
            return Err(Error::Shape("a tower of N+1 maps needs N transitions on each side".into()));
        }
        for i in 0..n - 1 {
            let lhs = maps[i].checked_mul(&source_transitions[i])?;
            let rhs = target_transitions[i].checked_mul(&maps[i + 1])?;
            if lhs != rhs {
                return Err(Error::NonCommuting(i));
            }
        }
        Ok(MatrixTower {
            maps,
            source_transitions,
            target_transitions,
        })
    }

    /// Tower with identity transitions.
    pub fn constant(map: Matrix, levels: usize) -> Result<Self> {
        let f = map.field();
        let (r, c) = (map.rows(), map.cols());
        Self::new(
            vec![map; levels],
            vec![Matrix::identity(f, c); levels - 1],
            vec![Matrix::identity(f, r); levels - 1],
        )
    }

    pub fn levels(&self) -> usize {
        self.maps.len()
    }

    pub fn map(&self, n: usize) -> &Matrix {
        &self.maps[n]
    }

    pub fn target_transition(&self, n: usize) -> &Matrix {
        &self.target_transitions[n]
    }

    /// Composite transition `V_top -> V_bottom`.
    fn descend(&self, top: usize, bottom: usize) -> Matrix {
        let f = self.maps[top].field();
        let mut t = Matrix::identity(f, self.maps[top].cols());
        for k in (bottom..top).rev() {
            t = &self.source_transitions[k] * &t;
        }
        t
    }

    fn image_of_kernel(&self, level: usize, probe: usize) -> Result<Vec<Vec<Scalar>>> {
        let ker = self.maps[level].kernel()?;
        let t = self.descend(level, probe);
        let dim = t.rows();
        let images: Vec<Vec<Scalar>> = ker.iter().map(|v| t.apply(v)).collect();
        Matrix::from_columns(t.field(), dim, &images).column_space()
    }
}

/// Image in `ker K_probe` of `ker K_{probe+margin}` under the transitions,
/// with a stabilization certificate from level `probe + margin + 1`.
pub fn stable_kernel(tower: &MatrixTower, probe: usize, margin: usize) -> Result<StableKernel> {
    if probe + margin + 1 >= tower.levels() {
        return Err(Error::OrderOutOfRange(format!(
            "probe {probe} + margin {margin} + 1 exceeds top level {}",
            tower.levels() - 1
        )));
    }
    let basis = tower.image_of_kernel(probe + margin, probe)?;
    let next = tower.image_of_kernel(probe + margin + 1, probe)?;
    let field = tower.map(probe).field();
    let dim = tower.map(probe).cols();
    let stabilized = same_column_span(&basis, &next, field, dim)?;
    Ok(StableKernel { basis, stabilized })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_complex_is_exact() {
        let c = ChainComplex::new(q(), vec![1, 1], vec![Matrix::identity(q(), 1)]).unwrap();
        assert_eq!(c.homology_ranks().unwrap(), vec![0, 0]);
    }

    #[test]
    fn zero_map_complex() {
        let c = ChainComplex::new(q(), vec![1, 1], vec![Matrix::zeros(q(), 1, 1)]).unwrap();
        assert_eq!(c.homology_ranks().unwrap(), vec![1, 1]);
    }

    #[test]
    fn zero_homotopy_fails() {
        let c = ChainComplex::new(q(), vec![1, 1], vec![Matrix::identity(q(), 1)])
            .unwrap()
            .with_homotopy(vec![Matrix::zeros(q(), 0, 1), Matrix::zeros(q(), 1, 1)])
            .unwrap();
        let r = c.check_homotopy_identity().unwrap();
        assert!(!r.pass);
        let good = c
            .with_homotopy(vec![Matrix::zeros(q(), 0, 1), Matrix::identity(q(), 1)])
            .unwrap();
        assert!(good.check_homotopy_identity().unwrap().pass);
    }

    #[test]
    fn homotopy_shape_mismatch() {
        let c = ChainComplex::new(q(), vec![1, 1], vec![Matrix::identity(q(), 1)]).unwrap();
        assert!(c.clone().with_homotopy(vec![Matrix::zeros(q(), 0, 1)]).is_err());
        assert!(c
            .with_homotopy(vec![Matrix::zeros(q(), 0, 1), Matrix::zeros(q(), 2, 1)])
            .is_err());
    }

    #[test]
    fn rejects_nonzero_square() {
        let d = Matrix::identity(q(), 1);
        assert!(ChainComplex::new(q(), vec![1, 1, 1], vec![d.clone(), d]).is_err());
    }

    #[test]
    fn constant_zero_tower_full_space() {
        let t = MatrixTower::constant(Matrix::zeros(q(), 2, 3), 4).unwrap();
        let k = stable_kernel(&t, 0, 1).unwrap();
        assert_eq!(k.basis.len(), 3);
        assert!(k.stabilized);
    }

    #[test]
    fn injective_tower_zero_space() {
        let t = MatrixTower::constant(Matrix::identity(q(), 2), 3).unwrap();
        let k = stable_kernel(&t, 0, 1).unwrap();
        assert!(k.basis.is_empty());
        assert!(k.stabilized);
    }

    #[test]
    fn non_commuting_tower_rejected() {
        let f = q();
        let r = MatrixTower::new(
            vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)],
            vec![Matrix::identity(f, 1)],
            vec![Matrix::identity(f, 1)],
        );
        assert_eq!(r.unwrap_err(), Error::NonCommuting(0));
    }
}
