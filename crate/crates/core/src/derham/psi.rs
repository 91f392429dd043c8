//! Finite-level exactness of `M -> M (x) P^n -> M (x) P^{n-1} (x) Omega^1 -> ...`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::multi::MultiBasis;
use crate::jet::JetMode;
use crate::strat::{verify_stratification, StratModule};

use super::complexes::{linearized_derham_level, linearized_level_with_homotopy};

/// How exactness of one level was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Homotopy,
    Ranks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiLevel {
    pub n: u32,
    pub ranks: Vec<usize>,
    pub certificate: Certificate,
    /// Filled when certified by ranks.
    pub homology: Option<Vec<usize>>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiReport {
    /// Whether `M` passes `verify_stratification`.
    pub stratification_ok: bool,
    /// `M` is linearized over `k` with coefficients of degree `<= deg_bound`;
    /// the differentials are constant so any bound gives the same verdict.
    pub deg_bound: u32,
    pub levels: Vec<PsiLevel>,
    pub pass: bool,
}

/// Tensors `linearized_derham_level(n)` with `M` for `n <= n_max` and
/// certifies exactness through the transported homotopy (plain, when every
/// weight is invertible) or through homology ranks.
pub fn verify_psi_exactness(m: &StratModule, n_max: u32, deg_bound: u32) -> Result<PsiReport> {
    let stratification_ok = verify_stratification(m)?.pass;
    let (field, d) = (m.field(), m.dim());
    let width = m.rank() * MultiBasis::up_to(d, deg_bound).len();
    let mut levels = Vec::new();
    for n in 0..=n_max {
        let with_hom = match m.mode() {
            JetMode::Plain => linearized_level_with_homotopy(n, d, field).ok(),
            JetMode::Divided => None,
        };
        let level = match with_hom {
            Some(c) => {
                let t = c.tensor_identity(width)?;
                PsiLevel {
                    n,
                    ranks: t.ranks().to_vec(),
                    certificate: Certificate::Homotopy,
                    homology: None,
                    pass: t.check_homotopy_identity()?.pass,
                }
            }
            None => {
                let t = linearized_derham_level(n, d, field, m.mode())?.tensor_identity(width)?;
                let h = t.homology_ranks()?;
                PsiLevel {
                    n,
                    ranks: t.ranks().to_vec(),
                    certificate: Certificate::Ranks,
                    pass: h.iter().all(|&x| x == 0),
                    homology: Some(h),
                }
            }
        };
        levels.push(level);
    }
    let pass = stratification_ok && levels.iter().all(|l| l.pass);
    Ok(PsiReport {
        stratification_ok,
        deg_bound,
        levels,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::Field;

    #[test]
    fn trivial_rank_one() {
        let m = StratModule::trivial(Field::Rational, 2, 1, JetMode::Plain, 3);
        let r = verify_psi_exactness(&m, 3, 1).unwrap();
        assert!(r.pass);
        assert!(r.levels.iter().all(|l| l.certificate == Certificate::Homotopy));
    }

    #[test]
    fn divided_char_p_by_ranks() {
        let m = StratModule::trivial(Field::Prime(2), 1, 2, JetMode::Divided, 3);
        let r = verify_psi_exactness(&m, 3, 0).unwrap();
        assert!(r.pass);
        assert!(r.levels.iter().all(|l| l.certificate == Certificate::Ranks));
    }
}
