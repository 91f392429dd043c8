//! The De Rham complex of a stratified module, and the linearized and
//! graded Poincare complexes with their contracting homotopies.

use crate::diffop::{DiffOperator, DifferentialComplex, FreeModule, Order1Parts};
use crate::error::{Error, Result};
use crate::exact::complex::ChainComplex;
use crate::exact::field::Field;
use crate::exact::matrix::Matrix;
use crate::exact::multi::{Multi, MultiBasis};
use crate::exact::polymatrix::PolyMatrix;
use crate::jet::{GradedJetPiece, JetMode};
use crate::strat::{extract_connection, StratModule};

use super::forms::{form_label, wedge_basis, wedge_indices};

/// `Omega^p (x) O^r` with labels `dx_I (x) e_k`; index `pos(I) * r + k`.
pub fn form_module(d: usize, p: usize, rank: usize) -> FreeModule {
    let labels = wedge_basis(d, p)
        .iter()
        .flat_map(|i| (0..rank).map(move |k| format!("{} e{}", form_label(i), k + 1)))
        .collect();
    FreeModule::labeled(d, labels)
}

/// `DR(M)`: `d(f dx_I (x) e) = df ^ dx_I (x) e + (-1)^|I| f dx_I ^ nabla(e)`,
/// with `nabla` read from `s'_1`.
pub fn derham_of_strat(m: &StratModule) -> Result<DifferentialComplex> {
    let conn = extract_connection(m)?;
    let (field, d, r) = (m.field(), m.dim(), m.rank());
    let mut ops = Vec::new();
    for p in 0..d {
        let src = wedge_basis(d, p);
        let dst = wedge_basis(d, p + 1);
        let pos = |idx: &[usize]| dst.iter().position(|x| x == idx).expect("basis form");
        let mut value = PolyMatrix::zeros(field, d, dst.len() * r, src.len() * r);
        let mut partials = vec![PolyMatrix::zeros(field, d, dst.len() * r, src.len() * r); d];
        let sign_p = if p % 2 == 0 { 1 } else { -1 };
        for (ii, i) in src.iter().enumerate() {
            for j in 0..d {
                if let Some((s, k)) = wedge_indices(&[j], i) {
                    let row = pos(&k);
                    for e in 0..r {
                        partials[j].set(row * r + e, ii * r + e, crate::exact::poly::Poly::from_i64(field, d, s));
                    }
                }
                if let Some((s, k)) = wedge_indices(i, &[j]) {
                    let row = pos(&k);
                    let c = field.from_i64(s * sign_p);
                    for e in 0..r {
                        for f in 0..r {
                            value.add_at(row * r + f, ii * r + e, &conn.matrices()[j].get(f, e).scale(&c));
                        }
                    }
                }
            }
        }
        let parts = Order1Parts { value, partials };
        ops.push(DiffOperator::from_order1_parts(
            form_module(d, p, r),
            form_module(d, p + 1, r),
            m.mode(),
            &parts,
        )?);
    }
    if ops.is_empty() {
        return Err(Error::Invalid("De Rham complex needs d >= 1".into()));
    }
    DifferentialComplex::new(ops)
}

/// The De Rham complex of `O` on affine `d`-space.
pub fn derham_complex(field: Field, d: usize, mode: JetMode) -> Result<DifferentialComplex> {
    derham_of_strat(&StratModule::trivial(field, d, 1, mode, 1))
}

fn diff_coeff(field: Field, mode: JetMode, e: u32) -> crate::exact::field::Scalar {
    match mode {
        JetMode::Plain => field.from_i64(e as i64),
        JetMode::Divided => field.one(),
    }
}

/// `P^a (x) Omega^p` with jets outermost: index `pos(alpha) * C(d,p) + pos(I)`.
fn jet_form_index(jets: &MultiBasis, forms: &[Vec<usize>], alpha: &Multi, form: &[usize]) -> Option<usize> {
    Some(jets.position(alpha)? * forms.len() + forms.iter().position(|f| f == form)?)
}

/// `nabla-bar : P^a (x) Omega^p -> P^{a-1} (x) Omega^{p+1}`,
/// `xi^alpha (x) w |-> sum_j c xi^{alpha - e_j} (x) dx_j ^ w`.
fn nabla_bar(field: Field, mode: JetMode, d: usize, src_jets: &MultiBasis, p: usize, dst_jets: &MultiBasis) -> Matrix {
    let src_forms = wedge_basis(d, p);
    let dst_forms = wedge_basis(d, p + 1);
    let mut m = Matrix::zeros(field, dst_jets.len() * dst_forms.len(), src_jets.len() * src_forms.len());
    for (ai, alpha) in src_jets.iter().enumerate() {
        for (fi, form) in src_forms.iter().enumerate() {
            for j in 0..d {
                if alpha.0[j] == 0 {
                    continue;
                }
                let Some((s, k)) = wedge_indices(&[j], form) else { continue };
                let mut beta = alpha.clone();
                beta.0[j] -= 1;
                let Some(row) = jet_form_index(dst_jets, &dst_forms, &beta, &k) else { continue };
                let c = &diff_coeff(field, mode, alpha.0[j]) * &field.from_i64(s);
                m.add_at(row, ai * src_forms.len() + fi, &c);
            }
        }
    }
    m
}

/// `0 -> O -> P^n -> P^{n-1} (x) Omega^1 -> ... -> P^{n-d} (x) Omega^d -> 0`
/// as constant matrices (positions `0..=d+1`, rank zero where `n < p`).
pub fn linearized_derham_level(n: u32, d: usize, field: Field, mode: JetMode) -> Result<ChainComplex> {
    let jets = |p: usize| -> Option<MultiBasis> { (p as u32 <= n).then(|| MultiBasis::up_to(d, n - p as u32)) };
    let mut ranks = vec![1];
    for p in 0..=d {
        ranks.push(jets(p).map_or(0, |j| j.len() * wedge_basis(d, p).len()));
    }
    let mut diffs = Vec::new();
    let mut d0 = Matrix::zeros(field, ranks[1], 1);
    d0.set(0, 0, field.one());
    diffs.push(d0);
    for p in 0..d {
        let m = match (jets(p), jets(p + 1)) {
            (Some(src), Some(dst)) => nabla_bar(field, mode, d, &src, p, &dst),
            _ => Matrix::zeros(field, ranks[p + 2], ranks[p + 1]),
        };
        diffs.push(m);
    }
    ChainComplex::new(field, ranks, diffs)
}

/// A graded level with its homotopy status.
#[derive(Clone, Debug)]
pub struct GradedLevel {
    /// Carries homotopy data unless the homotopy was refused.
    pub complex: ChainComplex,
    pub refused: Option<String>,
}

/// `0 -> I^n/I^{n+1} -> I^{n-1}/I^n (x) Omega^1 -> ...` (positions
/// `p = 0..=min(n, d)`), with the homotopy
/// `s_p(xi^alpha (x) dx_I) = (1/n) sum_m (-1)^{m+1} xi^{alpha + e_{i_m}} (x) dx_{I - i_m}`
/// (plain) or the exponent bump without `1/n` (divided).
pub fn graded_derham_level(n: u32, d: usize, field: Field, mode: JetMode) -> Result<GradedLevel> {
    if n == 0 {
        return Err(Error::OrderOutOfRange("graded levels start at n = 1".into()));
    }
    let top = (n as usize).min(d);
    let pieces: Vec<GradedJetPiece> = (0..=top).map(|p| GradedJetPiece::new(d, n - p as u32, p)).collect();
    let ranks: Vec<usize> = pieces.iter().map(GradedJetPiece::rank).collect();
    let diffs = (0..top)
        .map(|p| nabla_bar(field, mode, d, pieces[p].jets(), p, pieces[p + 1].jets()))
        .collect();
    let complex = ChainComplex::new(field, ranks.clone(), diffs)?;
    let scale = match mode {
        JetMode::Divided => Some(field.one()),
        JetMode::Plain => field.from_i64(n as i64).inv().ok(),
    };
    let Some(scale) = scale else {
        return Ok(GradedLevel {
            complex,
            refused: Some(format!("1/{n} does not exist in characteristic {}", field.characteristic())),
        });
    };
    let mut hom = vec![Matrix::zeros(field, 0, ranks[0])];
    for p in 1..=top {
        let (src, dst) = (&pieces[p], &pieces[p - 1]);
        let mut s = Matrix::zeros(field, dst.rank(), src.rank());
        for col in 0..src.rank() {
            let (alpha, form) = src.element(col);
            for (m, &i) in form.iter().enumerate() {
                let mut beta = alpha.clone();
                beta.0[i] += 1;
                let rest: Vec<usize> = form.iter().copied().filter(|&x| x != i).collect();
                let row = dst.index(&beta, &rest).expect("graded basis");
                let sign = if m % 2 == 0 { field.one() } else { -field.one() };
                s.add_at(row, col, &(&sign * &scale));
            }
        }
        hom.push(s);
    }
    Ok(GradedLevel {
        complex: complex.with_homotopy(hom)?,
        refused: None,
    })
}

/// The linearized level with the contracting homotopy assembled from the
/// counit on `O -> k I` and the graded homotopies of weights `1..=n`.
/// Plain mode only; refused when some weight is not invertible.
pub fn linearized_level_with_homotopy(n: u32, d: usize, field: Field) -> Result<ChainComplex> {
    let lin = linearized_derham_level(n, d, field, JetMode::Plain)?;
    let ranks = lin.ranks().to_vec();
    let mut hom: Vec<Matrix> = (0..ranks.len())
        .map(|i| Matrix::zeros(field, if i == 0 { 0 } else { ranks[i - 1] }, ranks[i]))
        .collect();
    hom[1].set(0, 0, field.one());
    let forms: Vec<Vec<Vec<usize>>> = (0..=d).map(|p| wedge_basis(d, p)).collect();
    let jets: Vec<Option<MultiBasis>> = (0..=d).map(|p| (p as u32 <= n).then(|| MultiBasis::up_to(d, n - p as u32))).collect();
    for c in 1..=n {
        let g = graded_derham_level(c, d, field, JetMode::Plain)?;
        if let Some(why) = g.refused {
            return Err(Error::HomotopyRefused(why));
        }
        let s = g.complex.homotopy().expect("attached");
        for p in 1..=(c as usize).min(d) {
            let src = GradedJetPiece::new(d, c - p as u32, p);
            let dst = GradedJetPiece::new(d, c - p as u32 + 1, p - 1);
            for col in 0..src.rank() {
                let (alpha, form) = src.element(col);
                let gcol = jet_form_index(jets[p].as_ref().expect("order"), &forms[p], alpha, form).expect("index");
                for row in 0..dst.rank() {
                    let v = s[p].get(row, col);
                    if v.is_zero() {
                        continue;
                    }
                    let (beta, f2) = dst.element(row);
                    let grow = jet_form_index(jets[p - 1].as_ref().expect("order"), &forms[p - 1], beta, f2).expect("index");
                    hom[p + 1].set(grow, gcol, v.clone());
                }
            }
        }
    }
    lin.with_homotopy(hom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_d1_n1() {
        let c = linearized_derham_level(1, 1, Field::Rational, JetMode::Plain).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 1]);
        assert_eq!(c.homology_ranks().unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn char2_plain_not_exact() {
        let c = linearized_derham_level(2, 2, Field::Prime(2), JetMode::Plain).unwrap();
        assert!(c.homology_ranks().unwrap().iter().any(|&h| h > 0));
        let c = linearized_derham_level(2, 2, Field::Prime(2), JetMode::Divided).unwrap();
        assert!(c.is_exact().unwrap());
    }

    #[test]
    fn graded_homotopy_char0() {
        for d in 1..=3 {
            for n in 1..=4 {
                let g = graded_derham_level(n, d, Field::Rational, JetMode::Plain).unwrap();
                assert!(g.complex.check_homotopy_identity().unwrap().pass, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn divided_homotopy_flag() {
        let g = graded_derham_level(2, 2, Field::Prime(2), JetMode::Divided).unwrap();
        assert_eq!(g.complex.ranks(), &[3, 4, 1]);
        assert!(g.complex.is_exact().unwrap());
        assert!(!g.complex.check_homotopy_identity().unwrap().pass);
    }

    #[test]
    fn plain_refused_when_p_divides_n() {
        let g = graded_derham_level(3, 1, Field::Prime(3), JetMode::Plain).unwrap();
        assert!(g.refused.is_some());
        assert!(g.complex.homotopy().is_none());
    }

    #[test]
    fn full_level_homotopy() {
        for d in 1..=3 {
            for n in 0..=3 {
                let c = linearized_level_with_homotopy(n, d, Field::Rational).unwrap();
                assert!(c.check_homotopy_identity().unwrap().pass, "d={d} n={n}");
            }
        }
    }
}
