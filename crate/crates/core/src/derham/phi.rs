//! The structural maps `sigma`, `eta`, the map `Phi` from the De Rham
//! complex of the linearization back to `F`, and bicomplexes.

use serde::{Deserialize, Serialize};

use crate::diffop::{DiffOperator, DifferentialComplex, FreeModule, Order1Parts};
use crate::error::{Error, Result};
use crate::exact::complex::ChainComplex;
use crate::exact::field::{Field, Scalar};
use crate::exact::matrix::Matrix;
use crate::exact::multi::{Multi, MultiBasis};
use crate::exact::poly::Poly;
use crate::exact::polymatrix::PolyMatrix;
use crate::jet::JetMode;

use super::forms::{wedge_basis, wedge_indices};

/// `sigma^j : Omega^j -> Omega^1 (x) Omega^{j-1}`,
/// `dx_I |-> (j-1)! sum_m (-1)^{m+1} dx_{i_m} (x) dx_{I - i_m}`;
/// row index `a * C(d, j-1) + pos(J)`.
pub fn shuffle_sigma(d: usize, j: usize, field: Field) -> Result<Matrix> {
    if j == 0 {
        return Err(Error::OrderOutOfRange("sigma needs degree >= 1".into()));
    }
    let src = wedge_basis(d, j);
    let dst = wedge_basis(d, j - 1);
    let norm = field.factorial(j as u64 - 1);
    let mut m = Matrix::zeros(field, d * dst.len(), src.len());
    for (c, form) in src.iter().enumerate() {
        for (pos, &i) in form.iter().enumerate() {
            let rest: Vec<usize> = form.iter().copied().filter(|&x| x != i).collect();
            let r = dst.iter().position(|x| *x == rest).expect("basis form");
            let sign = if pos % 2 == 0 { norm.clone() } else { -norm.clone() };
            m.add_at(i * dst.len() + r, c, &sign);
        }
    }
    Ok(m)
}

fn parts(f: &DifferentialComplex, i: usize) -> Result<Order1Parts> {
    f.ops()
        .get(i)
        .ok_or_else(|| Error::OrderOutOfRange(format!("no differential in degree {i}")))?
        .order1_parts()
}

/// `X_{a_1} o ... o X_{a_j}` from `F^start` to `F^{start+j}` (last index
/// applied first).
fn partial_chain(f: &DifferentialComplex, start: usize, idx: &[usize]) -> Result<PolyMatrix> {
    let rank = f.modules()[start].rank;
    let mut acc = PolyMatrix::identity(f.field(), f.dim(), rank);
    for (step, &a) in idx.iter().rev().enumerate() {
        let x = &parts(f, start + step)?.partials[a];
        acc = x.checked_mul(&acc)?;
    }
    Ok(acc)
}

/// `eta^{i,j} : Omega^j (x) F^{i-j} -> F^i`,
/// `f dx_I (x) s |-> f X_{i_1} o ... o X_{i_j}(s)`; column `pos(I) * r + k`.
pub fn eta_structure(f: &DifferentialComplex, i: usize, j: usize) -> Result<PolyMatrix> {
    let start = i.checked_sub(j).ok_or_else(|| Error::OrderOutOfRange("j > i".into()))?;
    let (field, d) = (f.field(), f.dim());
    let r = f.modules()[start].rank;
    let forms = wedge_basis(d, j);
    let mut out = PolyMatrix::zeros(field, d, f.modules()[i].rank, forms.len() * r);
    for (fi, form) in forms.iter().enumerate() {
        out.set_block(0, fi * r, &partial_chain(f, start, form)?);
    }
    Ok(out)
}

/// `sigma^{i,j}`: the shuffle `dx_I |-> sum_perm sgn xi_{perm} (x) ...`
/// followed by the bars, i.e. `sum_perm sgn X_{perm(1)} o ... o X_{perm(j)}`.
pub fn sigma_structure(f: &DifferentialComplex, i: usize, j: usize) -> Result<PolyMatrix> {
    let start = i.checked_sub(j).ok_or_else(|| Error::OrderOutOfRange("j > i".into()))?;
    let (field, d) = (f.field(), f.dim());
    let r = f.modules()[start].rank;
    let forms = wedge_basis(d, j);
    let mut out = PolyMatrix::zeros(field, d, f.modules()[i].rank, forms.len() * r);
    for (fi, form) in forms.iter().enumerate() {
        let mut block = PolyMatrix::zeros(field, d, f.modules()[i].rank, r);
        for perm in permutations(form.len()) {
            let idx: Vec<usize> = perm.iter().map(|&p| form[p]).collect();
            let (sign, _) = wedge_indices(&idx, &[]).expect("distinct indices");
            block = &block + &partial_chain(f, start, &idx)?.scale(&field.from_i64(sign));
        }
        out.set_block(0, fi * r, &block);
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Layout of `G^{q,r}_l = Omega^q (x) P^l (x) F^r`: index
/// `(pos(I) * |P^l| + pos(alpha)) * rank + k`.
#[derive(Clone, Debug)]
struct GLayout {
    forms: Vec<Vec<usize>>,
    jets: MultiBasis,
    rank: usize,
}

impl GLayout {
    fn new(d: usize, q: usize, level: u32, rank: usize) -> Self {
        GLayout {
            forms: wedge_basis(d, q),
            jets: MultiBasis::up_to(d, level),
            rank,
        }
    }

    fn dim(&self) -> usize {
        self.forms.len() * self.jets.len() * self.rank
    }

    fn index(&self, form: &[usize], alpha: &Multi, k: usize) -> Option<usize> {
        let f = self.forms.iter().position(|x| x == form)?;
        Some((f * self.jets.len() + self.jets.position(alpha)?) * self.rank + k)
    }
}

fn g_module(d: usize, q: usize, level: u32, rank: usize) -> FreeModule {
    FreeModule::new(d, GLayout::new(d, q, level, rank).dim())
}

/// `Phi^{q,r}_l : Omega^q (x) P^l (x) F^r -> F^{q+r}`:
/// `dx_I (x) xi^alpha (x) e |-> [alpha = 0] eta(dx_I (x) e)`.
pub fn phi_component(f: &DifferentialComplex, q: usize, r: usize, level: u32) -> Result<PolyMatrix> {
    let (field, d) = (f.field(), f.dim());
    let rank = f.modules()[r].rank;
    let lay = GLayout::new(d, q, level, rank);
    let eta = eta_structure(f, q + r, q)?;
    let zero = Multi::zero(d);
    let mut out = PolyMatrix::zeros(field, d, f.modules()[q + r].rank, lay.dim());
    for (fi, form) in lay.forms.iter().enumerate() {
        for k in 0..rank {
            let col = lay.index(form, &zero, k).expect("in layout");
            for row in 0..out.rows() {
                out.set(row, col, eta.get(row, fi * rank + k).clone());
            }
        }
    }
    Ok(out)
}

/// `Phi^i = sum_j Phi^{i,j}` on `(+)_j Omega^j (x) P^l (x) F^{i-j}`, blocks
/// ordered by `j`.
pub fn phi_map(f: &DifferentialComplex, level: u32, i: usize) -> Result<PolyMatrix> {
    if i >= f.modules().len() {
        return Err(Error::OrderOutOfRange(format!("no module in degree {i}")));
    }
    let blocks = (0..=i.min(f.dim()))
        .map(|j| phi_component(f, j, i - j, level))
        .collect::<Result<Vec<_>>>()?;
    let cols = blocks.iter().map(PolyMatrix::cols).sum();
    let mut out = PolyMatrix::zeros(f.field(), f.dim(), f.modules()[i].rank, cols);
    let mut c0 = 0;
    for b in &blocks {
        out.set_block(0, c0, b);
        c0 += b.cols();
    }
    Ok(out)
}

/// The horizontal differential `d' : G^{q,r}_{l+1} -> G^{q+1,r}_l`,
/// `f dx_I (x) xi^alpha (x) e |-> sum_j dx_j ^ dx_I (x) (d_j f xi^alpha - c f xi^{alpha - e_j}) (x) e`
/// with `c = alpha_j` (plain) or `1` (divided).
pub fn d_prime(field: Field, d: usize, mode: JetMode, q: usize, rank: usize, level: u32) -> Result<DiffOperator> {
    let src = GLayout::new(d, q, level + 1, rank);
    let dst = GLayout::new(d, q + 1, level, rank);
    let mut value = PolyMatrix::zeros(field, d, dst.dim(), src.dim());
    let mut partials = vec![PolyMatrix::zeros(field, d, dst.dim(), src.dim()); d];
    for form in &src.forms {
        for alpha in src.jets.iter() {
            for k in 0..rank {
                let col = src.index(form, alpha, k).expect("in layout");
                for j in 0..d {
                    let Some((s, wf)) = wedge_indices(&[j], form) else { continue };
                    if let Some(row) = dst.index(&wf, alpha, k) {
                        partials[j].set(row, col, Poly::from_i64(field, d, s));
                    }
                    if alpha.0[j] > 0 {
                        let mut beta = alpha.clone();
                        beta.0[j] -= 1;
                        let c = match mode {
                            JetMode::Plain => alpha.0[j] as i64,
                            JetMode::Divided => 1,
                        };
                        let row = dst.index(&wf, &beta, k).expect("lower order");
                        value.add_at(row, col, &Poly::from_i64(field, d, -c * s));
                    }
                }
            }
        }
    }
    DiffOperator::from_order1_parts(
        g_module(d, q, level + 1, rank),
        g_module(d, q + 1, level, rank),
        mode,
        &Order1Parts { value, partials },
    )
}

/// The vertical differential `d'' = id_{Omega^q} (x) Q0(d_F^r)_l :
/// G^{q,r}_{l+1} -> G^{q,r+1}_l`.
pub fn d_second(f: &DifferentialComplex, q: usize, r: usize, level: u32) -> Result<PolyMatrix> {
    let op = f.ops()[r].with_order(1)?;
    let qm = op.linearize(level);
    let forms = wedge_basis(f.dim(), q).len();
    let mut out = PolyMatrix::zeros(f.field(), f.dim(), forms * qm.rows(), forms * qm.cols());
    for i in 0..forms {
        out.set_block(i * qm.rows(), i * qm.cols(), &qm);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiCheck {
    /// Source level `l + 1`.
    pub level: u32,
    pub q: usize,
    pub r: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub checks: Vec<PhiCheck>,
    /// Per degree: whether `Phi o d^1 = id`.
    pub inverse_to_d1: Vec<bool>,
    pub pass: bool,
}

/// Checks `d_F o Phi^{q,r} = Phi^{q+1,r} o d' + (-1)^q Phi^{q,r+1} o d''` as
/// operators on `G^{q,r}_{l+1}` for `l + 1 <= top`, and `Phi o d^1 = id`.
pub fn verify_phi_chainmap(f: &DifferentialComplex, top: u32) -> Result<PhiReport> {
    let (field, d, mode) = (f.field(), f.dim(), f.mode());
    let nmod = f.modules().len();
    let mut checks = Vec::new();
    for level in 0..top {
        for q in 0..=d {
            for r in 0..nmod {
                if q + r + 1 >= nmod {
                    continue;
                }
                let rank = f.modules()[r].rank;
                let phi = DiffOperator::order_zero(phi_component(f, q, r, level + 1)?, mode);
                let lhs = f.ops()[q + r].compose(&phi)?;
                let mut rhs = DiffOperator::new(
                    g_module(d, q, level + 1, rank),
                    f.modules()[q + r + 1].clone(),
                    field,
                    mode,
                    1,
                    [],
                )?;
                if q < d {
                    let phi1 = DiffOperator::order_zero(phi_component(f, q + 1, r, level)?, mode);
                    rhs = rhs.add(&phi1.compose(&d_prime(field, d, mode, q, rank, level)?)?)?;
                }
                let phi2 = phi_component(f, q, r + 1, level)?;
                let vert = DiffOperator::order_zero(&phi2 * &d_second(f, q, r, level)?, mode);
                let vert = if q % 2 == 0 { vert } else { vert.neg() };
                rhs = rhs.add(&vert)?;
                checks.push(PhiCheck {
                    level: level + 1,
                    q,
                    r,
                    pass: lhs.add(&rhs.neg())?.is_zero(),
                });
            }
        }
    }
    let inverse_to_d1 = (0..nmod)
        .map(|i| phi_after_d1_is_identity(f, i, top))
        .collect::<Result<Vec<_>>>()?;
    let pass = checks.iter().all(|c| c.pass) && inverse_to_d1.iter().all(|&b| b);
    Ok(PhiReport {
        checks,
        inverse_to_d1,
        pass,
    })
}

/// The operator `d^1 : F^i -> P^l (x) F^i`, `f e |-> (1 (x) f) (x) e`.
pub fn d1_inclusion(f: &DifferentialComplex, i: usize, level: u32) -> Result<DiffOperator> {
    let (field, d, mode) = (f.field(), f.dim(), f.mode());
    let rank = f.modules()[i].rank;
    let lay = GLayout::new(d, 0, level, rank);
    let mut bar = Vec::new();
    for beta in lay.jets.iter() {
        let mut m = PolyMatrix::zeros(field, d, lay.dim(), rank);
        for k in 0..rank {
            m.set(lay.index(&[], beta, k).expect("in layout"), k, Poly::one(field, d));
        }
        bar.push((beta.clone(), m));
    }
    DiffOperator::new(f.modules()[i].clone(), g_module(d, 0, level, rank), field, mode, level, bar)
}

fn phi_after_d1_is_identity(f: &DifferentialComplex, i: usize, level: u32) -> Result<bool> {
    let d1 = d1_inclusion(f, i, level)?;
    let phi = DiffOperator::order_zero(phi_component(f, 0, i, level)?, f.mode());
    let comp = phi.compose(&d1)?;
    Ok(comp.effective_order() == 0 && comp.bar_at(&Multi::zero(f.dim())).is_identity())
}

/// A bicomplex of finite-dimensional spaces `I^{p,q}` with `d' : (p,q) -> (p+1,q)`
/// and `d'' : (p,q) -> (p,q+1)` commuting.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    field: Field,
    ranks: Vec<Vec<usize>>,
    horizontal: Vec<Vec<Matrix>>,
    vertical: Vec<Vec<Matrix>>,
}

impl Bicomplex {
    /// `horizontal[p][q]` for `p + 1 < P`, `vertical[p][q]` for `q + 1 < Q`.
    pub fn new(field: Field, ranks: Vec<Vec<usize>>, horizontal: Vec<Vec<Matrix>>, vertical: Vec<Vec<Matrix>>) -> Result<Self> {
        let np = ranks.len();
        let nq = ranks.first().map_or(0, Vec::len);
        if ranks.iter().any(|r| r.len() != nq) {
            return Err(Error::Shape("ragged bicomplex grid".into()));
        }
        if horizontal.len() != np.saturating_sub(1) || vertical.len() != np {
            return Err(Error::Shape("bicomplex differentials do not match the grid".into()));
        }
        for p in 0..np {
            for q in 0..nq {
                if p + 1 < np {
                    let h = &horizontal[p][q];
                    if h.rows() != ranks[p + 1][q] || h.cols() != ranks[p][q] {
                        return Err(Error::Shape(format!("d' at ({p},{q})")));
                    }
                }
                if q + 1 < nq {
                    let v = &vertical[p][q];
                    if v.rows() != ranks[p][q + 1] || v.cols() != ranks[p][q] {
                        return Err(Error::Shape(format!("d'' at ({p},{q})")));
                    }
                }
            }
        }
        let b = Bicomplex {
            field,
            ranks,
            horizontal,
            vertical,
        };
        for p in 0..np {
            for q in 0..nq {
                if p + 2 < np && !(&b.horizontal[p + 1][q] * &b.horizontal[p][q]).is_zero() {
                    return Err(Error::Invalid(format!("d' d' != 0 at ({p},{q})")));
                }
                if q + 2 < nq && !(&b.vertical[p][q + 1] * &b.vertical[p][q]).is_zero() {
                    return Err(Error::Invalid(format!("d'' d'' != 0 at ({p},{q})")));
                }
                if p + 1 < np && q + 1 < nq {
                    let a = &b.horizontal[p][q + 1] * &b.vertical[p][q];
                    let c = &b.vertical[p + 1][q] * &b.horizontal[p][q];
                    if a != c {
                        return Err(Error::Invalid(format!("d' and d'' do not commute at ({p},{q})")));
                    }
                }
            }
        }
        Ok(b)
    }

    /// A single row `I^{0,0} -> I^{0,1} -> ...`.
    pub fn row(c: &ChainComplex) -> Result<Self> {
        Self::new(c.field(), vec![c.ranks().to_vec()], vec![], vec![c.differentials().to_vec()])
    }

    /// A single column `I^{0,0} -> I^{1,0} -> ...`.
    pub fn column(c: &ChainComplex) -> Result<Self> {
        let ranks = c.ranks().iter().map(|&r| vec![r]).collect();
        let horizontal = c.differentials().iter().map(|m| vec![m.clone()]).collect();
        let vertical = c.ranks().iter().map(|_| vec![]).collect();
        Self::new(c.field(), ranks, horizontal, vertical)
    }

    pub fn ranks(&self) -> &[Vec<usize>] {
        &self.ranks
    }
}

/// `Tot^n = (+)_{p+q=n} I^{p,q}` (blocks by increasing `p`) with
/// `d = d' + (-1)^p d''`.
pub fn total_complex(b: &Bicomplex) -> Result<ChainComplex> {
    let np = b.ranks.len();
    let nq = b.ranks.first().map_or(0, Vec::len);
    if np == 0 || nq == 0 {
        return ChainComplex::new(b.field, vec![], vec![]);
    }
    let top = np + nq - 2;
    let cells = |n: usize| -> Vec<(usize, usize)> { (0..np).filter(|&p| p <= n && n - p < nq).map(|p| (p, n - p)).collect() };
    let offset = |n: usize, p: usize| -> usize { cells(n).iter().take_while(|(a, _)| *a < p).map(|&(a, c)| b.ranks[a][c]).sum() };
    let ranks: Vec<usize> = (0..=top).map(|n| cells(n).iter().map(|&(p, q)| b.ranks[p][q]).sum()).collect();
    let mut diffs = Vec::new();
    for n in 0..top {
        let mut m = Matrix::zeros(b.field, ranks[n + 1], ranks[n]);
        for (p, q) in cells(n) {
            let col = offset(n, p);
            if p + 1 < np {
                m.set_block(offset(n + 1, p + 1), col, &b.horizontal[p][q]);
            }
            if q + 1 < nq {
                let v = &b.vertical[p][q];
                let v = if p % 2 == 0 { v.clone() } else { -v };
                m.set_block(offset(n + 1, p), col, &v);
            }
        }
        diffs.push(m);
    }
    ChainComplex::new(b.field, ranks, diffs).map_err(|e| match e {
        Error::Invalid(msg) => Error::Invalid(format!("total differential does not square to zero: {msg}")),
        other => other,
    })
}

/// `I^{p,q} = Omega^p (x) P^{top-p-q} (x) F^q`, linearized over `k` with
/// coefficient degree `<= D + q a` (`a` the largest degree in the bars of
/// `F`); zero where the level would be negative.
pub fn derham_linearization_bicomplex(f: &DifferentialComplex, top: u32, deg_bound: u32) -> Result<Bicomplex> {
    let (field, d, mode) = (f.field(), f.dim(), f.mode());
    let nq = f.modules().len();
    let np = d + 1;
    let a = f
        .ops()
        .iter()
        .flat_map(|op| op.bar().values().filter_map(PolyMatrix::degree).collect::<Vec<_>>())
        .max()
        .unwrap_or(0);
    let bound = |q: usize| deg_bound + q as u32 * a;
    let monos = |q: usize| MultiBasis::up_to(d, bound(q)).len();
    let level = |p: usize, q: usize| -> Option<u32> { (top as i64 - (p + q) as i64).try_into().ok() };
    let rank = |p: usize, q: usize| -> usize {
        level(p, q).map_or(0, |l| GLayout::new(d, p, l, f.modules()[q].rank).dim() * monos(q))
    };
    let ranks: Vec<Vec<usize>> = (0..np).map(|p| (0..nq).map(|q| rank(p, q)).collect()).collect();
    let mut horizontal = Vec::new();
    for p in 0..np.saturating_sub(1) {
        let mut row = Vec::new();
        for q in 0..nq {
            let m = match level(p, q) {
                Some(l) if l >= 1 => d_prime(field, d, mode, p, f.modules()[q].rank, l - 1)?.k_linearize(bound(q), bound(q))?,
                _ => Matrix::zeros(field, ranks[p + 1][q], ranks[p][q]),
            };
            row.push(m);
        }
        horizontal.push(row);
    }
    let mut vertical = Vec::new();
    for p in 0..np {
        let mut col = Vec::new();
        for q in 0..nq.saturating_sub(1) {
            let m = match level(p, q) {
                Some(l) if l >= 1 => d_second(f, p, q, l - 1)?.k_linearize(bound(q), bound(q + 1))?,
                _ => Matrix::zeros(field, ranks[p][q + 1], ranks[p][q]),
            };
            col.push(m);
        }
        vertical.push(col);
    }
    Bicomplex::new(field, ranks, horizontal, vertical)
}

/// Scalar used by tests and reports: `j!` in the field.
pub fn factorial(field: Field, j: usize) -> Scalar {
    field.factorial(j as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derham::complexes::derham_complex;

    #[test]
    fn sigma_two_forms() {
        let s = shuffle_sigma(2, 2, Field::Rational).unwrap();
        // dx1^dx2 |-> dx1 (x) dx2 - dx2 (x) dx1
        assert_eq!(s.column(0), vec![Field::Rational.from_i64(0), Field::Rational.from_i64(1), Field::Rational.from_i64(-1), Field::Rational.from_i64(0)]);
    }

    #[test]
    fn sigma_is_j_factorial_eta() {
        let f = derham_complex(Field::Rational, 3, JetMode::Plain).unwrap();
        for i in 0..=3 {
            for j in 0..=i {
                let s = sigma_structure(&f, i, j).unwrap();
                let e = eta_structure(&f, i, j).unwrap();
                assert_eq!(s, e.scale(&factorial(Field::Rational, j)), "i={i} j={j}");
            }
        }
    }

    #[test]
    fn derham_phi_chain_map() {
        for d in 1..=2 {
            let f = derham_complex(Field::Rational, d, JetMode::Plain).unwrap();
            let r = verify_phi_chainmap(&f, 2).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn bicomplex_total_squares_to_zero() {
        let f = derham_complex(Field::Rational, 1, JetMode::Plain).unwrap();
        let b = derham_linearization_bicomplex(&f, 2, 1).unwrap();
        total_complex(&b).unwrap();
    }
}
