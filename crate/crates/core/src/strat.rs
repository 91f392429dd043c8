//! Stratified modules: flat connections, their Taylor stratifications,
//! the axiom checkers, induced towers and horizontal sections.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diffop::{DiffOperator, FreeModule, TruncatedTower};
use crate::error::{Error, Result};
use crate::exact::complex::{stable_kernel, MatrixTower};
use crate::exact::field::{Field, Scalar};
use crate::exact::matrix::Matrix;
use crate::exact::multi::{Multi, MultiBasis};
use crate::exact::poly::Poly;
use crate::exact::polymatrix::PolyMatrix;
use crate::jet::{JetAlgebra, JetMode, JetTensor, TensorLayout};

/// `nabla_j = d_j + A_j` on `O^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    field: Field,
    d: usize,
    rank: usize,
    a: Vec<PolyMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub pass: bool,
    /// First pair `(i, j)`, `i < j`, with nonzero curvature.
    pub offending: Option<(usize, usize)>,
}

impl Connection {
    pub fn new(field: Field, d: usize, rank: usize, a: Vec<PolyMatrix>) -> Result<Self> {
        if a.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: a.len() });
        }
        for m in &a {
            if m.rows() != rank || m.cols() != rank || m.nvars() != d || m.field() != field {
                return Err(Error::Shape("connection matrices must be rank x rank over the base".into()));
            }
        }
        Ok(Connection { field, d, rank, a })
    }

    pub fn trivial(field: Field, d: usize, rank: usize) -> Self {
        Connection {
            field,
            d,
            rank,
            a: vec![PolyMatrix::zeros(field, d, rank, rank); d],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrices(&self) -> &[PolyMatrix] {
        &self.a
    }

    /// `nabla_j s = d_j s + A_j s`.
    pub fn apply(&self, j: usize, s: &[Poly]) -> Vec<Poly> {
        let a = self.a[j].apply(s);
        s.iter().zip(a).map(|(f, g)| &f.derivative(j) + &g).collect()
    }

    /// `d_i A_j - d_j A_i + [A_i, A_j] = 0` for all `i < j`.
    pub fn flatness_check(&self) -> FlatnessReport {
        for i in 0..self.d {
            for j in i + 1..self.d {
                let di_aj = self.a[j].map(|p| p.derivative(i));
                let dj_ai = self.a[i].map(|p| p.derivative(j));
                let comm = &(&self.a[i] * &self.a[j]) - &(&self.a[j] * &self.a[i]);
                if !(&(&di_aj - &dj_ai) + &comm).is_zero() {
                    return FlatnessReport {
                        pass: false,
                        offending: Some((i, j)),
                    };
                }
            }
        }
        FlatnessReport { pass: true, offending: None }
    }

    /// The connection as an order-one operator `O^r -> Omega^1 (x) O^r`
    /// (row index `j * r + i`).
    pub fn as_operator(&self, mode: JetMode) -> DiffOperator {
        let (d, r) = (self.d, self.rank);
        let mut value = PolyMatrix::zeros(self.field, d, d * r, r);
        let mut partials = vec![PolyMatrix::zeros(self.field, d, d * r, r); d];
        for j in 0..d {
            value.set_block(j * r, 0, &self.a[j]);
            partials[j].set_block(j * r, 0, &PolyMatrix::identity(self.field, d, r));
        }
        let parts = crate::diffop::Order1Parts { value, partials };
        DiffOperator::from_order1_parts(FreeModule::new(d, r), FreeModule::new(d, d * r), mode, &parts)
            .expect("shapes agree")
    }
}

/// Stratification data `s'_n : L -> P^n (x) L`, `n <= top`, on `L = O^r`:
/// `s'_n(e_k) = sum_alpha sum_i T^n_alpha[i, k] xi^alpha (x) e_i`, the
/// entries `T` acting through the left structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratModule {
    field: Field,
    d: usize,
    rank: usize,
    mode: JetMode,
    levels: Vec<BTreeMap<Multi, PolyMatrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratReport {
    pub co_identity: bool,
    pub compatibility: bool,
    pub co_associativity: bool,
    /// Human-readable descriptions of the failing instances.
    pub failures: Vec<String>,
    pub pass: bool,
}

impl StratModule {
    /// Stores the given tables (index `n` is `s'_n`) after shape checks.
    /// The axioms are not enforced; see [`verify_stratification`].
    pub fn from_levels(field: Field, d: usize, rank: usize, mode: JetMode, levels: Vec<BTreeMap<Multi, PolyMatrix>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::MalformedStratification("no levels".into()));
        }
        let mut clean = Vec::with_capacity(levels.len());
        for (n, table) in levels.into_iter().enumerate() {
            let mut t = BTreeMap::new();
            for (alpha, m) in table {
                if alpha.dim() != d || alpha.degree() as usize > n {
                    return Err(Error::MalformedStratification(format!("index {alpha} at level {n}")));
                }
                if m.rows() != rank || m.cols() != rank || m.nvars() != d {
                    return Err(Error::Shape(format!("table entry {alpha} at level {n}")));
                }
                if !m.is_zero() {
                    t.insert(alpha, m);
                }
            }
            clean.push(t);
        }
        Ok(StratModule {
            field,
            d,
            rank,
            mode,
            levels: clean,
        })
    }

    /// All levels obtained by truncating one top table.
    pub fn from_top(field: Field, d: usize, rank: usize, mode: JetMode, top: u32, table: &BTreeMap<Multi, PolyMatrix>) -> Result<Self> {
        let levels = (0..=top)
            .map(|n| {
                table
                    .iter()
                    .filter(|(a, _)| a.degree() <= n)
                    .map(|(a, m)| (a.clone(), m.clone()))
                    .collect()
            })
            .collect();
        Self::from_levels(field, d, rank, mode, levels)
    }

    /// The trivial stratification `s'_n(e) = I (x) e`.
    pub fn trivial(field: Field, d: usize, rank: usize, mode: JetMode, top: u32) -> Self {
        let table = BTreeMap::from([(Multi::zero(d), PolyMatrix::identity(field, d, rank))]);
        Self::from_top(field, d, rank, mode, top, &table).expect("shapes agree")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mode(&self) -> JetMode {
        self.mode
    }

    pub fn module(&self) -> FreeModule {
        FreeModule::new(self.d, self.rank)
    }

    /// Truncation bound `N`.
    pub fn top(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    pub fn table(&self, n: u32) -> &BTreeMap<Multi, PolyMatrix> {
        &self.levels[n as usize]
    }

    pub fn table_at(&self, n: u32, alpha: &Multi) -> PolyMatrix {
        self.levels[n as usize]
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(self.field, self.d, self.rank, self.rank))
    }

    /// Replaces one table entry (used to build negative controls).
    pub fn with_entry(&self, n: u32, alpha: Multi, m: PolyMatrix) -> Result<Self> {
        let mut levels = self.levels.clone();
        levels[n as usize].insert(alpha, m);
        Self::from_levels(self.field, self.d, self.rank, self.mode, levels)
    }

    /// Keeps levels `0..=n`.
    pub fn truncated(&self, n: u32) -> Result<Self> {
        if n > self.top() {
            return Err(Error::OrderOutOfRange(format!("level {n} above {}", self.top())));
        }
        Ok(StratModule {
            levels: self.levels[..=n as usize].to_vec(),
            ..self.clone()
        })
    }

    pub fn jet_algebra(&self, n: u32) -> JetAlgebra {
        JetAlgebra::new(self.d, n, self.field, self.mode)
    }

    /// `s'_n(e_k)` as an element of `P^n (x) O^r`.
    pub fn image_of_basis(&self, n: u32, k: usize) -> JetTensor {
        let alg = self.jet_algebra(n);
        let mut t = JetTensor::zero(vec![alg], self.rank);
        for (alpha, m) in &self.levels[n as usize] {
            for i in 0..self.rank {
                t.add_term(vec![alpha.clone()], i, m.get(i, k).clone());
            }
        }
        t
    }

    /// `s'_n(sum f_k e_k) = sum taylor(f_k) s'_n(e_k)`.
    pub fn apply(&self, n: u32, s: &[Poly]) -> Result<JetTensor> {
        if s.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: s.len() });
        }
        let mut out = JetTensor::zero(vec![self.jet_algebra(n)], self.rank);
        for (k, f) in s.iter().enumerate() {
            let img = self.image_of_basis(n, k).mul_function_at(1, f);
            out = out.add(&img)?;
        }
        Ok(out)
    }

    /// Applies `s'_n` to the module of `t`, which lands in a new factor
    /// `P^n` on the coefficient side: the coefficients of `t` move to the
    /// right structure of the new factor and those of `s'_n` take their place.
    fn expand_module(&self, t: &JetTensor, n: u32) -> JetTensor {
        let mut factors = vec![self.jet_algebra(n)];
        factors.extend_from_slice(t.factors());
        let mut out = JetTensor::zero(factors.clone(), self.rank);
        for ((alphas, l), c) in t.terms() {
            let mut moved = JetTensor::zero(factors.clone(), self.rank);
            let mut key = vec![Multi::zero(self.d)];
            key.extend(alphas.iter().cloned());
            moved.add_term(key, *l, Poly::one(self.field, self.d));
            let moved = moved.mul_function_at(1, c);
            for ((keys, _), g) in moved.terms() {
                for (beta, m) in &self.levels[n as usize] {
                    let Some((s, gamma)) = self.jet_algebra(n).monomial_product(beta, &keys[0]) else {
                        continue;
                    };
                    for i in 0..self.rank {
                        let entry = m.get(i, *l);
                        if entry.is_zero() {
                            continue;
                        }
                        let mut key = keys.clone();
                        key[0] = gamma.clone();
                        out.add_term(key, i, (entry * g).scale(&s));
                    }
                }
            }
        }
        out
    }
}

/// Co-identity `(q (x) id) s'_n = id`, truncation compatibility, and
/// co-associativity for `m + n <= N`: `s'_n` into the outer factor followed
/// by `s'_m` on the module equals `delta^{m+n,n}` after `s'_{m+n}`, compared
/// in `P^m (x) P^n (x) L` with coefficients on the `P^m` side.
pub fn verify_stratification(m: &StratModule) -> Result<StratReport> {
    let mut failures = Vec::new();
    let zero = Multi::zero(m.d);
    let mut co_identity = true;
    for n in 0..=m.top() {
        if !m.table_at(n, &zero).is_identity() {
            co_identity = false;
            failures.push(format!("co-identity at level {n}"));
        }
    }
    let mut compatibility = true;
    for hi in 0..=m.top() {
        for lo in 0..hi {
            let truncated: BTreeMap<_, _> = m
                .table(hi)
                .iter()
                .filter(|(a, _)| a.degree() <= lo)
                .map(|(a, x)| (a.clone(), x.clone()))
                .collect();
            if &truncated != m.table(lo) {
                compatibility = false;
                failures.push(format!("truncation of level {hi} to {lo}"));
            }
        }
    }
    let mut co_associativity = true;
    for total in 0..=m.top() {
        for a in 0..=total {
            let b = total - a;
            for k in 0..m.rank {
                // s'_b lands in the outer factor, then s'_a on the module
                let lhs = m.expand_module(&m.image_of_basis(b, k), a);
                let rhs = m.image_of_basis(total, k).comult_factor(0, b)?;
                if lhs != rhs {
                    co_associativity = false;
                    failures.push(format!("co-associativity (m, n) = ({a}, {b}) on e{}", k + 1));
                }
            }
        }
    }
    Ok(StratReport {
        co_identity,
        compatibility,
        co_associativity,
        pass: co_identity && compatibility && co_associativity,
        failures,
    })
}

/// `s'_n(e) = sum_alpha xi^alpha (x) nabla^[alpha] e` (plain), with
/// `nabla^[alpha] = nabla^alpha / alpha!`; in divided mode
/// `s'_n(e) = sum_alpha xi^[alpha] (x) nabla^alpha e`.
pub fn taylor_stratification(conn: &Connection, top: u32, mode: JetMode) -> Result<StratModule> {
    if let Some((i, j)) = conn.flatness_check().offending {
        return Err(Error::NotFlat(i, j));
    }
    let (field, d, r) = (conn.field, conn.d, conn.rank);
    let basis = MultiBasis::up_to(d, top);
    // nabla^alpha applied to every basis vector, columns of a matrix.
    let mut powers: BTreeMap<Multi, PolyMatrix> = BTreeMap::new();
    let mut table = BTreeMap::new();
    for alpha in basis.iter() {
        let m = if alpha.is_zero() {
            PolyMatrix::identity(field, d, r)
        } else {
            let j = alpha.0.iter().position(|&e| e > 0).expect("nonzero index");
            let mut prev = alpha.clone();
            prev.0[j] -= 1;
            let p = &powers[&prev];
            let cols = (0..r).map(|k| conn.apply(j, &p.column(k))).collect();
            PolyMatrix::from_columns(field, d, r, cols)
        };
        powers.insert(alpha.clone(), m.clone());
        let entry = match mode {
            JetMode::Divided => m,
            JetMode::Plain => {
                let fact = alpha.factorial(field);
                if fact.is_zero() {
                    let worst = alpha.0.iter().copied().max().unwrap_or(0);
                    return Err(Error::NonInvertibleFactorial(worst as u64, field.characteristic()));
                }
                m.scale(&fact.inv()?)
            }
        };
        table.insert(alpha.clone(), entry);
    }
    StratModule::from_top(field, d, r, mode, top, &table)
}

/// Reads `A_j` from the `xi_j`-coefficient of `s'_1`.
pub fn extract_connection(m: &StratModule) -> Result<Connection> {
    if m.top() < 1 {
        return Err(Error::MalformedStratification("need level 1".into()));
    }
    if !m.table_at(1, &Multi::zero(m.d)).is_identity() {
        return Err(Error::MalformedStratification("I-coefficient of s'_1 is not the identity".into()));
    }
    let a = (0..m.d).map(|j| m.table_at(1, &Multi::unit(m.d, j))).collect();
    Connection::new(m.field, m.d, m.rank, a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismReport {
    pub pass: bool,
    pub failing_level: Option<u32>,
}

/// `(id_{P^n} (x) f) s'_{M,n} = s'_{N,n} f` for all common levels.
pub fn verify_strat_morphism(f: &PolyMatrix, source: &StratModule, target: &StratModule) -> Result<MorphismReport> {
    if f.cols() != source.rank || f.rows() != target.rank || source.d != target.d || source.mode != target.mode {
        return Err(Error::Shape("morphism does not match the modules".into()));
    }
    for n in 0..=source.top().min(target.top()) {
        for k in 0..source.rank {
            // f acts on the coefficient side: s'(f e) = f s'(e)
            let mut lhs = JetTensor::zero(vec![source.jet_algebra(n)], target.rank);
            for ((a, l), c) in source.image_of_basis(n, k).terms() {
                for i in 0..target.rank {
                    lhs.add_term(a.clone(), i, f.get(i, *l) * c);
                }
            }
            let rhs = target.apply(n, &f.column(k))?;
            if lhs != rhs {
                return Ok(MorphismReport {
                    pass: false,
                    failing_level: Some(n),
                });
            }
        }
    }
    Ok(MorphismReport { pass: true, failing_level: None })
}

/// The induced tower `{P^n (x) L}` with the stratification `delta^{m+n,n} (x) id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedTower {
    pub field: Field,
    pub d: usize,
    pub rank: usize,
    pub mode: JetMode,
    pub top: u32,
}

pub fn induced_stratification(l: &FreeModule, field: Field, mode: JetMode, top: u32) -> InducedTower {
    InducedTower {
        field,
        d: l.d,
        rank: l.rank,
        mode,
        top,
    }
}

impl InducedTower {
    pub fn jet_algebra(&self, n: u32) -> JetAlgebra {
        JetAlgebra::new(self.d, n, self.field, self.mode)
    }

    pub fn level_rank(&self, n: u32) -> usize {
        self.jet_algebra(n).rank() * self.rank
    }

    pub fn tower(&self) -> TruncatedTower {
        TruncatedTower::induced(self.field, self.d, self.mode, self.rank, self.top)
    }

    /// `P^{m+n} (x) L -> P^m (x) P^n (x) L` (constant matrix).
    pub fn strat_map(&self, m: u32, n: u32) -> Matrix {
        let src = self.jet_algebra(m + n);
        let layout = TensorLayout::new(&[src], self.rank);
        let out_layout = TensorLayout::new(&[self.jet_algebra(m), self.jet_algebra(n)], self.rank);
        let mut out = Matrix::zeros(self.field, out_layout.dim(), layout.dim());
        for col in 0..layout.dim() {
            let (alphas, k) = layout.key(col);
            let e = JetTensor::basis_element(vec![src], self.rank, alphas, k, Poly::one(self.field, self.d));
            let img = e.comult_factor(0, n).expect("split within order");
            for ((a, i), c) in img.terms() {
                out.set(out_layout.index(a, *i).expect("in layout"), col, c.constant_term());
            }
        }
        out
    }

    /// The tower analogue of [`verify_stratification`]: co-identity and
    /// co-associativity of the `delta` maps up to the top level.
    pub fn verify(&self) -> Result<StratReport> {
        let mut failures = Vec::new();
        let one = Poly::one(self.field, self.d);
        let mut co_identity = true;
        let mut co_associativity = true;
        for total in 0..=self.top {
            let alg = self.jet_algebra(total);
            let layout = TensorLayout::new(&[alg], self.rank);
            for col in 0..layout.dim() {
                let (alphas, k) = layout.key(col);
                let e = JetTensor::basis_element(vec![alg], self.rank, alphas, k, one.clone());
                for n in 0..=total {
                    let s = e.comult_factor(0, n)?;
                    if s.counit_factor(0) != e.truncate_factor(0, n)? {
                        co_identity = false;
                        failures.push(format!("co-identity at ({}, {n})", total - n));
                    }
                    for b in 0..=total - n {
                        let lhs = s.comult_factor(0, b)?;
                        let rhs = e.comult_factor(0, n + b)?.comult_factor(1, n)?;
                        if lhs != rhs {
                            co_associativity = false;
                            failures.push(format!("co-associativity at level {total}"));
                        }
                    }
                }
            }
        }
        Ok(StratReport {
            co_identity,
            compatibility: true,
            co_associativity,
            pass: co_identity && co_associativity,
            failures,
        })
    }

    /// `nabla-bar_n : P^n (x) L -> P^{n-1} (x) Omega^1 (x) L`,
    /// `xi^alpha (x) e |-> sum_j c_j xi^{alpha - e_j} (x) dx_j (x) e`
    /// with `c_j = alpha_j` (plain) or `1` (divided). Constant matrix;
    /// row index `(pos(beta) * d + j) * r + k`.
    pub fn nabla_bar(&self, n: u32) -> Matrix {
        let src = MultiBasis::up_to(self.d, n);
        let dst = MultiBasis::up_to(self.d, n.saturating_sub(1));
        let (d, r) = (self.d, self.rank);
        let rows = if n == 0 { 0 } else { dst.len() * d * r };
        let mut out = Matrix::zeros(self.field, rows, src.len() * r);
        if n == 0 {
            return out;
        }
        for (ai, alpha) in src.iter().enumerate() {
            for j in 0..d {
                if alpha.0[j] == 0 {
                    continue;
                }
                let mut beta = alpha.clone();
                beta.0[j] -= 1;
                let c = match self.mode {
                    JetMode::Plain => self.field.from_i64(alpha.0[j] as i64),
                    JetMode::Divided => self.field.one(),
                };
                let bi = dst.position(&beta).expect("lower order");
                for k in 0..r {
                    out.set((bi * d + j) * r + k, ai * r + k, c.clone());
                }
            }
        }
        out
    }

    /// Transition `P^{n+1} (x) L -> P^n (x) L` as a constant matrix.
    pub fn truncation(&self, n: u32) -> Matrix {
        truncation_matrix(self.d, n + 1, n, self.rank, self.field)
    }
}

/// The truncation `P^hi (x) O^r -> P^lo (x) O^r` in the tensor layout.
pub fn truncation_matrix(d: usize, hi: u32, lo: u32, rank: usize, field: Field) -> Matrix {
    let src = MultiBasis::up_to(d, hi);
    let dst = MultiBasis::up_to(d, lo);
    let mut out = Matrix::zeros(field, dst.len() * rank, src.len() * rank);
    for (i, a) in src.iter().enumerate() {
        if let Some(j) = dst.position(a) {
            for k in 0..rank {
                out.set(j * rank + k, i * rank + k, field.one());
            }
        }
    }
    out
}

/// A basis of horizontal elements with the stabilization status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizontalSections {
    /// Each element as a vector of polynomials: the module coordinates for a
    /// stratified module, or the `P^probe (x) L` coordinates for a tower.
    pub basis: Vec<Vec<Poly>>,
    pub stabilized: bool,
}

/// Kernel of `nabla : L_{<= D} -> Omega^1 (x) L` for a stratified module.
pub fn horizontal_sections(m: &StratModule, deg_bound: u32) -> Result<HorizontalSections> {
    let conn = extract_connection(m)?;
    let op = conn.as_operator(m.mode);
    let a_deg = conn.matrices().iter().filter_map(PolyMatrix::degree).max().unwrap_or(0);
    let lin = op.k_linearize(deg_bound, deg_bound + a_deg)?;
    let basis = lin
        .kernel()?
        .iter()
        .map(|v| crate::exact::polymatrix::unflatten_vector(m.field, m.d, v, deg_bound))
        .collect();
    Ok(HorizontalSections { basis, stabilized: true })
}

/// Stable kernel of the `nabla-bar` tower of an induced object, with
/// coefficients of degree `<= D`, seen in level `probe`.
pub fn horizontal_sections_induced(t: &InducedTower, deg_bound: u32, probe: u32, margin: u32) -> Result<HorizontalSections> {
    let top = probe + margin + 1;
    if top > t.top {
        return Err(Error::OrderOutOfRange(format!("level {top} above the tower top {}", t.top)));
    }
    let nd = MultiBasis::up_to(t.d, deg_bound).len();
    let id = Matrix::identity(t.field, nd);
    // Module coordinate outermost, coefficient monomial innermost.
    let lin = |m: &Matrix| m.kron(&id);
    let maps = (0..=top).map(|n| lin(&t.nabla_bar(n))).collect();
    let src = (0..top).map(|n| lin(&t.truncation(n))).collect();
    let dst = (0..top)
        .map(|n| {
            if n == 0 {
                Matrix::zeros(t.field, 0, t.d * t.rank * nd)
            } else {
                let tr = truncation_matrix(t.d, n, n - 1, t.d * t.rank, t.field);
                lin(&tr)
            }
        })
        .collect();
    let tower = MatrixTower::new(maps, src, dst)?;
    let k = stable_kernel(&tower, probe as usize, margin as usize)?;
    let rank = t.level_rank(probe);
    let basis = k
        .basis
        .iter()
        .map(|v| crate::exact::polymatrix::unflatten_vector(t.field, t.d, v, deg_bound))
        .inspect(|v| debug_assert_eq!(v.len(), rank))
        .collect();
    Ok(HorizontalSections {
        basis,
        stabilized: k.stabilized,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseReport {
    /// Number of scalar unknowns (entries of all level maps).
    pub unknowns: usize,
    /// Dimension of the space of compatible constant tower maps.
    pub compatible_dim: usize,
    /// Dimension of the compatible maps whose counit collapse vanishes.
    pub kernel_dim: usize,
    pub pass: bool,
}

/// Constant-coefficient maps `g_n : P^{n+r} (x) L -> P^n (x) L`, `n + r <= top`,
/// compatible with the truncations and with the induced stratifications,
/// are determined by their collapse `(q (x) id) g_0`: the kernel of the
/// collapse is computed exactly.
pub fn collapse_injectivity(field: Field, d: usize, rank: usize, mode: JetMode, shift: u32, top: u32) -> Result<CollapseReport> {
    if shift > top {
        return Err(Error::OrderOutOfRange(format!("shift {shift} above top {top}")));
    }
    let alg = |n: u32| JetAlgebra::new(d, n, field, mode);
    let levels = top - shift;
    // unknown offsets per level
    let mut offsets = Vec::new();
    let mut total = 0usize;
    let dims = |n: u32| (alg(n).rank() * rank, alg(n + shift).rank() * rank);
    for n in 0..=levels {
        offsets.push(total);
        let (rows, cols) = dims(n);
        total += rows * cols;
    }
    let var = |n: u32, row: usize, col: usize| offsets[n as usize] + row * dims(n).1 + col;
    let mut constraints: Vec<Vec<(usize, Scalar)>> = Vec::new();
    let one = Poly::one(field, d);
    // Compatibility with delta: delta^{m+n,n} g_{m+n} = (id_{P^m} (x) g_n) delta^{m+n+r, n+r}.
    for n in 0..=levels {
        for m in 0..=levels - n {
            let src_alg = alg(m + n + shift);
            let src_layout = TensorLayout::new(&[src_alg], rank);
            let mid_layout = TensorLayout::new(&[alg(m + n)], rank);
            let out_layout = TensorLayout::new(&[alg(m), alg(n)], rank);
            let gn_src = TensorLayout::new(&[alg(n + shift)], rank);
            for col in 0..src_layout.dim() {
                let mut rows: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
                // left side
                for mid in 0..mid_layout.dim() {
                    let (a, k) = mid_layout.key(mid);
                    let e = JetTensor::basis_element(vec![alg(m + n)], rank, a, k, one.clone());
                    for ((key, i), c) in e.comult_factor(0, n)?.terms() {
                        let r = out_layout.index(key, *i).expect("in layout");
                        rows.entry(r).or_default().push((var(m + n, mid, col), c.constant_term()));
                    }
                }
                // right side
                let (a, k) = src_layout.key(col);
                let e = JetTensor::basis_element(vec![src_alg], rank, a, k, one.clone());
                for ((key, i), c) in e.comult_factor(0, n + shift)?.terms() {
                    let gcol = gn_src.index(&key[1..], *i).expect("in layout");
                    let c = c.constant_term();
                    for row in 0..dims(n).0 {
                        let (b, l) = TensorLayout::new(&[alg(n)], rank).key(row);
                        let r = out_layout.index(&[key[0].clone(), b[0].clone()], l).expect("in layout");
                        rows.entry(r).or_default().push((var(n, row, gcol), -c.clone()));
                    }
                }
                constraints.extend(rows.into_values());
            }
        }
    }
    // Compatibility with truncations: t_n g_{n+1} = g_n t_{n+r}.
    for n in 0..levels {
        let t_lo = truncation_matrix(d, n + 1, n, rank, field);
        let t_hi = truncation_matrix(d, n + 1 + shift, n + shift, rank, field);
        let (rows_n, cols_n) = dims(n);
        let (rows_n1, cols_n1) = dims(n + 1);
        for i in 0..rows_n {
            for j in 0..cols_n1 {
                let mut c = Vec::new();
                for k in 0..rows_n1 {
                    let t = t_lo.get(i, k);
                    if !t.is_zero() {
                        c.push((var(n + 1, k, j), t.clone()));
                    }
                }
                for k in 0..cols_n {
                    let t = t_hi.get(k, j);
                    if !t.is_zero() {
                        c.push((var(n, i, k), -t.clone()));
                    }
                }
                constraints.push(c);
            }
        }
    }
    let to_matrix = |rows: &[Vec<(usize, Scalar)>]| {
        let mut m = Matrix::zeros(field, rows.len(), total);
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in r {
                m.add_at(i, *j, c);
            }
        }
        m
    };
    let system = to_matrix(&constraints);
    let compatible_dim = total - system.rank()?;
    // collapse: rows of g_0 at the I-components
    let mut with_collapse = constraints.clone();
    let g0_rows = TensorLayout::new(&[alg(0)], rank);
    for row in 0..g0_rows.dim() {
        for col in 0..dims(0).1 {
            with_collapse.push(vec![(var(0, row, col), field.one())]);
        }
    }
    let kernel_dim = total - to_matrix(&with_collapse).rank()?;
    Ok(CollapseReport {
        unknowns: total,
        compatible_dim,
        kernel_dim,
        pass: kernel_dim == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    fn q() -> Field {
        Field::Rational
    }

    fn pm(rows: &[&[&str]], d: usize) -> PolyMatrix {
        PolyMatrix::from_rows(
            q(),
            d,
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(s, q(), d).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn nilpotent_taylor() {
        let conn = Connection::new(q(), 1, 2, vec![pm(&[&["0", "1"], &["0", "0"]], 1)]).unwrap();
        let s = taylor_stratification(&conn, 3, JetMode::Plain).unwrap();
        let xi = Multi(vec![1]);
        assert_eq!(s.table_at(3, &xi), pm(&[&["0", "1"], &["0", "0"]], 1));
        assert!(s.table_at(3, &Multi(vec![2])).is_zero());
        assert!(verify_stratification(&s).unwrap().pass);
        assert_eq!(extract_connection(&s).unwrap(), conn);
    }

    #[test]
    fn gauge_transform_is_a_morphism() {
        // f = [[1, x], [0, 1]] carries A = [[x, 1], [0, 0]] to f A f^-1 - f' f^-1
        let source = Connection::new(q(), 1, 2, vec![pm(&[&["x1", "1"], &["0", "0"]], 1)]).unwrap();
        let target = Connection::new(q(), 1, 2, vec![pm(&[&["x1", "-x1^2"], &["0", "0"]], 1)]).unwrap();
        let f = pm(&[&["1", "x1"], &["0", "1"]], 1);
        for mode in [JetMode::Plain, JetMode::Divided] {
            let s = taylor_stratification(&source, 3, mode).unwrap();
            let t = taylor_stratification(&target, 3, mode).unwrap();
            assert!(verify_stratification(&s).unwrap().pass);
            assert!(verify_stratification(&t).unwrap().pass);
            assert!(verify_strat_morphism(&f, &s, &t).unwrap().pass);
            let report = verify_strat_morphism(&f.transpose(), &s, &t).unwrap();
            assert_eq!(report.failing_level, Some(1));
            let id = PolyMatrix::identity(q(), 1, 2);
            assert_eq!(verify_strat_morphism(&id, &s, &t).unwrap().failing_level, Some(1));
        }
    }

    #[test]
    fn polynomial_twist_is_stratification() {
        let conn = Connection::new(q(), 1, 1, vec![pm(&[&["x1"]], 1)]).unwrap();
        let s = taylor_stratification(&conn, 4, JetMode::Plain).unwrap();
        assert!(verify_stratification(&s).unwrap().pass);
        let d = taylor_stratification(&conn, 4, JetMode::Divided).unwrap();
        assert!(verify_stratification(&d).unwrap().pass);
    }

    #[test]
    fn perturbed_level_fails() {
        let conn = Connection::new(q(), 1, 1, vec![pm(&[&["3"]], 1)]).unwrap();
        let s = taylor_stratification(&conn, 2, JetMode::Plain).unwrap();
        let bad = s.with_entry(1, Multi(vec![1]), pm(&[&["4"]], 1)).unwrap();
        let r = verify_stratification(&bad).unwrap();
        assert!(!r.co_associativity);
    }

    #[test]
    fn non_flat_rejected() {
        let conn = Connection::new(q(), 2, 1, vec![pm(&[&["x2"]], 2), pm(&[&["0"]], 2)]).unwrap();
        assert_eq!(conn.flatness_check().offending, Some((0, 1)));
        assert!(matches!(taylor_stratification(&conn, 2, JetMode::Plain), Err(Error::NotFlat(0, 1))));
    }

    #[test]
    fn induced_tower_sections() {
        let t = induced_stratification(&FreeModule::new(1, 1), q(), JetMode::Plain, 4);
        assert!(t.verify().unwrap().pass);
        let h = horizontal_sections_induced(&t, 2, 1, 1).unwrap();
        assert!(h.stabilized);
        assert_eq!(h.basis.len(), 3);
        for v in &h.basis {
            assert!(v[1].is_zero());
        }
    }

    #[test]
    fn collapse_is_injective() {
        let r = collapse_injectivity(q(), 1, 1, JetMode::Plain, 1, 3).unwrap();
        assert_eq!(r.compatible_dim, 2);
        assert!(r.pass);
    }
}
