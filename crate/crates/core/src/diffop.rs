//! Differential operators between free modules `O^r -> O^s` over the
//! polynomial ring, stored through their bar table
//! `alpha |-> (e |-> Dbar(xi^alpha (x) e))`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::Field;
use crate::exact::matrix::Matrix;
use crate::exact::multi::{Multi, MultiBasis};
use crate::exact::poly::Poly;
use crate::exact::polymatrix::PolyMatrix;
use crate::jet::{JetAlgebra, JetMode, JetTensor, TensorLayout};

/// `O^rank` over the polynomial ring in `d` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeModule {
    pub d: usize,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl FreeModule {
    pub fn new(d: usize, rank: usize) -> Self {
        FreeModule { d, rank, labels: None }
    }

    pub fn labeled(d: usize, labels: Vec<String>) -> Self {
        FreeModule {
            d,
            rank: labels.len(),
            labels: Some(labels),
        }
    }

    fn compatible(&self, other: &FreeModule) -> bool {
        self.d == other.d && self.rank == other.rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    source: FreeModule,
    target: FreeModule,
    field: Field,
    mode: JetMode,
    order: u32,
    bar: BTreeMap<Multi, PolyMatrix>,
}

/// Value part `e |-> Dbar(I (x) e)` and partials `e |-> Dbar(xi_j (x) e)`
/// of an operator of order at most one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order1Parts {
    pub value: PolyMatrix,
    pub partials: Vec<PolyMatrix>,
}

impl DiffOperator {
    /// Builds an operator from its bar table. `order` is an upper bound;
    /// entries above it are rejected and zero entries are dropped.
    pub fn new(
        source: FreeModule,
        target: FreeModule,
        field: Field,
        mode: JetMode,
        order: u32,
        bar: impl IntoIterator<Item = (Multi, PolyMatrix)>,
    ) -> Result<Self> {
        if source.d != target.d {
            return Err(Error::DimensionMismatch {
                expected: source.d,
                found: target.d,
            });
        }
        let mut table = BTreeMap::new();
        for (alpha, m) in bar {
            if alpha.dim() != source.d {
                return Err(Error::DimensionMismatch {
                    expected: source.d,
                    found: alpha.dim(),
                });
            }
            if m.rows() != target.rank || m.cols() != source.rank || m.nvars() != source.d {
                return Err(Error::Shape(format!(
                    "bar entry at {alpha} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank,
                    source.rank
                )));
            }
            if m.is_zero() {
                continue;
            }
            if alpha.degree() > order {
                return Err(Error::OrderViolation {
                    found: alpha.degree() as usize,
                    allowed: order as usize,
                });
            }
            let entry = table
                .entry(alpha)
                .or_insert_with(|| PolyMatrix::zeros(field, source.d, target.rank, source.rank));
            *entry = &*entry + &m;
        }
        table.retain(|_, m: &mut PolyMatrix| !m.is_zero());
        Ok(DiffOperator {
            source,
            target,
            field,
            mode,
            order,
            bar: table,
        })
    }

    /// An O-linear map, seen as an operator of order zero.
    pub fn order_zero(map: PolyMatrix, mode: JetMode) -> Self {
        let d = map.nvars();
        let source = FreeModule::new(d, map.cols());
        let target = FreeModule::new(d, map.rows());
        let field = map.field();
        Self::new(source, target, field, mode, 0, [(Multi::zero(d), map)]).expect("shapes agree")
    }

    pub fn identity(module: &FreeModule, field: Field, mode: JetMode) -> Self {
        let mut op = Self::order_zero(PolyMatrix::identity(field, module.d, module.rank), mode);
        op.source = module.clone();
        op.target = module.clone();
        op
    }

    /// `d / dx_{j+1}` on `O`.
    pub fn partial(field: Field, d: usize, j: usize, mode: JetMode) -> Self {
        let m = FreeModule::new(d, 1);
        Self::new(
            m.clone(),
            m,
            field,
            mode,
            1,
            [(Multi::unit(d, j), PolyMatrix::identity(field, d, 1))],
        )
        .expect("shapes agree")
    }

    /// Reassembles an operator of order at most one from its parts.
    pub fn from_order1_parts(source: FreeModule, target: FreeModule, mode: JetMode, parts: &Order1Parts) -> Result<Self> {
        let d = source.d;
        if parts.partials.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: parts.partials.len(),
            });
        }
        let field = parts.value.field();
        let mut bar = vec![(Multi::zero(d), parts.value.clone())];
        for (j, x) in parts.partials.iter().enumerate() {
            bar.push((Multi::unit(d, j), x.clone()));
        }
        Self::new(source, target, field, mode, 1, bar)
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mode(&self) -> JetMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.source.d
    }

    /// Declared order bound.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Largest `|alpha|` with a nonzero bar entry.
    pub fn effective_order(&self) -> u32 {
        self.bar.keys().map(Multi::degree).max().unwrap_or(0)
    }

    /// Same operator with a different declared order bound.
    pub fn with_order(&self, order: u32) -> Result<Self> {
        if order < self.effective_order() {
            return Err(Error::OrderViolation {
                found: self.effective_order() as usize,
                allowed: order as usize,
            });
        }
        Ok(DiffOperator { order, ..self.clone() })
    }

    pub fn bar(&self) -> &BTreeMap<Multi, PolyMatrix> {
        &self.bar
    }

    pub fn bar_at(&self, alpha: &Multi) -> PolyMatrix {
        self.bar
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(self.field, self.dim(), self.target.rank, self.source.rank))
    }

    pub fn jet_algebra(&self, m: u32) -> JetAlgebra {
        JetAlgebra::new(self.dim(), m, self.field, self.mode)
    }

    /// The bar as a single map `P^m (x) O^r -> O^s` in the tensor layout.
    pub fn bar_matrix(&self) -> PolyMatrix {
        let alg = self.jet_algebra(self.order);
        let layout = TensorLayout::new(&[alg], self.source.rank);
        let mut out = PolyMatrix::zeros(self.field, self.dim(), self.target.rank, layout.dim());
        for (alpha, m) in &self.bar {
            for k in 0..self.source.rank {
                let col = layout.index(std::slice::from_ref(alpha), k).expect("within order");
                for i in 0..self.target.rank {
                    out.set(i, col, m.get(i, k).clone());
                }
            }
        }
        out
    }

    /// Inverse of [`DiffOperator::bar_matrix`].
    pub fn from_bar_matrix(source: FreeModule, target: FreeModule, mode: JetMode, order: u32, m: &PolyMatrix) -> Result<Self> {
        let field = m.field();
        let alg = JetAlgebra::new(source.d, order, field, mode);
        let layout = TensorLayout::new(&[alg], source.rank);
        if m.cols() != layout.dim() || m.rows() != target.rank {
            return Err(Error::Shape("bar matrix shape".into()));
        }
        let mut table: BTreeMap<Multi, PolyMatrix> = BTreeMap::new();
        for col in 0..m.cols() {
            let (alphas, k) = layout.key(col);
            let entry = table
                .entry(alphas[0].clone())
                .or_insert_with(|| PolyMatrix::zeros(field, source.d, target.rank, source.rank));
            for i in 0..target.rank {
                entry.set(i, k, m.get(i, col).clone());
            }
        }
        Self::new(source, target, field, mode, order, table)
    }

    /// `D(sum_k f_k e_k) = sum_k sum_alpha taylor(f_k)_alpha Dbar(xi^alpha (x) e_k)`.
    pub fn apply(&self, s: &[Poly]) -> Result<Vec<Poly>> {
        if s.len() != self.source.rank {
            return Err(Error::DimensionMismatch {
                expected: self.source.rank,
                found: s.len(),
            });
        }
        let alg = self.jet_algebra(self.effective_order());
        let mut out = vec![Poly::zero(self.field, self.dim()); self.target.rank];
        for (k, f) in s.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let t = alg.checked_taylor(f)?;
            for (alpha, c) in t.terms() {
                if let Some(m) = self.bar.get(alpha) {
                    for (i, o) in out.iter_mut().enumerate() {
                        let e = m.get(i, k);
                        if !e.is_zero() {
                            *o = &*o + &(c * e);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Q0(D)_n = (id (x) Dbar) o (delta^{n+m,m} (x) id) : P^{n+m} (x) O^r -> P^n (x) O^s`.
    pub fn linearize(&self, n: u32) -> PolyMatrix {
        let m = self.order;
        let src = self.jet_algebra(n + m);
        let dst = self.jet_algebra(n);
        let src_layout = TensorLayout::new(&[src], self.source.rank);
        let dst_layout = TensorLayout::new(&[dst], self.target.rank);
        let columns: Vec<Vec<Poly>> = (0..src_layout.dim())
            .map(|col| {
                let (alphas, k) = src_layout.key(col);
                let e = JetTensor::basis_element(vec![src], self.source.rank, alphas, k, Poly::one(self.field, self.dim()));
                e.comult_factor(0, m)
                    .and_then(|t| t.apply_bar(&self.bar, self.target.rank))
                    .expect("shapes agree")
                    .to_vector()
            })
            .collect();
        PolyMatrix::from_columns(self.field, self.dim(), dst_layout.dim(), columns)
    }

    /// `D2 o D1` for `self = D2`; the bar is `Dbar2 o Q0(D1)_{order(D2)}`.
    pub fn compose(&self, d1: &DiffOperator) -> Result<DiffOperator> {
        if !d1.target.compatible(&self.source) || d1.field != self.field || d1.mode != self.mode {
            return Err(Error::Shape("composition of incompatible operators".into()));
        }
        let order = self.order + d1.order;
        let q = d1.linearize(self.order);
        let bar2 = self.bar_matrix();
        let total = bar2.checked_mul(&q)?;
        DiffOperator::from_bar_matrix(d1.source.clone(), self.target.clone(), self.mode, order, &total)
    }

    pub fn add(&self, other: &DiffOperator) -> Result<DiffOperator> {
        if !self.source.compatible(&other.source) || !self.target.compatible(&other.target) || self.mode != other.mode {
            return Err(Error::Shape("sum of incompatible operators".into()));
        }
        let bar = self.bar.clone().into_iter().chain(other.bar.clone());
        DiffOperator::new(
            self.source.clone(),
            self.target.clone(),
            self.field,
            self.mode,
            self.order.max(other.order),
            bar,
        )
    }

    pub fn neg(&self) -> DiffOperator {
        DiffOperator {
            bar: self.bar.iter().map(|(a, m)| (a.clone(), -m)).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bar.is_empty()
    }

    /// The `k`-linear map on coefficient vectors of degree `<= deg_in`,
    /// landing in degree `<= deg_out` (layout of [`PolyMatrix::k_linearize`]).
    pub fn k_linearize(&self, deg_in: u32, deg_out: u32) -> Result<Matrix> {
        let d = self.dim();
        let src = MultiBasis::up_to(d, deg_in);
        let dst = MultiBasis::up_to(d, deg_out);
        let mut out = Matrix::zeros(self.field, self.target.rank * dst.len(), self.source.rank * src.len());
        for k in 0..self.source.rank {
            for (mi, mu) in src.iter().enumerate() {
                let mut input = vec![Poly::zero(self.field, d); self.source.rank];
                input[k] = Poly::monomial(self.field, mu.clone(), self.field.one());
                for (i, p) in self.apply(&input)?.iter().enumerate() {
                    for (m, c) in p.terms() {
                        let pos = dst.position(m).ok_or_else(|| {
                            Error::DegreeBound(format!("image term of degree {} above {deg_out}", m.degree()))
                        })?;
                        out.set(i * dst.len() + pos, k * src.len() + mi, c.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Value part and partials; fails above order one.
    pub fn order1_parts(&self) -> Result<Order1Parts> {
        let eff = self.effective_order();
        if eff > 1 {
            return Err(Error::OrderViolation {
                found: eff as usize,
                allowed: 1,
            });
        }
        let d = self.dim();
        Ok(Order1Parts {
            value: self.bar_at(&Multi::zero(d)),
            partials: (0..d).map(|j| self.bar_at(&Multi::unit(d, j))).collect(),
        })
    }

    /// Recovers a plain-mode operator of order `order` from its action on the
    /// elements `x^beta e_k`, using
    /// `Dbar(xi^beta e) = D(x^beta e) - sum_{alpha < beta} C(beta, alpha) x^(beta - alpha) Dbar(xi^alpha e)`.
    pub fn from_action(
        source: FreeModule,
        target: FreeModule,
        field: Field,
        order: u32,
        action: impl Fn(&[Poly]) -> Result<Vec<Poly>>,
    ) -> Result<DiffOperator> {
        let d = source.d;
        let basis = MultiBasis::up_to(d, order);
        let mut table: BTreeMap<Multi, PolyMatrix> = BTreeMap::new();
        for beta in basis.iter() {
            let mut m = PolyMatrix::zeros(field, d, target.rank, source.rank);
            for k in 0..source.rank {
                let mut input = vec![Poly::zero(field, d); source.rank];
                input[k] = Poly::monomial(field, beta.clone(), field.one());
                let mut col = action(&input)?;
                if col.len() != target.rank {
                    return Err(Error::DimensionMismatch {
                        expected: target.rank,
                        found: col.len(),
                    });
                }
                for alpha in beta.divisors() {
                    if alpha == *beta {
                        continue;
                    }
                    let Some(prev) = table.get(&alpha) else { continue };
                    let rest = beta.checked_sub(&alpha).expect("divisor");
                    let x = Poly::monomial(field, rest, beta.binomial(&alpha, field));
                    for (i, c) in col.iter_mut().enumerate() {
                        *c = &*c - &(&x * prev.get(i, k));
                    }
                }
                for (i, c) in col.into_iter().enumerate() {
                    m.set(i, k, c);
                }
            }
            table.insert(beta.clone(), m);
        }
        DiffOperator::new(source, target, field, JetMode::Plain, order, table)
    }

    /// The operator in coordinates `y = A x`: `D'(g) = D(g o A)` read back in
    /// `y`, with module coordinates unchanged. Plain mode only.
    pub fn linear_change(&self, a: &Matrix) -> Result<DiffOperator> {
        if self.mode != JetMode::Plain {
            return Err(Error::Invalid("linear change of variables needs plain mode".into()));
        }
        let d = self.dim();
        if a.rows() != d || a.cols() != d {
            return Err(Error::Shape("change of variables must be d x d".into()));
        }
        let ainv = invert(a)?;
        // y_i = sum_j A_ij x_j and x_i = sum_j Ainv_ij y_j.
        let lin = |m: &Matrix| -> Vec<Poly> {
            (0..d)
                .map(|i| {
                    let mut p = Poly::zero(self.field, d);
                    for j in 0..d {
                        p = &p + &Poly::var(self.field, d, j).scale(m.get(i, j));
                    }
                    p
                })
                .collect()
        };
        let y_of_x = lin(a);
        let x_of_y = lin(&ainv);
        let this = self.clone();
        DiffOperator::from_action(self.source.clone(), self.target.clone(), self.field, self.effective_order(), move |g| {
            let pulled: Vec<Poly> = g.iter().map(|p| p.substitute(&y_of_x)).collect::<Result<_>>()?;
            this.apply(&pulled)?.iter().map(|p| p.substitute(&x_of_y)).collect()
        })
    }
}

/// Inverse of a square scalar matrix.
pub fn invert(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    let aug = a.hstack(&Matrix::identity(a.field(), n))?;
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::Invalid("matrix is not invertible".into()));
    }
    Ok(r.block(0, n, n, n))
}

/// A finite tower `F_0 <- F_1 <- ... <- F_N` of free modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedTower {
    field: Field,
    d: usize,
    ranks: Vec<usize>,
    transitions: Vec<PolyMatrix>,
}

impl TruncatedTower {
    pub fn new(field: Field, d: usize, ranks: Vec<usize>, transitions: Vec<PolyMatrix>) -> Result<Self> {
        if ranks.is_empty() || transitions.len() + 1 != ranks.len() {
            return Err(Error::Shape("a tower of N+1 levels needs N transitions".into()));
        }
        for (n, t) in transitions.iter().enumerate() {
            if t.rows() != ranks[n] || t.cols() != ranks[n + 1] {
                return Err(Error::Shape(format!("transition {n} has the wrong shape")));
            }
        }
        Ok(TruncatedTower {
            field,
            d,
            ranks,
            transitions,
        })
    }

    /// `{P^n (x) O^r}_{n <= top}` with truncation maps.
    pub fn induced(field: Field, d: usize, mode: JetMode, rank: usize, top: u32) -> Self {
        let ranks = (0..=top)
            .map(|n| JetAlgebra::new(d, n, field, mode).rank() * rank)
            .collect();
        let transitions = (0..top)
            .map(|n| {
                let id = DiffOperator::identity(&FreeModule::new(d, rank), field, mode)
                    .with_order(1)
                    .expect("order bound");
                // Q0(id) with declared order one is truncation by one step.
                id.linearize(n)
            })
            .collect();
        TruncatedTower {
            field,
            d,
            ranks,
            transitions,
        }
    }

    pub fn levels(&self) -> usize {
        self.ranks.len()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn transition(&self, n: usize) -> &PolyMatrix {
        &self.transitions[n]
    }

    /// Composite transition `F_top -> F_bottom`.
    pub fn descend(&self, top: usize, bottom: usize) -> PolyMatrix {
        let mut t = PolyMatrix::identity(self.field, self.d, self.ranks[top]);
        for k in (bottom..top).rev() {
            t = &self.transitions[k] * &t;
        }
        t
    }
}

/// A morphism of towers of shift `r`: maps `g_n : F_{n+r} -> G_n`.
#[derive(Clone, Debug)]
pub struct ProMap {
    pub source: TruncatedTower,
    pub target: TruncatedTower,
    pub shift: usize,
    pub maps: Vec<PolyMatrix>,
}

impl ProMap {
    /// Checks that every square `g_n o s_{n+r} = t_n o g_{n+1}` commutes.
    pub fn new(source: TruncatedTower, target: TruncatedTower, shift: usize, maps: Vec<PolyMatrix>) -> Result<Self> {
        for (n, g) in maps.iter().enumerate() {
            if n + shift >= source.levels() || n >= target.levels() {
                return Err(Error::Shape(format!("level {n} out of range")));
            }
            if g.rows() != target.rank(n) || g.cols() != source.rank(n + shift) {
                return Err(Error::Shape(format!("level map {n} has the wrong shape")));
            }
        }
        for n in 0..maps.len().saturating_sub(1) {
            let lhs = maps[n].checked_mul(source.transition(n + shift))?;
            let rhs = target.transition(n).checked_mul(&maps[n + 1])?;
            if lhs != rhs {
                return Err(Error::NonCommuting(n));
            }
        }
        Ok(ProMap {
            source,
            target,
            shift,
            maps,
        })
    }

    /// The levels `Q0(D)_n`, `n + order <= top`.
    pub fn linearization(op: &DiffOperator, top: u32) -> Result<Self> {
        let m = op.order();
        if top < m {
            return Err(Error::OrderOutOfRange(format!("top level {top} below order {m}")));
        }
        let d = op.dim();
        let source = TruncatedTower::induced(op.field(), d, op.mode(), op.source().rank, top);
        let target = TruncatedTower::induced(op.field(), d, op.mode(), op.target().rank, top - m);
        let maps = (0..=top - m).map(|n| op.linearize(n)).collect();
        ProMap::new(source, target, m as usize, maps)
    }

    /// Composite `self o first` (levels where both are defined).
    pub fn compose(&self, first: &ProMap) -> Result<ProMap> {
        let shift = self.shift + first.shift;
        let maps = (0..self.maps.len())
            .take_while(|n| n + self.shift < first.maps.len())
            .map(|n| self.maps[n].checked_mul(&first.maps[n + self.shift]))
            .collect::<Result<Vec<_>>>()?;
        ProMap::new(first.source.clone(), self.target.clone(), shift, maps)
    }

    /// Equality after lowering both to a common shift through the source
    /// transitions.
    pub fn agrees_with(&self, other: &ProMap) -> bool {
        let shift = self.shift.max(other.shift);
        let lowered = |p: &ProMap, n: usize| -> PolyMatrix {
            let top = n + shift;
            p.maps[n].checked_mul(&p.source.descend(top, n + p.shift)).expect("shapes agree")
        };
        let levels = self.maps.len().min(other.maps.len());
        (0..levels)
            .filter(|n| n + shift < self.source.levels() && n + shift < other.source.levels())
            .all(|n| lowered(self, n) == lowered(other, n))
    }
}

/// `F^0 -> F^1 -> ...` with differential operators of order at most one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialComplex {
    modules: Vec<FreeModule>,
    ops: Vec<DiffOperator>,
}

impl DifferentialComplex {
    /// Checks composability and the order bound; `d^2 = 0` is not required
    /// here (see [`DifferentialComplex::is_complex`]).
    pub fn new(ops: Vec<DiffOperator>) -> Result<Self> {
        let first = ops.first().ok_or_else(|| Error::Invalid("empty complex".into()))?;
        let mut modules = vec![first.source().clone()];
        for (i, op) in ops.iter().enumerate() {
            if op.effective_order() > 1 {
                return Err(Error::OrderViolation {
                    found: op.effective_order() as usize,
                    allowed: 1,
                });
            }
            if i > 0 && !ops[i - 1].target.compatible(&op.source) {
                return Err(Error::Shape(format!("operators {} and {i} are not composable", i - 1)));
            }
            modules.push(op.target().clone());
        }
        Ok(DifferentialComplex { modules, ops })
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn ops(&self) -> &[DiffOperator] {
        &self.ops
    }

    pub fn dim(&self) -> usize {
        self.modules[0].d
    }

    pub fn field(&self) -> Field {
        self.ops[0].field()
    }

    pub fn mode(&self) -> JetMode {
        self.ops[0].mode()
    }

    /// Whether every composite `d^{i+1} o d^i` vanishes as an operator.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.ops.windows(2) {
            if !w[1].compose(&w[0])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Replaces operator `i`.
    pub fn with_op(&self, i: usize, op: DiffOperator) -> Result<Self> {
        let mut ops = self.ops.clone();
        ops[i] = op;
        Self::new(ops)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    /// Position `i` of the pair `d^{i+1} o d^i`.
    pub degree: usize,
    /// `"i"`, `"ii"`, `"iii"` or `"iv"`.
    pub relation: String,
    pub indices: Vec<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order1Report {
    pub checks: Vec<RelationCheck>,
    /// Per degree: whether the composite bar `P^2 (x) F^i -> F^{i+2}` vanishes.
    pub composite_bar_vanishes: Vec<bool>,
    pub pass: bool,
}

/// Checks, for each consecutive pair `d^i, d^{i+1}` with value parts
/// `V` and partials `X_j`:
/// (i) `d^{i+1}(V^i e) = 0`, (ii) `d^{i+1}(X^i_j e) + X^{i+1}_j V^i e = 0`,
/// (iii) `X^{i+1}_j X^i_k + X^{i+1}_k X^i_j = 0` for `j < k`,
/// (iv) `X^{i+1}_j X^i_j = 0`, on every basis vector `e`.
pub fn verify_order1_relations(f: &DifferentialComplex) -> Result<Order1Report> {
    let d = f.dim();
    let field = f.field();
    let mut checks = Vec::new();
    let mut vanish = Vec::new();
    for (i, w) in f.ops().windows(2).enumerate() {
        let (d1, d2) = (&w[0], &w[1]);
        let p1 = d1.order1_parts()?;
        let p2 = d2.order1_parts()?;
        let rank = d1.source().rank;
        let apply_cols = |m: &PolyMatrix| -> Result<PolyMatrix> {
            let cols = (0..rank).map(|k| d2.apply(&m.column(k))).collect::<Result<Vec<_>>>()?;
            Ok(PolyMatrix::from_columns(field, d, d2.target().rank, cols))
        };
        checks.push(RelationCheck {
            degree: i,
            relation: "i".into(),
            indices: vec![],
            pass: apply_cols(&p1.value)?.is_zero(),
        });
        for j in 0..d {
            let lhs = &apply_cols(&p1.partials[j])? + &(&p2.partials[j] * &p1.value);
            checks.push(RelationCheck {
                degree: i,
                relation: "ii".into(),
                indices: vec![j],
                pass: lhs.is_zero(),
            });
        }
        for j in 0..d {
            for k in j + 1..d {
                let lhs = &(&p2.partials[j] * &p1.partials[k]) + &(&p2.partials[k] * &p1.partials[j]);
                checks.push(RelationCheck {
                    degree: i,
                    relation: "iii".into(),
                    indices: vec![j, k],
                    pass: lhs.is_zero(),
                });
            }
        }
        for j in 0..d {
            checks.push(RelationCheck {
                degree: i,
                relation: "iv".into(),
                indices: vec![j],
                pass: (&p2.partials[j] * &p1.partials[j]).is_zero(),
            });
        }
        vanish.push(d2.compose(d1)?.is_zero());
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(Order1Report {
        checks,
        composite_bar_vanishes: vanish,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    fn q() -> Field {
        Field::Rational
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, q(), 1).unwrap()
    }

    #[test]
    fn derivative_applies() {
        let dx = DiffOperator::partial(q(), 1, 0, JetMode::Plain);
        assert_eq!(dx.apply(&[p("x1^2")]).unwrap(), vec![p("2*x1")]);
    }

    #[test]
    fn second_derivative_bar() {
        let dx = DiffOperator::partial(q(), 1, 0, JetMode::Plain);
        let dd = dx.compose(&dx).unwrap();
        assert_eq!(dd.bar().len(), 1);
        assert_eq!(dd.bar_at(&Multi(vec![2])).get(0, 0), &p("2"));
        assert_eq!(dd.apply(&[p("x1^3")]).unwrap(), vec![p("6*x1")]);
    }

    #[test]
    fn canonical_commutator() {
        let dx = DiffOperator::partial(q(), 1, 0, JetMode::Plain);
        let x = DiffOperator::order_zero(PolyMatrix::from_rows(q(), 1, vec![vec![p("x1")]]).unwrap(), JetMode::Plain);
        let a = dx.compose(&x).unwrap();
        let b = x.compose(&dx).unwrap();
        let diff = a.add(&b.neg()).unwrap();
        assert_eq!(diff.effective_order(), 0);
        assert!(diff.bar_at(&Multi(vec![0])).is_identity());
    }

    #[test]
    fn linearized_derivative() {
        let dx = DiffOperator::partial(q(), 1, 0, JetMode::Plain);
        let q1 = dx.linearize(1);
        // columns: I, xi, xi^2; rows: I, xi
        assert_eq!((q1.rows(), q1.cols()), (2, 3));
        assert!(q1.column(0).iter().all(Poly::is_zero));
        assert_eq!(q1.column(1), vec![p("1"), p("0")]);
        assert_eq!(q1.column(2), vec![p("0"), p("2")]);
    }

    #[test]
    fn from_action_recovers_bar() {
        let dx = DiffOperator::partial(q(), 1, 0, JetMode::Plain);
        let x = DiffOperator::order_zero(PolyMatrix::from_rows(q(), 1, vec![vec![p("x1")]]).unwrap(), JetMode::Plain);
        let op = x.compose(&dx.compose(&dx).unwrap()).unwrap();
        let m = FreeModule::new(1, 1);
        let back = DiffOperator::from_action(m.clone(), m, q(), 2, |s| op.apply(s)).unwrap();
        assert_eq!(back.bar(), op.bar());
    }
}
