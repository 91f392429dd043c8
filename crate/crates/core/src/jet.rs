//! Principal-parts algebras `P^m` over affine `d`-space.
//!
//! `P^m` is free over the polynomial ring with basis `xi^alpha`,
//! `|alpha| <= m`, where `xi_i` is the class of `1 (x) x_i - x_i (x) 1`.
//! Coefficients act through the left structure; the right structure acts
//! through [`JetAlgebra::taylor`]. In divided mode the basis is
//! `xi^[alpha] = xi^alpha / alpha!`, with the binomial product rule.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::{Field, Scalar};
use crate::exact::multi::{Multi, MultiBasis};
use crate::exact::poly::Poly;
use crate::exact::polymatrix::PolyMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum JetMode {
    #[default]
    Plain,
    Divided,
}

impl fmt::Display for JetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JetMode::Plain => "plain",
            JetMode::Divided => "divided",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JetAlgebra {
    pub d: usize,
    pub m: u32,
    pub field: Field,
    pub mode: JetMode,
}

impl JetAlgebra {
    pub fn new(d: usize, m: u32, field: Field, mode: JetMode) -> Self {
        JetAlgebra { d, m, field, mode }
    }

    pub fn with_order(&self, m: u32) -> Self {
        JetAlgebra { m, ..*self }
    }

    pub fn basis(&self) -> MultiBasis {
        MultiBasis::up_to(self.d, self.m)
    }

    /// `C(m + d, d)`.
    pub fn rank(&self) -> usize {
        self.basis().len()
    }

    pub fn zero(&self) -> JetElement {
        JetElement {
            alg: *self,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `I = 1 (x) 1`.
    pub fn one(&self) -> JetElement {
        self.monomial(Multi::zero(self.d), Poly::one(self.field, self.d))
    }

    /// `c * xi^alpha` (or `c * xi^[alpha]`), zero if `|alpha| > m`.
    pub fn monomial(&self, alpha: Multi, c: Poly) -> JetElement {
        let mut e = self.zero();
        e.add_term(alpha, c);
        e
    }

    pub fn xi(&self, j: usize) -> JetElement {
        self.monomial(Multi::unit(self.d, j), Poly::one(self.field, self.d))
    }

    /// Product of basis monomials: `(c, a + b)` or `None` when truncated or
    /// when the coefficient vanishes.
    pub fn monomial_product(&self, a: &Multi, b: &Multi) -> Option<(Scalar, Multi)> {
        let s = a.add(b);
        if s.degree() > self.m {
            return None;
        }
        let c = match self.mode {
            JetMode::Plain => self.field.one(),
            JetMode::Divided => s.binomial(a, self.field),
        };
        (!c.is_zero()).then_some((c, s))
    }

    /// Coefficient of `xi^i (x) xi^(a - i)` in the coproduct of `xi^a`.
    pub fn comult_coeff(&self, a: &Multi, i: &Multi) -> Scalar {
        match self.mode {
            JetMode::Plain => a.binomial(i, self.field),
            JetMode::Divided => self.field.one(),
        }
    }

    /// The right-structure image `1 (x) f`: `sum hasse(f, alpha) xi^alpha`.
    /// In divided mode the coefficient of `xi^[alpha]` is `alpha! hasse(f, alpha)`.
    pub fn taylor(&self, f: &Poly) -> JetElement {
        let mut out = self.zero();
        if f.is_zero() {
            return out;
        }
        for alpha in self.basis().iter() {
            let mut c = f.hasse(alpha).expect("dimension checked by caller");
            if self.mode == JetMode::Divided && !c.is_zero() {
                c = c.scale(&alpha.factorial(self.field));
            }
            out.add_term(alpha.clone(), c);
        }
        out
    }

    /// The left-structure image `f (x) 1 = f I`.
    pub fn unit_left(&self, f: &Poly) -> JetElement {
        self.monomial(Multi::zero(self.d), f.clone())
    }

    fn check_poly(&self, f: &Poly) -> Result<()> {
        if f.nvars() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: f.nvars(),
            });
        }
        Ok(())
    }

    pub fn checked_taylor(&self, f: &Poly) -> Result<JetElement> {
        self.check_poly(f)?;
        Ok(self.taylor(f))
    }
}

/// An element `sum_alpha c_alpha xi^alpha` of `P^m`, coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetElement {
    alg: JetAlgebra,
    terms: BTreeMap<Multi, Poly>,
}

impl JetElement {
    pub fn algebra(&self) -> &JetAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multi, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &Multi) -> Poly {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.alg.field, self.alg.d))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c xi^alpha`; silently drops terms above the order.
    pub fn add_term(&mut self, alpha: Multi, c: Poly) {
        if c.is_zero() || alpha.degree() > self.alg.m {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&alpha);
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    fn same_algebra(&self, other: &JetElement) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::Invalid(format!(
                "jet algebra mismatch: P^{} ({}) vs P^{} ({})",
                self.alg.m, self.alg.mode, other.alg.m, other.alg.mode
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &JetElement) -> Result<JetElement> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &JetElement) -> Result<JetElement> {
        self.add(&other.scale(&-self.alg.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> JetElement {
        let mut out = self.alg.zero();
        for (a, p) in &self.terms {
            out.add_term(a.clone(), p.scale(c));
        }
        out
    }

    /// Multiplication by a function through the left structure.
    pub fn mul_left(&self, f: &Poly) -> JetElement {
        let mut out = self.alg.zero();
        for (a, p) in &self.terms {
            out.add_term(a.clone(), p * f);
        }
        out
    }

    /// The quotient map `P^m -> P^n`.
    pub fn truncate(&self, n: u32) -> Result<JetElement> {
        if n > self.alg.m {
            return Err(Error::OrderOutOfRange(format!("cannot truncate P^{} to order {n}", self.alg.m)));
        }
        let alg = self.alg.with_order(n);
        let mut out = alg.zero();
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &JetElement) -> Result<JetElement> {
        self.same_algebra(other)?;
        let mut out = self.alg.zero();
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if let Some((c, s)) = self.alg.monomial_product(a, b) {
                    out.add_term(s, (f * g).scale(&c));
                }
            }
        }
        Ok(out)
    }

    /// The coefficient of `I`, i.e. `xi_i := 0`.
    pub fn counit(&self) -> Poly {
        self.coeff(&Multi::zero(self.alg.d))
    }

    /// `delta^{m,p} : P^m -> P^{m-p} (x) P^p`.
    pub fn comult(&self, p: u32) -> Result<JetTensor> {
        if p > self.alg.m {
            return Err(Error::OrderOutOfRange(format!("split order {p} above {}", self.alg.m)));
        }
        JetTensor::from_jet(self).comult_factor(0, p)
    }

    /// Rescales between the plain and divided bases.
    pub fn basis_convert(&self, target: JetMode) -> Result<JetElement> {
        if target == self.alg.mode {
            return Ok(self.clone());
        }
        let field = self.alg.field;
        let alg = JetAlgebra { mode: target, ..self.alg };
        let mut out = alg.zero();
        for (a, c) in &self.terms {
            let fact = a.factorial(field);
            if fact.is_zero() {
                let worst = a.0.iter().copied().max().unwrap_or(0);
                return Err(Error::NonInvertibleFactorial(worst as u64, field.characteristic()));
            }
            let s = match target {
                JetMode::Divided => fact,
                JetMode::Plain => fact.inv()?,
            };
            out.add_term(a.clone(), c.scale(&s));
        }
        Ok(out)
    }
}

impl fmt::Display for JetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let basis = if a.is_zero() {
                    "I".to_string()
                } else if self.alg.mode == JetMode::Divided {
                    format!("xi^[{a}]")
                } else {
                    format!("xi^{a}")
                };
                format!("({c})*{basis}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Index layout of `P^{m_1} (x) ... (x) P^{m_k} (x) O^r`: the flat index of
/// `xi^{a_1} (x) ... (x) xi^{a_k} (x) e_j` is mixed-radix in the graded-lex
/// positions, the module index varying fastest.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    bases: Vec<MultiBasis>,
    rank: usize,
}

impl TensorLayout {
    pub fn new(factors: &[JetAlgebra], rank: usize) -> Self {
        TensorLayout {
            bases: factors.iter().map(JetAlgebra::basis).collect(),
            rank,
        }
    }

    pub fn dim(&self) -> usize {
        self.bases.iter().map(MultiBasis::len).product::<usize>() * self.rank
    }

    pub fn index(&self, alphas: &[Multi], k: usize) -> Option<usize> {
        let mut idx = 0;
        for (b, a) in self.bases.iter().zip(alphas) {
            idx = idx * b.len() + b.position(a)?;
        }
        Some(idx * self.rank + k)
    }

    pub fn key(&self, mut idx: usize) -> (Vec<Multi>, usize) {
        let k = idx % self.rank;
        idx /= self.rank;
        let mut alphas = Vec::with_capacity(self.bases.len());
        for b in self.bases.iter().rev() {
            alphas.push(b.get(idx % b.len()).clone());
            idx /= b.len();
        }
        alphas.reverse();
        (alphas, k)
    }
}

/// An element of `P^{m_1} (x) ... (x) P^{m_k} (x) O^r` (tensor products over
/// the polynomial ring, right structure of each factor against the left
/// structure of the next), normalized with all functions in the leftmost slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetTensor {
    factors: Vec<JetAlgebra>,
    rank: usize,
    terms: BTreeMap<(Vec<Multi>, usize), Poly>,
}

impl JetTensor {
    pub fn zero(factors: Vec<JetAlgebra>, rank: usize) -> Self {
        JetTensor {
            factors,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_jet(v: &JetElement) -> Self {
        let mut t = Self::zero(vec![v.alg], 1);
        for (a, c) in &v.terms {
            t.add_term(vec![a.clone()], 0, c.clone());
        }
        t
    }

    /// `xi^{a_1} (x) ... (x) e_k` with coefficient `c`.
    pub fn basis_element(factors: Vec<JetAlgebra>, rank: usize, alphas: Vec<Multi>, k: usize, c: Poly) -> Self {
        let mut t = Self::zero(factors, rank);
        t.add_term(alphas, k, c);
        t
    }

    /// Reads a column of coefficients in the [`TensorLayout`] order.
    pub fn from_vector(factors: Vec<JetAlgebra>, rank: usize, v: &[Poly]) -> Self {
        let layout = TensorLayout::new(&factors, rank);
        let mut t = Self::zero(factors, rank);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (alphas, k) = layout.key(i);
                t.add_term(alphas, k, c.clone());
            }
        }
        t
    }

    pub fn to_vector(&self) -> Vec<Poly> {
        let layout = self.layout();
        let (field, d) = self.field_dim();
        let mut out = vec![Poly::zero(field, d); layout.dim()];
        for ((alphas, k), c) in &self.terms {
            out[layout.index(alphas, *k).expect("term within the layout")] = c.clone();
        }
        out
    }

    pub fn layout(&self) -> TensorLayout {
        TensorLayout::new(&self.factors, self.rank)
    }

    pub fn factors(&self) -> &[JetAlgebra] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<Multi>, usize), &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alphas: &[Multi], k: usize) -> Poly {
        self.terms
            .get(&(alphas.to_vec(), k))
            .cloned()
            .unwrap_or_else(|| {
                let (f, d) = self.field_dim();
                Poly::zero(f, d)
            })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn field_dim(&self) -> (Field, usize) {
        match self.factors.first() {
            Some(a) => (a.field, a.d),
            None => self
                .terms
                .values()
                .next()
                .map_or((Field::Rational, 0), |p| (p.field(), p.nvars())),
        }
    }

    /// Adds a term; terms exceeding a factor's order are dropped.
    pub fn add_term(&mut self, alphas: Vec<Multi>, k: usize, c: Poly) {
        debug_assert_eq!(alphas.len(), self.factors.len());
        if c.is_zero() || alphas.iter().zip(&self.factors).any(|(a, f)| a.degree() > f.m) {
            return;
        }
        let key = (alphas, k);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check_shape(&self, other: &JetTensor) -> Result<()> {
        if self.factors != other.factors || self.rank != other.rank {
            return Err(Error::Shape("tensor factors differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &JetTensor) -> Result<JetTensor> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for ((a, k), c) in &other.terms {
            out.add_term(a.clone(), *k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &JetTensor) -> Result<JetTensor> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for ((a, k), c) in &other.terms {
            out.add_term(a.clone(), *k, -c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> JetTensor {
        let mut out = Self::zero(self.factors.clone(), self.rank);
        for ((a, k), c) in &self.terms {
            out.add_term(a.clone(), *k, c.scale(s));
        }
        out
    }

    /// Multiplies by `g` acting through slot `slot`: slot 0 is the leftmost
    /// coefficient, slot `i` the left structure of factor `i`, and slot
    /// `factors.len()` the module `O^r`. Functions are moved leftwards via
    /// the Taylor map of the preceding factor.
    pub fn mul_function_at(&self, slot: usize, g: &Poly) -> JetTensor {
        if g.is_zero() {
            return Self::zero(self.factors.clone(), self.rank);
        }
        if slot == 0 {
            let mut out = Self::zero(self.factors.clone(), self.rank);
            for ((a, k), c) in &self.terms {
                out.add_term(a.clone(), *k, c * g);
            }
            return out;
        }
        let jet = self.factors[slot - 1].taylor(g);
        self.mul_jet_at(slot - 1, &jet)
    }

    /// Multiplies factor `i` by a jet whose coefficients sit in the left
    /// structure of that factor.
    pub fn mul_jet_at(&self, i: usize, jet: &JetElement) -> JetTensor {
        let alg = self.factors[i];
        let mut out = Self::zero(self.factors.clone(), self.rank);
        for (b, h) in &jet.terms {
            let mut shifted = Self::zero(self.factors.clone(), self.rank);
            for ((a, k), c) in &self.terms {
                if let Some((s, prod)) = alg.monomial_product(&a[i], b) {
                    let mut alphas = a.clone();
                    alphas[i] = prod;
                    shifted.add_term(alphas, *k, c.scale(&s));
                }
            }
            let moved = shifted.mul_function_at(i, h);
            for ((a, k), c) in moved.terms {
                out.add_term(a, k, c);
            }
        }
        out
    }

    /// Factorwise product (all functions already on the left).
    pub fn mul(&self, other: &JetTensor) -> Result<JetTensor> {
        self.check_shape(other)?;
        if self.rank != 1 {
            return Err(Error::Shape("products need rank one".into()));
        }
        let mut out = Self::zero(self.factors.clone(), 1);
        for ((a, _), f) in &self.terms {
            for ((b, _), g) in &other.terms {
                let mut coeff = self.factors[0].field.one();
                let mut alphas = Vec::with_capacity(a.len());
                let mut alive = true;
                for ((x, y), alg) in a.iter().zip(b).zip(&self.factors) {
                    match alg.monomial_product(x, y) {
                        Some((c, s)) => {
                            coeff = &coeff * &c;
                            alphas.push(s);
                        }
                        None => {
                            alive = false;
                            break;
                        }
                    }
                }
                if alive {
                    out.add_term(alphas, 0, (f * g).scale(&coeff));
                }
            }
        }
        Ok(out)
    }

    /// Applies the counit to factor `i`, removing it.
    pub fn counit_factor(&self, i: usize) -> JetTensor {
        let mut factors = self.factors.clone();
        factors.remove(i);
        let mut out = Self::zero(factors, self.rank);
        for ((a, k), c) in &self.terms {
            if a[i].is_zero() {
                let mut alphas = a.clone();
                alphas.remove(i);
                out.add_term(alphas, *k, c.clone());
            }
        }
        out
    }

    /// Truncates factor `i` to order `n`.
    pub fn truncate_factor(&self, i: usize, n: u32) -> Result<JetTensor> {
        if n > self.factors[i].m {
            return Err(Error::OrderOutOfRange(format!("cannot truncate P^{} to order {n}", self.factors[i].m)));
        }
        let mut factors = self.factors.clone();
        factors[i] = factors[i].with_order(n);
        let mut out = Self::zero(factors, self.rank);
        for ((a, k), c) in &self.terms {
            out.add_term(a.clone(), *k, c.clone());
        }
        Ok(out)
    }

    /// Replaces factor `i` (order `m`) by the two factors of
    /// `delta^{m,p} : P^m -> P^{m-p} (x) P^p`.
    pub fn comult_factor(&self, i: usize, p: u32) -> Result<JetTensor> {
        let alg = self.factors[i];
        if p > alg.m {
            return Err(Error::OrderOutOfRange(format!("split order {p} above {}", alg.m)));
        }
        let mut factors = self.factors.clone();
        factors[i] = alg.with_order(alg.m - p);
        factors.insert(i + 1, alg.with_order(p));
        let mut out = Self::zero(factors, self.rank);
        for ((a, k), c) in &self.terms {
            for first in a[i].divisors() {
                let second = a[i].checked_sub(&first).expect("divisor");
                if first.degree() > alg.m - p || second.degree() > p {
                    continue;
                }
                let s = alg.comult_coeff(&a[i], &first);
                let mut alphas = a.clone();
                alphas[i] = first;
                alphas.insert(i + 1, second);
                out.add_term(alphas, *k, c.scale(&s));
            }
        }
        Ok(out)
    }

    /// Applies an O-linear map `O^r -> O^s` on the module slot.
    pub fn apply_module_map(&self, f: &PolyMatrix) -> Result<JetTensor> {
        if f.cols() != self.rank {
            return Err(Error::Shape(format!("module map has {} columns, rank is {}", f.cols(), self.rank)));
        }
        let slot = self.factors.len();
        let mut out = Self::zero(self.factors.clone(), f.rows());
        for ((a, k), c) in &self.terms {
            let single = Self::basis_element(self.factors.clone(), 1, a.clone(), 0, c.clone());
            for i in 0..f.rows() {
                let moved = single.mul_function_at(slot, f.get(i, *k));
                for ((b, _), v) in moved.terms {
                    out.add_term(b, i, v);
                }
            }
        }
        Ok(out)
    }

    /// Applies a left-linear map `P^m (x) O^r -> O^s`, given by its table
    /// `alpha |-> matrix`, to the last factor together with the module slot.
    pub fn apply_bar(&self, bar: &BTreeMap<Multi, PolyMatrix>, target_rank: usize) -> Result<JetTensor> {
        let last = self
            .factors
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Shape("no jet factor to contract".into()))?;
        let mut factors = self.factors.clone();
        factors.pop();
        let mut out = Self::zero(factors.clone(), target_rank);
        for ((a, k), c) in &self.terms {
            let Some(m) = bar.get(&a[last]) else { continue };
            if m.cols() != self.rank || m.rows() != target_rank {
                return Err(Error::Shape("bar matrix shape".into()));
            }
            let head = a[..last].to_vec();
            let single = Self::basis_element(factors.clone(), 1, head, 0, c.clone());
            for i in 0..target_rank {
                let moved = single.mul_function_at(last, m.get(i, *k));
                for ((b, _), v) in moved.terms {
                    out.add_term(b, i, v);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for JetTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, k), c)| {
                let mut s = format!("({c})");
                for x in a {
                    s.push_str(&format!(" xi^{x} (x)"));
                }
                format!("{s} e{}", k + 1)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The graded piece `I^n / I^{n+1} (x) Omega^p` with basis
/// `xi^alpha (x) dx_I`, `|alpha| = n`, `I` increasing of length `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedJetPiece {
    pub d: usize,
    pub n: u32,
    pub p: usize,
    jets: MultiBasis,
    forms: Vec<Vec<usize>>,
}

impl GradedJetPiece {
    pub fn new(d: usize, n: u32, p: usize) -> Self {
        GradedJetPiece {
            d,
            n,
            p,
            jets: MultiBasis::of_degree(d, n),
            forms: crate::derham::forms::wedge_basis(d, p),
        }
    }

    pub fn rank(&self) -> usize {
        self.jets.len() * self.forms.len()
    }

    pub fn jets(&self) -> &MultiBasis {
        &self.jets
    }

    pub fn forms(&self) -> &[Vec<usize>] {
        &self.forms
    }

    /// Flat index of `xi^alpha (x) dx_I`; the form index varies fastest.
    pub fn index(&self, alpha: &Multi, form: &[usize]) -> Option<usize> {
        let a = self.jets.position(alpha)?;
        let f = self.forms.iter().position(|x| x == form)?;
        Some(a * self.forms.len() + f)
    }

    pub fn element(&self, idx: usize) -> (&Multi, &[usize]) {
        (self.jets.get(idx / self.forms.len()), &self.forms[idx % self.forms.len()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    fn q() -> Field {
        Field::Rational
    }

    fn p1(s: &str) -> Poly {
        parse_poly(s, q(), 1).unwrap()
    }

    #[test]
    fn taylor_of_square() {
        let alg = JetAlgebra::new(1, 2, q(), JetMode::Plain);
        let t = alg.taylor(&p1("x1^2"));
        assert_eq!(t.coeff(&Multi(vec![0])), p1("x1^2"));
        assert_eq!(t.coeff(&Multi(vec![1])), p1("2*x1"));
        assert_eq!(t.coeff(&Multi(vec![2])), p1("1"));
        let tr = t.truncate(1).unwrap();
        assert_eq!(tr.coeff(&Multi(vec![2])), p1("0"));
        assert_eq!(tr.coeff(&Multi(vec![1])), p1("2*x1"));
    }

    #[test]
    fn divided_square() {
        let alg = JetAlgebra::new(1, 3, q(), JetMode::Divided);
        let xi = alg.xi(0);
        let sq = xi.mul(&xi).unwrap();
        assert_eq!(sq.coeff(&Multi(vec![2])), p1("2"));
    }

    #[test]
    fn comult_of_square() {
        let alg = JetAlgebra::new(1, 2, q(), JetMode::Plain);
        let sq = alg.monomial(Multi(vec![2]), p1("1"));
        let t = sq.comult(1).unwrap();
        let terms: Vec<_> = t.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0 .0, vec![Multi(vec![1]), Multi(vec![1])]);
        assert_eq!(*terms[0].1, p1("2"));
    }

    #[test]
    fn basis_convert_char2() {
        let alg = JetAlgebra::new(1, 2, Field::Prime(2), JetMode::Divided);
        let v = alg.monomial(Multi(vec![2]), Poly::one(Field::Prime(2), 1));
        assert!(matches!(v.basis_convert(JetMode::Plain), Err(Error::NonInvertibleFactorial(2, 2))));
    }

    #[test]
    fn middle_function_moves_left() {
        // xi (x) x e in P^1 (x) O = (x xi + xi^2) (x) e, truncated to x xi.
        let alg = JetAlgebra::new(1, 1, q(), JetMode::Plain);
        let t = JetTensor::basis_element(vec![alg], 1, vec![Multi(vec![1])], 0, p1("1"));
        let moved = t.mul_function_at(1, &p1("x1"));
        assert_eq!(moved.coeff(&[Multi(vec![1])], 0), p1("x1"));
        assert_eq!(moved.terms().count(), 1);
    }

    #[test]
    fn layout_roundtrip() {
        let a = JetAlgebra::new(2, 2, q(), JetMode::Plain);
        let l = TensorLayout::new(&[a, a.with_order(1)], 3);
        for i in 0..l.dim() {
            let (al, k) = l.key(i);
            assert_eq!(l.index(&al, k), Some(i));
        }
    }
}
