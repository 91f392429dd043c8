//! Evaluation of stratified modules on nilpotent thickenings of a point and
//! the comparison isomorphisms between sections.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::{factorial, Field, Scalar};
use crate::exact::multi::{Multi, MultiBasis};
use crate::exact::poly::Poly;
use crate::exact::polymatrix::PolyMatrix;
use crate::jet::{JetAlgebra, JetMode, TensorLayout};
use crate::strat::{truncation_matrix, InducedTower, StratModule};

/// `B = k[t_1..t_s] / (monomials of degree > nu)`. With `divided` set the
/// basis is `t^{[beta]}` and `B` carries divided powers on its augmentation
/// ideal `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thickening {
    field: Field,
    s: usize,
    nu: u32,
    divided: bool,
    basis: MultiBasis,
}

/// An element of a [`Thickening`], dense over its monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BElem(pub Vec<Scalar>);

impl Thickening {
    pub fn new(field: Field, s: usize, nu: u32) -> Self {
        Thickening {
            field,
            s,
            nu,
            divided: false,
            basis: MultiBasis::up_to(s, nu),
        }
    }

    /// The divided-power variant.
    pub fn divided(field: Field, s: usize, nu: u32) -> Self {
        Thickening {
            divided: true,
            ..Self::new(field, s, nu)
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> usize {
        self.s
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn is_divided(&self) -> bool {
        self.divided
    }

    pub fn basis(&self) -> &MultiBasis {
        &self.basis
    }

    /// `dim_k B = C(nu + s, s)`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn algebra(&self) -> JetAlgebra {
        let mode = if self.divided { JetMode::Divided } else { JetMode::Plain };
        JetAlgebra::new(self.s, self.nu, self.field, mode)
    }

    pub fn zero(&self) -> BElem {
        BElem(vec![self.field.zero(); self.dim()])
    }

    pub fn constant(&self, c: Scalar) -> BElem {
        let mut e = self.zero();
        e.0[0] = c;
        e
    }

    pub fn one(&self) -> BElem {
        self.constant(self.field.one())
    }

    /// The basis element `t^beta` (or `t^{[beta]}`); zero above `nu`.
    pub fn monomial(&self, beta: &Multi) -> BElem {
        let mut e = self.zero();
        if let Some(p) = self.basis.position(beta) {
            e.0[p] = self.field.one();
        }
        e
    }

    pub fn is_zero(&self, a: &BElem) -> bool {
        a.0.iter().all(Scalar::is_zero)
    }

    /// Whether `a` lies in the augmentation ideal `J`.
    pub fn in_ideal(&self, a: &BElem) -> bool {
        a.0[0].is_zero()
    }

    pub fn add(&self, a: &BElem, b: &BElem) -> BElem {
        BElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &BElem, b: &BElem) -> BElem {
        BElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, a: &BElem, c: &Scalar) -> BElem {
        BElem(a.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, a: &BElem, b: &BElem) -> BElem {
        let alg = self.algebra();
        let mut out = self.zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some((c, m)) = alg.monomial_product(self.basis.get(i), self.basis.get(j)) {
                    let p = self.basis.position(&m).expect("within order");
                    out.0[p] = &out.0[p] + &(&(x * y) * &c);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &BElem, e: u32) -> BElem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Reads a polynomial in `t_1..t_s` as an element of `B` (monomials are
    /// products of the `t_i` computed in `B`).
    pub fn element_from_poly(&self, f: &Poly) -> Result<BElem> {
        if f.nvars() != self.s {
            return Err(Error::DimensionMismatch { expected: self.s, found: f.nvars() });
        }
        let vars: Vec<BElem> = (0..self.s).map(|i| self.monomial(&Multi::unit(self.s, i))).collect();
        let mut out = self.zero();
        for (m, c) in f.terms() {
            if m.degree() > self.nu {
                continue;
            }
            let mut term = self.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                term = self.mul(&term, &self.pow(&vars[i], e));
            }
            out = self.add(&out, &term);
        }
        Ok(out)
    }

    /// The divided power `a^{[n]}` of `a` in `J`: `a^n / n!` in the plain
    /// algebra, the divided-power structure otherwise.
    pub fn divided_power(&self, a: &BElem, n: u32) -> Result<BElem> {
        if !self.in_ideal(a) {
            return Err(Error::Invalid("divided powers need an element of J".into()));
        }
        if !self.divided {
            let inv = self
                .field
                .factorial(n as u64)
                .inv()
                .map_err(|_| Error::NonInvertibleFactorial(n as u64, self.field.characteristic()))?;
            return Ok(self.scale(&self.pow(a, n), &inv));
        }
        let terms: Vec<(usize, Scalar)> = a.0.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        Ok(self.sum_divided_power(&terms, n))
    }

    /// `(x + y)^{[n]} = sum_i x^{[i]} y^{[n-i]}` over the terms.
    fn sum_divided_power(&self, terms: &[(usize, Scalar)], n: u32) -> BElem {
        match terms {
            [] => {
                if n == 0 {
                    self.one()
                } else {
                    self.zero()
                }
            }
            [(p, c), rest @ ..] => {
                let mut out = self.zero();
                for i in 0..=n {
                    let head = self.scale(&self.monomial_divided_power(self.basis.get(*p), i), &c.pow(i));
                    out = self.add(&out, &self.mul(&head, &self.sum_divided_power(rest, n - i)));
                }
                out
            }
        }
    }

    /// `(t^{[beta]})^{[n]}` for `beta != 0`: split off one variable,
    /// `(t_i^{[b]})^{[n]} = (nb)! / (n! (b!)^n) t_i^{[nb]}` and
    /// `(x y)^{[n]} = x^n y^{[n]}`.
    fn monomial_divided_power(&self, beta: &Multi, n: u32) -> BElem {
        if n == 0 {
            return self.one();
        }
        let i = beta.0.iter().position(|&e| e > 0).expect("beta in J");
        let b = beta.0[i];
        let num = factorial((n * b) as u64);
        let den: BigUint = factorial(n as u64) * factorial(b as u64).pow(n);
        let k = self.field.from_biguint(&(num / den));
        let mut lone = Multi::zero(self.s);
        lone.0[i] = n * b;
        let mut rest = beta.clone();
        rest.0[i] = 0;
        let head = self.scale(&self.monomial(&lone), &k);
        self.mul(&head, &self.pow(&self.monomial(&rest), n))
    }

    pub fn display(&self, a: &BElem) -> String {
        let f = Poly::from_terms(self.field, self.s, self.basis.iter().cloned().zip(a.0.iter().cloned()));
        let s = f.display_with("t");
        if self.divided && f.degree().unwrap_or(0) > 1 {
            format!("{s} (divided basis)")
        } else {
            s
        }
    }
}

/// A map from the coordinate ring to `B`, given by `h(x_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub images: Vec<BElem>,
}

impl Section {
    pub fn new(t: &Thickening, images: &[Poly]) -> Result<Self> {
        Ok(Section {
            images: images.iter().map(|f| t.element_from_poly(f)).collect::<Result<_>>()?,
        })
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    /// `h(f)`.
    pub fn evaluate(&self, t: &Thickening, f: &Poly) -> Result<BElem> {
        if f.nvars() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: f.nvars() });
        }
        let mut out = t.zero();
        for (m, c) in f.terms() {
            let mut term = t.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                term = t.mul(&term, &t.pow(&self.images[i], e));
            }
            out = t.add(&out, &term);
        }
        Ok(out)
    }

    pub fn evaluate_matrix(&self, t: &Thickening, m: &PolyMatrix) -> Result<BMatrix> {
        let mut out = BMatrix::zeros(t, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.entries[i * m.cols() + j] = self.evaluate(t, m.get(i, j))?;
            }
        }
        Ok(out)
    }
}

/// A matrix over `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BElem>,
}

impl BMatrix {
    pub fn zeros(t: &Thickening, rows: usize, cols: usize) -> Self {
        BMatrix {
            rows,
            cols,
            entries: vec![t.zero(); rows * cols],
        }
    }

    pub fn identity(t: &Thickening, n: usize) -> Self {
        let mut m = Self::zeros(t, n, n);
        for i in 0..n {
            m.entries[i * n + i] = t.one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, t: &Thickening, other: &BMatrix) -> Result<BMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(t, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if t.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = t.add(out.get(i, j), &t.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn from_constant(t: &Thickening, m: &crate::exact::matrix::Matrix) -> Self {
        let mut out = Self::zeros(t, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, t.constant(m.get(i, j).clone()));
            }
        }
        out
    }

    pub fn display(&self, t: &Thickening) -> String {
        (0..self.rows)
            .map(|i| {
                let row: Vec<String> = (0..self.cols).map(|j| t.display(self.get(i, j))).collect();
                format!("[{}]", row.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `B (x)_h L`: a free `B`-module of rank `r` together with the evaluation
/// of sections of `L` through `h`.
#[derive(Clone, Debug)]
pub struct CrystalValue<'a> {
    pub thickening: &'a Thickening,
    pub section: &'a Section,
    pub rank: usize,
}

impl CrystalValue<'_> {
    /// The image of `sum f_k e_k`.
    pub fn evaluate(&self, s: &[Poly]) -> Result<Vec<BElem>> {
        if s.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: s.len() });
        }
        s.iter().map(|f| self.section.evaluate(self.thickening, f)).collect()
    }
}

fn check_level(m: &StratModule, t: &Thickening) -> Result<()> {
    if m.top() < t.nu() {
        return Err(Error::OrderOutOfRange(format!(
            "stratification known to level {} but the thickening needs {}",
            m.top(),
            t.nu()
        )));
    }
    if t.field() != m.field() {
        return Err(Error::FieldMismatch(format!("{:?}", t.field()), format!("{:?}", m.field())));
    }
    Ok(())
}

pub fn crystal_evaluate<'a>(m: &StratModule, t: &'a Thickening, h: &'a Section) -> Result<CrystalValue<'a>> {
    check_level(m, t)?;
    if h.dim() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), found: h.dim() });
    }
    Ok(CrystalValue {
        thickening: t,
        section: h,
        rank: m.rank(),
    })
}

/// `eta_i = h1(x_i) - h0(x_i)`, after checking `h0 = h1 mod J`.
fn differences(t: &Thickening, h0: &Section, h1: &Section) -> Result<Vec<BElem>> {
    if h0.dim() != h1.dim() {
        return Err(Error::DimensionMismatch { expected: h0.dim(), found: h1.dim() });
    }
    let mut eta = Vec::new();
    for i in 0..h0.dim() {
        let e = t.sub(&h1.images[i], &h0.images[i]);
        if !t.in_ideal(&e) {
            return Err(Error::SectionsDisagree(i));
        }
        eta.push(e);
    }
    Ok(eta)
}

/// `eta^alpha` (plain) or `eta^{[alpha]}` (divided).
fn eta_monomial(t: &Thickening, eta: &[BElem], alpha: &Multi, mode: JetMode) -> Result<BElem> {
    let mut out = t.one();
    for (i, &a) in alpha.0.iter().enumerate() {
        let f = match mode {
            JetMode::Plain => t.pow(&eta[i], a),
            JetMode::Divided => t.divided_power(&eta[i], a)?,
        };
        out = t.mul(&out, &f);
    }
    Ok(out)
}

/// `chi : B (x)_{h1} L -> B (x)_{h0} L`,
/// `chi(1 (x) e_k) = sum_alpha sum_i h0(T^nu_alpha[i, k]) eta^alpha e_i`
/// with `eta = h1 - h0`.
pub fn comparison_iso(m: &StratModule, t: &Thickening, h0: &Section, h1: &Section) -> Result<BMatrix> {
    check_level(m, t)?;
    if h0.dim() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), found: h0.dim() });
    }
    let eta = differences(t, h0, h1)?;
    let mut chi = BMatrix::zeros(t, m.rank(), m.rank());
    for (alpha, tab) in m.table(t.nu()) {
        let coeff = eta_monomial(t, &eta, alpha, m.mode())?;
        if t.is_zero(&coeff) {
            continue;
        }
        let at = h0.evaluate_matrix(t, tab)?;
        for i in 0..m.rank() {
            for k in 0..m.rank() {
                let v = t.add(chi.get(i, k), &t.mul(at.get(i, k), &coeff));
                chi.set(i, k, v);
            }
        }
    }
    Ok(chi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    /// `chi(h0,h2) = chi(h0,h1) chi(h1,h2)`.
    pub cocycle: bool,
    /// `chi(h0,h1) chi(h1,h0) = id`.
    pub inverse: bool,
    /// `chi(h,h) = id` for each of the three sections.
    pub identity: bool,
    pub pass: bool,
}

pub fn verify_cocycle(m: &StratModule, t: &Thickening, h0: &Section, h1: &Section, h2: &Section) -> Result<CocycleReport> {
    let c01 = comparison_iso(m, t, h0, h1)?;
    let c12 = comparison_iso(m, t, h1, h2)?;
    let c02 = comparison_iso(m, t, h0, h2)?;
    let c10 = comparison_iso(m, t, h1, h0)?;
    let id = BMatrix::identity(t, m.rank());
    let cocycle = c01.mul(t, &c12)? == c02;
    let inverse = c01.mul(t, &c10)? == id;
    let mut identity = true;
    for h in [h0, h1, h2] {
        identity &= comparison_iso(m, t, h, h)? == id;
    }
    Ok(CocycleReport {
        cocycle,
        inverse,
        identity,
        pass: cocycle && inverse && identity,
    })
}

/// `chi_N (id (x) h1(f)) = (id (x) h0(f)) chi_M` for `f : M -> N`.
pub fn verify_naturality(f: &PolyMatrix, source: &StratModule, target: &StratModule, t: &Thickening, h0: &Section, h1: &Section) -> Result<bool> {
    let chi_m = comparison_iso(source, t, h0, h1)?;
    let chi_n = comparison_iso(target, t, h0, h1)?;
    let lhs = chi_n.mul(t, &h1.evaluate_matrix(t, f)?)?;
    let rhs = h0.evaluate_matrix(t, f)?.mul(t, &chi_m)?;
    Ok(lhs == rhs)
}

/// The comparison map of the induced tower, from level `level + nu` to
/// `level`: `xi^gamma (x) e |-> sum eta^alpha c xi^beta (x) e` where
/// `delta(xi^gamma) = sum c xi^alpha (x) xi^beta`.
pub fn induced_comparison(tower: &InducedTower, t: &Thickening, h0: &Section, h1: &Section, level: u32) -> Result<BMatrix> {
    if level + t.nu() > tower.top {
        return Err(Error::OrderOutOfRange(format!("induced tower known to level {}", tower.top)));
    }
    let eta = differences(t, h0, h1)?;
    let delta = tower.strat_map(t.nu(), level);
    let layout = TensorLayout::new(&[tower.jet_algebra(t.nu()), tower.jet_algebra(level)], tower.rank);
    let out_layout = TensorLayout::new(&[tower.jet_algebra(level)], tower.rank);
    let mut chi = BMatrix::zeros(t, out_layout.dim(), delta.cols());
    for row in 0..delta.rows() {
        let (alphas, k) = layout.key(row);
        let coeff = eta_monomial(t, &eta, &alphas[0], tower.mode)?;
        let target = out_layout.index(&alphas[1..], k).expect("in layout");
        for col in 0..delta.cols() {
            let c = delta.get(row, col);
            if c.is_zero() {
                continue;
            }
            let v = t.add(chi.get(target, col), &t.scale(&coeff, c));
            chi.set(target, col, v);
        }
    }
    Ok(chi)
}

/// The tower form of the cocycle identity:
/// `chi(h0,h1)_l chi(h1,h2)_{l+nu} = chi(h0,h2)_l pi`, with `pi` the
/// truncation from level `l + 2 nu` to `l + nu`.
pub fn verify_induced_cocycle(tower: &InducedTower, t: &Thickening, h: [&Section; 3], level: u32) -> Result<bool> {
    let nu = t.nu();
    let c01 = induced_comparison(tower, t, h[0], h[1], level)?;
    let c12 = induced_comparison(tower, t, h[1], h[2], level + nu)?;
    let c02 = induced_comparison(tower, t, h[0], h[2], level)?;
    let pi = truncation_matrix(tower.d, level + 2 * nu, level + nu, tower.rank, tower.field);
    Ok(c01.mul(t, &c12)? == c02.mul(t, &BMatrix::from_constant(t, &pi))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly_in;
    use crate::strat::{taylor_stratification, Connection};

    fn q() -> Field {
        Field::Rational
    }

    fn tpoly(s: usize, text: &str) -> Poly {
        parse_poly_in(text, q(), s, "t").unwrap()
    }

    fn constant_twist(c: i64, top: u32) -> StratModule {
        let a = vec![PolyMatrix::from_constant(&crate::exact::matrix::Matrix::from_i64(q(), &[&[c]]), 1)];
        taylor_stratification(&Connection::new(q(), 1, 1, a).unwrap(), top, JetMode::Plain).unwrap()
    }

    #[test]
    fn dims() {
        assert_eq!(Thickening::new(q(), 2, 2).dim(), 6);
        assert_eq!(Thickening::new(q(), 1, 0).dim(), 1);
    }

    #[test]
    fn constant_twist_first_order() {
        let t = Thickening::new(q(), 1, 1);
        let m = constant_twist(3, 2);
        let h0 = Section::new(&t, &[tpoly(1, "2")]).unwrap();
        let h1 = Section::new(&t, &[tpoly(1, "2 + 5*t1")]).unwrap();
        let chi = comparison_iso(&m, &t, &h0, &h1).unwrap();
        assert_eq!(chi.get(0, 0), &t.element_from_poly(&tpoly(1, "1 + 15*t1")).unwrap());
    }

    #[test]
    fn cocycle_constant_twist() {
        let t = Thickening::new(q(), 1, 2);
        let m = constant_twist(2, 3);
        let h: Vec<Section> = ["1", "1 + t1", "1 - 3*t1 + t1^2"].iter().map(|s| Section::new(&t, &[tpoly(1, s)]).unwrap()).collect();
        assert!(verify_cocycle(&m, &t, &h[0], &h[1], &h[2]).unwrap().pass);
    }

    #[test]
    fn sections_must_agree_mod_j() {
        let t = Thickening::new(q(), 1, 1);
        let m = constant_twist(1, 1);
        let h0 = Section::new(&t, &[tpoly(1, "0")]).unwrap();
        let h1 = Section::new(&t, &[tpoly(1, "1")]).unwrap();
        assert!(matches!(comparison_iso(&m, &t, &h0, &h1), Err(Error::SectionsDisagree(0))));
    }

    #[test]
    fn divided_powers_in_pd_algebra() {
        let t = Thickening::divided(Field::Prime(2), 1, 4);
        let x = t.monomial(&Multi(vec![1]));
        // t^{[1]} raised to [4] is t^{[4]}
        assert_eq!(t.divided_power(&x, 4).unwrap(), t.monomial(&Multi(vec![4])));
        // (t^{[2]})^{[2]} = 3 t^{[4]}
        assert_eq!(t.divided_power(&t.monomial(&Multi(vec![2])), 2).unwrap(), t.monomial(&Multi(vec![4])));
        // plain algebra refuses 1/2
        let p = Thickening::new(Field::Prime(2), 1, 4);
        assert!(p.divided_power(&p.monomial(&Multi(vec![1])), 2).is_err());
    }

    #[test]
    fn plain_divided_power_refuses_small_characteristic() {
        let t = Thickening::new(Field::Prime(2), 1, 3);
        let x = t.monomial(&Multi(vec![1]));
        let err = t.divided_power(&x, 2).unwrap_err();
        assert_eq!(err, Error::NonInvertibleFactorial(2, 2));
        assert_eq!(err.to_string(), "2! is not invertible in characteristic 2");
    }

    #[test]
    fn divided_power_matches_char0() {
        let a = Thickening::divided(q(), 2, 4);
        let b = Thickening::new(q(), 2, 4);
        let fa = tpoly(2, "t1 + 2*t2 - t1*t2 + t1^2");
        let (ea, eb) = (a.element_from_poly(&fa).unwrap(), b.element_from_poly(&fa).unwrap());
        for n in 0..=4 {
            let da = a.divided_power(&ea, n).unwrap();
            let db = b.divided_power(&eb, n).unwrap();
            // convert divided basis to plain: t^{[beta]} = t^beta / beta!
            let conv: Vec<Scalar> = a.basis().iter().zip(&da.0).map(|(m, c)| c * &m.factorial(q()).inv().unwrap()).collect();
            assert_eq!(conv, db.0, "n={n}");
        }
    }

    #[test]
    fn nilpotent_first_order() {
        let t = Thickening::new(q(), 1, 1);
        let m = taylor_stratification(&crate::fixtures::nilpotent(q()), 1, JetMode::Plain).unwrap();
        let h0 = Section::new(&t, &[tpoly(1, "4")]).unwrap();
        let h1 = Section::new(&t, &[tpoly(1, "4 + 7*t1")]).unwrap();
        let chi = comparison_iso(&m, &t, &h0, &h1).unwrap();
        assert_eq!(chi.get(0, 1), &t.element_from_poly(&tpoly(1, "7*t1")).unwrap());
        assert_eq!(chi.get(0, 0), &t.one());
        assert!(t.is_zero(chi.get(1, 0)));
    }

    #[test]
    fn induced_cocycle() {
        use crate::diffop::FreeModule;
        use crate::strat::induced_stratification;
        for mode in [JetMode::Plain, JetMode::Divided] {
            let t = Thickening::new(q(), 2, 2);
            let tower = induced_stratification(&FreeModule::new(2, 1), q(), mode, 7);
            let h: Vec<Section> = [["1", "0"], ["1 + t1", "t2 - t1^2"], ["1 + 2*t1*t2", "3*t1"]]
                .iter()
                .map(|im| Section::new(&t, &[tpoly(2, im[0]), tpoly(2, im[1])]).unwrap())
                .collect();
            assert!(verify_induced_cocycle(&tower, &t, [&h[0], &h[1], &h[2]], 1).unwrap());
            let id = induced_comparison(&tower, &t, &h[1], &h[1], 1).unwrap();
            let pi = truncation_matrix(2, 3, 1, 1, q());
            assert_eq!(id, BMatrix::from_constant(&t, &pi));
        }
    }
}
