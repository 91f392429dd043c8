//! JSON forms of the objects exchanged with the command line and fixture
//! files. Polynomials are written in the text grammar of
//! [`parse_poly`].

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::crystal::{Section, Thickening};
use crate::diffop::{DiffOperator, DifferentialComplex, FreeModule};
use crate::error::{Error, Result};
use crate::exact::complex::ChainComplex;
use crate::exact::field::Field;
use crate::exact::matrix::Matrix;
use crate::exact::multi::Multi;
use crate::exact::parse::{parse_poly, parse_poly_in};
use crate::exact::poly::Poly;
use crate::exact::polymatrix::PolyMatrix;
use crate::jet::{JetAlgebra, JetElement, JetMode};
use crate::strat::{Connection, StratModule};

/// A value with a JSON document form.
pub trait Document: Sized {
    type Doc: Serialize + DeserializeOwned;

    fn to_doc(&self) -> Self::Doc;
    fn from_doc(doc: &Self::Doc) -> Result<Self>;

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("documents serialize")
    }

    fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(text)?)
    }
}

fn is_zero(c: &u64) -> bool {
    *c == 0
}

fn is_plain(m: &JetMode) -> bool {
    *m == JetMode::Plain
}

fn poly_matrix_rows(m: &PolyMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

fn poly_matrix_from(field: Field, d: usize, rows: usize, cols: usize, text: &[Vec<String>]) -> Result<PolyMatrix> {
    if text.len() != rows || text.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape(format!("expected a {rows} x {cols} matrix")));
    }
    let mut m = PolyMatrix::zeros(field, d, rows, cols);
    for (i, r) in text.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            m.set(i, j, parse_poly(s, field, d)?);
        }
    }
    Ok(m)
}

fn check_alpha(alpha: &[u32], d: usize) -> Result<Multi> {
    if alpha.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: alpha.len() });
    }
    Ok(Multi(alpha.to_vec()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub alpha: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JetDoc {
    pub mode: JetMode,
    pub m: u32,
    pub d: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub char: u64,
    pub terms: Vec<TermDoc>,
}

impl Document for JetElement {
    type Doc = JetDoc;

    fn to_doc(&self) -> JetDoc {
        let a = self.algebra();
        JetDoc {
            mode: a.mode,
            m: a.m,
            d: a.d,
            char: a.field.characteristic() as u64,
            terms: self
                .terms()
                .map(|(alpha, c)| TermDoc {
                    alpha: alpha.0.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    fn from_doc(doc: &JetDoc) -> Result<Self> {
        let alg = JetAlgebra::new(doc.d, doc.m, Field::new(doc.char)?, doc.mode);
        let mut out = alg.zero();
        for t in &doc.terms {
            let alpha = check_alpha(&t.alpha, doc.d)?;
            if alpha.degree() > doc.m {
                return Err(Error::OrderOutOfRange(format!("xi^{alpha} above order {}", doc.m)));
            }
            out.add_term(alpha, parse_poly(&t.coeff, alg.field, doc.d)?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarDoc {
    pub alpha: Vec<u32>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorDoc {
    pub source_rank: usize,
    pub target_rank: usize,
    pub d: usize,
    pub order: u32,
    #[serde(default, skip_serializing_if = "is_plain")]
    pub mode: JetMode,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub char: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_labels: Option<Vec<String>>,
    pub bar: Vec<BarDoc>,
}

fn module(d: usize, rank: usize, labels: &Option<Vec<String>>) -> Result<FreeModule> {
    match labels {
        Some(l) if l.len() != rank => Err(Error::DimensionMismatch { expected: rank, found: l.len() }),
        Some(l) => Ok(FreeModule::labeled(d, l.clone())),
        None => Ok(FreeModule::new(d, rank)),
    }
}

impl Document for DiffOperator {
    type Doc = OperatorDoc;

    fn to_doc(&self) -> OperatorDoc {
        OperatorDoc {
            source_rank: self.source().rank,
            target_rank: self.target().rank,
            d: self.dim(),
            order: self.order(),
            mode: self.mode(),
            char: self.field().characteristic() as u64,
            source_labels: self.source().labels.clone(),
            target_labels: self.target().labels.clone(),
            bar: self
                .bar()
                .iter()
                .map(|(a, m)| BarDoc {
                    alpha: a.0.clone(),
                    matrix: poly_matrix_rows(m),
                })
                .collect(),
        }
    }

    fn from_doc(doc: &OperatorDoc) -> Result<Self> {
        let field = Field::new(doc.char)?;
        let bar = doc
            .bar
            .iter()
            .map(|b| Ok((check_alpha(&b.alpha, doc.d)?, poly_matrix_from(field, doc.d, doc.target_rank, doc.source_rank, &b.matrix)?)))
            .collect::<Result<Vec<_>>>()?;
        DiffOperator::new(
            module(doc.d, doc.source_rank, &doc.source_labels)?,
            module(doc.d, doc.target_rank, &doc.target_labels)?,
            field,
            doc.mode,
            doc.order,
            bar,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DifferentialComplexDoc {
    pub operators: Vec<OperatorDoc>,
}

impl Document for DifferentialComplex {
    type Doc = DifferentialComplexDoc;

    fn to_doc(&self) -> Self::Doc {
        DifferentialComplexDoc {
            operators: self.ops().iter().map(Document::to_doc).collect(),
        }
    }

    fn from_doc(doc: &Self::Doc) -> Result<Self> {
        DifferentialComplex::new(doc.operators.iter().map(DiffOperator::from_doc).collect::<Result<_>>()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionDoc {
    pub d: usize,
    pub rank: usize,
    #[serde(default)]
    pub char: u64,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Vec<String>>>,
}

impl Document for Connection {
    type Doc = ConnectionDoc;

    fn to_doc(&self) -> ConnectionDoc {
        ConnectionDoc {
            d: self.dim(),
            rank: self.rank(),
            char: self.field().characteristic() as u64,
            a: self.matrices().iter().map(poly_matrix_rows).collect(),
        }
    }

    fn from_doc(doc: &ConnectionDoc) -> Result<Self> {
        let field = Field::new(doc.char)?;
        let a = doc
            .a
            .iter()
            .map(|m| poly_matrix_from(field, doc.d, doc.rank, doc.rank, m))
            .collect::<Result<Vec<_>>>()?;
        Connection::new(field, doc.d, doc.rank, a)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratDoc {
    pub d: usize,
    pub rank: usize,
    #[serde(default)]
    pub char: u64,
    #[serde(default)]
    pub mode: JetMode,
    /// `levels[n]` is the table of `s'_n`.
    pub levels: Vec<Vec<BarDoc>>,
}

impl Document for StratModule {
    type Doc = StratDoc;

    fn to_doc(&self) -> StratDoc {
        StratDoc {
            d: self.dim(),
            rank: self.rank(),
            char: self.field().characteristic() as u64,
            mode: self.mode(),
            levels: (0..=self.top())
                .map(|n| {
                    self.table(n)
                        .iter()
                        .map(|(a, m)| BarDoc {
                            alpha: a.0.clone(),
                            matrix: poly_matrix_rows(m),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    fn from_doc(doc: &StratDoc) -> Result<Self> {
        let field = Field::new(doc.char)?;
        let levels = doc
            .levels
            .iter()
            .map(|lvl| {
                lvl.iter()
                    .map(|b| Ok((check_alpha(&b.alpha, doc.d)?, poly_matrix_from(field, doc.d, doc.rank, doc.rank, &b.matrix)?)))
                    .collect::<Result<_>>()
            })
            .collect::<Result<Vec<_>>>()?;
        StratModule::from_levels(field, doc.d, doc.rank, doc.mode, levels)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    #[serde(default)]
    pub char: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl Document for Matrix {
    type Doc = MatrixDoc;

    fn to_doc(&self) -> MatrixDoc {
        MatrixDoc {
            char: self.field().characteristic() as u64,
            rows: self.rows(),
            cols: self.cols(),
            entries: (0..self.rows()).map(|i| (0..self.cols()).map(|j| self.get(i, j).to_string()).collect()).collect(),
        }
    }

    fn from_doc(doc: &MatrixDoc) -> Result<Self> {
        let field = Field::new(doc.char)?;
        if doc.entries.len() != doc.rows || doc.entries.iter().any(|r| r.len() != doc.cols) {
            return Err(Error::Shape(format!("expected a {} x {} matrix", doc.rows, doc.cols)));
        }
        let mut m = Matrix::zeros(field, doc.rows, doc.cols);
        for (i, r) in doc.entries.iter().enumerate() {
            for (j, s) in r.iter().enumerate() {
                m.set(i, j, field.parse_scalar(s)?);
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    #[serde(default)]
    pub char: u64,
    pub ranks: Vec<usize>,
    pub differentials: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homotopy: Option<Vec<MatrixDoc>>,
}

impl Document for ChainComplex {
    type Doc = ComplexDoc;

    fn to_doc(&self) -> ComplexDoc {
        ComplexDoc {
            char: self.field().characteristic() as u64,
            ranks: self.ranks().to_vec(),
            differentials: self.differentials().iter().map(Document::to_doc).collect(),
            homotopy: self.homotopy().map(|h| h.iter().map(Document::to_doc).collect()),
        }
    }

    fn from_doc(doc: &ComplexDoc) -> Result<Self> {
        let field = Field::new(doc.char)?;
        let diffs = doc.differentials.iter().map(Matrix::from_doc).collect::<Result<Vec<_>>>()?;
        let c = ChainComplex::new(field, doc.ranks.clone(), diffs)?;
        match &doc.homotopy {
            Some(h) => c.with_homotopy(h.iter().map(Matrix::from_doc).collect::<Result<_>>()?),
            None => Ok(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyMatrixDoc {
    pub d: usize,
    #[serde(default)]
    pub char: u64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl Document for PolyMatrix {
    type Doc = PolyMatrixDoc;

    fn to_doc(&self) -> PolyMatrixDoc {
        PolyMatrixDoc {
            d: self.nvars(),
            char: self.field().characteristic() as u64,
            rows: self.rows(),
            cols: self.cols(),
            entries: poly_matrix_rows(self),
        }
    }

    fn from_doc(doc: &PolyMatrixDoc) -> Result<Self> {
        poly_matrix_from(Field::new(doc.char)?, doc.d, doc.rows, doc.cols, &doc.entries)
    }
}

/// A thickening together with sections of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickeningFile {
    pub thickening: Thickening,
    pub sections: Vec<Section>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionDoc {
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThickeningDoc {
    pub s: usize,
    pub nu: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub char: u64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub divided: bool,
    pub sections: Vec<SectionDoc>,
}

impl Document for ThickeningFile {
    type Doc = ThickeningDoc;

    fn to_doc(&self) -> ThickeningDoc {
        let t = &self.thickening;
        let print = |e: &crate::crystal::BElem| {
            // sections are stored over the monomial basis; write them back as
            // polynomials in the t_i (divided basis elements t^[b] = t^b / b!)
            let terms = t.basis().iter().zip(&e.0).map(|(m, c)| {
                let c = if t.is_divided() { c * &m.factorial(t.field()).inv().expect("char 0 or below p") } else { c.clone() };
                (m.clone(), c)
            });
            Poly::from_terms(t.field(), t.vars(), terms).display_with("t")
        };
        ThickeningDoc {
            s: t.vars(),
            nu: t.nu(),
            char: t.field().characteristic() as u64,
            divided: t.is_divided(),
            sections: self
                .sections
                .iter()
                .map(|h| SectionDoc {
                    images: h.images.iter().map(print).collect(),
                })
                .collect(),
        }
    }

    fn from_doc(doc: &ThickeningDoc) -> Result<Self> {
        let field = Field::new(doc.char)?;
        let thickening = if doc.divided {
            Thickening::divided(field, doc.s, doc.nu)
        } else {
            Thickening::new(field, doc.s, doc.nu)
        };
        let sections = doc
            .sections
            .iter()
            .map(|h| {
                let images = h.images.iter().map(|s| parse_poly_in(s, field, doc.s, "t")).collect::<Result<Vec<_>>>()?;
                Section::new(&thickening, &images)
            })
            .collect::<Result<_>>()?;
        Ok(ThickeningFile { thickening, sections })
    }
}

/// Any object a fixture file may hold; the kind is recognized by its keys.
#[derive(Clone, Debug)]
pub enum FixtureObject {
    Connection(Connection),
    Stratification(StratModule),
    Complex(DifferentialComplex),
    ChainComplex(ChainComplex),
    Thickening(ThickeningFile),
    Operator(DiffOperator),
    Jet(JetElement),
}

impl FixtureObject {
    pub fn kind(&self) -> &'static str {
        match self {
            FixtureObject::Connection(_) => "connection",
            FixtureObject::Stratification(_) => "stratification",
            FixtureObject::Complex(_) => "complex",
            FixtureObject::ChainComplex(_) => "chain-complex",
            FixtureObject::Thickening(_) => "thickening",
            FixtureObject::Operator(_) => "operator",
            FixtureObject::Jet(_) => "jet",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let has = |k: &str| v.get(k).is_some();
        let obj = if has("A") {
            FixtureObject::Connection(Connection::from_doc(&serde_json::from_value(v)?)?)
        } else if has("levels") {
            FixtureObject::Stratification(StratModule::from_doc(&serde_json::from_value(v)?)?)
        } else if has("operators") {
            FixtureObject::Complex(DifferentialComplex::from_doc(&serde_json::from_value(v)?)?)
        } else if has("differentials") {
            FixtureObject::ChainComplex(ChainComplex::from_doc(&serde_json::from_value(v)?)?)
        } else if has("sections") {
            FixtureObject::Thickening(ThickeningFile::from_doc(&serde_json::from_value(v)?)?)
        } else if has("bar") {
            FixtureObject::Operator(DiffOperator::from_doc(&serde_json::from_value(v)?)?)
        } else if has("terms") {
            FixtureObject::Jet(JetElement::from_doc(&serde_json::from_value(v)?)?)
        } else {
            return Err(Error::Invalid("unrecognized fixture object".into()));
        };
        Ok(obj)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        match self {
            FixtureObject::Connection(x) => x.to_json(),
            FixtureObject::Stratification(x) => x.to_json(),
            FixtureObject::Complex(x) => x.to_json(),
            FixtureObject::ChainComplex(x) => x.to_json(),
            FixtureObject::Thickening(x) => x.to_json(),
            FixtureObject::Operator(x) => x.to_json(),
            FixtureObject::Jet(x) => x.to_json(),
        }
    }
}

/// Reads a JSON file into a value.
pub fn read<T: Document>(path: &std::path::Path) -> Result<T> {
    T::from_json(&std::fs::read_to_string(path)?)
}

/// Writes a value as pretty JSON.
pub fn write<T: Document>(path: &std::path::Path, value: &T) -> Result<()> {
    std::fs::write(path, value.to_json() + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derham::complexes::{derham_complex, linearized_level_with_homotopy};
    use crate::fixtures;
    use crate::strat::taylor_stratification;

    fn round_trip<T: Document + PartialEq + std::fmt::Debug>(v: &T) {
        let back = T::from_json(&v.to_json()).unwrap();
        assert_eq!(&back, v);
    }

    #[test]
    fn objects_round_trip() {
        let q = Field::Rational;
        let alg = JetAlgebra::new(2, 3, q, JetMode::Divided);
        round_trip(&alg.taylor(&parse_poly("x1^2*x2 - 3/2*x2", q, 2).unwrap()));
        for (_, f) in fixtures::derham_fixtures(q, JetMode::Plain).unwrap() {
            round_trip(&f);
        }
        round_trip(&derham_complex(Field::Prime(5), 2, JetMode::Divided).unwrap());
        let c = fixtures::flat_plane(q);
        round_trip(&c);
        round_trip(&taylor_stratification(&c, 3, JetMode::Plain).unwrap());
        round_trip(&linearized_level_with_homotopy(2, 2, q).unwrap());
        round_trip(&c.matrices()[1]);
        for t in fixtures::thickenings(q) {
            for triple in fixtures::section_triples(&t, 2).unwrap() {
                round_trip(&ThickeningFile {
                    thickening: t.clone(),
                    sections: triple.to_vec(),
                });
            }
        }
    }

    #[test]
    fn kinds_are_recognized() {
        let q = Field::Rational;
        let c = fixtures::nilpotent(q);
        let m = taylor_stratification(&c, 2, JetMode::Plain).unwrap();
        assert_eq!(FixtureObject::parse(&c.to_json()).unwrap().kind(), "connection");
        assert_eq!(FixtureObject::parse(&m.to_json()).unwrap().kind(), "stratification");
        let f = derham_complex(q, 1, JetMode::Plain).unwrap();
        assert_eq!(FixtureObject::parse(&f.to_json()).unwrap().kind(), "complex");
        assert_eq!(FixtureObject::parse(&f.ops()[0].to_json()).unwrap().kind(), "operator");
        assert!(FixtureObject::parse("{}").is_err());
    }

    #[test]
    fn connection_format() {
        let c = Connection::from_json(r#"{"d": 1, "rank": 1, "char": 0, "A": [[["x1"]]]}"#).unwrap();
        assert_eq!(c, fixtures::polynomial_twist(Field::Rational));
        assert!(Connection::from_json(r#"{"d": 1, "rank": 2, "A": [[["x1"]]]}"#).is_err());
    }
}
