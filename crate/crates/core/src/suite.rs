//! The verification suite: expands a configuration into independent checks,
//! runs them in parallel and collects an order-stable report.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::crystal::{verify_cocycle, Section, Thickening};
use crate::derham::complexes::{derham_of_strat, graded_derham_level, linearized_derham_level};
use crate::derham::phi::verify_phi_chainmap;
use crate::derham::psi::verify_psi_exactness;
use crate::diffop::{verify_order1_relations, DifferentialComplex};
use crate::error::{Error, Result};
use crate::exact::complex::ChainComplex;
use crate::exact::field::Field;
use crate::fixtures;
use crate::io::{FixtureObject, ThickeningFile};
use crate::jet::JetMode;
use crate::strat::{extract_connection, taylor_stratification, verify_stratification, Connection, StratModule};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Poincare,
    Homotopy,
    Order1,
    Strat,
    Phi,
    Psi,
    Crystal,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Poincare,
        Check::Homotopy,
        Check::Order1,
        Check::Strat,
        Check::Phi,
        Check::Psi,
        Check::Crystal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Poincare => "poincare",
            Check::Homotopy => "homotopy",
            Check::Order1 => "order1",
            Check::Strat => "strat",
            Check::Phi => "phi",
            Check::Psi => "psi",
            Check::Crystal => "crystal",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown check '{s}'")))
    }
}

/// Where fixtures come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureSource {
    /// The parameter grids and the named objects of [`crate::fixtures`].
    Builtin,
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub char: u64,
    pub mode: JetMode,
    /// Inclusive range of base dimensions.
    pub dims: (usize, usize),
    /// Inclusive range of levels for the Poincare and homotopy grids.
    pub levels: (u32, u32),
    /// Coefficient degree bound for the linearized checks.
    pub deg_bound: u32,
    /// Top level for the stratification checks.
    pub strat_top: u32,
    /// Top level for the chain-map check.
    pub phi_top: u32,
    /// Top level for the finite-level exactness check.
    pub psi_top: u32,
    pub checks: Vec<Check>,
    pub fixtures: Vec<FixtureSource>,
    /// Checks whose failures are tolerated.
    pub expect_fail: Vec<Check>,
    pub output: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            char: 0,
            mode: JetMode::Plain,
            dims: (1, 3),
            levels: (0, 5),
            deg_bound: 2,
            strat_top: 4,
            phi_top: 2,
            psi_top: 3,
            checks: Check::ALL.to_vec(),
            fixtures: vec![FixtureSource::Builtin],
            expect_fail: vec![],
            output: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<Field> {
        if self.dims.0 > self.dims.1 || self.dims.0 == 0 {
            return Err(Error::Invalid(format!("empty dimension range {:?}", self.dims)));
        }
        if self.levels.0 > self.levels.1 {
            return Err(Error::Invalid(format!("empty level range {:?}", self.levels)));
        }
        Field::new(self.char)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A documented discrepancy that does not count as a failure.
    Flag,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check: Check,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub expect_fail: bool,
    pub details: Value,
    /// Seconds.
    pub wall_time: f64,
}

impl Record {
    /// Whether this record makes the run fail.
    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail && !self.expect_fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flag: usize,
    pub tolerated: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: SuiteConfig,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    fn new(config: SuiteConfig, records: Vec<Record>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Flag => summary.flag += 1,
                Status::Fail if r.expect_fail => summary.tolerated += 1,
                Status::Fail => summary.fail += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            config,
            records,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// 0 when every failure is tolerated, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// The report with every wall-time field zeroed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.wall_time = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

struct Outcome {
    status: Status,
    details: Value,
}

fn verdict(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Fail
    }
}

type Runner = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

struct Job {
    check: Check,
    params: BTreeMap<String, Value>,
    run: Runner,
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn job(check: Check, p: &[(&str, Value)], run: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Job {
    Job {
        check,
        params: params(p),
        run: Box::new(run),
    }
}

/// A control is expected to be rejected by its verifier.
fn control(pass: bool, details: Value) -> Outcome {
    Outcome {
        status: verdict(!pass),
        details: json!({ "control": true, "verifier_passed": pass, "report": details }),
    }
}

fn poincare(field: Field, mode: JetMode, d: usize, n: u32) -> Result<Outcome> {
    let c = linearized_derham_level(n, d, field, mode)?;
    let h = c.homology_ranks()?;
    Ok(Outcome {
        status: verdict(h.iter().all(|&x| x == 0)),
        details: json!({ "ranks": c.ranks(), "homology": h }),
    })
}

fn homotopy(field: Field, mode: JetMode, d: usize, n: u32) -> Result<Outcome> {
    let g = graded_derham_level(n, d, field, mode)?;
    let h = g.complex.homology_ranks()?;
    let exact = h.iter().all(|&x| x == 0);
    let mut details = json!({ "ranks": g.complex.ranks(), "homology": h });
    let status = if let Some(why) = g.refused {
        details["refused"] = json!(why);
        if exact {
            Status::Flag
        } else {
            Status::Fail
        }
    } else {
        let rep = g.complex.check_homotopy_identity()?;
        details["homotopy_identity"] = json!(rep.pass);
        if !rep.pass {
            details["defects"] = serde_json::to_value(&rep.positions)?;
        }
        match (rep.pass, exact, mode) {
            (true, _, _) => Status::Pass,
            (false, true, JetMode::Divided) => Status::Flag,
            _ => Status::Fail,
        }
    };
    Ok(Outcome { status, details })
}

fn order1(f: &DifferentialComplex) -> Result<(bool, Value)> {
    let r = verify_order1_relations(f)?;
    let failing: Vec<_> = r.checks.iter().filter(|c| !c.pass).take(8).collect();
    Ok((
        r.pass,
        json!({
            "relations": r.checks.len(),
            "composite_bar_vanishes": r.composite_bar_vanishes,
            "failing": serde_json::to_value(failing)?,
        }),
    ))
}

fn phi(f: &DifferentialComplex, top: u32) -> Result<(bool, Value)> {
    let r = verify_phi_chainmap(f, top)?;
    let failing: Vec<_> = r.checks.iter().filter(|c| !c.pass).take(8).collect();
    Ok((
        r.pass,
        json!({
            "relations": r.checks.len(),
            "inverse_to_d1": r.inverse_to_d1,
            "failing": serde_json::to_value(failing)?,
        }),
    ))
}

fn strat_check(m: &StratModule, conn: Option<&Connection>) -> Result<(bool, Value)> {
    let r = verify_stratification(m)?;
    let mut details = serde_json::to_value(&r)?;
    let mut pass = r.pass;
    if let Some(c) = conn {
        let back = extract_connection(m)? == *c;
        details["connection_round_trip"] = json!(back);
        pass &= back;
    }
    Ok((pass, details))
}

fn thickening_for(field: Field, mode: JetMode, s: usize, nu: u32) -> Thickening {
    if mode == JetMode::Divided && field.characteristic() != 0 {
        Thickening::divided(field, s, nu)
    } else {
        Thickening::new(field, s, nu)
    }
}

fn cocycles(m: &StratModule, t: &Thickening, triples: &[[Section; 3]]) -> Result<(bool, Value)> {
    let mut out = Vec::new();
    for [h0, h1, h2] in triples {
        out.push(serde_json::to_value(verify_cocycle(m, t, h0, h1, h2)?)?);
    }
    let pass = out.iter().all(|r| r["pass"] == json!(true));
    Ok((pass, json!({ "dim_B": t.dim(), "triples": out })))
}

/// Named objects a run works on.
enum Item {
    Connection(String, Connection),
    Stratification(String, StratModule),
    Complex(String, DifferentialComplex),
    ChainComplex(String, ChainComplex),
    Thickening(String, ThickeningFile),
    Unsupported(String, &'static str),
    Broken(String, String),
}

fn items(config: &SuiteConfig, field: Field) -> Vec<Item> {
    let mut out = Vec::new();
    for src in &config.fixtures {
        match src {
            FixtureSource::Builtin => {
                for (name, c) in fixtures::flat_connections(field) {
                    out.push(Item::Connection(name, c));
                }
                for d in 1..=3 {
                    match crate::derham::complexes::derham_complex(field, d, config.mode) {
                        Ok(f) => out.push(Item::Complex(format!("derham-A{d}"), f)),
                        Err(e) => out.push(Item::Broken(format!("derham-A{d}"), e.to_string())),
                    }
                }
            }
            FixtureSource::File(path) => {
                let name = path.display().to_string();
                match FixtureObject::load(path) {
                    Ok(FixtureObject::Connection(c)) => out.push(Item::Connection(name, c)),
                    Ok(FixtureObject::Stratification(m)) => out.push(Item::Stratification(name, m)),
                    Ok(FixtureObject::Complex(f)) => out.push(Item::Complex(name, f)),
                    Ok(FixtureObject::ChainComplex(c)) => out.push(Item::ChainComplex(name, c)),
                    Ok(FixtureObject::Thickening(t)) => out.push(Item::Thickening(name, t)),
                    Ok(other) => out.push(Item::Unsupported(name, other.kind())),
                    Err(e) => out.push(Item::Broken(name, e.to_string())),
                }
            }
        }
    }
    out
}

fn in_dims(config: &SuiteConfig, d: usize) -> bool {
    (config.dims.0..=config.dims.1).contains(&d)
}

fn jobs(config: &SuiteConfig, field: Field) -> Vec<Job> {
    let mode = config.mode;
    let wants = |c: Check| config.checks.contains(&c);
    let mut out = Vec::new();
    let builtin = config.fixtures.contains(&FixtureSource::Builtin);
    if builtin && wants(Check::Poincare) {
        for d in config.dims.0..=config.dims.1 {
            for n in config.levels.0..=config.levels.1 {
                out.push(job(Check::Poincare, &[("d", json!(d)), ("n", json!(n))], move || poincare(field, mode, d, n)));
            }
        }
    }
    if builtin && wants(Check::Homotopy) {
        for d in config.dims.0..=config.dims.1 {
            for n in config.levels.0.max(1)..=config.levels.1 {
                out.push(job(Check::Homotopy, &[("d", json!(d)), ("n", json!(n))], move || homotopy(field, mode, d, n)));
            }
        }
    }
    let (strat_top, phi_top, psi_top, deg) = (config.strat_top, config.phi_top, config.psi_top, config.deg_bound);
    for item in items(config, field) {
        match item {
            Item::Broken(name, err) => {
                let check = config.checks.first().copied().unwrap_or(Check::Poincare);
                out.push(job(check, &[("fixture", json!(name))], move || {
                    Ok(Outcome {
                        status: Status::Fail,
                        details: json!({ "error": err }),
                    })
                }));
            }
            Item::Unsupported(name, kind) => {
                let check = config.checks.first().copied().unwrap_or(Check::Poincare);
                out.push(job(check, &[("fixture", json!(name))], move || {
                    Ok(Outcome {
                        status: Status::Flag,
                        details: json!({ "skipped": format!("no check runs on a {kind}") }),
                    })
                }));
            }
            Item::Connection(name, c) => {
                if !in_dims(config, c.dim()) {
                    continue;
                }
                let fx = || json!(name.clone());
                if wants(Check::Order1) || wants(Check::Phi) {
                    let dr = taylor_stratification(&c, 1, mode).and_then(|m| derham_of_strat(&m));
                    push_complex_jobs(&mut out, config, &format!("dr-{name}"), dr, phi_top);
                }
                if wants(Check::Strat) {
                    let c2 = c.clone();
                    out.push(job(Check::Strat, &[("fixture", fx()), ("top", json!(strat_top))], move || {
                        let m = taylor_stratification(&c2, strat_top, mode)?;
                        let (pass, details) = strat_check(&m, Some(&c2))?;
                        Ok(Outcome { status: verdict(pass), details })
                    }));
                }
                if wants(Check::Psi) {
                    let c2 = c.clone();
                    out.push(job(Check::Psi, &[("fixture", fx()), ("n_max", json!(psi_top)), ("deg_bound", json!(deg))], move || {
                        let m = taylor_stratification(&c2, psi_top.max(1), mode)?;
                        let r = verify_psi_exactness(&m, psi_top, deg)?;
                        Ok(Outcome {
                            status: verdict(r.pass),
                            details: serde_json::to_value(&r)?,
                        })
                    }));
                }
                if wants(Check::Crystal) {
                    for (s, nu) in [(1, 1), (1, 2), (2, 2)] {
                        let c2 = c.clone();
                        out.push(job(Check::Crystal, &[("fixture", fx()), ("s", json!(s)), ("nu", json!(nu))], move || {
                            let t = thickening_for(field, mode, s, nu);
                            let m = taylor_stratification(&c2, nu, mode)?;
                            let triples = fixtures::section_triples(&t, c2.dim())?;
                            let (pass, details) = cocycles(&m, &t, &triples)?;
                            Ok(Outcome { status: verdict(pass), details })
                        }));
                    }
                }
            }
            Item::Stratification(name, m) => {
                if !in_dims(config, m.dim()) {
                    continue;
                }
                if (wants(Check::Order1) || wants(Check::Phi)) && m.top() >= 1 {
                    let dr = derham_of_strat(&m);
                    push_complex_jobs(&mut out, config, &format!("dr-{name}"), dr, phi_top);
                }
                if wants(Check::Strat) {
                    let m2 = m.clone();
                    out.push(job(Check::Strat, &[("fixture", json!(name)), ("top", json!(m.top()))], move || {
                        let (pass, details) = strat_check(&m2, None)?;
                        Ok(Outcome { status: verdict(pass), details })
                    }));
                }
                if wants(Check::Psi) {
                    let m2 = m.clone();
                    out.push(job(Check::Psi, &[("fixture", json!(name)), ("n_max", json!(psi_top)), ("deg_bound", json!(deg))], move || {
                        let r = verify_psi_exactness(&m2, psi_top, deg)?;
                        Ok(Outcome {
                            status: verdict(r.pass),
                            details: serde_json::to_value(&r)?,
                        })
                    }));
                }
                if wants(Check::Crystal) {
                    for (s, nu) in [(1, 1), (1, 2), (2, 2)] {
                        if nu > m.top() {
                            continue;
                        }
                        let m2 = m.clone();
                        out.push(job(Check::Crystal, &[("fixture", json!(name)), ("s", json!(s)), ("nu", json!(nu))], move || {
                            let t = thickening_for(m2.field(), m2.mode(), s, nu);
                            let triples = fixtures::section_triples(&t, m2.dim())?;
                            let (pass, details) = cocycles(&m2, &t, &triples)?;
                            Ok(Outcome { status: verdict(pass), details })
                        }));
                    }
                }
            }
            Item::Complex(name, f) => {
                if in_dims(config, f.dim()) {
                    push_complex_jobs(&mut out, config, &name, Ok(f), phi_top);
                }
            }
            Item::ChainComplex(name, c) => {
                if wants(Check::Poincare) {
                    let c2 = c.clone();
                    out.push(job(Check::Poincare, &[("fixture", json!(name))], move || {
                        let h = c2.homology_ranks()?;
                        Ok(Outcome {
                            status: verdict(h.iter().all(|&x| x == 0)),
                            details: json!({ "ranks": c2.ranks(), "homology": h }),
                        })
                    }));
                }
                if wants(Check::Homotopy) && c.homotopy().is_some() {
                    out.push(job(Check::Homotopy, &[("fixture", json!(name))], move || {
                        let r = c.check_homotopy_identity()?;
                        Ok(Outcome {
                            status: verdict(r.pass),
                            details: serde_json::to_value(&r)?,
                        })
                    }));
                }
            }
            Item::Thickening(name, file) => {
                if !wants(Check::Crystal) {
                    continue;
                }
                let triples = thickening_triples(&file.sections);
                let d = file.sections.first().map_or(0, Section::dim);
                for (cname, c) in fixtures::flat_connections(field) {
                    if c.dim() != d || !in_dims(config, d) {
                        continue;
                    }
                    let (t, triples) = (file.thickening.clone(), triples.clone());
                    out.push(job(Check::Crystal, &[("fixture", json!(cname)), ("thickening", json!(name))], move || {
                        let m = taylor_stratification(&c, t.nu(), mode)?;
                        let (pass, details) = cocycles(&m, &t, &triples)?;
                        Ok(Outcome { status: verdict(pass), details })
                    }));
                }
            }
        }
    }
    if builtin {
        push_controls(&mut out, config, field);
    }
    out
}

fn thickening_triples(sections: &[Section]) -> Vec<[Section; 3]> {
    match sections {
        [] => vec![],
        [h] => vec![[h.clone(), h.clone(), h.clone()]],
        [a, b] => vec![[a.clone(), b.clone(), a.clone()]],
        _ => sections.windows(3).map(|w| [w[0].clone(), w[1].clone(), w[2].clone()]).collect(),
    }
}

fn push_complex_jobs(out: &mut Vec<Job>, config: &SuiteConfig, name: &str, f: Result<DifferentialComplex>, phi_top: u32) {
    let f = match f {
        Ok(f) => f,
        Err(e) => {
            let err = e.to_string();
            out.push(job(Check::Order1, &[("fixture", json!(name))], move || {
                Ok(Outcome {
                    status: Status::Fail,
                    details: json!({ "error": err }),
                })
            }));
            return;
        }
    };
    if config.checks.contains(&Check::Order1) {
        let f2 = f.clone();
        out.push(job(Check::Order1, &[("fixture", json!(name))], move || {
            let (pass, details) = order1(&f2)?;
            Ok(Outcome { status: verdict(pass), details })
        }));
    }
    if config.checks.contains(&Check::Phi) {
        out.push(job(Check::Phi, &[("fixture", json!(name)), ("levels", json!(phi_top))], move || {
            let (pass, details) = phi(&f, phi_top)?;
            Ok(Outcome { status: verdict(pass), details })
        }));
    }
}

fn push_controls(out: &mut Vec<Job>, config: &SuiteConfig, field: Field) {
    let mode = config.mode;
    let wants = |c: Check| config.checks.contains(&c);
    let cname = json!("corrupted-plane");
    if wants(Check::Order1) && in_dims(config, 2) {
        out.push(job(Check::Order1, &[("fixture", cname.clone())], move || {
            let (pass, details) = order1(&fixtures::corrupted_complex(field, mode)?)?;
            Ok(control(pass, details))
        }));
    }
    if wants(Check::Phi) && in_dims(config, 2) {
        let top = config.phi_top.max(1);
        out.push(job(Check::Phi, &[("fixture", cname), ("levels", json!(top))], move || {
            let (pass, details) = phi(&fixtures::corrupted_complex(field, mode)?, top)?;
            Ok(control(pass, details))
        }));
    }
    let sname = json!("corrupted-nilpotent");
    if wants(Check::Strat) && in_dims(config, 1) {
        let top = config.strat_top.max(2);
        out.push(job(Check::Strat, &[("fixture", sname.clone()), ("top", json!(top))], move || {
            let (pass, details) = strat_check(&fixtures::corrupted_stratification(field, mode, top)?, None)?;
            Ok(control(pass, details))
        }));
    }
    if wants(Check::Crystal) && in_dims(config, 1) {
        out.push(job(Check::Crystal, &[("fixture", sname), ("s", json!(1)), ("nu", json!(2))], move || {
            let t = thickening_for(field, mode, 1, 2);
            let m = fixtures::corrupted_stratification(field, mode, 2)?;
            let (pass, details) = cocycles(&m, &t, &fixtures::section_triples(&t, 1)?[1..])?;
            Ok(control(pass, details))
        }));
    }
}

/// Runs every selected check. Checks run concurrently; records keep the
/// order in which the configuration enumerates them.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    let field = config.validate()?;
    let records: Vec<Record> = jobs(config, field)
        .into_par_iter()
        .map(|j| {
            let start = Instant::now();
            let outcome = (j.run)().unwrap_or_else(|e| Outcome {
                status: Status::Fail,
                details: json!({ "error": e.to_string() }),
            });
            Record {
                check: j.check,
                params: j.params,
                status: outcome.status,
                expect_fail: config.expect_fail.contains(&j.check),
                details: outcome.details,
                wall_time: start.elapsed().as_secs_f64(),
            }
        })
        .collect();
    let report = Report::new(config.clone(), records);
    if let Some(path) = &config.output {
        std::fs::write(path, report.to_json() + "\n")?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            dims: (1, 2),
            levels: (0, 3),
            strat_top: 3,
            phi_top: 1,
            psi_top: 2,
            deg_bound: 1,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn small_suite_passes() {
        let r = run_suite(&small()).unwrap();
        let bad: Vec<_> = r.records.iter().filter(|r| r.status != Status::Pass).collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert!(r.passed());
    }

    #[test]
    fn empty_fixture_list() {
        let r = run_suite(&SuiteConfig {
            fixtures: vec![],
            ..small()
        })
        .unwrap();
        assert!(r.records.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn char2_poincare_fails_unless_expected() {
        let cfg = SuiteConfig {
            char: 2,
            dims: (1, 1),
            levels: (2, 2),
            checks: vec![Check::Poincare],
            ..SuiteConfig::default()
        };
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].status, Status::Fail);
        assert_eq!(r.exit_code(), 1);
        let r = run_suite(&SuiteConfig {
            expect_fail: vec![Check::Poincare],
            ..cfg
        })
        .unwrap();
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn broken_file_is_reported() {
        let cfg = SuiteConfig {
            fixtures: vec![FixtureSource::File("/nonexistent/fixture.json".into())],
            ..small()
        };
        let r = run_suite(&cfg).unwrap();
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].status, Status::Fail);
    }
}
