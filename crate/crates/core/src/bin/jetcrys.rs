use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use jetcrys::derham::complexes::linearized_derham_level;
use jetcrys::diffop::FreeModule;
use jetcrys::exact::field::Field;
use jetcrys::io::{Document, FixtureObject};
use jetcrys::jet::JetMode;
use jetcrys::strat::{
    horizontal_sections, horizontal_sections_induced, induced_stratification, taylor_stratification, verify_stratification,
    Connection,
};
use jetcrys::suite::{run_suite, Check, FixtureSource, Report, Status, SuiteConfig};
use jetcrys::{Error, Result};

/// Exact checks for jets, differential operators, stratifications and the
/// crystalline Poincare lemma.
#[derive(Parser)]
#[command(name = "jetcrys", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Base dimension (default: the suite's range 1..=3).
    #[arg(long)]
    dim: Option<usize>,
    /// Level n (default depends on the check).
    #[arg(long)]
    level: Option<u32>,
    /// Characteristic: 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Use divided powers.
    #[arg(long)]
    divided: bool,
    /// Coefficient degree bound.
    #[arg(long)]
    deg_bound: Option<u32>,
    /// Fixture file(s); replaces the built-in fixtures.
    #[arg(long)]
    input: Vec<PathBuf>,
    /// Write JSON output here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerate failures (exit 0).
    #[arg(long)]
    expect_fail: bool,
}

impl Common {
    fn mode(&self) -> JetMode {
        if self.divided {
            JetMode::Divided
        } else {
            JetMode::Plain
        }
    }

    fn field(&self) -> Result<Field> {
        Field::new(self.characteristic)
    }

    fn config(&self, checks: Vec<Check>) -> SuiteConfig {
        let mut c = SuiteConfig {
            char: self.characteristic,
            mode: self.mode(),
            checks: checks.clone(),
            output: self.out.clone(),
            ..SuiteConfig::default()
        };
        if let Some(d) = self.dim {
            c.dims = (d, d);
        }
        if let Some(b) = self.deg_bound {
            c.deg_bound = b;
        }
        if let Some(n) = self.level {
            c.levels = (n, n);
            c.strat_top = n;
            c.phi_top = n;
            c.psi_top = n;
        }
        if !self.input.is_empty() {
            c.fixtures = self.input.iter().cloned().map(FixtureSource::File).collect();
        }
        if self.expect_fail {
            c.expect_fail = checks;
        }
        c
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one family of checks.
    Verify {
        /// poincare, homotopy, order1, strat, phi, psi or crystal.
        #[arg(value_parser = parse_check)]
        check: Check,
        #[command(flatten)]
        common: Common,
    },
    /// Print the linearization of an operator, or the linearized De Rham
    /// level when no operator is given.
    Linearize {
        #[command(flatten)]
        common: Common,
    },
    /// Stratification tools.
    Strat {
        #[command(subcommand)]
        command: StratCommand,
    },
    /// Horizontal sections of a connection, a stratification or (without
    /// input) the induced tower of O.
    Horizontal {
        #[command(flatten)]
        common: Common,
    },
    /// Run the full suite and write the JSON report.
    Report {
        /// Suite configuration (JSON); flags are ignored when given.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum StratCommand {
    /// Taylor stratification of a flat connection.
    FromConnection {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_check(s: &str) -> std::result::Result<Check, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn print_report(r: &Report) {
    for rec in &r.records {
        let status = match (rec.status, rec.expect_fail) {
            (Status::Pass, _) => "PASS",
            (Status::Flag, _) => "FLAG",
            (Status::Fail, true) => "XFAIL",
            (Status::Fail, false) => "FAIL",
        };
        let params: Vec<String> = rec.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("{status:5} {:8} {}", rec.check.name(), params.join(" "));
    }
    let s = &r.summary;
    println!(
        "{} records: {} pass, {} fail, {} flag, {} tolerated",
        r.records.len(),
        s.pass,
        s.fail,
        s.flag,
        s.tolerated
    );
}

fn single_input(common: &Common) -> Result<Option<FixtureObject>> {
    match common.input.as_slice() {
        [] => Ok(None),
        [p] => FixtureObject::load(p).map(Some),
        _ => Err(Error::Invalid("expected a single --input".into())),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { check, common } => {
            let report = run_suite(&common.config(vec![check]))?;
            print_report(&report);
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Report { config, common } => {
            let cfg = match config {
                Some(p) => {
                    let mut c: SuiteConfig = serde_json::from_str(&std::fs::read_to_string(p)?)?;
                    if common.out.is_some() {
                        c.output = common.out.clone();
                    }
                    c
                }
                None => common.config(Check::ALL.to_vec()),
            };
            let report = run_suite(&cfg)?;
            if cfg.output.is_none() {
                println!("{}", report.to_json());
            } else {
                print_report(&report);
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Linearize { common } => {
            let n = common.level.unwrap_or(1);
            match single_input(&common)? {
                Some(FixtureObject::Operator(op)) => emit(&common, &op.linearize(n).to_json())?,
                Some(other) => return Err(Error::Invalid(format!("cannot linearize a {}", other.kind()))),
                None => {
                    let d = common.dim.unwrap_or(1);
                    let c = linearized_derham_level(n, d, common.field()?, common.mode())?;
                    emit(&common, &c.to_json())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Strat {
            command: StratCommand::FromConnection { common },
        } => {
            let conn: Connection = match single_input(&common)? {
                Some(FixtureObject::Connection(c)) => c,
                Some(other) => return Err(Error::Invalid(format!("expected a connection, found a {}", other.kind()))),
                None => return Err(Error::Invalid("--input is required".into())),
            };
            let m = taylor_stratification(&conn, common.level.unwrap_or(2), common.mode())?;
            let report = verify_stratification(&m)?;
            eprintln!("stratification axioms: {}", if report.pass { "pass" } else { "fail" });
            emit(&common, &m.to_json())?;
            Ok(ExitCode::from(if report.pass || common.expect_fail { 0 } else { 1 }))
        }
        Command::Horizontal { common } => {
            let deg = common.deg_bound.unwrap_or(2);
            let field = common.field()?;
            let sections = match single_input(&common)? {
                Some(FixtureObject::Connection(c)) => horizontal_sections(&taylor_stratification(&c, 1, common.mode())?, deg)?,
                Some(FixtureObject::Stratification(m)) => horizontal_sections(&m, deg)?,
                Some(other) => return Err(Error::Invalid(format!("no horizontal sections for a {}", other.kind()))),
                None => {
                    let d = common.dim.unwrap_or(1);
                    let top = common.level.unwrap_or(4).max(3);
                    let t = induced_stratification(&FreeModule::new(d, 1), field, common.mode(), top);
                    horizontal_sections_induced(&t, deg, 1, 1)?
                }
            };
            let basis: Vec<Vec<String>> = sections.basis.iter().map(|s| s.iter().map(ToString::to_string).collect()).collect();
            let out = json!({ "dimension": basis.len(), "stabilized": sections.stabilized, "basis": basis });
            emit(&common, &serde_json::to_string_pretty(&out)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
