//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one line; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use jetcrys::crystal::{comparison_iso, verify_cocycle, BMatrix};
use jetcrys::derham::complexes::{graded_derham_level, linearized_derham_level};
use jetcrys::derham::phi::verify_phi_chainmap;
use jetcrys::derham::psi::verify_psi_exactness;
use jetcrys::diffop::{verify_order1_relations, FreeModule};
use jetcrys::exact::field::{binomial, Field};
use jetcrys::exact::polymatrix::PolyMatrix;
use jetcrys::fixtures;
use jetcrys::jet::JetMode;
use jetcrys::strat::{
    extract_connection, horizontal_sections_induced, induced_stratification, taylor_stratification, truncation_matrix,
    verify_stratification,
};
use jetcrys::suite::{run_suite, SuiteConfig};
use jetcrys::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{q, random_operator, random_section};

const MODES: [JetMode; 2] = [JetMode::Plain, JetMode::Divided];

/// Outcome of one criterion: pass flag and a short summary.
type Verdict = Result<(bool, String)>;

type Criterion = (&'static str, fn() -> Verdict);

fn poincare_exactness() -> Verdict {
    let mut count = 0;
    for d in 1..=3 {
        for n in 0..=5 {
            let h = linearized_derham_level(n, d, q(), JetMode::Plain)?.homology_ranks()?;
            if h.iter().any(|&x| x != 0) {
                return Ok((false, format!("d={d} n={n} homology {h:?}")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} levels exact over Q")))
}

fn graded_homotopy() -> Verdict {
    let mut count = 0;
    for d in 1..=3 {
        for n in 1..=6 {
            let g = graded_derham_level(n, d, q(), JetMode::Plain)?;
            if g.refused.is_some() || !g.complex.check_homotopy_identity()?.pass {
                return Ok((false, format!("char 0 d={d} n={n}")));
            }
            count += 1;
        }
        for p in [2u32, 3, 5, 7] {
            for n in 1..p {
                let g = graded_derham_level(n, d, Field::Prime(p), JetMode::Plain)?;
                if g.refused.is_some() || !g.complex.check_homotopy_identity()?.pass {
                    return Ok((false, format!("char {p} d={d} n={n}")));
                }
                count += 1;
            }
        }
    }
    Ok((true, format!("Ds + sD = id on {count} graded levels")))
}

fn divided_exactness() -> Verdict {
    let (mut exact, mut flags) = (0, 0);
    for p in [2u32, 3, 5] {
        let f = Field::Prime(p);
        for d in 1..=2 {
            for n in 0..=5 {
                if !linearized_derham_level(n, d, f, JetMode::Divided)?.is_exact()? {
                    return Ok((false, format!("divided linearized level p={p} d={d} n={n} not exact")));
                }
                exact += 1;
                if n == 0 {
                    continue;
                }
                let g = graded_derham_level(n, d, f, JetMode::Divided)?;
                if !g.complex.is_exact()? {
                    return Ok((false, format!("divided graded level p={p} d={d} n={n} not exact")));
                }
                exact += 1;
                if !g.complex.check_homotopy_identity()?.pass {
                    flags += 1;
                }
            }
        }
        let mut control = false;
        for d in 1..=2 {
            for n in p..=5 {
                control |= !linearized_derham_level(n, d, f, JetMode::Plain)?.is_exact()?;
            }
        }
        if !control {
            return Ok((false, format!("plain mode over F_{p} shows no homology for p <= n <= 5")));
        }
    }
    Ok((
        true,
        format!("{exact} divided levels exact; plain controls non-exact for p = 2, 3, 5; verbatim divided homotopy flagged on {flags} levels"),
    ))
}

fn order1_relations() -> Verdict {
    let mut count = 0;
    for mode in MODES {
        for (name, f) in fixtures::derham_fixtures(q(), mode)? {
            if !verify_order1_relations(&f)?.pass {
                return Ok((false, format!("{name} ({mode})")));
            }
            count += 1;
        }
        if verify_order1_relations(&fixtures::corrupted_complex(q(), mode)?)?.pass {
            return Ok((false, "corrupted complex accepted".into()));
        }
    }
    Ok((true, format!("{count} complexes satisfy the relations; corrupted control rejected")))
}

fn stratification_axioms() -> Verdict {
    let mut count = 0;
    for mode in MODES {
        for (name, c) in fixtures::flat_connections(q()) {
            for top in 1..=4 {
                let m = taylor_stratification(&c, top, mode)?;
                if !verify_stratification(&m)?.pass {
                    return Ok((false, format!("{name} N={top} ({mode})")));
                }
                if extract_connection(&m)? != c {
                    return Ok((false, format!("{name} N={top} ({mode}): connection does not round-trip")));
                }
                count += 1;
            }
        }
    }
    if verify_stratification(&fixtures::corrupted_stratification(q(), JetMode::Plain, 3)?)?.pass {
        return Ok((false, "corrupted stratification accepted".into()));
    }
    Ok((true, format!("{count} stratifications pass and round-trip")))
}

fn acyclicity() -> Verdict {
    let mut dims = Vec::new();
    for d in 1..=2usize {
        for deg in 0..=2u32 {
            let t = induced_stratification(&FreeModule::new(d, 1), q(), JetMode::Plain, 4);
            let h = horizontal_sections_induced(&t, deg, 1, 2)?;
            let expected = binomial(deg as u64 + d as u64, d as u64);
            if !h.stabilized || h.basis.len() as u64 != expected.try_into().unwrap_or(u64::MAX) {
                return Ok((false, format!("d={d} D={deg}: dimension {}", h.basis.len())));
            }
            // every section is f (x) 1 with deg f <= D
            for v in &h.basis {
                if v[1..].iter().any(|p| !p.is_zero()) || v[0].degree().is_some_and(|e| e > deg) {
                    return Ok((false, format!("d={d} D={deg}: section outside f (x) 1")));
                }
            }
            dims.push(h.basis.len());
        }
    }
    Ok((true, format!("stable kernels of dimension {dims:?} = C(D+d, d)")))
}

fn phi_chain_map() -> Verdict {
    let mut count = 0;
    for mode in MODES {
        for (name, f) in fixtures::derham_fixtures(q(), mode)? {
            let r = verify_phi_chainmap(&f, 2)?;
            if !r.pass {
                return Ok((false, format!("{name} ({mode}): {:?}", r.checks.iter().find(|c| !c.pass))));
            }
            count += r.checks.len();
        }
        if verify_phi_chainmap(&fixtures::corrupted_complex(q(), mode)?, 2)?.pass {
            return Ok((false, "corrupted complex accepted".into()));
        }
    }
    Ok((true, format!("{count} chain-map identities hold; Phi after d^1 is the identity in every degree")))
}

fn psi_exactness() -> Verdict {
    let mut count = 0;
    for mode in MODES {
        for (name, m) in fixtures::stratified(q(), mode, 3)? {
            if !verify_psi_exactness(&m, 3, 2)?.pass {
                return Ok((false, format!("{name} ({mode})")));
            }
            count += 1;
        }
    }
    Ok((true, format!("{count} stratified modules exact for n <= 3")))
}

fn crystal_cocycle() -> Verdict {
    let mut count = 0;
    for mode in MODES {
        for t in fixtures::thickenings(q()) {
            for (name, m) in fixtures::stratified(q(), mode, t.nu())? {
                for [h0, h1, h2] in fixtures::section_triples(&t, m.dim())? {
                    if !verify_cocycle(&m, &t, &h0, &h1, &h2)?.pass {
                        return Ok((false, format!("{name} ({mode}) s={} nu={}", t.vars(), t.nu())));
                    }
                    count += 1;
                }
            }
        }
    }
    let t = fixtures::thickenings(q()).remove(1);
    let triples = fixtures::section_triples(&t, 1)?;
    let [h0, h1, h2] = &triples[1];
    let bad = fixtures::corrupted_stratification(q(), JetMode::Plain, 2)?;
    if verify_cocycle(&bad, &t, h0, h1, h2)?.pass {
        return Ok((false, "corrupted stratification accepted".into()));
    }
    let m = taylor_stratification(&fixtures::nilpotent(q()), 2, JetMode::Plain)?;
    if comparison_iso(&m, &t, h1, h1)? != BMatrix::identity(&t, 2) {
        return Ok((false, "chi(h, h) is not the identity".into()));
    }
    Ok((true, format!("{count} cocycle triples pass with identity and inverse")))
}

fn linearization_functoriality() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut count = 0;
    for mode in MODES {
        for d in 1..=2 {
            for _ in 0..6 {
                let (r0, r1, r2) = (1 + count % 2, 1 + (count / 2) % 2, 2 - count % 2);
                let d1 = random_operator(&mut rng, q(), mode, d, r0, r1, 1);
                let d2 = random_operator(&mut rng, q(), mode, d, r1, r2, 1);
                let comp = d2.compose(&d1)?;
                let s = random_section(&mut rng, q(), d, r0);
                if comp.apply(&s)? != d2.apply(&d1.apply(&s)?)? {
                    return Ok((false, "composite disagrees with successive application".into()));
                }
                for n in 0..=3 {
                    if comp.linearize(n) != d2.linearize(n).checked_mul(&d1.linearize(n + 1))? {
                        return Ok((false, format!("Q0 not functorial at n={n} ({mode}, d={d})")));
                    }
                }
                for op in [&d1, &d2, &comp] {
                    for n in 0..=3 {
                        let qn = op.linearize(n);
                        let rows = op.target().rank;
                        let counit = PolyMatrix::from_rows(
                            q(),
                            d,
                            (0..rows).map(|i| (0..qn.cols()).map(|j| qn.get(i, j).clone()).collect()).collect(),
                        )?;
                        let trunc = truncation_matrix(d, n + op.order(), op.order(), op.source().rank, q());
                        let expected = op.bar_matrix().checked_mul(&PolyMatrix::from_constant(&trunc, d))?;
                        if counit != expected {
                            return Ok((false, format!("counit collapse differs from the bar at n={n}")));
                        }
                    }
                }
                count += 1;
            }
        }
    }
    Ok((true, format!("{count} random pairs: Q0 functorial for n <= 3, counit recovers the bar")))
}

fn determinism() -> Verdict {
    let start = Instant::now();
    let cfg = SuiteConfig::default();
    let a = run_suite(&cfg)?;
    let b = run_suite(&cfg)?;
    let secs = start.elapsed().as_secs_f64();
    let same = a.without_timing().to_json() == b.without_timing().to_json();
    Ok((
        same && a.passed() && secs < 60.0,
        format!("{} records, identical reports: {same}, suite passed: {}, {secs:.1} s for two runs", a.records.len(), a.passed()),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("crystalline Poincare exactness", poincare_exactness),
        ("graded homotopy identity", graded_homotopy),
        ("divided-power exactness in characteristic p", divided_exactness),
        ("order-one relations", order1_relations),
        ("stratification axioms", stratification_axioms),
        ("acyclicity of induced objects", acyclicity),
        ("Phi is a chain map, Phi d^1 = id", phi_chain_map),
        ("finite-level exactness of M (x) P", psi_exactness),
        ("crystal cocycle", crystal_cocycle),
        ("linearization functoriality", linearization_functoriality),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, msg) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:2} {} {name}: {msg} ({:.2} s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
