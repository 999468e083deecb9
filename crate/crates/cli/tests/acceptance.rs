//! The acceptance criteria, one line each.
//!
//! Lines are written straight to the stdout handle so they show up in
//! `cargo test` output without `--nocapture`.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use skein_cli::config::{RunConfig, Suite};
use skein_cli::suites;
use skein_core::kom::{p2, p3, validate, Truncation};
use skein_core::report::CheckReport;
use skein_core::slide::{build_slide_certificate, tail_equality_check, verify_certificate, SLIDE_HMAX};

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_reports(rs: &[CheckReport]) -> Outcome {
    let n: usize = rs.iter().map(|r| r.checks.len()).sum();
    match rs.iter().find_map(|r| r.first_failure().map(|c| (r.title.clone(), c.clone()))) {
        None => Outcome { ok: true, detail: format!("{n} checks") },
        Some((t, c)) => Outcome { ok: false, detail: format!("{t}: {}: {}", c.name, c.witness) },
    }
}

fn cfg(suite: Suite) -> RunConfig {
    RunConfig::new(suite)
}

fn c1() -> Outcome {
    let mut rs = suites::ring_bridge(&cfg(Suite::RingBridge)).unwrap();
    rs.pop();
    from_reports(&rs)
}

fn c2() -> Outcome {
    from_reports(&[suites::restricted_inverses(8, suites::SERIES_WINDOW)])
}

fn c3() -> Outcome {
    from_reports(&suites::tl_axioms(&cfg(Suite::TlAxioms)).unwrap())
}

fn c4() -> Outcome {
    from_reports(&suites::fusion_slide(&cfg(Suite::FusionSlide)).unwrap())
}

fn c5() -> Outcome {
    from_reports(&[suites::cob_relations(suites::DEGREE_SAMPLES, 0x5eed).unwrap()])
}

fn c6() -> Outcome {
    from_reports(&[validate(&p2()).unwrap(), validate(&p3()).unwrap()])
}

fn c7() -> Outcome {
    let rs: Vec<_> = [2, 3].map(|n| skein_core::kom::turnback_check(n, 12).unwrap()).into();
    from_reports(&rs)
}

fn c8() -> Outcome {
    let c = RunConfig { qmax: 20, ..cfg(Suite::Decat) };
    let rs: Vec<_> = suites::decat(&c).unwrap().into_iter().filter(|r| r.title.starts_with("decat")).collect();
    from_reports(&rs)
}

fn c9() -> Outcome {
    from_reports(&[suites::trace_p2(&cfg(Suite::TraceP2), None).unwrap()])
}

fn c10() -> Outcome {
    let trunc = Truncation::new(SLIDE_HMAX, 20).unwrap();
    let mut rs: Vec<CheckReport> = [2, 3].map(|n| tail_equality_check(n).unwrap()).into();
    for n in [2, 3] {
        rs.push(verify_certificate(&build_slide_certificate(n).unwrap(), trunc).unwrap());
    }
    let base = build_slide_certificate(2).unwrap();
    let mut flipped = base.clone();
    let m = flipped.steps[1].map.comps.get_mut(&0).unwrap();
    let x = m.get(0, 1).unwrap().neg();
    m.set(0, 1, x);
    let mut bare = base;
    bare.steps[0].witness = None;
    let mut mutants = CheckReport::new("mutated certificates");
    for (name, c) in [("flipped sign rejected", flipped), ("missing projector witness rejected", bare)] {
        let r = verify_certificate(&c, trunc).unwrap();
        let why = r.first_failure().map_or("accepted".to_string(), |f| format!("{}: {}", f.name, f.witness));
        mutants.push(skein_core::report::Check::from_bool(name, !r.all_passed(), why));
    }
    rs.insert(0, mutants);
    let fails: Vec<String> = rs
        .iter()
        .filter_map(|r| r.first_failure().map(|c| format!("{}: {}: {}", r.title, c.name, c.witness)))
        .collect();
    match fails.is_empty() {
        true => from_reports(&rs),
        false => Outcome { ok: false, detail: fails.join("; ") },
    }
}

fn c11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_skein");
    let run = || Command::new(bin).args(["--suite", "all", "--format", "json"]).env_remove("SKEIN_CACHE_DIR").output().unwrap();
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    Outcome { ok: same, detail: format!("{} bytes, exit {:?}", a.stdout.len(), a.status.code()) }
}

/// Criteria that do not hold, with the reason.
const KNOWN_FAILURES: [(usize, &str); 1] = [(
    10,
    "the two traced tails of P3 differ by a rank-one scalar entry over Q, so no summand permutation identifies them",
)];

#[test]
fn acceptance_criteria() {
    let criteria: [(usize, &str, fn() -> Outcome, Duration); 11] = [
        (1, "ring bridge", c1, Duration::from_secs(1)),
        (2, "restricted ring inverses", c2, Duration::from_secs(1)),
        (3, "TL projector axioms n<=8", c3, Duration::from_secs(10)),
        (4, "fusion and slide algebra", c4, Duration::from_secs(5)),
        (5, "cobordism relations", c5, Duration::from_secs(5)),
        (6, "P2/P3 integrity", c6, Duration::from_secs(5)),
        (7, "turnback contractibility hmax=12", c7, Duration::from_secs(120)),
        (8, "decategorification qmax=20", c8, Duration::from_secs(30)),
        (9, "tr(P2) leading summands", c9, Duration::from_secs(60)),
        (10, "handle slide tails and certificates", c10, Duration::from_secs(300)),
        (11, "deterministic structured reports", c11, Duration::from_secs(600)),
    ];
    let mut out = std::io::stdout().lock();
    let mut unexpected = Vec::new();
    for (k, name, f, limit) in criteria {
        let t0 = Instant::now();
        let o = f();
        let dt = t0.elapsed();
        let ok = o.ok && dt <= limit;
        let known = KNOWN_FAILURES.iter().find(|(i, _)| *i == k);
        let tag = if ok { "PASS" } else { "FAIL" };
        let note = match (ok, known) {
            (false, Some((_, why))) => format!(" [known: {why}]"),
            _ => String::new(),
        };
        writeln!(out, "criterion {k:>2} {tag} {name} ({:.2}s): {}{note}", dt.as_secs_f64(), o.detail).unwrap();
        if ok == known.is_some() {
            unexpected.push(k);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
