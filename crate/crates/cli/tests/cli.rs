use std::fs;
use std::process::Command;

use skein_cli::cache::{Cache, CACHE_VERSION};
use skein_cli::config::{RunConfig, Suite, TableKind};
use skein_cli::tables::print_tables;
use skein_core::kom::{projector, simplify, PeriodicComplex};

fn skein(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_skein")).args(args).env_remove("SKEIN_CACHE_DIR").output().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(skein(&["--suite", "ring-bridge", "-N", "3"]).status.code(), Some(0));
    assert_eq!(skein(&["--suite", "tail-equality", "-N", "3"]).status.code(), Some(1));
    assert_eq!(skein(&["--suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(skein(&[]).status.code(), Some(2));
    assert_eq!(skein(&["--suite", "decat", "--qmax", "0"]).status.code(), Some(2));
    assert_eq!(skein(&["--suite", "slide-certificate", "-N", "5"]).status.code(), Some(2));
}

#[test]
fn ring_bridge_p3_reports_the_identity() {
    let o = skein(&["--suite", "ring-bridge", "-N", "3"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("[PASS] q^(p-1)[p] = phi_p(q^2)"), "{text}");
}

#[test]
fn slide_certificate_n2_passes() {
    let o = skein(&["--suite", "slide-certificate", "-N", "2", "--hmax", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["params"]["suite"], "slide-certificate");
}

#[test]
fn decat_n3_passes_with_table() {
    let cfg = RunConfig { strands: Some(3), qmax: 20, ..RunConfig::new(Suite::Decat) };
    let (r, _) = skein_cli::run(&cfg).unwrap();
    assert!(r.passed);
    let t = print_tables(TableKind::Euler, 3, 20).unwrap();
    assert_eq!(t.lines().count(), 7);
}

#[test]
fn json_reports_repeat_exactly() {
    let cfg = RunConfig::new(Suite::FusionSlide);
    let a = skein_cli::run(&cfg).unwrap().0.to_json();
    let b = skein_cli::run(&cfg).unwrap().0.to_json();
    assert_eq!(a, b);
    assert!(!a.contains("time"));
}

#[test]
fn tables() {
    let t = print_tables(TableKind::Omega, 2, 0).unwrap();
    let rows: Vec<&str> = t.lines().skip(2).collect();
    assert!(rows[0].starts_with("phi_0") && rows[0].contains("[1] = 1"), "{t}");
    assert!(rows[1].starts_with("phi_1") && rows[1].contains("[2]"), "{t}");
    assert!(rows[2].starts_with("phi_2") && rows[2].contains("[3]"), "{t}");
    let t = print_tables(TableKind::Projector, 2, 0).unwrap();
    let rows: Vec<&str> = t.lines().skip(2).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("id ") && rows[0].ends_with(" 1"), "{t}");
    assert!(rows[1].starts_with("e1 ") && rows[1].contains('-'), "{t}");
    let t = print_tables(TableKind::Euler, 2, 8).unwrap();
    assert!(t.contains("id       1"), "{t}");
    assert!(t.contains("-q + q^3 - q^5 + q^7"), "{t}");
}

#[test]
fn cache_round_trip() {
    let d = tempfile::tempdir().unwrap();
    let c = Cache::open(d.path()).unwrap();
    let p3 = simplify(&projector(3).unwrap(), 12).unwrap();
    c.put("reduced", &(3, 12), &p3).unwrap();
    let back: PeriodicComplex = c.get("reduced", &(3, 12)).unwrap().unwrap();
    assert_eq!(back, p3);
    let bumped = Cache::with_version(d.path(), CACHE_VERSION + 1).unwrap();
    assert!(bumped.get::<PeriodicComplex>("reduced", &(3, 12)).unwrap().is_none());
    assert!(c.invalidate("reduced", &(3, 12)).unwrap());
    assert!(c.get::<PeriodicComplex>("reduced", &(3, 12)).unwrap().is_none());
}

#[test]
fn corrupt_entries_are_recomputed() {
    let d = tempfile::tempdir().unwrap();
    let c = Cache::open(d.path()).unwrap();
    fs::write(c.path(&c.key("n", &1)), b"{not json").unwrap();
    assert!(c.get::<u32>("n", &1).is_err());
    let v: Result<u32, ()> = Cache::get_or_compute(Some(&c), "n", &1, || Ok(7));
    assert_eq!(v, Ok(7));
    assert_eq!(c.get::<u32>("n", &1).unwrap(), Some(7));
}

#[test]
fn cached_runs_match_uncached() {
    let d = tempfile::tempdir().unwrap();
    let plain = RunConfig { level: Some(2), ..RunConfig::new(Suite::SlideCertificate) };
    let cached = RunConfig { cache_dir: Some(d.path().to_path_buf()), ..plain.clone() };
    let a = skein_cli::run(&plain).unwrap().0.to_json();
    let b = skein_cli::run(&cached).unwrap().0.to_json();
    let c = skein_cli::run(&cached).unwrap().0.to_json();
    assert_eq!(a, b);
    assert_eq!(b, c);
    assert!(fs::read_dir(d.path()).unwrap().count() > 0);
}

#[test]
fn env_overrides_cache_dir() {
    let d = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_skein"))
        .args(["--suite", "trace-p2"])
        .env("SKEIN_CACHE_DIR", d.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(d.path()).unwrap().count(), 1);
}
