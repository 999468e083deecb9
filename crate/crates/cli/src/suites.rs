//! The verification suites. Each returns its reports in a fixed order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skein_core::annulus::{annular_closure, eigen_check, phi, verify_slide_identities};
use skein_core::cob::{deloop, evaluate_closed, AlphaPoly, Cob, Component, CycleMap, Planar};
use skein_core::coeff::{qint, s_series, verify_root_bridge, LaurentPoly, TruncSeries};
use skein_core::kom::{euler_check, p2, p3, trace_complex, turnback_check, validate, TraceReport, Truncation};
use skein_core::report::{Check, CheckReport};
use skein_core::slide::{
    build_slide_certificate, cone_identity_checks, k0_shadow, tail_equality_check, verify_certificate, EquivCertificate,
};
use skein_core::cob::k0_check;
use skein_core::tl::{jones_wenzl, turnback_annihilation, Matching};
use skein_core::Error;

use crate::cache::Cache;
use crate::config::{RunConfig, Suite};

pub const BRIDGE_PRIMES: [u32; 4] = [3, 5, 7, 11];
pub const SERIES_WINDOW: i32 = 64;
pub const DEGREE_SAMPLES: usize = 1000;
const DEGREE_SEED: u64 = 0x5eed;

fn levels(cfg: &RunConfig) -> Vec<usize> {
    cfg.level.map_or(vec![2, 3], |n| vec![n])
}

fn trunc(cfg: &RunConfig) -> Result<Truncation, Error> {
    Truncation::new(cfg.hmax, cfg.qmax)
}

pub fn run_suite(suite: Suite, cfg: &RunConfig, cache: Option<&Cache>) -> Result<Vec<CheckReport>, Error> {
    match suite {
        Suite::RingBridge => ring_bridge(cfg),
        Suite::TlAxioms => tl_axioms(cfg),
        Suite::FusionSlide => fusion_slide(cfg),
        Suite::ProjectorAxioms => projector_axioms(cfg),
        Suite::Decat => decat(cfg),
        Suite::TraceP2 => trace_p2(cfg, cache).map(|r| vec![r]),
        Suite::TailEquality => tail_equality(cfg),
        Suite::SlideCertificate => slide_certificate(cfg, cache),
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::REGISTRY {
                out.extend(run_suite(s, cfg, cache)?);
            }
            Ok(out)
        }
    }
}

/// With `--level`, the level is read as the prime.
pub fn ring_bridge(cfg: &RunConfig) -> Result<Vec<CheckReport>, Error> {
    let primes = cfg.level.map_or(BRIDGE_PRIMES.to_vec(), |p| vec![p as u32]);
    let mut out = primes.into_iter().map(verify_root_bridge).collect::<Result<Vec<_>, _>>()?;
    out.push(restricted_inverses(8, SERIES_WINDOW));
    Ok(out)
}

/// `[k]·s_k = 1 + O(q^cutoff)`. The product of a series known below `c`
/// with `[k]` is known only below `c - k + 1`, so `s_k` is expanded further.
pub fn restricted_inverses(kmax: u32, cutoff: i32) -> CheckReport {
    let mut r = CheckReport::new(format!("restricted ring k<={kmax} cutoff={cutoff}"));
    for k in 1..=kmax {
        let s = s_series(k, cutoff + k as i32);
        let prod = (&TruncSeries::from_laurent(&qint(k), cutoff + 2 * k as i32) * &s).truncate(cutoff);
        let ok = prod.cutoff() == cutoff && prod.agrees_with(&LaurentPoly::one());
        r.push(Check::from_bool(format!("[{k}] s_{k} = 1"), ok, format!("1 + O(q^{})", prod.cutoff())));
    }
    r
}

pub fn tl_axioms(cfg: &RunConfig) -> Result<Vec<CheckReport>, Error> {
    let top = cfg.strands.unwrap_or(8);
    (1..=top).map(turnback_annihilation).collect()
}

pub fn fusion_slide(cfg: &RunConfig) -> Result<Vec<CheckReport>, Error> {
    let mut cl = CheckReport::new("annular closures");
    for k in 0..=cfg.strands.unwrap_or(6) {
        let a = annular_closure(&jones_wenzl(k)?);
        let ok = a == phi(k as u32);
        cl.push(Check::from_bool(format!("closure(p_{k}) = phi_{k}"), ok, a.to_string()));
    }
    let mut out = vec![cl];
    for n in levels(cfg) {
        out.push(verify_slide_identities(n as u32)?);
    }
    let eig = cfg.level.map_or((1..=8).collect(), |n| vec![n as u32]);
    for n in eig {
        out.push(eigen_check(n)?);
    }
    Ok(out)
}

/// Local cobordism relations, then the projector complexes themselves.
pub fn projector_axioms(cfg: &RunConfig) -> Result<Vec<CheckReport>, Error> {
    let mut out = vec![cob_relations(DEGREE_SAMPLES, DEGREE_SEED)?];
    let mut v = validate(&p2())?;
    v.title = format!("P2 {}", v.title);
    out.push(v);
    let mut v = validate(&p3())?;
    v.title = format!("P3 {}", v.title);
    out.push(v);
    for n in levels(cfg) {
        out.push(turnback_check(n, cfg.hmax)?);
    }
    Ok(out)
}

fn disk_object(rng: &mut ChaCha8Rng, n: usize) -> Planar {
    let all = Matching::enumerate(n);
    Planar::from_matching(&all[rng.gen_range(0..all.len())]).with_circles(rng.gen_range(0..=1), 0)
}

fn random_cob(rng: &mut ChaCha8Rng, src: &Planar, tgt: &Planar) -> Result<Cob, Error> {
    let cm = CycleMap::new(src, tgt)?;
    let parts = rng.gen_range(1..=3);
    let mut groups = vec![Vec::new(); parts];
    for c in 0..cm.count() {
        groups[rng.gen_range(0..parts)].push(c);
    }
    let comps: Vec<Component> = groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|g| Component::planar(g, rng.gen_range(0..=2)))
        .collect();
    Cob::from_components(src.clone(), tgt.clone(), &comps)
}

/// Closed surface values and delooping. Degree additivity is sampled on
/// `samples` random composable pairs with a nonzero composite.
pub fn cob_relations(samples: usize, seed: u64) -> Result<CheckReport, Error> {
    let mut r = CheckReport::new("Bar-Natan relations");
    let a = AlphaPoly::monomial(1, 1);
    for (name, g, d, want) in [
        ("sphere = 0", 0, 0, AlphaPoly::zero()),
        ("dotted sphere = 1", 0, 1, AlphaPoly::one()),
        ("two-dot sphere = 0", 0, 2, AlphaPoly::zero()),
        ("three-dot sphere = alpha", 0, 3, a.clone()),
        ("torus = 2", 1, 0, AlphaPoly::constant(2)),
        ("genus 3 = 8 alpha", 3, 0, AlphaPoly::monomial(8, 1)),
    ] {
        let v = evaluate_closed(g, d);
        r.push(Check::from_bool(name, v == want, v.to_string()));
    }
    for obj in [Planar::circles(1, 0), Planar::from_matching(&Matching::identity(2)).with_circles(1, 0)] {
        let d = deloop(&obj)?.check()?;
        let ok = d.all_passed();
        r.push(Check::from_bool(format!("deloop {obj}"), ok, d.first_failure().map_or("inverse isomorphisms".into(), |c| c.name.clone())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut done, mut tries, mut bad) = (0, 0, None);
    while done < samples && tries < 50 * samples {
        tries += 1;
        let n = rng.gen_range(1..=3);
        let (x, y, z) = (disk_object(&mut rng, n), disk_object(&mut rng, n), disk_object(&mut rng, n));
        let f = random_cob(&mut rng, &x, &y)?;
        let g = random_cob(&mut rng, &y, &z)?;
        let gf = g.after(&f)?;
        if f.is_zero() || g.is_zero() || gf.is_zero() {
            continue;
        }
        done += 1;
        let (df, dg, dgf) = (f.degree_t()?, g.degree_t()?, gf.degree_t()?);
        if dgf != df + dg && bad.is_none() {
            bad = Some(format!("{g} after {f}: {dgf} != {dg} + {df}"));
        }
    }
    r.push(match bad {
        None if done == samples => Check::pass("degree additivity", format!("{done} composable pairs")),
        None => Check::fail("degree additivity", format!("only {done} nonzero pairs in {tries} draws")),
        Some(w) => Check::fail("degree additivity", w),
    });
    Ok(r)
}

pub fn decat(cfg: &RunConfig) -> Result<Vec<CheckReport>, Error> {
    let ns = cfg.strands.map_or(vec![2, 3], |n| vec![n]);
    let mut out = Vec::new();
    for &n in &ns {
        out.push(euler_check(n, cfg.qmax)?);
    }
    for n in ns.into_iter().filter(|&n| n <= 4) {
        out.push(k0_check(n)?);
    }
    Ok(out)
}

pub fn trace_report(cfg: &RunConfig, cache: Option<&Cache>) -> Result<TraceReport, Error> {
    let t = trunc(cfg)?;
    Cache::get_or_compute(cache, "trace-p2", &(t.hmax, t.qmax), || trace_complex(&p2(), t))
}

/// The reduced trace of `P2` begins `q^-2 Z + Z` in its lowest degree.
pub fn trace_p2(cfg: &RunConfig, cache: Option<&Cache>) -> Result<CheckReport, Error> {
    let t = trace_report(cfg, cache)?;
    let mut r = CheckReport::new(format!("tr(P2) hmax={} qmax={}", cfg.hmax, cfg.qmax));
    let listing: Vec<String> = t.ranks.iter().take(4).map(|(d, v)| format!("{d}:{v:?}")).collect();
    let ok = t.first() == Some((0, &[-2, 0][..]));
    r.push(Check::from_bool("first summands q^-2 Z + Z", ok, listing.join(" ")));
    Ok(r)
}

pub fn tail_equality(cfg: &RunConfig) -> Result<Vec<CheckReport>, Error> {
    let mut out = Vec::new();
    for n in levels(cfg) {
        out.push(cone_identity_checks(n, cfg.hmax)?);
        out.push(tail_equality_check(n)?);
    }
    Ok(out)
}

pub fn certificate(level: usize, cache: Option<&Cache>) -> Result<EquivCertificate, Error> {
    Cache::get_or_compute(cache, "slide-certificate", &level, || build_slide_certificate(level))
}

pub fn slide_certificate(cfg: &RunConfig, cache: Option<&Cache>) -> Result<Vec<CheckReport>, Error> {
    let mut out = Vec::new();
    for n in levels(cfg) {
        out.push(verify_certificate(&certificate(n, cache)?, trunc(cfg)?)?);
        out.push(k0_shadow(n)?);
    }
    Ok(out)
}
