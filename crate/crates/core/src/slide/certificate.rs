//! Certificates of equivalence modulo the projector ideal, and the handle
//! slide certificates for `Ω₂` and `Ω₃`.
//!
//! A certificate is a chain `A = C_0, C_1, ..., C_k` where `C_i` is the cone
//! of a map between `C_{i-1}` and an object `Q_i` of the ideal. Each `Q_i`
//! carries a construction witness (a projector closed up in the annulus,
//! then shifted), so the verifier rebuilds it rather than trusting it.

use serde::{Deserialize, Serialize};

use super::closure::{mirror_cob, mirror_complex, partial_trace, Closure};
use super::tails::{match_complexes, permutation_at, tail};
use crate::kom::{chain_map_defect, cone, first_level_mismatch, projector, simplify, ChainMap, Matrix, PeriodicComplex, Truncation};
use crate::report::{Check, CheckReport};
use crate::Error;

pub const CERT_VERSION: u32 = 1;

/// Homological window the slide certificates are built for.
pub const SLIDE_HMAX: i32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdealOp {
    ShiftH(i32),
    ShiftQ(i32),
}

/// `P_level` closed up by `closure`, optionally mirrored, then shifted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealCertificate {
    pub level: usize,
    pub closure: Closure,
    pub mirrored: bool,
    pub ops: Vec<IdealOp>,
}

impl IdealCertificate {
    pub fn build(&self) -> Result<PeriodicComplex, Error> {
        if self.level < 2 {
            return Err(Error::InvalidArgument(format!("no projector box: level {}", self.level)));
        }
        if self.closure.k >= self.level {
            return Err(Error::InvalidArgument(format!("closure {} leaves no through strand", self.closure)));
        }
        let mut c = partial_trace(&projector(self.level)?, &self.closure)?;
        if self.mirrored {
            c = mirror_complex(&c);
        }
        for op in &self.ops {
            c = match *op {
                IdealOp::ShiftH(k) => c.shift_h(k),
                IdealOp::ShiftQ(k) => c.shift_q(k),
            };
        }
        Ok(c)
    }
}

/// `In`: the map goes `Q → C`. `Out`: the map goes `C → Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    In,
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivStep {
    pub map: ChainMap,
    pub witness: Option<IdealCertificate>,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivCertificate {
    pub version: u32,
    pub level: usize,
    /// Maps are recorded in degrees up to `hmax`.
    pub hmax: i32,
    pub start: PeriodicComplex,
    pub end: PeriodicComplex,
    pub steps: Vec<EquivStep>,
    /// The last cone is compared with `end` shifted by this many degrees.
    pub end_shift: i32,
    /// The left-right mirror of the whole certificate.
    pub companion: Option<Box<EquivCertificate>>,
}

fn mirror_map(f: &ChainMap) -> ChainMap {
    ChainMap::new(f.comps.iter().map(|(&d, m)| (d, m.map_entries(mirror_cob))).collect())
}

impl EquivCertificate {
    pub fn mirror(&self) -> Self {
        Self {
            version: self.version,
            level: self.level,
            hmax: self.hmax,
            start: mirror_complex(&self.start),
            end: mirror_complex(&self.end),
            steps: self
                .steps
                .iter()
                .map(|s| EquivStep {
                    map: mirror_map(&s.map),
                    witness: s.witness.clone().map(|w| IdealCertificate { mirrored: !w.mirrored, ..w }),
                    direction: s.direction,
                })
                .collect(),
            end_shift: self.end_shift,
            companion: None,
        }
    }
}

/// The degree-0 object of a traced complex, as a complex of its own.
fn bottom(c: &PeriodicComplex) -> Result<PeriodicComplex, Error> {
    let lv = c.level_at(0);
    if lv.len() != 1 {
        return Err(Error::InvalidArgument(format!("expected one summand in degree 0, found {}", lv.len())));
    }
    Ok(PeriodicComplex::single(lv[0].obj.clone(), lv[0].shift, 0))
}

fn single_entry(rows: usize, cols: usize, r: usize, c: usize, x: crate::cob::Cob) -> Matrix {
    Matrix::from_entries(rows, cols, [(r, c, x)])
}

/// The certificate that a strand beside `Ω₊` (closure `config_a`) is
/// equivalent to a strand beside `Ω₋` (closure `config_b`) modulo the ideal
/// of `P_N`, with its mirror as companion.
///
/// Step 1 is the projection `Q₁ → B₁` of the traced projector onto its
/// degree-0 identity, whose cone is the traced tail. Step 2 maps that cone
/// to `Q₂[1]` by the tail identification, leaving `B₂` in degree -1. When
/// the traced tails admit no matching, the identity on summands is recorded
/// and the verifier rejects the step.
pub fn build_slide_certificate(level: usize) -> Result<EquivCertificate, Error> {
    if !(2..=3).contains(&level) {
        return Err(Error::InvalidArgument(format!("slide certificates exist for N = 2, 3, got {level}")));
    }
    let h = SLIDE_HMAX;
    let (ca, cb) = (Closure::config_a(level)?, Closure::config_b(level)?);
    let w1 = IdealCertificate { level, closure: ca, mirrored: false, ops: vec![] };
    let w2 = IdealCertificate { level, closure: cb, mirrored: false, ops: vec![IdealOp::ShiftH(1)] };
    let q1 = w1.build()?;
    let q2 = partial_trace(&projector(level)?, &cb)?;
    let (b1, b2) = (bottom(&q1)?, bottom(&q2)?);

    let id0 = crate::cob::Cob::identity(&b1.level_at(0)[0].obj);
    let f1 = ChainMap::new([(0, single_entry(1, 1, 0, 0, id0))].into());

    let t = tail(level)?;
    let (ta, tb) = (partial_trace(&t, &ca)?, partial_trace(&t, &cb)?);
    let perm = match_complexes(&ta, &tb).unwrap_or_default();
    let p_at = |n: i32| -> Matrix {
        let lv = ta.level_at(n);
        let ident: Vec<usize> = (0..lv.len()).collect();
        let p = permutation_at(&ta, &perm, n).unwrap_or(ident);
        super::tails::permutation_matrix(&lv, &p)
    };
    let mut comps = std::collections::BTreeMap::new();
    let p1 = p_at(1);
    let g = p1.after(&q1.d_or_zero(0))?;
    let (n1, m1) = (ta.level_at(1).len(), tb.level_at(1).len());
    let mut f0 = Matrix::zero(m1, n1 + 1);
    for (&(r, c), x) in p1.entries() {
        f0.set(r, c, x.clone());
    }
    for (&(r, _), x) in g.entries() {
        f0.set(r, n1, x.clone());
    }
    comps.insert(0, f0);
    for n in 1..=h {
        comps.insert(n, p_at(n + 1));
    }
    let f2 = ChainMap::new(comps);

    let mut cert = EquivCertificate {
        version: CERT_VERSION,
        level,
        hmax: h,
        start: b1,
        end: b2,
        steps: vec![
            EquivStep { map: f1, witness: Some(w1), direction: Direction::In },
            EquivStep { map: f2, witness: Some(w2), direction: Direction::Out },
        ],
        end_shift: 1,
        companion: None,
    };
    cert.companion = Some(Box::new(cert.mirror()));
    Ok(cert)
}

/// Replays a certificate within `trunc`, stopping at the first invalid step.
pub fn verify_certificate(cert: &EquivCertificate, trunc: Truncation) -> Result<CheckReport, Error> {
    let mut report = CheckReport::new(format!("slide certificate N={} hmax={}", cert.level, trunc.hmax));
    verify_into(cert, trunc, "", &mut report)?;
    Ok(report)
}

fn verify_into(cert: &EquivCertificate, trunc: Truncation, tag: &str, report: &mut CheckReport) -> Result<bool, Error> {
    let h = trunc.hmax;
    if cert.version != CERT_VERSION {
        report.push(Check::fail(format!("{tag}version"), format!("certificate version {}, expected {CERT_VERSION}", cert.version)));
        return Ok(false);
    }
    let need = h - 2;
    if cert.hmax < need {
        report.push(Check::fail(
            format!("{tag}window"),
            format!("maps recorded through degree {}, verification window needs {need}", cert.hmax),
        ));
        return Ok(false);
    }
    let mut cur = cert.start.clone();
    let lo = cur.start() - 2 * cert.steps.len() as i32;
    for (i, step) in cert.steps.iter().enumerate() {
        let name = format!("{tag}step {}", i + 1);
        let top = h - 2 - i as i32;
        let Some(w) = &step.witness else {
            report.push(Check::fail(format!("{name} ideal witness"), "missing projector witness"));
            return Ok(false);
        };
        if w.level != cert.level {
            report.push(Check::fail(format!("{name} ideal witness"), format!("witness uses P_{}, certificate is for P_{}", w.level, cert.level)));
            return Ok(false);
        }
        let q = match w.build() {
            Ok(q) => q,
            Err(e) => {
                report.push(Check::fail(format!("{name} ideal witness"), format!("invalid ideal witness: {e}")));
                return Ok(false);
            }
        };
        report.push(Check::pass(format!("{name} ideal witness"), format!("P_{} closed by {}{}", w.level, w.closure, if w.mirrored { ", mirrored" } else { "" })));
        let (x, y) = match step.direction {
            Direction::In => (&q, &cur),
            Direction::Out => (&cur, &q),
        };
        if let Some(n) = chain_map_defect(&step.map, x, y, lo, top)? {
            report.push(Check::fail(format!("{name} chain map"), format!("f d != d f in degree {n}")));
            return Ok(false);
        }
        report.push(Check::pass(format!("{name} chain map"), format!("commutes in degrees {lo}..{top}")));
        cur = cone(&step.map, x, y, h)?;
    }
    let top = h - 2 - cert.steps.len() as i32;
    let got = simplify(&cur, h)?;
    let want = simplify(&cert.end.shift_h(cert.end_shift), h)?;
    let bad = first_level_mismatch(&got, &want, lo, top).or_else(|| (lo..top).find(|&k| got.d_or_zero(k) != want.d_or_zero(k)));
    match bad {
        Some(k) => {
            report.push(Check::fail(
                format!("{tag}final equivalence"),
                format!("degree {k} of window {lo}..={top}: cone has {} summands, end has {}", got.level_at(k).len(), want.level_at(k).len()),
            ));
            return Ok(false);
        }
        None => report.push(Check::pass(format!("{tag}final equivalence"), format!("last cone simplifies to the end object in degrees {lo}..={top}"))),
    }
    if let Some(comp) = &cert.companion {
        if comp.start != mirror_complex(&cert.start) || comp.end != mirror_complex(&cert.end) {
            report.push(Check::fail("companion", "companion is not the mirror image"));
            return Ok(false);
        }
        return verify_into(comp, trunc, "mirror ", report);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trunc() -> Truncation {
        Truncation::new(SLIDE_HMAX, 20).unwrap()
    }

    #[test]
    fn n2_accepted() {
        let c = build_slide_certificate(2).unwrap();
        let r = verify_certificate(&c, trunc()).unwrap();
        assert!(r.all_passed(), "{r}");
        assert!(r.checks.iter().any(|c| c.name.starts_with("mirror ")));
    }
}

