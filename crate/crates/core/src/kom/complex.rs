use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::{Level, Matrix, Summand};
use crate::cob::{deloop_class, Cob, Planar};
use crate::coeff::{LaurentPoly, TruncSeries};
use crate::report::{Check, CheckReport};
use crate::tl::Matching;
use crate::Error;

/// Repeating part of an eventually periodic complex. `d[j]` maps tail level
/// `j` to level `j + 1`; the last one wraps to level 0 of the next period,
/// whose shifts are raised by `shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tail {
    pub levels: Vec<Level>,
    pub d: Vec<Matrix>,
    pub shift: i32,
}

/// A chain complex over the cobordism category, bounded below, either
/// bounded or eventually periodic. The differential raises homological
/// degree by one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicComplex {
    start: i32,
    head: Vec<Level>,
    /// `head_d[k]` leaves head level `k`; with a tail the last one enters it.
    head_d: Vec<Matrix>,
    tail: Option<Tail>,
    /// Filtration tag: the projector level this complex belongs to (0 if none).
    pub level: usize,
}

/// Homological and `q`-degree cutoffs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub hmax: i32,
    pub qmax: i32,
}

impl Truncation {
    pub fn new(hmax: i32, qmax: i32) -> Result<Self, Error> {
        if hmax <= 0 || qmax <= 0 {
            return Err(Error::InvalidArgument(format!("truncation must be positive, got h={hmax} q={qmax}")));
        }
        Ok(Self { hmax, qmax })
    }
}

impl PeriodicComplex {
    /// A bounded complex with levels in degrees `start, start+1, ...`.
    pub fn bounded(start: i32, levels: Vec<Level>, d: Vec<Matrix>) -> Result<Self, Error> {
        if levels.is_empty() {
            if !d.is_empty() {
                return Err(Error::InvalidArgument("differential on an empty complex".into()));
            }
        } else if d.len() + 1 != levels.len() {
            return Err(Error::InvalidArgument(format!("{} levels need {} maps, got {}", levels.len(), levels.len() - 1, d.len())));
        }
        for (k, m) in d.iter().enumerate() {
            m.check_shape(&levels[k], &levels[k + 1])?;
        }
        Ok(Self { start, head: levels, head_d: d, tail: None, level: 0 })
    }

    pub fn periodic(start: i32, head: Vec<Level>, head_d: Vec<Matrix>, tail: Tail) -> Result<Self, Error> {
        let r = tail.levels.len();
        if r == 0 || tail.d.len() != r {
            return Err(Error::InvalidArgument("tail needs one map per level".into()));
        }
        if head_d.len() != head.len() {
            return Err(Error::InvalidArgument("head of a periodic complex needs one map per level".into()));
        }
        let c = Self { start, head, head_d, tail: Some(tail), level: 0 };
        for i in c.start..c.start + (c.head.len() + r) as i32 {
            let d = c.differential(i).expect("in range");
            d.check_shape(&c.level_at(i), &c.level_at(i + 1))?;
        }
        Ok(c)
    }

    /// A single object in one degree.
    pub fn single(obj: Planar, shift: i32, degree: i32) -> Self {
        Self { start: degree, head: vec![vec![Summand::new(obj, shift)]], head_d: vec![], tail: None, level: 0 }
    }

    pub fn zero() -> Self {
        Self { start: 0, head: vec![], head_d: vec![], tail: None, level: 0 }
    }

    pub fn with_level(mut self, level: usize) -> Self {
        self.level = level;
        self
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    pub fn is_bounded(&self) -> bool {
        self.tail.is_none()
    }

    pub fn head_len(&self) -> usize {
        self.head.len()
    }

    /// Last degree of a bounded complex.
    pub fn end(&self) -> Option<i32> {
        if self.tail.is_some() {
            None
        } else {
            Some(self.start + self.head.len() as i32 - 1)
        }
    }

    /// The summands in homological degree `deg` (empty outside the support).
    pub fn level_at(&self, deg: i32) -> Level {
        if deg < self.start {
            return Vec::new();
        }
        let k = (deg - self.start) as usize;
        if k < self.head.len() {
            return self.head[k].clone();
        }
        match &self.tail {
            None => Vec::new(),
            Some(t) => {
                let j = k - self.head.len();
                let (period, idx) = (j / t.levels.len(), j % t.levels.len());
                let extra = t.shift * period as i32;
                t.levels[idx].iter().map(|s| Summand::new(s.obj.clone(), s.shift + extra)).collect()
            }
        }
    }

    /// The differential leaving degree `deg`, when both ends are nonempty.
    pub fn differential(&self, deg: i32) -> Option<&Matrix> {
        if deg < self.start {
            return None;
        }
        let k = (deg - self.start) as usize;
        if k < self.head_d.len() {
            return Some(&self.head_d[k]);
        }
        let t = self.tail.as_ref()?;
        let j = k - self.head.len();
        Some(&t.d[j % t.d.len()])
    }

    /// Differential leaving `deg`, or a zero matrix of the right shape.
    pub fn d_or_zero(&self, deg: i32) -> Matrix {
        self.differential(deg)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.level_at(deg + 1).len(), self.level_at(deg).len()))
    }

    /// The bounded complex of degrees `start..=hmax` (the map out of `hmax` is dropped).
    pub fn unroll(&self, hmax: i32) -> PeriodicComplex {
        let top = match self.end() {
            Some(e) => e.min(hmax),
            None => hmax,
        };
        let mut levels = Vec::new();
        let mut d = Vec::new();
        for i in self.start..=top {
            levels.push(self.level_at(i));
            if i < top {
                d.push(self.d_or_zero(i));
            }
        }
        PeriodicComplex { start: self.start, head: levels, head_d: d, tail: None, level: self.level }
    }

    /// Every summand shifted by `q^k`.
    pub fn shift_q(&self, k: i32) -> Self {
        let sh = |l: &Level| l.iter().map(|s| Summand::new(s.obj.clone(), s.shift + k)).collect::<Level>();
        Self {
            start: self.start,
            head: self.head.iter().map(sh).collect(),
            head_d: self.head_d.clone(),
            tail: self.tail.as_ref().map(|t| Tail { levels: t.levels.iter().map(sh).collect(), d: t.d.clone(), shift: t.shift }),
            level: self.level,
        }
    }

    /// `X[k]`: degree `n` holds `X_{n+k}` and the differential picks up `(-1)^k`.
    pub fn shift_h(&self, k: i32) -> Self {
        let flip = |m: &Matrix| if k % 2 != 0 { m.neg() } else { m.clone() };
        Self {
            start: self.start - k,
            head: self.head.clone(),
            head_d: self.head_d.iter().map(flip).collect(),
            tail: self.tail.as_ref().map(|t| Tail { levels: t.levels.clone(), d: t.d.iter().map(flip).collect(), shift: t.shift }),
            level: self.level,
        }
    }

    /// Applies `obj` to every summand and `mor` to every differential entry,
    /// keeping the periodic structure.
    pub fn try_map(
        &self,
        obj: impl Fn(&Planar) -> Result<Planar, Error>,
        mor: impl Fn(&Cob) -> Result<Cob, Error>,
    ) -> Result<Self, Error> {
        let lv = |l: &Level| -> Result<Level, Error> { l.iter().map(|s| Ok(Summand::new(obj(&s.obj)?, s.shift))).collect() };
        let mx = |m: &Matrix| -> Result<Matrix, Error> {
            let mut out = Matrix::zero(m.rows(), m.cols());
            for (&(r, c), x) in m.entries() {
                out.set(r, c, mor(x)?);
            }
            Ok(out)
        };
        let head = self.head.iter().map(lv).collect::<Result<Vec<_>, _>>()?;
        let head_d = self.head_d.iter().map(mx).collect::<Result<Vec<_>, _>>()?;
        let tail = match &self.tail {
            None => None,
            Some(t) => Some(Tail {
                levels: t.levels.iter().map(lv).collect::<Result<_, _>>()?,
                d: t.d.iter().map(mx).collect::<Result<_, _>>()?,
                shift: t.shift,
            }),
        };
        Ok(Self { start: self.start, head, head_d, tail, level: self.level })
    }

    /// The complex with its lowest level removed. Degrees are kept.
    pub fn drop_first(&self) -> Result<Self, Error> {
        if self.head.is_empty() {
            return Err(Error::InvalidArgument("no head level to drop".into()));
        }
        let mut out = self.clone();
        out.head.remove(0);
        if !out.head_d.is_empty() {
            out.head_d.remove(0);
        }
        out.start += 1;
        if out.head.is_empty() && out.tail.is_none() {
            out.start = 0;
        }
        Ok(out)
    }

    /// Applies `f` to every entry of every differential.
    pub fn map_differentials(&self, f: impl Fn(i32, &Matrix) -> Matrix) -> Self {
        let mut out = self.clone();
        for (k, m) in out.head_d.iter_mut().enumerate() {
            *m = f(self.start + k as i32, m);
        }
        if let Some(t) = out.tail.as_mut() {
            let base = self.start + self.head.len() as i32;
            for (j, m) in t.d.iter_mut().enumerate() {
                *m = f(base + j as i32, m);
            }
        }
        out
    }

    /// Degrees that must be inspected to see every distinct composite `d∘d`:
    /// the head, the seam and one full period including the wrap.
    pub fn check_range(&self) -> std::ops::Range<i32> {
        let r = self.tail.as_ref().map_or(0, |t| t.levels.len());
        self.start..self.start + (self.head.len() + r) as i32
    }

    /// The total dimension `Σ_i |C_i|` over the stored degrees.
    pub fn num_summands(&self) -> usize {
        self.head.iter().map(Vec::len).sum::<usize>() + self.tail.as_ref().map_or(0, |t| t.levels.iter().map(Vec::len).sum())
    }

    /// Graded Euler characteristic `Σ (-1)^i q^shift [object]` through
    /// `q^{qmax-1}`, circles evaluated to `[2]`. Objects must be disk
    /// matchings up to trivial circles.
    pub fn euler_char(&self, qmax: i32) -> Result<SeriesTL, Error> {
        let mut out: BTreeMap<Matching, LaurentPoly> = BTreeMap::new();
        let mut strands = None;
        let positive = self.tail.as_ref().map_or(true, |t| t.shift > 0);
        if !positive {
            return Err(Error::InvalidArgument("Euler characteristic needs a tail with positive q-shift".into()));
        }
        let last = match (&self.tail, self.end()) {
            (_, Some(e)) => e,
            (Some(t), None) => {
                let low = t.levels.iter().flatten().map(|s| s.shift - s.obj.trivial() as i32).min().unwrap_or(qmax);
                let periods = ((qmax - low).max(0) + t.shift - 1) / t.shift + 1;
                self.start + self.head.len() as i32 + periods * t.levels.len() as i32
            }
            (None, None) => unreachable!("bounded complexes have an end"),
        };
        for deg in self.start..=last {
            let lv = self.level_at(deg);
            for s in lv {
                let (cls, rest) = deloop_class(&s.obj);
                let m = rest
                    .as_matching()
                    .ok_or_else(|| Error::InvalidArgument(format!("{} is not a disk matching", s.obj)))?;
                strands.get_or_insert(m.strands());
                let sign = if deg % 2 == 0 { 1 } else { -1 };
                let term = cls.shift(s.shift).scale(&sign.into());
                *out.entry(m).or_insert_with(LaurentPoly::zero) += &term;
            }
        }
        Ok(SeriesTL {
            strands: strands.unwrap_or(0),
            terms: out
                .into_iter()
                .map(|(m, p)| (m, TruncSeries::from_laurent(&p, qmax)))
                .filter(|(_, s)| !s.is_zero())
                .collect(),
            cutoff: qmax,
        })
    }
}

/// A Temperley-Lieb element with truncated power series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTL {
    pub strands: usize,
    pub terms: BTreeMap<Matching, TruncSeries>,
    pub cutoff: i32,
}

impl SeriesTL {
    pub fn coeff(&self, m: &Matching) -> TruncSeries {
        self.terms.get(m).cloned().unwrap_or_else(|| TruncSeries::zero(self.cutoff))
    }
}

impl fmt::Display for SeriesTL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, s) in &self.terms {
            writeln!(f, "{m}: {s}")?;
        }
        Ok(())
    }
}

fn identity_objects(c: &PeriodicComplex) -> Vec<i32> {
    let mut out = Vec::new();
    for deg in c.check_range() {
        for s in c.level_at(deg) {
            if s.obj.as_matching().is_some_and(|m| m.is_identity()) {
                out.push(deg);
            }
        }
    }
    out
}

/// Structural checks: `d∘d = 0` on the head, the seam and a full period,
/// every differential entry of total degree zero, positive tail shift and a
/// single identity summand in degree 0.
pub fn validate(c: &PeriodicComplex) -> Result<CheckReport, Error> {
    let mut report = CheckReport::new("validate");
    let mut first_bad = None;
    let range = c.check_range();
    for i in range.clone() {
        let (Some(a), Some(b)) = (c.differential(i), c.differential(i + 1)) else { continue };
        let dd = b.after(a)?;
        if !dd.is_zero() && first_bad.is_none() {
            let (&(r, col), x) = dd.entries().next().expect("nonzero");
            first_bad = Some(format!("d_{} d_{} at ({i},{}) entry ({r},{col}) = {x}", i + 1, i, i + 1));
        }
    }
    report.push(match first_bad {
        None => Check::pass("d^2 = 0", format!("degrees {}..{}", range.start, range.end)),
        Some(w) => Check::fail("d^2 = 0", w),
    });
    let mut bad_deg = None;
    for i in range.clone() {
        let Some(d) = c.differential(i) else { continue };
        let (src, tgt) = (c.level_at(i), c.level_at(i + 1));
        for (&(r, col), x) in d.entries() {
            let deg = x.degree(src[col].shift, tgt[r].shift);
            match deg {
                Ok(g) if g.total() == 0 => {}
                other => {
                    if bad_deg.is_none() {
                        bad_deg = Some(format!("d_{i} entry ({r},{col}): {other:?}"));
                    }
                }
            }
        }
    }
    report.push(match bad_deg {
        None => Check::pass("differentials have degree 0", "all entries"),
        Some(w) => Check::fail("differentials have degree 0", w),
    });
    if let Some(t) = c.tail() {
        report.push(Check::from_bool("tail shift positive", t.shift > 0, format!("{}", t.shift)));
    }
    if c.level > 0 {
        let ids = identity_objects(c);
        report.push(Check::from_bool("identity once, in degree 0", ids == vec![0], format!("{ids:?}")));
    }
    Ok(report)
}

impl fmt::Display for PeriodicComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |l: &Level| {
            if l.is_empty() {
                "0".to_string()
            } else {
                l.iter().map(|s| format!("q^{} {}", s.shift, s.obj)).collect::<Vec<_>>().join(" + ")
            }
        };
        for (k, l) in self.head.iter().enumerate() {
            writeln!(f, "[{}] {}", self.start + k as i32, show(l))?;
        }
        if let Some(t) = &self.tail {
            writeln!(f, "tail (period {}, shift q^{}):", t.levels.len(), t.shift)?;
            for l in &t.levels {
                writeln!(f, "  {}", show(l))?;
            }
        }
        Ok(())
    }
}
