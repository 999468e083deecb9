use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::complex::PeriodicComplex;
use super::matrix::{Level, Matrix, Summand};
use crate::cob::{deloop, glue_cobs, glue_objects, Cob, GluePlan, Planar};
use crate::Error;

/// A degree-preserving map of complexes, one matrix per homological degree
/// (missing degrees are zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMap {
    pub comps: BTreeMap<i32, Matrix>,
}

impl ChainMap {
    pub fn new(comps: BTreeMap<i32, Matrix>) -> Self {
        Self { comps: comps.into_iter().filter(|(_, m)| !m.is_zero()).collect() }
    }

    pub fn at(&self, deg: i32, x: &PeriodicComplex, y: &PeriodicComplex) -> Matrix {
        self.comps
            .get(&deg)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(y.level_at(deg).len(), x.level_at(deg).len()))
    }

    /// The identity-like inclusion or projection given by a function on degrees.
    pub fn from_fn(degrees: impl IntoIterator<Item = i32>, f: impl Fn(i32) -> Option<Matrix>) -> Self {
        Self::new(degrees.into_iter().filter_map(|d| f(d).map(|m| (d, m))).collect())
    }

    pub fn neg(&self) -> Self {
        Self { comps: self.comps.iter().map(|(&d, m)| (d, m.neg())).collect() }
    }
}

/// Checks `f ∘ d_X = d_Y ∘ f` in degrees `lo..hi`, returning the first failing degree.
pub fn chain_map_defect(f: &ChainMap, x: &PeriodicComplex, y: &PeriodicComplex, lo: i32, hi: i32) -> Result<Option<i32>, Error> {
    for n in lo..hi {
        for (&(r, c), e) in f.comps.get(&n).map(|m| m.entries().collect::<Vec<_>>()).unwrap_or_default() {
            let (xs, ys) = (x.level_at(n), y.level_at(n));
            if c >= xs.len() || r >= ys.len() || *e.src() != xs[c].obj || *e.tgt() != ys[r].obj {
                return Ok(Some(n));
            }
        }
        let left = f.at(n + 1, x, y).after(&x.d_or_zero(n))?;
        let right = y.d_or_zero(n).after(&f.at(n, x, y))?;
        if left != right {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

fn block(rows: &[usize], cols: &[usize], parts: &[(usize, usize, &Matrix)]) -> Matrix {
    let ro: Vec<usize> = rows.iter().scan(0, |a, &x| { let o = *a; *a += x; Some(o) }).collect();
    let co: Vec<usize> = cols.iter().scan(0, |a, &x| { let o = *a; *a += x; Some(o) }).collect();
    let mut out = Matrix::zero(rows.iter().sum(), cols.iter().sum());
    for &(bi, bj, m) in parts {
        for (&(r, c), x) in m.entries() {
            out.set(ro[bi] + r, co[bj] + c, x.clone());
        }
    }
    out
}

/// `Cone(f: X → Y)` in degrees up to `hmax`: degree `n` holds `X_{n+1} ⊕ Y_n`
/// with differential `[[-d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ChainMap, x: &PeriodicComplex, y: &PeriodicComplex, hmax: i32) -> Result<PeriodicComplex, Error> {
    let lo = (x.start() - 1).min(y.start());
    let mut levels: Vec<Level> = Vec::new();
    let mut d = Vec::new();
    for n in lo..=hmax {
        let mut lv = x.level_at(n + 1);
        lv.extend(y.level_at(n));
        levels.push(lv);
        if n < hmax {
            let (a, b) = (x.level_at(n + 1).len(), y.level_at(n).len());
            let (a2, b2) = (x.level_at(n + 2).len(), y.level_at(n + 1).len());
            let dx = x.d_or_zero(n + 1).neg();
            let fm = f.at(n + 1, x, y);
            let dy = y.d_or_zero(n);
            d.push(block(&[a2, b2], &[a, b], &[(0, 0, &dx), (1, 0, &fm), (1, 1, &dy)]));
        }
    }
    trim(lo, levels, d)
}

/// Drops empty levels at both ends.
fn trim(mut start: i32, mut levels: Vec<Level>, mut d: Vec<Matrix>) -> Result<PeriodicComplex, Error> {
    while levels.first().is_some_and(|l| l.is_empty()) {
        levels.remove(0);
        if !d.is_empty() {
            d.remove(0);
        }
        start += 1;
    }
    while levels.last().is_some_and(|l| l.is_empty()) {
        levels.pop();
        d.pop();
    }
    if levels.is_empty() {
        return Ok(PeriodicComplex::zero());
    }
    PeriodicComplex::bounded(start, levels, d)
}

struct IdCache(HashMap<Planar, Cob>);

impl IdCache {
    fn get(&mut self, p: &Planar) -> Cob {
        self.0.entry(p.clone()).or_insert_with(|| Cob::identity(p)).clone()
    }
}

/// Planar composition of two complexes: part `0` from `a`, part `1` from `b`,
/// joined by `plan`. The total complex uses `d = d_a ⊗ 1 + (-1)^i 1 ⊗ d_b`
/// and is cut off at `hmax`.
pub fn tensor_with(a: &PeriodicComplex, b: &PeriodicComplex, plan: &GluePlan, hmax: i32) -> Result<PeriodicComplex, Error> {
    for c in [a, b] {
        if c.tail().is_some_and(|t| t.shift <= 0) {
            return Err(Error::InvalidArgument("tensor needs tails with positive q-shift".into()));
        }
    }
    let (sa, sb) = (a.start(), b.start());
    let a = a.unroll(hmax - sb);
    let b = b.unroll(hmax - sa);
    let (Some(ea), Some(eb)) = (a.end(), b.end()) else { return Ok(PeriodicComplex::zero()) };
    let lo = sa + sb;
    let hi = (ea + eb).min(hmax);
    if hi < lo {
        return Ok(PeriodicComplex::zero());
    }
    let mut ids = IdCache(HashMap::new());
    // index of (i, s, t) within level i + j
    let mut index: Vec<BTreeMap<(i32, usize, usize), usize>> = Vec::new();
    let mut levels = Vec::new();
    for k in lo..=hi {
        let mut lv = Vec::new();
        let mut idx = BTreeMap::new();
        for i in sa..=ea {
            let j = k - i;
            if j < sb || j > eb {
                continue;
            }
            for (s, x) in a.level_at(i).iter().enumerate() {
                for (t, y) in b.level_at(j).iter().enumerate() {
                    idx.insert((i, s, t), lv.len());
                    lv.push(Summand::new(glue_objects(&[&x.obj, &y.obj], plan)?, x.shift + y.shift));
                }
            }
        }
        levels.push(lv);
        index.push(idx);
    }
    let mut ds = Vec::new();
    for k in lo..hi {
        let (src, tgt) = (&index[(k - lo) as usize], &index[(k + 1 - lo) as usize]);
        let mut m = Matrix::zero(levels[(k + 1 - lo) as usize].len(), levels[(k - lo) as usize].len());
        let mut acc: BTreeMap<(usize, usize), Cob> = BTreeMap::new();
        for (&(i, s, t), &col) in src {
            let j = k - i;
            let (xa, yb) = (a.level_at(i), b.level_at(j));
            if let Some(da) = a.differential(i) {
                for (&(r, c), e) in da.entries() {
                    if c != s {
                        continue;
                    }
                    if let Some(&row) = tgt.get(&(i + 1, r, t)) {
                        let g = glue_cobs(&[e, &ids.get(&yb[t].obj)], plan)?;
                        push(&mut acc, row, col, g)?;
                    }
                }
            }
            if let Some(db) = b.differential(j) {
                for (&(r, c), e) in db.entries() {
                    if c != t {
                        continue;
                    }
                    if let Some(&row) = tgt.get(&(i, s, r)) {
                        let g = glue_cobs(&[&ids.get(&xa[s].obj), e], plan)?;
                        push(&mut acc, row, col, if i % 2 == 0 { g } else { g.neg() })?;
                    }
                }
            }
        }
        for ((r, c), x) in acc {
            m.set(r, c, x);
        }
        ds.push(m);
    }
    PeriodicComplex::bounded(lo, levels, ds)
}

fn push(acc: &mut BTreeMap<(usize, usize), Cob>, r: usize, c: usize, x: Cob) -> Result<(), Error> {
    let v = match acc.remove(&(r, c)) {
        Some(y) => y.add(&x)?,
        None => x,
    };
    acc.insert((r, c), v);
    Ok(())
}

/// Glues fixed objects (with identity cobordisms) onto every object and
/// differential of `c`, which supplies part `0` of the plan.
pub fn glue_complex(c: &PeriodicComplex, fixed: &[Planar], plan: &GluePlan, hmax: i32) -> Result<PeriodicComplex, Error> {
    let c = c.unroll(hmax);
    let Some(end) = c.end() else { return Ok(PeriodicComplex::zero()) };
    let ids: Vec<Cob> = fixed.iter().map(Cob::identity).collect();
    let mut levels = Vec::new();
    let mut ds = Vec::new();
    for n in c.start()..=end {
        let mut lv = Vec::new();
        for s in c.level_at(n) {
            let mut parts: Vec<&Planar> = vec![&s.obj];
            parts.extend(fixed.iter());
            lv.push(Summand::new(glue_objects(&parts, plan)?, s.shift));
        }
        levels.push(lv);
        if n < end {
            let d = c.d_or_zero(n);
            let mut m = Matrix::zero(d.rows(), d.cols());
            for (&(r, col), e) in d.entries() {
                let mut parts: Vec<&Cob> = vec![e];
                parts.extend(ids.iter());
                m.set(r, col, glue_cobs(&parts, plan)?);
            }
            ds.push(m);
        }
    }
    Ok(PeriodicComplex::bounded(c.start(), levels, ds)?.with_level(c.level))
}

/// Replaces every summand by its fully delooped pieces, conjugating the
/// differentials by the delooping isomorphisms.
pub fn deloop_complex(c: &PeriodicComplex) -> Result<PeriodicComplex, Error> {
    let Some(end) = c.end() else {
        return Err(Error::InvalidArgument("delooping needs a bounded complex".into()));
    };
    // per degree: expansions (summand, forward, backward)
    let mut expansions: Vec<Vec<Vec<(Summand, Cob, Cob)>>> = Vec::new();
    for n in c.start()..=end {
        let mut per = Vec::new();
        for s in c.level_at(n) {
            let mut cur = vec![(s.clone(), Cob::identity(&s.obj), Cob::identity(&s.obj))];
            while cur[0].0.obj.trivial() > 0 {
                let mut next = Vec::new();
                for (sm, f, b) in cur {
                    let dl = deloop(&sm.obj)?;
                    for k in 0..2 {
                        let (sh, ref o) = dl.summands[k];
                        next.push((Summand::new(o.clone(), sm.shift + sh), dl.forward[k].after(&f)?, b.after(&dl.backward[k])?));
                    }
                }
                cur = next;
            }
            per.push(cur);
        }
        expansions.push(per);
    }
    let mut levels = Vec::new();
    let mut ds = Vec::new();
    for (k, per) in expansions.iter().enumerate() {
        levels.push(per.iter().flatten().map(|(s, _, _)| s.clone()).collect::<Level>());
        if k + 1 < expansions.len() {
            let d = c.d_or_zero(c.start() + k as i32);
            let src = per;
            let tgt = &expansions[k + 1];
            let src_off: Vec<usize> = src.iter().scan(0, |a, v| { let o = *a; *a += v.len(); Some(o) }).collect();
            let tgt_off: Vec<usize> = tgt.iter().scan(0, |a, v| { let o = *a; *a += v.len(); Some(o) }).collect();
            let rows = tgt.iter().map(Vec::len).sum();
            let cols = src.iter().map(Vec::len).sum();
            let mut m = Matrix::zero(rows, cols);
            for (&(r, col), e) in d.entries() {
                for (a, (_, _, back)) in src[col].iter().enumerate() {
                    let eb = e.after(back)?;
                    for (b, (_, fwd, _)) in tgt[r].iter().enumerate() {
                        m.set(tgt_off[r] + b, src_off[col] + a, fwd.after(&eb)?);
                    }
                }
            }
            ds.push(m);
        }
    }
    Ok(PeriodicComplex::bounded(c.start(), levels, ds)?.with_level(c.level))
}

/// Gaussian elimination of `±identity` entries, scanning in lexicographic
/// order of (degree, row, column).
pub fn gaussian_eliminate(c: &PeriodicComplex) -> Result<PeriodicComplex, Error> {
    let Some(end) = c.end() else {
        return Err(Error::InvalidArgument("elimination needs a bounded complex".into()));
    };
    let start = c.start();
    let mut levels: Vec<Level> = (start..=end).map(|n| c.level_at(n)).collect();
    let mut ds: Vec<Matrix> = (start..end).map(|n| c.d_or_zero(n)).collect();
    let mut ids = IdCache(HashMap::new());
    let mut k = 0;
    while k < ds.len() {
        let found = ds[k].entries().find_map(|(&(r, col), e)| {
            if levels[k][col].shift != levels[k + 1][r].shift || e.src() != e.tgt() {
                return None;
            }
            let id = ids.get(e.src());
            if *e == id {
                Some((r, col, 1))
            } else if *e == id.neg() {
                Some((r, col, -1))
            } else {
                None
            }
        });
        let Some((r, col, sign)) = found else {
            k += 1;
            continue;
        };
        let d = &ds[k];
        let column: Vec<(usize, Cob)> =
            d.entries().filter(|((rr, cc), _)| *cc == col && *rr != r).map(|((rr, _), x)| (*rr, x.clone())).collect();
        let row: Vec<(usize, Cob)> =
            d.entries().filter(|((rr, cc), _)| *rr == r && *cc != col).map(|((_, cc), x)| (*cc, x.clone())).collect();
        let mut nd = d.clone();
        for (rr, a) in &column {
            for (cc, b) in &row {
                let corr = a.after(b)?;
                let corr = if sign == 1 { corr.neg() } else { corr };
                let v = match nd.get(*rr, *cc) {
                    Some(x) => x.add(&corr)?,
                    None => corr,
                };
                nd.set(*rr, *cc, v);
            }
        }
        let keep_rows: Vec<usize> = (0..nd.rows()).filter(|&i| i != r).collect();
        let keep_cols: Vec<usize> = (0..nd.cols()).filter(|&i| i != col).collect();
        ds[k] = nd.select(&keep_rows, &keep_cols);
        if k > 0 {
            let prev = &ds[k - 1];
            let all: Vec<usize> = (0..prev.cols()).collect();
            ds[k - 1] = prev.select(&keep_cols, &all);
        }
        if k + 1 < ds.len() {
            let next = &ds[k + 1];
            let all: Vec<usize> = (0..next.rows()).collect();
            ds[k + 1] = next.select(&all, &keep_rows);
        }
        levels[k].remove(col);
        levels[k + 1].remove(r);
    }
    Ok(trim(start, levels, ds)?.with_level(c.level))
}

/// Deloops every trivial circle and then cancels all `±identity` entries,
/// working on the window of degrees up to `hmax`.
pub fn simplify(c: &PeriodicComplex, hmax: i32) -> Result<PeriodicComplex, Error> {
    gaussian_eliminate(&deloop_complex(&c.unroll(hmax))?)
}

/// Degrees whose levels agree object-for-object (with shifts) between `a`
/// and `b`, as multisets, over `lo..=hi`. Returns the first mismatch.
pub fn first_level_mismatch(a: &PeriodicComplex, b: &PeriodicComplex, lo: i32, hi: i32) -> Option<i32> {
    (lo..=hi).find(|&n| {
        let mut x = a.level_at(n);
        let mut y = b.level_at(n);
        x.sort();
        y.sort();
        x != y
    })
}
