//! Tails of the projector complexes and their traced comparison.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::closure::{partial_trace, Closure};
use crate::cob::Cob;
use crate::kom::{cone, deloop_complex, first_level_mismatch, projector, simplify, ChainMap, Matrix, PeriodicComplex, Summand};
use crate::report::{Check, CheckReport};
use crate::Error;

/// `P_n` without its degree-0 identity.
pub fn tail(n: usize) -> Result<PeriodicComplex, Error> {
    projector(n)?.drop_first()
}

/// Identity matrix on a level, as a map between two copies of it.
pub fn identity_matrix(level: &[Summand]) -> Matrix {
    Matrix::from_entries(level.len(), level.len(), level.iter().enumerate().map(|(i, s)| (i, i, Cob::identity(&s.obj))))
}

/// The matrix sending summand `i` of `level` to summand `perm[i]`.
pub fn permutation_matrix(level: &[Summand], perm: &[usize]) -> Matrix {
    Matrix::from_entries(level.len(), level.len(), level.iter().enumerate().map(|(i, s)| (perm[i], i, Cob::identity(&s.obj))))
}

/// Checks `Cone(d₀: id → tail) = P_n` exactly and `Cone(tail ↪ P_n) ≃ id`
/// after simplification, both through degree `hmax - 2`.
pub fn cone_identity_checks(n: usize, hmax: i32) -> Result<CheckReport, Error> {
    let p = projector(n)?;
    let t = tail(n)?;
    let id_lv = p.level_at(0);
    let id = PeriodicComplex::single(id_lv[0].obj.clone(), id_lv[0].shift, 1);
    let mut report = CheckReport::new(format!("cone identities n={n} hmax={hmax}"));
    let top = hmax - 2;

    let d0 = ChainMap::new(BTreeMap::from([(1, p.d_or_zero(0))]));
    let c1 = cone(&d0, &id, &t, hmax)?;
    let mut bad = first_level_mismatch(&c1, &p, 0, top);
    if bad.is_none() {
        bad = (0..top).find(|&k| c1.d_or_zero(k) != p.d_or_zero(k));
    }
    report.push(Check::from_bool(
        format!("Cone(id -> tail({n})) = P_{n}"),
        bad.is_none(),
        match bad {
            None => format!("objects and differentials agree in degrees 0..={top}"),
            Some(k) => format!("first difference in degree {k}"),
        },
    ));

    let incl = ChainMap::from_fn(t.start()..=hmax, |k| Some(identity_matrix(&t.level_at(k))));
    let c2 = simplify(&cone(&incl, &t, &p, hmax)?, hmax)?;
    let expect = PeriodicComplex::single(id_lv[0].obj.clone(), id_lv[0].shift, 0);
    let bad = first_level_mismatch(&c2, &expect, c2.start().min(0), top - 1);
    report.push(Check::from_bool(
        format!("Cone(tail({n}) -> P_{n}) ~ id"),
        bad.is_none(),
        match bad {
            None => format!("single identity in degree 0 through degree {}", top - 1),
            Some(k) => format!("degree {k}: {:?}", c2.level_at(k)),
        },
    ));
    Ok(report)
}

/// Per-degree permutations `π` with `a_n[i] = b_n[π(i)]` that intertwine the
/// differentials, over the head, one period and the wrap.
pub type SummandPermutation = BTreeMap<i32, Vec<usize>>;

fn candidates(a: &[Summand], b: &[Summand]) -> Vec<Vec<usize>> {
    fn rec(a: &[Summand], b: &[Summand], used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == a.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..b.len() {
            if !used[j] && a[i] == b[j] {
                used[j] = true;
                cur.push(j);
                rec(a, b, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    if a.len() == b.len() {
        rec(a, b, &mut vec![false; b.len()], &mut Vec::new(), &mut out);
    }
    out
}

fn intertwines(da: &Matrix, db: &Matrix, src: &[usize], tgt: &[usize]) -> bool {
    da.num_entries() == db.num_entries()
        && da.entries().all(|(&(r, c), x)| db.get(tgt[r], src[c]) == Some(x))
}

/// Finds a summand permutation identifying `a` with `b`, or describes the
/// first place where none exists.
pub fn match_complexes(a: &PeriodicComplex, b: &PeriodicComplex) -> Result<SummandPermutation, String> {
    if a.start() != b.start() || a.head_len() != b.head_len() {
        return Err(format!("shapes differ: start {} vs {}, head {} vs {}", a.start(), b.start(), a.head_len(), b.head_len()));
    }
    let (ta, tb) = (a.tail(), b.tail());
    if ta.map(|t| (t.levels.len(), t.shift)) != tb.map(|t| (t.levels.len(), t.shift)) {
        return Err("tails have different periods or shifts".into());
    }
    let range = a.check_range();
    let wrap = ta.map(|_| (range.end, a.start() + a.head_len() as i32));
    let last = if wrap.is_some() { range.end } else { range.end - 1 };
    let degrees: Vec<i32> = (range.start..=last).collect();
    let mut cands = Vec::new();
    for &n in &degrees {
        let c = candidates(&a.level_at(n), &b.level_at(n));
        if c.is_empty() {
            return Err(format!("degree {n}: objects {:?} vs {:?}", a.level_at(n), b.level_at(n)));
        }
        cands.push(c);
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut deepest = (0usize, String::new());
    fn dfs(
        k: usize,
        degrees: &[i32],
        cands: &[Vec<Vec<usize>>],
        a: &PeriodicComplex,
        b: &PeriodicComplex,
        wrap: Option<(i32, i32)>,
        chosen: &mut Vec<usize>,
        deepest: &mut (usize, String),
    ) -> bool {
        if k == degrees.len() {
            return true;
        }
        let n = degrees[k];
        for (ci, p) in cands[k].iter().enumerate() {
            if let Some((w, first)) = wrap {
                if n == w && *p != cands[(first - degrees[0]) as usize][chosen[(first - degrees[0]) as usize]] {
                    continue;
                }
            }
            if k > 0 {
                let prev = &cands[k - 1][chosen[k - 1]];
                if !intertwines(&a.d_or_zero(n - 1), &b.d_or_zero(n - 1), prev, p) {
                    if k >= deepest.0 {
                        *deepest = (k, format!("differential out of degree {}: no reordering matches", n - 1));
                    }
                    continue;
                }
            }
            chosen.push(ci);
            if dfs(k + 1, degrees, cands, a, b, wrap, chosen, deepest) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if dfs(0, &degrees, &cands, a, b, wrap, &mut chosen, &mut deepest) {
        Ok(degrees.iter().zip(&chosen).enumerate().map(|(k, (&n, &c))| (n, cands[k][c].clone())).collect())
    } else {
        Err(deepest.1)
    }
}

/// Extends a permutation found over one period to any degree.
pub fn permutation_at(a: &PeriodicComplex, perm: &SummandPermutation, deg: i32) -> Option<Vec<usize>> {
    if let Some(p) = perm.get(&deg) {
        return Some(p.clone());
    }
    let t = a.tail()?;
    let first = a.start() + a.head_len() as i32;
    if deg < first {
        return None;
    }
    perm.get(&(first + (deg - first) % t.levels.len() as i32)).cloned()
}

pub fn is_identity(perm: &SummandPermutation) -> bool {
    perm.values().all(|p| p.iter().enumerate().all(|(i, &j)| i == j))
}

/// The tails of `P_N` traced beside `Ω₊` and beside `Ω₋`.
pub fn traced_tails(level: usize) -> Result<(PeriodicComplex, PeriodicComplex), Error> {
    let t = tail(level)?;
    Ok((partial_trace(&t, &Closure::config_a(level)?)?, partial_trace(&t, &Closure::config_b(level)?)?))
}

/// Compares two traced tails. With `strict` the permutation must be trivial.
pub fn compare_tails(a: &PeriodicComplex, b: &PeriodicComplex, strict: bool) -> CheckReport {
    let mut report = CheckReport::new("tail equality");
    match match_complexes(a, b) {
        Err(w) => report.push(Check::fail("tails agree", w)),
        Ok(p) => {
            let id = is_identity(&p);
            let moved: Vec<String> = p.iter().filter(|(_, v)| v.iter().enumerate().any(|(i, &j)| i != j)).map(|(d, v)| format!("{d}:{v:?}")).collect();
            if strict {
                report.push(Check::from_bool("tails agree", id, if id { "equal chain complexes".to_string() } else { format!("needs reordering {moved:?}") }));
            } else {
                report.push(Check::pass("tails agree", if id { "equal chain complexes".to_string() } else { format!("after reordering {}", moved.join(" ")) }));
            }
        }
    }
    report
}

/// `c` when `x = c·id`.
fn scalar_coefficient(x: &Cob) -> Option<i64> {
    let id = Cob::identity(x.src());
    let (k, _) = id.terms().next()?;
    let c = x.terms().find(|(k2, _)| *k2 == k)?.1.as_constant()?;
    (*x == id.scale_int(c)).then_some(c)
}

fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Scalar ranks of the delooped differentials: for each degree `n` in
/// `lo..hi` and each object with its shift, the rank over `ℚ` of the
/// `c·id` entries of `d_n` between copies of that object. Over `ℚ` these
/// count the summand pairs Gaussian elimination can remove, so complexes
/// with different ranks are not homotopy equivalent.
pub fn scalar_ranks(c: &PeriodicComplex, lo: i32, hi: i32) -> Result<BTreeMap<(i32, String, i32), usize>, Error> {
    let d = deloop_complex(&c.unroll(hi + 1))?;
    let mut out = BTreeMap::new();
    for n in lo..hi {
        let (s, t) = (d.level_at(n), d.level_at(n + 1));
        let mut kinds: Vec<&Summand> = s.iter().filter(|x| t.contains(x)).collect();
        kinds.sort();
        kinds.dedup();
        for k in kinds {
            let rows: Vec<usize> = (0..t.len()).filter(|&i| t[i] == *k).collect();
            let cols: Vec<usize> = (0..s.len()).filter(|&i| s[i] == *k).collect();
            let m = rows
                .iter()
                .map(|&r| {
                    cols.iter()
                        .map(|&j| {
                            let v = d.d_or_zero(n).get(r, j).and_then(scalar_coefficient).unwrap_or(0);
                            BigRational::from_integer(v.into())
                        })
                        .collect()
                })
                .collect();
            let rank = rational_rank(m);
            if rank > 0 {
                out.insert((n, k.obj.to_string(), k.shift), rank);
            }
        }
    }
    Ok(out)
}

fn rank_check(a: &PeriodicComplex, b: &PeriodicComplex, lo: i32, hi: i32) -> Result<Check, Error> {
    let (ra, rb) = (scalar_ranks(a, lo, hi)?, scalar_ranks(b, lo, hi)?);
    let name = "same homotopy type over Q";
    if ra == rb {
        return Ok(Check::pass(name, format!("scalar ranks agree in degrees {lo}..{hi}")));
    }
    let keys: std::collections::BTreeSet<_> = ra.keys().chain(rb.keys()).collect();
    let k = keys.into_iter().find(|k| ra.get(k) != rb.get(k)).expect("maps differ");
    Ok(Check::fail(
        name,
        format!("d_{} on {} q^{}: rank {} vs {}", k.0, k.1, k.2, ra.get(k).unwrap_or(&0), rb.get(k).unwrap_or(&0)),
    ))
}

/// Traced tails for `N = 2` must agree on the nose; for `N = 3` up to the
/// recorded reordering of summands.
pub fn tail_equality_check(level: usize) -> Result<CheckReport, Error> {
    if !(2..=3).contains(&level) {
        return Err(Error::InvalidArgument(format!("tail equality is defined for N = 2, 3, got {level}")));
    }
    let (a, b) = traced_tails(level)?;
    let mut r = compare_tails(&a, &b, level == 2);
    r.push(rank_check(&a, &b, 1, 9)?);
    r.title = format!("tail equality N={level}");
    Ok(r)
}
