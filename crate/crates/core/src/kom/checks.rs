use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::{PeriodicComplex, Truncation};
use super::ops::{first_level_mismatch, glue_complex, simplify, tensor_with};
use super::projectors::{diagram_complex, projector};
use crate::cob::{stack_plan, GluePlan, Planar, Port};
use crate::coeff::ratfunc_to_series;
use crate::report::{Check, CheckReport};
use crate::tl::jones_wenzl;
use crate::Error;

/// `e_i` stacked on top of `P_n` (or below it when `below` is set).
pub fn turnback_complex(n: usize, i: usize, below: bool, hmax: i32) -> Result<PeriodicComplex, Error> {
    let e = diagram_complex(n, &[i]);
    let p = projector(n)?;
    if below {
        tensor_with(&p, &e, &stack_plan(n), hmax)
    } else {
        tensor_with(&e, &p, &stack_plan(n), hmax)
    }
}

/// After simplification, `e_i ∘ P_n` and `P_n ∘ e_i` have nothing below
/// degree `hmax - 1`.
pub fn turnback_check(n: usize, hmax: i32) -> Result<CheckReport, Error> {
    turnback_check_on(&projector(n)?, n, hmax)
}

/// `turnback_check` for a candidate complex `p` on `n` strands.
pub fn turnback_check_on(p: &PeriodicComplex, n: usize, hmax: i32) -> Result<CheckReport, Error> {
    let mut report = CheckReport::new(format!("turnbacks n={n} hmax={hmax}"));
    for i in 1..n {
        for below in [false, true] {
            let e = diagram_complex(n, &[i]);
            let x = if below { tensor_with(p, &e, &stack_plan(n), hmax)? } else { tensor_with(&e, p, &stack_plan(n), hmax)? };
            let s = simplify(&x, hmax)?;
            let low: Vec<i32> = (s.start()..hmax - 1).filter(|&d| !s.level_at(d).is_empty()).collect();
            let name = if below { format!("P_{n} e_{i} contractible") } else { format!("e_{i} P_{n} contractible") };
            let witness = if low.is_empty() {
                format!("no summands below degree {}", hmax - 1)
            } else {
                format!("summands in degrees {low:?}")
            };
            report.push(Check::from_bool(name, low.is_empty(), witness));
        }
    }
    Ok(report)
}

/// `χ(P_n)` against the power series of the coefficients of `p_n`.
pub fn euler_check(n: usize, qmax: i32) -> Result<CheckReport, Error> {
    let mut report = CheckReport::new(format!("decategorification n={n} qmax={qmax}"));
    let chi = projector(n)?.euler_char(qmax)?;
    let p = jones_wenzl(n)?;
    let mut keys: Vec<_> = p.terms().map(|(m, _)| *m).collect();
    keys.extend(chi.terms.keys().copied());
    keys.sort();
    keys.dedup();
    for m in keys {
        let expect = ratfunc_to_series(&p.coeff(&m), qmax)?;
        let got = chi.coeff(&m);
        report.push(Check::from_bool(format!("coefficient of {m}"), got == expect, format!("{got}")));
    }
    Ok(report)
}

/// `P_n ⊗ P_n` simplified agrees with `P_n` level by level through `upto`.
pub fn idempotence_check(n: usize, upto: i32) -> Result<CheckReport, Error> {
    let p = projector(n)?;
    let window = upto + 2;
    let pp = simplify(&tensor_with(&p, &p, &stack_plan(n), window)?, window)?;
    let bad = first_level_mismatch(&pp, &p, 0, upto);
    let mut report = CheckReport::new(format!("idempotence n={n}"));
    report.push(Check::from_bool(
        format!("P_{n} P_{n} ~ P_{n} through degree {upto}"),
        bad.is_none(),
        match bad {
            None => format!("{} summands compared", (0..=upto).map(|d| p.level_at(d).len()).sum::<usize>()),
            Some(d) => format!("degree {d}: {:?} vs {:?}", pp.level_at(d), p.level_at(d)),
        },
    ));
    Ok(report)
}

/// Plan closing every strand of an `n`-strand tangle in the disk.
pub fn markov_plan(n: usize) -> GluePlan {
    GluePlan {
        joins: (0..n)
            .flat_map(|i| [(Port::new(0, i), Port::new(1 + i, 0)), (Port::new(0, n + i), Port::new(1 + i, 1))])
            .collect(),
        outputs: Vec::new(),
    }
}

/// A closing strip: one arc between two points with the given wrap bit.
pub fn strip(wrap: bool) -> Planar {
    Planar::new(vec![1, 0], vec![wrap, wrap], 0, 0).expect("valid arc")
}

/// Graded ranks of a simplified complex of empty objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub hmax: i32,
    /// Homological degree to the sorted `q`-shifts of its free summands.
    pub ranks: BTreeMap<i32, Vec<i32>>,
}

impl TraceReport {
    /// Shifts in the lowest nonempty degree.
    pub fn first(&self) -> Option<(i32, &[i32])> {
        self.ranks.iter().next().map(|(d, v)| (*d, v.as_slice()))
    }
}

/// Closes all strands in the disk and simplifies. Lists the remaining
/// graded free summands in degrees below `hmax - 1`.
pub fn trace_complex(c: &PeriodicComplex, trunc: Truncation) -> Result<TraceReport, Error> {
    let Some(obj) = (c.start()..c.start() + 4).flat_map(|d| c.level_at(d)).next() else {
        return Ok(TraceReport { hmax: trunc.hmax, ranks: BTreeMap::new() });
    };
    let n = obj.obj.points() / 2;
    let strips: Vec<Planar> = (0..n).map(|_| strip(false)).collect();
    let closed = glue_complex(c, &strips, &markov_plan(n), trunc.hmax)?;
    let s = simplify(&closed, trunc.hmax)?;
    let mut ranks = BTreeMap::new();
    for d in s.start()..trunc.hmax - 1 {
        let mut v: Vec<i32> = s.level_at(d).iter().map(|x| x.shift).filter(|&q| q < trunc.qmax).collect();
        if !v.is_empty() {
            v.sort();
            ranks.insert(d, v);
        }
    }
    Ok(TraceReport { hmax: trunc.hmax, ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kom::p2;

    #[test]
    fn p2_turnbacks() {
        let r = turnback_check(2, 8).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn trace_of_one_strand() {
        let c = diagram_complex(1, &[]);
        let t = trace_complex(&c, Truncation::new(4, 20).unwrap()).unwrap();
        assert_eq!(t.ranks, BTreeMap::from([(0, vec![-1, 1])]));
    }

    #[test]
    fn trace_of_p2_starts_low() {
        let t = trace_complex(&p2(), Truncation::new(10, 40).unwrap()).unwrap();
        assert_eq!(t.first(), Some((0, &[-2, 0][..])), "{t:?}");
    }

    #[test]
    fn euler_p2() {
        let r = euler_check(2, 12).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}
