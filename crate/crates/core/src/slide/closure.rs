//! Partial traces into the annulus and the left-right mirror.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cob::{glue_cobs, glue_objects, Cob, GluePlan, Planar, Port};
use crate::kom::{strip, validate, PeriodicComplex};
use crate::report::CheckReport;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Closes the `k` outermost strands on one side. The puncture sits inside the
/// `depth` outermost closing arcs; the rest bound disks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Closure {
    pub side: Side,
    pub k: usize,
    pub depth: usize,
}

impl Closure {
    pub fn new(side: Side, k: usize, depth: usize) -> Result<Self, Error> {
        if k == 0 || depth > k {
            return Err(Error::InvalidArgument(format!("closure of {k} strands at depth {depth}")));
        }
        Ok(Self { side, k, depth })
    }

    /// Strand beside `Ω₊`, through strand on the left of the puncture.
    pub fn config_a(level: usize) -> Result<Self, Error> {
        Self::new(Side::Right, level - 1, level - 1)
    }

    /// Strand beside `Ω₋`, through strand on the right of the puncture.
    pub fn config_b(level: usize) -> Result<Self, Error> {
        Self::new(Side::Left, level - 1, level - 2)
    }

    pub fn mirror(&self) -> Self {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        Self { side, ..*self }
    }

    /// Closed strands of an `n`-strand tangle, and whether each closing arc
    /// crosses the ray.
    fn closed(&self, n: usize) -> Vec<(usize, bool)> {
        let k = self.k;
        match self.side {
            // innermost arc closes the rightmost strand
            Side::Right => (n - k..n).map(|j| (j, j < n - k + self.depth)).collect(),
            // innermost arc closes strand 0
            Side::Left => (0..k).map(|j| (j, j >= k - self.depth)).collect(),
        }
    }

    /// Gluing plan and closing strips for an `n`-strand tangle. A left
    /// closure also routes the ray over the top ends of the through strands.
    pub fn plan(&self, n: usize) -> Result<(Vec<Planar>, GluePlan), Error> {
        if self.k > n {
            return Err(Error::InvalidArgument(format!("cannot close {} of {n} strands", self.k)));
        }
        let mut strips = Vec::new();
        let mut plan = GluePlan::default();
        for (j, w) in self.closed(n) {
            let s = 1 + strips.len();
            strips.push(strip(w));
            plan.joins.push((Port::new(0, n + j), Port::new(s, 0)));
            plan.joins.push((Port::new(0, j), Port::new(s, 1)));
        }
        let through: Vec<usize> = match self.side {
            Side::Right => (0..n - self.k).collect(),
            Side::Left => (self.k..n).collect(),
        };
        plan.outputs.extend(through.iter().map(|&i| Port::new(0, i)));
        for &i in &through {
            match self.side {
                Side::Right => plan.outputs.push(Port::new(0, n + i)),
                Side::Left => {
                    let s = 1 + strips.len();
                    strips.push(strip(true));
                    plan.joins.push((Port::new(0, n + i), Port::new(s, 0)));
                    plan.outputs.push(Port::new(s, 1));
                }
            }
        }
        Ok((strips, plan))
    }
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} k={} depth={}", self.side, self.k, self.depth)
    }
}

fn strands_of(c: &PeriodicComplex) -> Result<usize, Error> {
    (c.start()..c.start() + 8)
        .flat_map(|d| c.level_at(d))
        .map(|s| s.obj.points() / 2)
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty complex".into()))
}

pub fn close_object(obj: &Planar, closure: &Closure) -> Result<Planar, Error> {
    let (strips, plan) = closure.plan(obj.points() / 2)?;
    let mut parts = vec![obj];
    parts.extend(strips.iter());
    glue_objects(&parts, &plan)
}

pub fn close_cob(f: &Cob, closure: &Closure) -> Result<Cob, Error> {
    let (strips, plan) = closure.plan(f.src().points() / 2)?;
    let ids: Vec<Cob> = strips.iter().map(Cob::identity).collect();
    let mut parts = vec![f];
    parts.extend(ids.iter());
    glue_cobs(&parts, &plan)
}

/// Closes strands of every object and differential, keeping the period.
pub fn partial_trace(c: &PeriodicComplex, closure: &Closure) -> Result<PeriodicComplex, Error> {
    let n = strands_of(c)?;
    if closure.k > n {
        return Err(Error::InvalidArgument(format!("cannot close {} of {n} strands", closure.k)));
    }
    c.try_map(|o| close_object(o, closure), |f| close_cob(f, closure))
}

/// `partial_trace` followed by `validate`.
pub fn partial_trace_checked(c: &PeriodicComplex, closure: &Closure) -> Result<(PeriodicComplex, CheckReport), Error> {
    let t = partial_trace(c, closure)?;
    let mut r = validate(&t)?;
    // the identity summand of a projector does not survive the trace
    r.checks.retain(|c| !c.name.starts_with("identity"));
    Ok((t, r))
}

fn mirror_perm(m: usize) -> Vec<usize> {
    let n = m / 2;
    (0..m).map(|p| if p < n { n - 1 - p } else { n + (m - 1 - p) }).collect()
}

fn lower(m: usize) -> Vec<usize> {
    (0..m / 2).collect()
}

/// Left-right mirror image; the ray moves to the other side and is brought back.
pub fn mirror_object(obj: &Planar) -> Planar {
    let m = obj.points();
    obj.permute_points(&mirror_perm(m)).rewrap_crossing(&lower(m))
}

pub fn mirror_cob(f: &Cob) -> Cob {
    let m = f.src().points();
    f.permute_points(&mirror_perm(m)).rewrap_crossing(&lower(m))
}

pub fn mirror_complex(c: &PeriodicComplex) -> PeriodicComplex {
    c.try_map(|o| Ok(mirror_object(o)), |f| Ok(mirror_cob(f))).expect("mirroring never fails")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kom::{diagram_complex, p2};

    fn closed(word: &[usize], n: usize, c: Closure) -> Planar {
        let x = diagram_complex(n, word);
        partial_trace(&x, &c).unwrap().level_at(0)[0].obj.clone()
    }

    #[test]
    fn identity_beside_circles() {
        let a = Closure::config_a(2).unwrap();
        let b = Closure::config_b(2).unwrap();
        assert_eq!(closed(&[], 2, a), Planar::new(vec![1, 0], vec![false, false], 0, 1).unwrap());
        assert_eq!(closed(&[], 2, b), Planar::new(vec![1, 0], vec![true, true], 1, 0).unwrap());
        assert_eq!(closed(&[1], 2, a), closed(&[1], 2, b));
        let a3 = Closure::config_a(3).unwrap();
        let b3 = Closure::config_b(3).unwrap();
        assert_eq!(closed(&[], 3, a3), Planar::new(vec![1, 0], vec![false, false], 0, 2).unwrap());
        assert_eq!(closed(&[], 3, b3), Planar::new(vec![1, 0], vec![true, true], 1, 1).unwrap());
    }

    #[test]
    fn turnback_closes_to_trivial_circle() {
        let c = Closure::new(Side::Right, 1, 0).unwrap();
        let o = closed(&[1], 2, c);
        assert_eq!((o.points(), o.trivial(), o.essential()), (2, 0, 0));
        let o = closed(&[], 2, c);
        assert_eq!((o.points(), o.trivial(), o.essential()), (2, 1, 0));
    }

    #[test]
    fn traced_p2_validates() {
        for c in [Closure::config_a(2).unwrap(), Closure::config_b(2).unwrap()] {
            let (_, r) = partial_trace_checked(&p2(), &c).unwrap();
            assert!(r.checks[0].passed, "{r}");
        }
    }

    #[test]
    fn mirror_swaps_sides() {
        let a = Closure::config_a(2).unwrap();
        let x = closed(&[], 2, a);
        let y = closed(&[], 2, a.mirror());
        assert_eq!(mirror_object(&x), y);
        assert_eq!(mirror_object(&mirror_object(&x)), x);
    }

    #[test]
    fn too_many_strands() {
        assert!(partial_trace(&p2(), &Closure::new(Side::Left, 3, 0).unwrap()).is_err());
        assert!(Closure::new(Side::Left, 1, 2).is_err());
    }
}
