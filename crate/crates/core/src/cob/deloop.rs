use super::glue::{glue_objects, GluePlan, Port};
use super::morphism::{Cob, Component, CycleMap};
use super::planar::Planar;
use crate::coeff::{qint, LaurentPoly};
use crate::report::{Check, CheckReport};
use crate::tl::Matching;
use crate::Error;

/// `obj → obj` minus its last trivial circle, capping that circle off with a
/// disk (dotted or not) and carrying everything else across identically.
pub fn cap_last(obj: &Planar, dotted: bool) -> Result<Cob, Error> {
    let t = obj.trivial();
    let small = obj.without_trivial(1)?;
    let cm = CycleMap::new(obj, &small)?;
    let mut comps: Vec<Component> = (0..cm.arc_cycles()).map(|c| Component::planar(vec![c], 0)).collect();
    for j in 0..t - 1 {
        comps.push(Component::planar(vec![cm.src_trivial(j), cm.tgt_trivial(j)], 0));
    }
    comps.push(Component::planar(vec![cm.src_trivial(t - 1)], dotted as u32));
    for j in 0..obj.essential() {
        comps.push(Component::planar(vec![cm.src_essential(j), cm.tgt_essential(j)], 0));
    }
    Cob::from_components(obj.clone(), small, &comps)
}

/// `obj → obj` with one more trivial circle (placed last), born from a cup.
pub fn cup_last(obj: &Planar, dotted: bool) -> Result<Cob, Error> {
    let big = obj.with_circles(1, 0);
    let t = big.trivial();
    let cm = CycleMap::new(obj, &big)?;
    let mut comps: Vec<Component> = (0..cm.arc_cycles()).map(|c| Component::planar(vec![c], 0)).collect();
    for j in 0..t - 1 {
        comps.push(Component::planar(vec![cm.src_trivial(j), cm.tgt_trivial(j)], 0));
    }
    comps.push(Component::planar(vec![cm.tgt_trivial(t - 1)], dotted as u32));
    for j in 0..obj.essential() {
        comps.push(Component::planar(vec![cm.src_essential(j), cm.tgt_essential(j)], 0));
    }
    Cob::from_components(obj.clone(), big, &comps)
}

/// The delooping isomorphism for the last trivial circle of an object:
/// `obj ≅ q⁻¹ obj' ⊕ q obj'`.
#[derive(Clone, Debug)]
pub struct Deloop {
    pub object: Planar,
    /// `(shift, object)` of the two summands, `q⁻¹` first.
    pub summands: [(i32, Planar); 2],
    /// Components of `obj → summand` (cap, dotted cap).
    pub forward: [Cob; 2],
    /// Components of `summand → obj` (dotted cup, cup).
    pub backward: [Cob; 2],
}

pub fn deloop(obj: &Planar) -> Result<Deloop, Error> {
    if obj.trivial() == 0 {
        return Err(Error::InvalidArgument(format!("{obj} has no trivial circle to deloop")));
    }
    let small = obj.without_trivial(1)?;
    Ok(Deloop {
        object: obj.clone(),
        summands: [(-1, small.clone()), (1, small.clone())],
        forward: [cap_last(obj, false)?, cap_last(obj, true)?],
        backward: [cup_last(&small, true)?, cup_last(&small, false)?],
    })
}

impl Deloop {
    /// `φ∘ψ = 1` (a 2×2 identity) and `ψ∘φ = 1` on the circle object.
    pub fn check(&self) -> Result<CheckReport, Error> {
        let mut report = CheckReport::new(format!("deloop {}", self.object));
        for i in 0..2 {
            for j in 0..2 {
                let x = self.forward[i].after(&self.backward[j])?;
                let ok = if i == j { x.identity_sign() == Some(1) } else { x.is_zero() };
                report.push(Check::from_bool(format!("(phi psi)[{i},{j}]"), ok, x.to_string()));
            }
        }
        let round = self.backward[0].after(&self.forward[0])?.add(&self.backward[1].after(&self.forward[1])?)?;
        report.push(Check::from_bool("psi phi = 1", round.identity_sign() == Some(1), round.to_string()));
        Ok(report)
    }
}

/// Removes every trivial circle, giving the graded class `Σ q^s [obj']`.
pub fn deloop_class(obj: &Planar) -> (LaurentPoly, Planar) {
    let t = obj.trivial() as u32;
    (qint(2).pow(t), obj.without_trivial(obj.trivial()).expect("enough circles"))
}

/// The Grothendieck-group check on `n` strands: stacking two matchings gives
/// an object whose delooped class is `[2]^loops` times the product matching,
/// and the delooping maps are inverse isomorphisms along the way.
pub fn k0_check(n: usize) -> Result<CheckReport, Error> {
    if n > 4 {
        return Err(Error::InvalidArgument(format!("k0_check is limited to n <= 4, got {n}")));
    }
    let mut report = CheckReport::new(format!("K0 n={n}"));
    let empty = Planar::empty();
    let (cls, _) = deloop_class(&empty);
    report.push(Check::from_bool("class of the empty object is 1", cls == LaurentPoly::one(), cls.to_string()));
    let circle = Planar::circles(1, 0);
    let (cls, _) = deloop_class(&circle);
    report.push(Check::from_bool("class of a circle is [2]", cls == qint(2), cls.to_string()));
    let mut mism = Vec::new();
    let mut iso_fail = Vec::new();
    let basis = Matching::enumerate(n);
    for a in &basis {
        for b in &basis {
            let stacked = glue_objects(&[&Planar::from_matching(a), &Planar::from_matching(b)], &stack_plan(n))?;
            let (m, loops) = a.compose(b)?;
            let (cls, rest) = deloop_class(&stacked);
            if cls != qint(2).pow(loops as u32) || rest != Planar::from_matching(&m) {
                mism.push(format!("{a}·{b}"));
            }
            let mut cur = stacked;
            while cur.trivial() > 0 {
                let d = deloop(&cur)?;
                if !d.check()?.all_passed() {
                    iso_fail.push(format!("{a}·{b}"));
                    break;
                }
                cur = d.summands[0].1.clone();
            }
        }
    }
    let pairs = basis.len() * basis.len();
    report.push(Check::from_bool(
        "delooped class of a·b is [2]^loops (ab)",
        mism.is_empty(),
        if mism.is_empty() { format!("{pairs} pairs") } else { mism.join(", ") },
    ));
    report.push(Check::from_bool(
        "delooping maps are inverse",
        iso_fail.is_empty(),
        if iso_fail.is_empty() { format!("{pairs} pairs") } else { iso_fail.join(", ") },
    ));
    Ok(report)
}

/// Plan for stacking tangle `0` on top of tangle `1`, both on `n` strands.
pub fn stack_plan(n: usize) -> GluePlan {
    GluePlan {
        joins: (0..n).map(|i| (Port::new(0, i), Port::new(1, n + i))).collect(),
        outputs: (0..n).map(|i| Port::new(1, i)).chain((0..n).map(|i| Port::new(0, n + i))).collect(),
    }
}

/// Plan for placing tangle `0` (on `a` strands) left of tangle `1` (on `b`).
pub fn tensor_plan(a: usize, b: usize) -> GluePlan {
    let bottom = (0..a).map(|i| Port::new(0, i)).chain((0..b).map(|i| Port::new(1, i)));
    let top = (0..a).map(|i| Port::new(0, a + i)).chain((0..b).map(|i| Port::new(1, b + i)));
    GluePlan { joins: Vec::new(), outputs: bottom.chain(top).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deloop_of_circle_is_inverse() {
        let d = deloop(&Planar::circles(1, 0)).unwrap();
        let r = d.check().unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn deloop_with_arcs_and_annular_circles() {
        let arc = Planar::new(vec![1, 0], vec![true, true], 2, 1).unwrap();
        assert!(deloop(&arc).unwrap().check().unwrap().all_passed());
    }

    #[test]
    fn no_circle_is_an_error() {
        assert!(deloop(&Planar::empty()).is_err());
    }

    #[test]
    fn k0_small() {
        for n in 0..=3 {
            let r = k0_check(n).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }
}
