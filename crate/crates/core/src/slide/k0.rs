//! The `Ω` objects and the decategorified shadow of the slide certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::closure::{close_object, Closure};
use crate::annulus::{fusion_reduce_x, AnnularElement};
use crate::cob::{glue_objects, Planar};
use crate::coeff::{qint_rat, LaurentPoly, RatFunc};
use crate::kom::{markov_plan, strip, Summand};
use crate::report::{Check, CheckReport};
use crate::tl::{jones_wenzl, Matching};
use crate::Error;

fn check_level(level: usize) -> Result<(), Error> {
    if (2..=3).contains(&level) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("Ω objects exist for N = 2, 3, got {level}")))
    }
}

/// `(Ω₊, Ω₋)`: at `N = 2` one essential circle and one trivial circle, at
/// `N = 3` two essential circles and one essential beside one trivial.
pub fn omega_objects(level: usize) -> Result<(Summand, Summand), Error> {
    check_level(level)?;
    let e = level - 1;
    Ok((Summand::new(Planar::circles(0, e), 0), Summand::new(Planar::circles(1, e - 1), 0)))
}

/// `[2]^t X^e q^s` for a closed object with `t` trivial and `e` essential circles.
pub fn closed_class(s: &Summand) -> Result<AnnularElement, Error> {
    if s.obj.points() != 0 {
        return Err(Error::InvalidArgument(format!("{} has boundary points", s.obj)));
    }
    let c = &qint_rat(2).pow(s.obj.trivial() as u32) * &RatFunc::from_poly(LaurentPoly::monomial(1, s.shift));
    Ok(AnnularElement::monomial(s.obj.essential() as u32, c))
}

/// `K₀(Ω₊ ⊕ Ω₋)`.
pub fn omega_class(level: usize) -> Result<AnnularElement, Error> {
    let (p, m) = omega_objects(level)?;
    Ok(closed_class(&p)?.add(&closed_class(&m)?))
}

/// Closes the remaining through strand of a two-point annular object by an
/// arc around the core.
pub fn close_through(obj: &Planar) -> Result<Planar, Error> {
    if obj.points() != 2 {
        return Err(Error::InvalidArgument(format!("{obj} does not have one through strand")));
    }
    let s = strip(true);
    glue_objects(&[obj, &s], &markov_plan(1))
}

/// Class of a bounded complex of two-point annular objects, after closing
/// the through strand.
pub fn complex_class(c: &crate::kom::PeriodicComplex) -> Result<AnnularElement, Error> {
    let end = c.end().ok_or_else(|| Error::InvalidArgument("class of an unbounded complex".into()))?;
    let mut out = AnnularElement::zero();
    for n in c.start()..=end {
        for s in c.level_at(n) {
            let x = closed_class(&Summand::new(close_through(&s.obj)?, s.shift))?;
            out = if n % 2 == 0 { out.add(&x) } else { out.sub(&x) };
        }
    }
    Ok(out)
}

/// The class of the traced projector: `p_N` closed by `closure`, then its
/// through strand closed around the core.
pub fn traced_projector_class(level: usize, closure: &Closure) -> Result<AnnularElement, Error> {
    let p = jones_wenzl(level)?;
    let mut out = AnnularElement::zero();
    for (m, c) in p.terms() {
        let obj = close_through(&close_object(&Planar::from_matching(m), closure)?)?;
        out = out.add(&closed_class(&Summand::new(obj, 0))?.scale(c));
    }
    Ok(out)
}

/// Decategorified certificate: with `B₁, B₂` the strand beside `Ω₊` and
/// beside `Ω₋`, the cones give `[B₁] - [B₂] = [Q₁] - [Q₂]` exactly, both
/// traced projectors vanish in the level-`N` fusion quotient, and so
/// `[B₁] ≡ [B₂]` there.
pub fn k0_shadow(level: usize) -> Result<CheckReport, Error> {
    check_level(level)?;
    let (ca, cb) = (Closure::config_a(level)?, Closure::config_b(level)?);
    let id = Planar::from_matching(&Matching::identity(level));
    let b1 = closed_class(&Summand::new(close_through(&close_object(&id, &ca)?)?, 0))?;
    let b2 = closed_class(&Summand::new(close_through(&close_object(&id, &cb)?)?, 0))?;
    let (qa, qb) = (traced_projector_class(level, &ca)?, traced_projector_class(level, &cb)?);
    let mut r = CheckReport::new(format!("K0 shadow N={level}"));
    let lhs = b1.sub(&b2);
    let rhs = qa.sub(&qb);
    r.push(Check::from_bool("[B1] - [B2] = [Q1] - [Q2]", lhs == rhs, format!("{lhs} vs {rhs}")));
    let l = level as u32;
    for (name, x) in [("[Q1] = 0 in the fusion quotient", &qa), ("[Q2] = 0 in the fusion quotient", &qb)] {
        let red = fusion_reduce_x(x, l)?;
        r.push(Check::from_bool(name, red.is_zero(), format!("{x}")));
    }
    let d = fusion_reduce_x(&lhs, l)?;
    r.push(Check::from_bool("[B1] = [B2] in the fusion quotient", d.is_zero(), format!("[B1] = {b1}, [B2] = {b2}")));
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OmegaLabel {
    Plus,
    Minus,
}

impl fmt::Display for OmegaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaLabel::Plus => "Ω+",
            OmegaLabel::Minus => "Ω-",
        })
    }
}

/// Labels characteristic components by `Ω₋` and the rest by `Ω₊`. A slide
/// over a characteristic component exchanges the two cosets, which is the
/// content of the slide certificates.
pub fn spin_labeling_demo(level: usize, characteristic: &[bool]) -> Result<Vec<OmegaLabel>, Error> {
    check_level(level)?;
    Ok(characteristic.iter().map(|&c| if c { OmegaLabel::Minus } else { OmegaLabel::Plus }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_pair_n2() {
        let w = omega_class(2).unwrap();
        assert_eq!(w, AnnularElement::x().add(&AnnularElement::scalar(qint_rat(2))));
    }

    #[test]
    fn shadow_n2() {
        let r = k0_shadow(2).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn labels() {
        use OmegaLabel::*;
        assert_eq!(spin_labeling_demo(2, &[true, false]).unwrap(), vec![Minus, Plus]);
        assert!(spin_labeling_demo(3, &[]).unwrap().is_empty());
        assert!(spin_labeling_demo(4, &[true]).is_err());
    }
}
