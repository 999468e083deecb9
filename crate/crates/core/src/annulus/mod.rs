//! The skein module of the annulus, the magic elements `ω_N` and their
//! images in the quotient by the `N`-th projector.

mod element;
mod fusion;

pub use element::{annular_closure, omega, phi, spin_split, AnnularElement, PhiElement};
pub use fusion::{fusion_modulus, fusion_reduce, fusion_reduce_x, FusionElement, FusionRing, FusionScalar};

use crate::coeff::{qint_rat, RatFunc};
use crate::report::{Check, CheckReport};
use crate::Error;

/// Largest level accepted by [`eigen_check`].
pub const MAX_EIGEN_LEVEL: u32 = 16;

fn equal_check(name: &str, a: &FusionElement, b: &FusionElement) -> Check {
    Check::from_bool(name, a == b, format!("lhs {a}; rhs {b}"))
}

/// The handle-slide identities at level 2 and 3.
///
/// Level 2 uses `ω = X + [2]`; level 3 uses `ω = X² + [2]X`.
pub fn verify_slide_identities(level: u32) -> Result<CheckReport, Error> {
    let x = AnnularElement::x();
    let two = qint_rat(2);
    let mut report = CheckReport::new(format!("slide identities N={level}"));
    match level {
        2 => {
            let w = x.add(&AnnularElement::scalar(two.clone()));
            let xw = fusion_reduce_x(&x.mul(&w), 2)?;
            let w2 = fusion_reduce(&omega(2), 2)?;
            let tw = fusion_reduce_x(&w.scale(&two), 2)?;
            report.push(equal_check("X·ω ≡ ω_2", &xw, &w2));
            report.push(equal_check("ω_2 ≡ [2]·ω", &w2, &tw));
        }
        3 => {
            let w3 = omega(3).to_x();
            let xw3 = x.mul(&w3);
            let three_plus_one = &qint_rat(3) + &RatFunc::one();
            let expect = AnnularElement::monomial(1, three_plus_one.clone())
                .add(&AnnularElement::monomial(2, two.clone()));
            // uses X·φ_2 = X once p_3 = 0, so the comparison lives in the quotient
            let lhs = fusion_reduce_x(&xw3, 3)?;
            let rhs = fusion_reduce_x(&expect, 3)?;
            report.push(equal_check("X·ω_3 ≡ ([3]+1)X + [2]X²", &lhs, &rhs));
            report.push(Check::from_bool(
                "[3]+1 = [2]²",
                three_plus_one == two.pow(2),
                format!("{three_plus_one}"),
            ));
            let w = x.mul(&x).add(&x.scale(&two));
            let tw = fusion_reduce_x(&w.scale(&two), 3)?;
            report.push(equal_check("X·ω_3 ≡ [2]·ω", &lhs, &tw));
            let tw3 = fusion_reduce_x(&w3.scale(&two), 3)?;
            report.push(equal_check("[2]·ω_3 ≡ X·ω_3", &tw3, &lhs));
            let a = fusion_reduce(&omega(3), 3)?;
            let b = fusion_reduce_x(&w, 3)?;
            report.push(equal_check("ω_3 ≡ X² + [2]X", &a, &b));
        }
        _ => return Err(Error::InvalidArgument(format!("slide identities are stated for N = 2, 3, got {level}"))),
    }
    Ok(report)
}

/// Checks `X·ω_N ≡ [2]·ω_N` in the level-`N` quotient.
pub fn eigen_check(level: u32) -> Result<CheckReport, Error> {
    if level == 0 || level > MAX_EIGEN_LEVEL {
        return Err(Error::InvalidArgument(format!("level {level} outside 1..={MAX_EIGEN_LEVEL}")));
    }
    let ring = FusionRing::new(level)?;
    let w = fusion_reduce(&omega(level), level)?;
    let two = ring.reduce(&qint_rat(2))?;
    let lhs = w.mul_x(&ring);
    let rhs = w.scale(&ring, &two);
    let diff = lhs.sub(&ring, &rhs);
    let mut report = CheckReport::new(format!("eigen check N={level}"));
    report.push(Check::from_bool(format!("X·ω_{level} ≡ [2]·ω_{level}"), diff.is_zero(), format!("difference {diff}")));
    Ok(report)
}
