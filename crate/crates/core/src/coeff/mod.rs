//! Exact coefficient rings: Laurent polynomials, rational functions,
//! truncated power series and the cyclotomic quotients `K^p`.

mod cyclo;
mod laurent;
pub(crate) mod poly;
pub(crate) mod small;
mod ratfunc;
mod series;

pub use cyclo::CycloElem;
pub use laurent::LaurentPoly;
pub use ratfunc::{lcm_denominator, numerator_over, RatFunc};
pub use series::{ratfunc_to_series, s_series, TruncSeries};

use crate::report::{Check, CheckReport};
use crate::Error;

/// The quantum integer `[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)`.
pub fn qint(n: u32) -> LaurentPoly {
    let n = n as i32;
    LaurentPoly::from_terms((0..n).map(|j| (n - 1 - 2 * j, 1)))
}

/// `[n]` as a rational function.
pub fn qint_rat(n: u32) -> RatFunc {
    RatFunc::from_poly(qint(n))
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The cyclotomic polynomial `φ_p(q) = q^(p-1) + ... + q + 1` of a prime `p`.
pub fn cyclotomic(p: u32) -> Result<LaurentPoly, Error> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(LaurentPoly::from_terms((0..p as i32).map(|e| (e, 1))))
}

fn identity_check(name: &str, lhs: &LaurentPoly, rhs: &LaurentPoly) -> Check {
    let diff = lhs - rhs;
    if diff.is_zero() {
        Check::pass(name, format!("{lhs}"))
    } else {
        Check::fail(name, format!("difference {diff}"))
    }
}

/// Checks the root-of-unity bridge identities for the prime `p`:
///
/// * `q^(p-1)·[p] = φ_p(q²)`
/// * `φ_p(q²) = φ_p(q)·φ_p(-q)` (odd `p` only; for `p = 2` the product is `-φ_2(q²)`)
/// * multiples of `[p]` vanish in `K^p`
pub fn verify_root_bridge(p: u32) -> Result<CheckReport, Error> {
    let phi = cyclotomic(p)?;
    let phi_q2 = phi.substitute_power(2);
    let mut report = CheckReport::new(format!("ring-bridge p={p}"));
    report.push(identity_check("q^(p-1)[p] = phi_p(q^2)", &qint(p).shift(p as i32 - 1), &phi_q2));
    if p == 2 {
        report.push(Check::skipped(
            "phi_p(q^2) = phi_p(q) phi_p(-q)",
            "p = 2: phi_2(q) phi_2(-q) = 1 - q^2 = -phi_2(q^2)",
        ));
        return Ok(report);
    }
    report.push(identity_check("phi_p(q^2) = phi_p(q) phi_p(-q)", &phi_q2, &(&phi * &phi.negate_var())));
    let qp = qint(p);
    let samples = [
        LaurentPoly::one(),
        LaurentPoly::from_terms([(1, 1), (0, 7)]),
        LaurentPoly::from_terms([(-3, 2), (2, -5), (4, 1)]),
        qint(p + 1),
    ];
    let mut worst = None;
    for g in &samples {
        let f = &qp * g;
        let img = CycloElem::new(p, &f)?;
        if !img.is_zero() && worst.is_none() {
            worst = Some(format!("[p]·({g}) maps to {}", img.rep()));
        }
    }
    report.push(match worst {
        None => Check::pass("<[p]> maps to 0 in K^p", format!("{} samples", samples.len())),
        Some(w) => Check::fail("<[p]> maps to 0 in K^p", w),
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(0), LaurentPoly::zero());
        assert_eq!(qint(1), LaurentPoly::one());
        assert_eq!(qint(2), LaurentPoly::from_terms([(1, 1), (-1, 1)]));
        assert_eq!(qint(3), LaurentPoly::from_terms([(2, 1), (0, 1), (-2, 1)]));
    }

    #[test]
    fn cyclotomic_small_primes() {
        assert_eq!(cyclotomic(2).unwrap().to_string(), "q + 1");
        assert_eq!(cyclotomic(3).unwrap().to_string(), "q^2 + q + 1");
        assert_eq!(cyclotomic(5).unwrap().to_string(), "q^4 + q^3 + q^2 + q + 1");
        assert!(cyclotomic(4).is_err());
    }

    #[test]
    fn bridge_for_three_and_five() {
        for (p, expect) in [(3, "q^4 + q^2 + 1"), (5, "q^8 + q^6 + q^4 + q^2 + 1")] {
            let r = verify_root_bridge(p).unwrap();
            assert!(r.all_passed(), "{r:?}");
            assert_eq!(r.checks[0].witness, expect);
        }
    }

    #[test]
    fn bridge_for_two_skips_sign_identity() {
        let r = verify_root_bridge(2).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.checks.len(), 2);
        assert!(r.checks[1].skipped);
    }

    #[test]
    fn ideal_sample_times_q_plus_7() {
        let f = &qint(3) * &LaurentPoly::from_terms([(1, 1), (0, 7)]);
        assert!(CycloElem::new(3, &f).unwrap().is_zero());
    }
}
