use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::{cyclotomic, is_prime};
use crate::Error;

/// An element of `K^p = ℤ[q, q⁻¹] / (φ_p(q²))` for an odd prime `p`.
///
/// The representative is the remainder of degree below `2(p-1)` after
/// folding exponents with `q^(2p) ≡ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycloElem {
    p: u32,
    rep: LaurentPoly,
}

impl CycloElem {
    pub fn new(p: u32, x: &LaurentPoly) -> Result<Self, Error> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("K^p needs an odd prime, got {p}")));
        }
        Ok(Self { p, rep: reduce(p, x) })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rep(&self) -> &LaurentPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed cyclotomic rings");
        Self { p: self.p, rep: reduce(self.p, &(&self.rep * &other.rep)) }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed cyclotomic rings");
        Self { p: self.p, rep: reduce(self.p, &(&self.rep + &other.rep)) }
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] in K^{}", self.rep, self.p)
    }
}

/// Canonical remainder of `x` modulo `φ_p(q²)`.
pub(crate) fn reduce(p: u32, x: &LaurentPoly) -> LaurentPoly {
    let period = 2 * p as i32;
    let deg = 2 * (p as i32 - 1);
    // (q² - 1)·φ_p(q²) = q^(2p) - 1, so exponents fold modulo 2p
    let mut dense = vec![BigInt::zero(); period as usize];
    for (e, c) in x.terms() {
        dense[e.rem_euclid(period) as usize] += c;
    }
    // φ_p(q²) is monic of degree 2(p-1) with only even exponents
    let modulus = cyclotomic(p).expect("prime").substitute_power(2);
    for top in (deg..period).rev() {
        let c = std::mem::take(&mut dense[top as usize]);
        if c.is_zero() {
            continue;
        }
        let shift = top - deg;
        for (e, m) in modulus.terms() {
            if e + shift != top {
                dense[(e + shift) as usize] -= &c * m;
            }
        }
    }
    dense.truncate(deg as usize);
    LaurentPoly::from_dense(0, dense)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qint;

    #[test]
    fn modulus_reduces_to_zero() {
        let m = cyclotomic(5).unwrap().substitute_power(2);
        assert!(CycloElem::new(5, &m).unwrap().is_zero());
        assert!(CycloElem::new(5, &m.shift(-7)).unwrap().is_zero());
    }

    #[test]
    fn q_is_invertible() {
        let q = CycloElem::new(3, &LaurentPoly::q()).unwrap();
        let qinv = CycloElem::new(3, &LaurentPoly::monomial(1, -1)).unwrap();
        assert_eq!(q.mul(&qinv).rep(), &LaurentPoly::one());
    }

    #[test]
    fn quantum_p_vanishes() {
        for p in [3, 5, 7] {
            assert!(CycloElem::new(p, &qint(p)).unwrap().is_zero());
        }
    }

    #[test]
    fn rejects_two_and_composites() {
        assert!(CycloElem::new(2, &LaurentPoly::one()).is_err());
        assert!(CycloElem::new(9, &LaurentPoly::one()).is_err());
    }
}
