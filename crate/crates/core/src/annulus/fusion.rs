use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::element::{AnnularElement, PhiElement};
use crate::coeff::poly;
use crate::coeff::{qint, LaurentPoly, RatFunc};
use crate::Error;

/// The scalar modulus at level `N`: `q^N [N+1]` stripped of every factor it
/// shares with some `q^(k-1)[k]`, `k ≤ N`. Those `[k]` are denominators of the
/// projectors and stay units, so the quotient ring is `ℚ[q]/(M)`.
pub fn fusion_modulus(level: u32) -> Vec<BigInt> {
    let dense = |p: LaurentPoly| p.shift(-p.low_degree().unwrap()).dense().1.to_vec();
    let mut m = dense(qint(level + 1));
    for k in 2..=level {
        let pk = dense(qint(k));
        loop {
            let g = poly::primitive_part(&poly::gcd(&m, &pk));
            if g.len() <= 1 {
                break;
            }
            m = poly::div_exact(&m, &g).expect("gcd divides");
        }
    }
    let mut m = poly::primitive_part(&m);
    if m.last().is_some_and(Signed::is_negative) {
        m.iter_mut().for_each(|c| *c = -&*c);
    }
    m
}

/// An element of `ℚ[q]/(M)` kept as its remainder (index = degree).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FusionScalar(Vec<BigRational>);

impl FusionScalar {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// The remainder as an exact fraction with integer coefficients.
    pub fn to_ratfunc(&self) -> RatFunc {
        let den = self.0.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let num = self.0.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        RatFunc::new(LaurentPoly::from_dense(0, num), LaurentPoly::constant(den)).expect("nonzero")
    }
}

impl fmt::Display for FusionScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coef = if a.is_one() && e > 0 { String::new() } else { a.to_string() };
            let var = match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{e}"),
            };
            write!(f, "{sep}{coef}{var}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for FusionScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The scalar ring at one level.
#[derive(Clone, Debug)]
pub struct FusionRing {
    level: u32,
    modulus: Vec<BigRational>,
}

impl FusionRing {
    pub fn new(level: u32) -> Result<Self, Error> {
        if level == 0 {
            return Err(Error::InvalidArgument("fusion quotient needs N >= 1".into()));
        }
        Ok(Self { level, modulus: poly::to_rational(&fusion_modulus(level)) })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    fn rem(&self, p: &[BigRational]) -> FusionScalar {
        FusionScalar(poly::rat_rem(p, &self.modulus))
    }

    pub fn zero(&self) -> FusionScalar {
        FusionScalar(Vec::new())
    }

    pub fn reduce(&self, c: &RatFunc) -> Result<FusionScalar, Error> {
        if c.is_zero() {
            return Ok(self.zero());
        }
        let num = c.num();
        let low = num.low_degree().unwrap();
        let p = poly::to_rational(num.shift(-low).dense().1);
        let mut den = poly::to_rational(c.den().dense().1);
        let mut numer = p;
        if low < 0 {
            let mut qpow = vec![BigRational::zero(); (-low) as usize];
            qpow.push(BigRational::one());
            den = poly::rat_mul(&den, &qpow);
        } else {
            let mut qpow = vec![BigRational::zero(); low as usize];
            qpow.push(BigRational::one());
            numer = poly::rat_mul(&numer, &qpow);
        }
        let inv = poly::rat_inverse_mod(&den, &self.modulus)
            .ok_or_else(|| Error::InvalidArgument(format!("{} is not a unit at level {}", c.den(), self.level)))?;
        Ok(self.rem(&poly::rat_mul(&numer, &inv)))
    }

    pub fn add(&self, a: &FusionScalar, b: &FusionScalar) -> FusionScalar {
        let neg: Vec<BigRational> = b.0.iter().map(|c| -c).collect();
        self.rem(&poly::rat_sub(&a.0, &neg))
    }

    pub fn sub(&self, a: &FusionScalar, b: &FusionScalar) -> FusionScalar {
        self.rem(&poly::rat_sub(&a.0, &b.0))
    }

    pub fn mul(&self, a: &FusionScalar, b: &FusionScalar) -> FusionScalar {
        self.rem(&poly::rat_mul(&a.0, &b.0))
    }
}

/// An element of the annular skein modulo `⟨p_N⟩`: coordinates on
/// `φ_0, ..., φ_{N-1}` over `ℚ[q]/(M)`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionElement {
    level: u32,
    coeffs: Vec<FusionScalar>,
}

impl FusionElement {
    pub fn zero(level: u32) -> Self {
        Self { level, coeffs: vec![FusionScalar(Vec::new()); level as usize] }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeff(&self, k: usize) -> &FusionScalar {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FusionScalar::is_zero)
    }

    pub fn add(&self, ring: &FusionRing, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| ring.add(a, b)).collect();
        Self { level: self.level, coeffs }
    }

    pub fn sub(&self, ring: &FusionRing, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| ring.sub(a, b)).collect();
        Self { level: self.level, coeffs }
    }

    pub fn scale(&self, ring: &FusionRing, c: &FusionScalar) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|a| ring.mul(a, c)).collect() }
    }

    /// Multiplication by one essential circle: `Xφ_k = φ_{k+1} + φ_{k-1}`
    /// with `φ_N ≡ 0`.
    pub fn mul_x(&self, ring: &FusionRing) -> Self {
        let n = self.level as usize;
        let mut out = Self::zero(self.level);
        for k in 0..n {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if k + 1 < n {
                out.coeffs[k + 1] = ring.add(&out.coeffs[k + 1], c);
            }
            if k > 0 {
                out.coeffs[k - 1] = ring.add(&out.coeffs[k - 1], c);
            }
        }
        out
    }

    /// A representative in the `φ` basis.
    pub fn lift(&self) -> PhiElement {
        self.coeffs
            .iter()
            .enumerate()
            .fold(PhiElement::zero(), |acc, (k, c)| acc.add(&PhiElement::monomial(k as u32, c.to_ratfunc())))
    }

    fn basis(level: u32, k: usize) -> Self {
        let mut out = Self::zero(level);
        if k < level as usize {
            out.coeffs[k] = FusionScalar(vec![BigRational::one()]);
        }
        out
    }
}

impl fmt::Display for FusionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})phi_{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for FusionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fusion{}[{self}]", self.level)
    }
}

/// Image of `φ_j` in the level-`N` quotient, from the recurrence run inside
/// the quotient (so `φ_N ↦ 0`, `φ_{N+1} ↦ -φ_{N-1}`, ...).
fn phi_image(ring: &FusionRing, j: u32) -> FusionElement {
    let level = ring.level();
    let mut prev = FusionElement::basis(level, 0);
    if j == 0 {
        return prev;
    }
    let mut cur = FusionElement::basis(level, 1);
    for _ in 1..j {
        let next = cur.mul_x(ring).sub(ring, &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Reduces a `φ`-basis element modulo `⟨p_N⟩`.
pub fn fusion_reduce(x: &PhiElement, level: u32) -> Result<FusionElement, Error> {
    let ring = FusionRing::new(level)?;
    let mut out = FusionElement::zero(level);
    for (k, c) in x.terms() {
        let s = ring.reduce(c)?;
        out = out.add(&ring, &phi_image(&ring, k).scale(&ring, &s));
    }
    Ok(out)
}

/// Reduces an `X`-basis element modulo `⟨p_N⟩`.
pub fn fusion_reduce_x(x: &AnnularElement, level: u32) -> Result<FusionElement, Error> {
    fusion_reduce(&x.to_phi(), level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qint_rat;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn moduli() {
        assert_eq!(fusion_modulus(1), big(&[1, 0, 1]));
        assert_eq!(fusion_modulus(2), big(&[1, 0, 1, 0, 1]));
        // q^3[4] = (q^2+1)(q^4+1); the [2] factor stays a unit
        assert_eq!(fusion_modulus(3), big(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn spec_examples() {
        assert!(fusion_reduce(&PhiElement::monomial(2, RatFunc::one()), 2).unwrap().is_zero());
        let r = fusion_reduce(&PhiElement::monomial(3, RatFunc::one()), 2).unwrap();
        let expect = fusion_reduce(&PhiElement::monomial(1, RatFunc::from_int(-1)), 2).unwrap();
        assert_eq!(r, expect);
        assert!(fusion_reduce(&PhiElement::monomial(0, qint_rat(3)), 2).unwrap().is_zero());
    }

    #[test]
    fn inverse_scalars_reduce() {
        let ring = FusionRing::new(3).unwrap();
        let half = ring.reduce(&qint_rat(2).inv().unwrap()).unwrap();
        let two = ring.reduce(&qint_rat(2)).unwrap();
        assert_eq!(ring.mul(&half, &two), FusionScalar(vec![BigRational::one()]));
        assert_eq!(ring.reduce(&qint_rat(3)).unwrap(), FusionScalar(vec![BigRational::one()]));
    }
}
