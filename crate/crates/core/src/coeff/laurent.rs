use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An element of ℤ[q, q⁻¹].
///
/// Stored densely from the lowest nonzero exponent; both ends of `coeffs`
/// are nonzero, and the zero polynomial has no coefficients at all, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        Self::from_dense(exp, vec![c.into()])
    }

    /// Builds a polynomial from coefficients of `q^low, q^(low+1), ...`.
    pub fn from_dense(low: i32, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc += &Self::monomial(c, e);
        }
        acc
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn low_degree(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn dense(&self) -> (i32, &[BigInt]) {
        (self.low, &self.coeffs)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Substitutes `q ↦ -q`.
    pub fn negate_var(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.low + i as i32).rem_euclid(2) == 1 { -c } else { c.clone() })
            .collect();
        Self { low: self.low, coeffs }
    }

    /// Substitutes `q ↦ q^k` for `k ≥ 1`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k >= 1, "substitute_power needs a positive exponent");
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// gcd of the coefficients (nonnegative), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Divides every coefficient exactly by `c`. Panics if `c` does not divide.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        use num_integer::Integer;
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| {
                let (qt, r) = x.div_rem(c);
                assert!(r.is_zero(), "inexact scalar division");
                qt
            })
            .collect();
        Self { low: self.low, coeffs }
    }

    /// Evaluation at an integer point `q = x` with `x ≠ 0`, returned as an
    /// exact rational.
    pub fn eval_rational(&self, x: &num_rational::BigRational) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for (e, c) in self.terms() {
            acc += num_rational::BigRational::from_integer(c.clone()) * num_traits::pow::Pow::pow(x, e);
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i32, String)> = self.terms().map(|(e, c)| (e, c.to_string())).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i32, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, c) in pairs {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

fn add_into(acc: &mut LaurentPoly, rhs: &LaurentPoly, negate: bool) {
    if rhs.is_zero() {
        return;
    }
    if acc.is_zero() {
        *acc = if negate { -rhs } else { rhs.clone() };
        return;
    }
    let lo = acc.low.min(rhs.low);
    let hi = acc.high_degree().unwrap().max(rhs.high_degree().unwrap());
    if lo < acc.low {
        let pad = (acc.low - lo) as usize;
        let mut v = vec![BigInt::zero(); pad];
        v.append(&mut acc.coeffs);
        acc.coeffs = v;
        acc.low = lo;
    }
    let len = (hi - lo + 1) as usize;
    if acc.coeffs.len() < len {
        acc.coeffs.resize(len, BigInt::zero());
    }
    let off = (rhs.low - lo) as usize;
    for (i, c) in rhs.coeffs.iter().enumerate() {
        if negate {
            acc.coeffs[off + i] -= c;
        } else {
            acc.coeffs[off + i] += c;
        }
    }
    acc.trim();
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        add_into(self, rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        add_into(self, rhs, true);
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_orders_from_top() {
        let p = LaurentPoly::from_terms([(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(p.to_string(), "q^2 + 1 + q^-2");
        let p = LaurentPoly::from_terms([(3, -1), (1, 2)]);
        assert_eq!(p.to_string(), "-q^3 + 2q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_trims() {
        let a = LaurentPoly::from_terms([(5, 1), (-3, 2)]);
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d, LaurentPoly::zero());
        let b = &a - &LaurentPoly::monomial(1, 5);
        assert_eq!(b.low_degree(), Some(-3));
        assert_eq!(b.high_degree(), Some(-3));
    }

    #[test]
    fn negate_var_flips_odd_terms() {
        let p = LaurentPoly::from_terms([(1, 1), (0, 1), (-1, 3)]);
        assert_eq!(p.negate_var(), LaurentPoly::from_terms([(1, -1), (0, 1), (-1, -3)]));
    }

    #[test]
    fn serde_round_trip_sorted_pairs() {
        let p = LaurentPoly::from_terms([(2, 7), (-4, -1)]);
        let s = serde_json_like(&p);
        assert_eq!(s, vec![(-4, "-1".to_string()), (2, "7".to_string())]);
    }

    fn serde_json_like(p: &LaurentPoly) -> Vec<(i32, String)> {
        p.terms().map(|(e, c)| (e, c.to_string())).collect()
    }
}
