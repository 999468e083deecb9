use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::poly;
use crate::Error;

/// An element of the fraction field ℚ(q), kept as a reduced quotient of
/// Laurent polynomials.
///
/// Canonical form: `den` is an honest polynomial with nonzero constant term
/// and positive leading coefficient, and `num`, `den` share no polynomial
/// factor or integer content. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self::normalize(num, den))
    }

    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(p)` when the value is a Laurent polynomial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // move powers of q from den into num
        let dlow = den.low_degree().unwrap();
        let num = num.shift(-dlow);
        let den = den.shift(-dlow);
        let nlow = num.low_degree().unwrap();
        let (_, n_dense) = num.dense();
        let (_, d_dense) = den.dense();
        let g = poly::primitive_part(&poly::gcd(n_dense, d_dense));
        let (mut n_vec, mut d_vec) = if g.len() > 1 {
            (
                poly::div_exact(n_dense, &g).expect("gcd divides numerator"),
                poly::div_exact(d_dense, &g).expect("gcd divides denominator"),
            )
        } else {
            (n_dense.to_vec(), d_dense.to_vec())
        };
        let c = poly::content(&n_vec).gcd(&poly::content(&d_vec));
        if !c.is_one() {
            n_vec.iter_mut().for_each(|x| *x = &*x / &c);
            d_vec.iter_mut().for_each(|x| *x = &*x / &c);
        }
        if d_vec.last().is_some_and(Signed::is_negative) {
            n_vec.iter_mut().for_each(|x| *x = -&*x);
            d_vec.iter_mut().for_each(|x| *x = -&*x);
        }
        Self { num: LaurentPoly::from_dense(nlow, n_vec), den: LaurentPoly::from_dense(0, d_vec) }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        Self::normalize(self.num.pow(n), self.den.pow(n))
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::normalize(&self.num * p, self.den.clone())
    }

    /// Scales by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalize(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv().expect("division by zero RatFunc")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

/// Common denominator of a family: the lcm of their (polynomial) denominators.
pub fn lcm_denominator<'a>(xs: impl IntoIterator<Item = &'a RatFunc>) -> LaurentPoly {
    let mut acc: Vec<BigInt> = vec![BigInt::one()];
    for x in xs {
        let (_, d) = x.den.dense();
        if d.len() == 1 && d[0].is_one() {
            continue;
        }
        let g = poly::gcd(&acc, d);
        let part = poly::div_exact(d, &g).expect("gcd divides");
        acc = (&LaurentPoly::from_dense(0, acc) * &LaurentPoly::from_dense(0, part)).dense().1.to_vec();
    }
    LaurentPoly::from_dense(0, acc)
}

/// `x · d` as a Laurent polynomial, when `d` is a multiple of `x`'s denominator.
pub fn numerator_over(x: &RatFunc, d: &LaurentPoly) -> LaurentPoly {
    let (_, dd) = d.dense();
    let (_, xd) = x.den.dense();
    let factor = poly::div_exact(dd, xd).expect("denominator divides the common denominator");
    &x.num * &LaurentPoly::from_dense(0, factor)
}
