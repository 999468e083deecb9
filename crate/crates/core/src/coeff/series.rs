use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::ratfunc::RatFunc;
use crate::Error;

/// A Laurent series in `q`, known exactly below `cutoff`.
///
/// Terms are stored densely for exponents in `[low, cutoff)`. Arithmetic
/// tracks precision honestly: a product is only known below
/// `min(a.cutoff + b.low, b.cutoff + a.low)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncSeries {
    low: i32,
    cutoff: i32,
    terms: Vec<BigInt>,
}

impl TruncSeries {
    pub fn zero(cutoff: i32) -> Self {
        Self { low: cutoff, cutoff, terms: Vec::new() }
    }

    pub fn from_dense(low: i32, cutoff: i32, mut terms: Vec<BigInt>) -> Self {
        let keep = (cutoff - low).max(0) as usize;
        terms.truncate(keep);
        let mut s = Self { low, cutoff, terms };
        s.trim();
        s
    }

    /// The Laurent polynomial `p` viewed as a series known below `cutoff`.
    pub fn from_laurent(p: &LaurentPoly, cutoff: i32) -> Self {
        match p.low_degree() {
            None => Self::zero(cutoff),
            Some(lo) => {
                let terms = (lo..cutoff).map(|e| p.coeff(e)).collect();
                Self::from_dense(lo, cutoff, terms)
            }
        }
    }

    fn trim(&mut self) {
        let lead = self.terms.iter().take_while(|c| c.is_zero()).count();
        self.terms.drain(..lead);
        self.low += lead as i32;
        while self.terms.last().is_some_and(Zero::is_zero) {
            self.terms.pop();
        }
        if self.terms.is_empty() {
            self.low = self.cutoff;
        }
    }

    pub fn cutoff(&self) -> i32 {
        self.cutoff
    }

    /// Lowest exponent with a nonzero coefficient, `None` if zero to precision.
    pub fn low(&self) -> Option<i32> {
        (!self.terms.is_empty()).then_some(self.low)
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        assert!(e < self.cutoff, "coefficient q^{e} beyond precision {}", self.cutoff);
        let i = e - self.low;
        if i < 0 || i as usize >= self.terms.len() {
            BigInt::zero()
        } else {
            self.terms[i as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops precision to `cutoff` (no-op if already lower).
    pub fn truncate(&self, cutoff: i32) -> Self {
        if cutoff >= self.cutoff {
            return self.clone();
        }
        Self::from_dense(self.low, cutoff, self.terms.clone())
    }

    /// The known part as a Laurent polynomial.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_dense(self.low, self.terms.clone())
    }

    /// Agreement with the exact polynomial `p` below this series' cutoff.
    pub fn agrees_with(&self, p: &LaurentPoly) -> bool {
        *self == Self::from_laurent(p, self.cutoff)
    }

    pub fn shift(&self, k: i32) -> Self {
        Self::from_dense(self.low + k, self.cutoff + k, self.terms.clone())
    }

    /// Exact inverse when the lowest coefficient is `±1`.
    pub fn inverse(&self) -> Result<Self, Error> {
        let lo = self.low().ok_or_else(|| Error::InvalidArgument("inverse of zero series".into()))?;
        let lead = &self.terms[0];
        if !lead.abs().is_one() {
            return Err(Error::InvalidArgument(format!("lowest coefficient {lead} is not a unit")));
        }
        let prec = self.cutoff - lo;
        // 1/(lead·q^lo·(1 + u)) with u = rest / lead
        let n = prec as usize;
        let mut inv = vec![BigInt::zero(); n];
        inv[0] = lead.clone(); // 1/±1 = ±1
        for i in 1..n {
            let mut s = BigInt::zero();
            for j in 1..=i {
                if let Some(c) = self.terms.get(j) {
                    s += c * &inv[i - j];
                }
            }
            inv[i] = -(s * lead);
        }
        Ok(Self::from_dense(-lo, -lo + prec, inv))
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_laurent();
        if p.is_zero() {
            write!(f, "O(q^{})", self.cutoff)
        } else {
            // ascending order reads more naturally for series
            let mut parts = Vec::new();
            for (e, c) in p.terms() {
                let mono = LaurentPoly::monomial(c.clone(), e).to_string();
                parts.push(mono);
            }
            let mut s = parts[0].clone();
            for m in &parts[1..] {
                if let Some(rest) = m.strip_prefix('-') {
                    s.push_str(" - ");
                    s.push_str(rest);
                } else {
                    s.push_str(" + ");
                    s.push_str(m);
                }
            }
            write!(f, "{s} + O(q^{})", self.cutoff)
        }
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({self})")
    }
}

impl Add<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let cutoff = self.cutoff.min(rhs.cutoff);
        let low = self.low.min(rhs.low).min(cutoff);
        let terms = (low..cutoff)
            .map(|e| {
                let a = if e >= self.low { self.coeff(e) } else { BigInt::zero() };
                let b = if e >= rhs.low { rhs.coeff(e) } else { BigInt::zero() };
                a + b
            })
            .collect();
        TruncSeries::from_dense(low, cutoff, terms)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries { low: self.low, cutoff: self.cutoff, terms: self.terms.iter().map(|c| -c).collect() }
    }
}

impl Sub<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self + &(-rhs)
    }
}

impl Mul<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let cutoff = (self.cutoff + rhs.low).min(rhs.cutoff + self.low);
        if self.is_zero() || rhs.is_zero() {
            return TruncSeries::zero(cutoff);
        }
        let low = self.low + rhs.low;
        let n = (cutoff - low).max(0) as usize;
        let mut terms = vec![BigInt::zero(); n];
        for (i, a) in self.terms.iter().enumerate() {
            if i >= n || a.is_zero() {
                continue;
            }
            for (j, b) in rhs.terms.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                terms[i + j] += a * b;
            }
        }
        TruncSeries::from_dense(low, cutoff, terms)
    }
}

/// The expansion of `1/[k]` in positive powers of `q`, known below `cutoff`.
pub fn s_series(k: u32, cutoff: i32) -> TruncSeries {
    assert!(k >= 1, "s_series needs k >= 1");
    let k = k as i32;
    let mut p = LaurentPoly::zero();
    let mut i = 0;
    loop {
        let base = (2 * i + 1) * k;
        if base - 1 >= cutoff {
            break;
        }
        p += &LaurentPoly::monomial(1, base - 1);
        if base + 1 < cutoff {
            p -= &LaurentPoly::monomial(1, base + 1);
        }
        i += 1;
    }
    TruncSeries::from_laurent(&p, cutoff)
}

/// Laurent expansion of an exact fraction through `q^(cutoff-1)`.
pub fn ratfunc_to_series(x: &RatFunc, cutoff: i32) -> Result<TruncSeries, Error> {
    let den = x.den();
    let lead = den.trailing_coeff().expect("nonzero denominator");
    if !lead.abs().is_one() {
        return Err(Error::InvalidArgument(format!(
            "denominator {den} has non-unit lowest coefficient {lead}"
        )));
    }
    if x.is_zero() {
        return Ok(TruncSeries::zero(cutoff));
    }
    let num = x.num();
    let nlow = num.low_degree().unwrap();
    let dlow = den.low_degree().unwrap();
    // enough precision in 1/den so the product is known below cutoff
    let need = cutoff - nlow + dlow;
    let inv = TruncSeries::from_laurent(den, need.max(dlow + 1)).inverse()?;
    let numer = TruncSeries::from_laurent(num, cutoff - inv.low().unwrap_or(0) + 1);
    Ok((&numer * &inv).truncate(cutoff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qint;

    #[test]
    fn s1_is_one() {
        let s = s_series(1, 10);
        assert!(s.agrees_with(&LaurentPoly::one()));
    }

    #[test]
    fn s2_alternates() {
        let s = s_series(2, 8);
        let expect = LaurentPoly::from_terms([(1, 1), (3, -1), (5, 1), (7, -1)]);
        assert!(s.agrees_with(&expect));
    }

    #[test]
    fn inverse_of_unit_leading() {
        let one_minus_q = TruncSeries::from_laurent(&LaurentPoly::from_terms([(0, 1), (1, -1)]), 6);
        let inv = one_minus_q.inverse().unwrap();
        assert!(inv.agrees_with(&LaurentPoly::from_terms((0..6).map(|e| (e, 1)))));
    }

    #[test]
    fn non_unit_denominator_rejected() {
        let x = RatFunc::new(LaurentPoly::one(), LaurentPoly::from_terms([(0, 2), (1, 1)])).unwrap();
        assert!(ratfunc_to_series(&x, 5).is_err());
    }

    #[test]
    fn product_precision_is_honest() {
        let two = TruncSeries::from_laurent(&qint(2), 100);
        let s = s_series(2, 10);
        let prod = &two * &s;
        assert_eq!(prod.cutoff(), 9);
        assert!(prod.agrees_with(&LaurentPoly::one()));
    }
}
