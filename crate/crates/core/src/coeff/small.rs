//! Overflow-checked machine-integer Laurent polynomials for hot loops.
//! Callers fall back to [`LaurentPoly`] arithmetic when a value escapes `i128`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::laurent::LaurentPoly;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SmallPoly {
    pub low: i32,
    pub coeffs: Vec<i128>,
}

impl SmallPoly {
    pub fn from_laurent(p: &LaurentPoly) -> Option<Self> {
        let (low, dense) = p.dense();
        let coeffs = dense.iter().map(|c| c.to_i128()).collect::<Option<Vec<_>>>()?;
        Some(Self { low, coeffs })
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_dense(self.low, self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Option<Self> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Some(Self::default());
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    let t = a.checked_mul(b)?;
                    coeffs[i + j] = coeffs[i + j].checked_add(t)?;
                }
            }
        }
        Some(Self { low: self.low + rhs.low, coeffs })
    }

    /// `self += rhs`, growing the dense window as needed.
    pub fn add_assign(&mut self, rhs: &Self) -> Option<()> {
        if rhs.coeffs.is_empty() {
            return Some(());
        }
        if self.coeffs.is_empty() {
            *self = rhs.clone();
            return Some(());
        }
        let lo = self.low.min(rhs.low);
        let hi = (self.low + self.coeffs.len() as i32).max(rhs.low + rhs.coeffs.len() as i32);
        if lo < self.low {
            let mut v = vec![0i128; (self.low - lo) as usize];
            v.extend_from_slice(&self.coeffs);
            self.coeffs = v;
            self.low = lo;
        }
        self.coeffs.resize((hi - lo) as usize, 0);
        let off = (rhs.low - lo) as usize;
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[off + i] = self.coeffs[off + i].checked_add(c)?;
        }
        Some(())
    }
}
