use std::fmt;

use serde::{Deserialize, Serialize};

/// A polynomial in `α` with integer coefficients (index = power of `α`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct AlphaPoly(Vec<i64>);

fn ck(x: Option<i64>) -> i64 {
    x.expect("ℤ[α] coefficient overflow")
}

impl AlphaPoly {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·α^k`.
    pub fn monomial(c: i64, k: u32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let mut v = vec![0; k as usize + 1];
        v[k as usize] = c;
        Self(v)
    }

    pub fn from_coeffs(mut v: Vec<i64>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Self(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    /// `Some(c)` when the polynomial is the integer `c`.
    pub fn as_constant(&self) -> Option<i64> {
        match self.0.len() {
            0 => Some(0),
            1 => Some(self.0[0]),
            _ => None,
        }
    }

    /// Powers of `α` with nonzero coefficient.
    pub fn powers(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, _)| k as u32)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| ck(self.0.get(i).copied().unwrap_or(0).checked_add(o.0.get(i).copied().unwrap_or(0))))
            .collect();
        Self::from_coeffs(v)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| ck(c.checked_neg())).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = ck(v[i + j].checked_add(ck(a.checked_mul(*b))));
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_coeffs(self.0.iter().map(|a| ck(a.checked_mul(c))).collect())
    }
}

impl fmt::Display for AlphaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sep = match (first, c < 0) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let a = c.unsigned_abs();
            let body = match (k, a) {
                (0, _) => a.to_string(),
                (1, 1) => "a".into(),
                (1, _) => format!("{a}a"),
                (_, 1) => format!("a^{k}"),
                _ => format!("{a}a^{k}"),
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for AlphaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = AlphaPoly::from_coeffs(vec![1, 2]);
        let b = AlphaPoly::monomial(-1, 1);
        assert_eq!(a.mul(&b), AlphaPoly::from_coeffs(vec![0, -1, -2]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.to_string(), "1 + 2a");
    }
}
