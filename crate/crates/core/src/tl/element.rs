use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matching::Matching;
use crate::coeff::small::SmallPoly;
use crate::coeff::{lcm_denominator, numerator_over, qint, LaurentPoly, RatFunc};
use crate::Error;

/// A formal combination of crossingless matchings on `n` strands.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TLElement {
    n: usize,
    terms: BTreeMap<Matching, RatFunc>,
}

impl TLElement {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn from_matching(m: Matching, c: RatFunc) -> Self {
        let mut x = Self::zero(m.strands());
        x.add_term(m, c);
        x
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matching(Matching::identity(n), RatFunc::one())
    }

    pub fn generator(n: usize, i: usize) -> Result<Self, Error> {
        Ok(Self::from_matching(Matching::generator(n, i)?, RatFunc::one()))
    }

    /// Product of generators `e_{i_1} e_{i_2} ...` (empty word is the identity).
    pub fn word(n: usize, word: &[usize]) -> Result<Self, Error> {
        let mut m = Matching::identity(n);
        let mut loops = 0;
        for &i in word {
            let (next, l) = m.compose(&Matching::generator(n, i)?)?;
            m = next;
            loops += l;
        }
        Ok(Self::from_matching(m, RatFunc::from_poly(qint(2).pow(loops as u32))))
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matching, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Matching) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Matching, c: RatFunc) {
        assert_eq!(m.strands(), self.n, "matching on the wrong number of strands");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    /// The product `self · other`: `self` stacked on top of `other`, each
    /// closed loop contributing a factor `[2]`.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.n));
        }
        Ok(mul_common_denominator(self, other))
    }

    /// Term-by-term product, without the common-denominator fast path.
    pub fn mul_naive(&self, other: &Self) -> Result<Self, Error> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let two = RatFunc::from_poly(qint(2));
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (m, loops) = a.compose(b)?;
                out.add_term(m, &(ca * cb) * &two.pow(loops as u32));
            }
        }
        Ok(out)
    }

    /// Horizontal juxtaposition `self ⊗ other` (self on the left).
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n + other.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.juxtapose(b), ca * cb);
            }
        }
        out
    }

    /// Adds `k` identity strands on the right.
    pub fn extend_right(&self, k: usize) -> Self {
        self.tensor(&Self::identity(k))
    }

    /// Adds `k` identity strands on the left.
    pub fn extend_left(&self, k: usize) -> Self {
        Self::identity(k).tensor(self)
    }

    /// Top-bottom mirror image. It reverses products: `flip(ab) = flip(b)flip(a)`.
    pub fn flip(&self) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.flip(), c.clone())).collect() }
    }

    /// Markov closure: every top point joined to the bottom point below it,
    /// each loop evaluated to `[2]`.
    pub fn markov_trace(&self) -> RatFunc {
        let two = RatFunc::from_poly(qint(2));
        let mut acc = RatFunc::zero();
        for (m, c) in &self.terms {
            acc = &acc + &(c * &two.pow(m.closure_loops() as u32));
        }
        acc
    }

    /// Closes the rightmost strand (last top point capped to the last bottom point).
    pub fn partial_close(&self) -> Result<Self, Error> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("partial closure of TL_0".into()));
        }
        let two = RatFunc::from_poly(qint(2));
        let mut out = Self::zero(self.n - 1);
        for (m, c) in &self.terms {
            let (r, loops) = m.close_last()?;
            out.add_term(r, c * &two.pow(loops as u32));
        }
        Ok(out)
    }
}

fn two_powers(k: usize) -> Vec<SmallPoly> {
    let two = SmallPoly::from_laurent(&qint(2)).expect("small");
    let mut out = vec![SmallPoly { low: 0, coeffs: vec![1] }];
    for i in 1..=k {
        out.push(out[i - 1].mul(&two).expect("[2]^k fits"));
    }
    out
}

/// Multiplies over common denominators: numerators are machine polynomials
/// where they fit, with a big-integer fallback on overflow.
fn mul_common_denominator(a: &TLElement, b: &TLElement) -> TLElement {
    let da = lcm_denominator(a.terms.values());
    let db = lcm_denominator(b.terms.values());
    let na: Vec<(Matching, LaurentPoly)> = a.terms.iter().map(|(m, c)| (*m, numerator_over(c, &da))).collect();
    let nb: Vec<(Matching, LaurentPoly)> = b.terms.iter().map(|(m, c)| (*m, numerator_over(c, &db))).collect();
    let small = (|| {
        let sa = na.iter().map(|(m, p)| Some((*m, SmallPoly::from_laurent(p)?))).collect::<Option<Vec<_>>>()?;
        let sb = nb.iter().map(|(m, p)| Some((*m, SmallPoly::from_laurent(p)?))).collect::<Option<Vec<_>>>()?;
        let pw = two_powers(a.n);
        let mut acc: HashMap<Matching, SmallPoly> = HashMap::new();
        for (x, px) in &sa {
            for (y, py) in &sb {
                let (m, loops) = x.compose(y).expect("same strand count");
                let t = px.mul(py)?.mul(&pw[loops])?;
                acc.entry(m).or_default().add_assign(&t)?;
            }
        }
        Some(acc.into_iter().map(|(m, p)| (m, p.to_laurent())).collect::<Vec<_>>())
    })();
    let sums = small.unwrap_or_else(|| {
        let two = qint(2);
        let mut acc: HashMap<Matching, LaurentPoly> = HashMap::new();
        for (x, px) in &na {
            for (y, py) in &nb {
                let (m, loops) = x.compose(y).expect("same strand count");
                let t = &(px * py) * &two.pow(loops as u32);
                *acc.entry(m).or_insert_with(LaurentPoly::zero) += &t;
            }
        }
        acc.into_iter().collect()
    });
    let den = &da * &db;
    let mut out = TLElement::zero(a.n);
    for (m, p) in sums {
        if !p.is_zero() {
            out.terms.insert(m, RatFunc::new(p, den.clone()).expect("nonzero denominator"));
        }
    }
    out
}

impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})·{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TL{}[{self}]", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qint_rat;

    fn e(n: usize, i: usize) -> TLElement {
        TLElement::generator(n, i).unwrap()
    }

    #[test]
    fn e_squared() {
        let x = e(2, 1).mul(&e(2, 1)).unwrap();
        assert_eq!(x, e(2, 1).scale(&qint_rat(2)));
    }

    #[test]
    fn e1e2e1() {
        let x = e(3, 1).mul(&e(3, 2)).unwrap().mul(&e(3, 1)).unwrap();
        assert_eq!(x, e(3, 1));
    }

    #[test]
    fn fast_matches_naive() {
        let a = TLElement::identity(3).add(&e(3, 1).scale(&qint_rat(3).inv().unwrap())).unwrap();
        let b = e(3, 2).add(&TLElement::word(3, &[1, 2]).unwrap().scale(&qint_rat(2))).unwrap();
        assert_eq!(a.mul(&b).unwrap(), a.mul_naive(&b).unwrap());
    }

    #[test]
    fn traces() {
        assert_eq!(TLElement::identity(3).markov_trace(), qint_rat(2).pow(3));
        assert_eq!(e(2, 1).markov_trace(), qint_rat(2));
    }

    #[test]
    fn partial_close_identity_gives_loop_factor() {
        let x = TLElement::identity(2).partial_close().unwrap();
        assert_eq!(x, TLElement::identity(1).scale(&qint_rat(2)));
        assert_eq!(e(2, 1).partial_close().unwrap(), TLElement::identity(1));
    }

    #[test]
    fn mismatch_errors() {
        assert!(e(2, 1).mul(&e(3, 1)).is_err());
    }
}
