use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{qint_rat, RatFunc};
use crate::tl::TLElement;

fn add_into(map: &mut BTreeMap<u32, RatFunc>, k: u32, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    let s = map.get(&k).map_or(c.clone(), |v| v + &c);
    if s.is_zero() {
        map.remove(&k);
    } else {
        map.insert(k, s);
    }
}

fn fmt_sum(f: &mut fmt::Formatter<'_>, map: &BTreeMap<u32, RatFunc>, sym: &str) -> fmt::Result {
    if map.is_empty() {
        return write!(f, "0");
    }
    let parts: Vec<String> = map.iter().map(|(k, c)| format!("({c}){sym}{k}")).collect();
    write!(f, "{}", parts.join(" + "))
}

/// An element `Σ c_k X^k` of the annular skein, `X` being one essential circle.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AnnularElement {
    coeffs: BTreeMap<u32, RatFunc>,
}

impl AnnularElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: RatFunc) -> Self {
        Self::monomial(0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, RatFunc::one())
    }

    pub fn monomial(k: u32, c: RatFunc) -> Self {
        let mut coeffs = BTreeMap::new();
        add_into(&mut coeffs, k, c);
        Self { coeffs }
    }

    pub fn coeff(&self, k: u32) -> RatFunc {
        self.coeffs.get(&k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &RatFunc)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &o.coeffs {
            add_into(&mut coeffs, *k, c.clone());
        }
        Self { coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            add_into(&mut coeffs, *k, v * c);
        }
        Self { coeffs }
    }

    /// Nesting of annuli: polynomial multiplication in `X`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &o.coeffs {
                add_into(&mut coeffs, a + b, ca * cb);
            }
        }
        Self { coeffs }
    }

    /// Rewrites in the basis `φ_k`.
    pub fn to_phi(&self) -> PhiElement {
        let mut rest = self.clone();
        let mut out = PhiElement::zero();
        while let Some(d) = rest.degree() {
            let c = rest.coeff(d);
            out = out.add(&PhiElement::monomial(d, c.clone()));
            rest = rest.sub(&phi(d).scale(&c));
        }
        out
    }
}

impl fmt::Display for AnnularElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, &self.coeffs, "X^")
    }
}

impl fmt::Debug for AnnularElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Annular[{self}]")
    }
}

/// An element `Σ c_k φ_k` in the projector basis of the annular skein.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PhiElement {
    coeffs: BTreeMap<u32, RatFunc>,
}

impl PhiElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: u32, c: RatFunc) -> Self {
        let mut coeffs = BTreeMap::new();
        add_into(&mut coeffs, k, c);
        Self { coeffs }
    }

    pub fn coeff(&self, k: u32) -> RatFunc {
        self.coeffs.get(&k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &RatFunc)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &o.coeffs {
            add_into(&mut coeffs, *k, c.clone());
        }
        Self { coeffs }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            add_into(&mut coeffs, *k, v * c);
        }
        Self { coeffs }
    }

    pub fn to_x(&self) -> AnnularElement {
        self.coeffs.iter().fold(AnnularElement::zero(), |acc, (k, c)| acc.add(&phi(*k).scale(c)))
    }
}

impl fmt::Display for PhiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, &self.coeffs, "phi_")
    }
}

impl fmt::Debug for PhiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phi[{self}]")
    }
}

/// `φ_k` in the `X` basis: `φ_0 = 1`, `φ_1 = X`, `φ_{k+1} = Xφ_k - φ_{k-1}`.
pub fn phi(k: u32) -> AnnularElement {
    let mut prev = AnnularElement::scalar(RatFunc::one());
    if k == 0 {
        return prev;
    }
    let mut cur = AnnularElement::x();
    for _ in 1..k {
        let next = AnnularElement::x().mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Closes a rectangle diagram around the core of the annulus. Loops meeting
/// the seam an odd number of times go around the core and become `X`;
/// the others bound disks and evaluate to `[2]`.
pub fn annular_closure(x: &TLElement) -> AnnularElement {
    let two = qint_rat(2);
    let mut out = AnnularElement::zero();
    for (m, c) in x.terms() {
        let loops = m.closure_loop_crossings();
        let essential = loops.iter().filter(|&&k| k % 2 == 1).count() as u32;
        let trivial = loops.len() as u32 - essential;
        out = out.add(&AnnularElement::monomial(essential, c * &two.pow(trivial)));
    }
    out
}

/// The magic element `ω_N = Σ_{k ≤ N} [k+1] φ_k`.
pub fn omega(level: u32) -> PhiElement {
    (0..=level).fold(PhiElement::zero(), |acc, k| acc.add(&PhiElement::monomial(k, qint_rat(k + 1))))
}

/// Splits `ω_N` into its even-index and odd-index parts.
pub fn spin_split(level: u32) -> (PhiElement, PhiElement) {
    let w = omega(level);
    let mut even = PhiElement::zero();
    let mut odd = PhiElement::zero();
    for (k, c) in w.terms() {
        let t = PhiElement::monomial(k, c.clone());
        if k % 2 == 0 {
            even = even.add(&t);
        } else {
            odd = odd.add(&t);
        }
    }
    (even, odd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tl::jones_wenzl;

    fn xpoly(cs: &[i64]) -> AnnularElement {
        cs.iter()
            .enumerate()
            .fold(AnnularElement::zero(), |a, (k, &c)| a.add(&AnnularElement::monomial(k as u32, RatFunc::from_int(c))))
    }

    #[test]
    fn chebyshev() {
        assert_eq!(phi(2), xpoly(&[-1, 0, 1]));
        assert_eq!(phi(3), xpoly(&[0, -2, 0, 1]));
    }

    #[test]
    fn closures() {
        assert_eq!(annular_closure(&TLElement::identity(2)), xpoly(&[0, 0, 1]));
        assert_eq!(annular_closure(&TLElement::generator(2, 1).unwrap()), AnnularElement::scalar(qint_rat(2)));
        assert_eq!(annular_closure(&jones_wenzl(2).unwrap()), phi(2));
    }

    #[test]
    fn spin_parts() {
        let (e, o) = spin_split(3);
        assert_eq!(o, PhiElement::monomial(1, qint_rat(2)).add(&PhiElement::monomial(3, qint_rat(4))));
        assert_eq!(e.add(&o), omega(3));
        assert_eq!(spin_split(0), (PhiElement::monomial(0, RatFunc::one()), PhiElement::zero()));
    }
}
