//! Dense univariate polynomial helpers over ℤ and ℚ (index = degree).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub(crate) fn primitive_part(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = p.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(Signed::is_negative) {
        for x in &mut out {
            *x = -&*x;
        }
    }
    out
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd in ℤ[q] with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.is_empty() {
        return y;
    }
    if y.is_empty() {
        return x;
    }
    let cont = content(a).gcd(&content(b));
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    x.iter().map(|c| c * &cont).collect()
}

/// Exact quotient `a / b` in ℤ[q]; `None` if `b` does not divide `a`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    let db = b.len() - 1;
    if r.len() <= db {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    let lb = &b[db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let (qt, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &qt * c;
        }
        q[shift] = qt;
        trim(&mut r);
    }
    r.is_empty().then(|| {
        trim(&mut q);
        q
    })
}

pub(crate) fn to_rational(p: &[BigInt]) -> Vec<BigRational> {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

pub(crate) fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Division with remainder in ℚ[q].
pub(crate) fn rat_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lb = &b[db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / lb;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    rat_div_rem(a, b).1
}

/// Inverse of `a` modulo `m` in ℚ[q]; `None` when they share a factor.
pub(crate) fn rat_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    // extended Euclid: track s with s·a ≡ r (mod m)
    let mut r0 = m.to_vec();
    let mut r1 = rat_rem(a, m);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (qt, r2) = rat_div_rem(&r0, &r1);
        let s2 = rat_sub(&s0, &rat_mul(&qt, &s1));
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = r0[0].recip();
    let out: Vec<BigRational> = s0.iter().map(|c| c * &inv).collect();
    Some(rat_rem(&out, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (q+1)(q-2) and (q+1)(q+3)
        let a = v(&[-2, -1, 1]);
        let b = v(&[3, 4, 1]);
        assert_eq!(gcd(&a, &b), v(&[1, 1]));
    }

    #[test]
    fn gcd_keeps_common_content() {
        assert_eq!(gcd(&v(&[4, 4]), &v(&[6, 6])), v(&[2, 2]));
    }

    #[test]
    fn exact_division_detects_remainder() {
        assert_eq!(div_exact(&v(&[-2, -1, 1]), &v(&[1, 1])), Some(v(&[-2, 1])));
        assert_eq!(div_exact(&v(&[1, 0, 1]), &v(&[1, 1])), None);
    }

    #[test]
    fn modular_inverse() {
        let m = to_rational(&v(&[1, 0, 1])); // q^2 + 1
        let a = to_rational(&v(&[0, 1])); // q
        let inv = rat_inverse_mod(&a, &m).unwrap();
        assert_eq!(inv, to_rational(&v(&[0, -1])));
    }
}
