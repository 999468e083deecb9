use std::collections::{HashMap, VecDeque};
use std::sync::{Mutex, OnceLock};

use super::element::TLElement;
use super::matching::Matching;
use crate::coeff::{qint, qint_rat, RatFunc};
use crate::report::{Check, CheckReport};
use crate::Error;

/// Largest projector the memo will build.
pub const MAX_JW: usize = 12;

fn cache() -> &'static Mutex<Vec<TLElement>> {
    static CACHE: OnceLock<Mutex<Vec<TLElement>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![TLElement::identity(0)]))
}

/// The Jones-Wenzl projector `p_n`, from the recursion
/// `p_n = p_{n-1}⊗1 - ([n-1]/[n]) (p_{n-1}⊗1) e_{n-1} (p_{n-1}⊗1)`.
pub fn jones_wenzl(n: usize) -> Result<TLElement, Error> {
    if n > MAX_JW {
        return Err(Error::InvalidArgument(format!("p_{n} exceeds the supported bound {MAX_JW}")));
    }
    let mut memo = cache().lock().expect("projector cache poisoned");
    while memo.len() <= n {
        let k = memo.len();
        let prev = memo[k - 1].extend_right(1);
        let next = if k == 1 {
            prev
        } else {
            let left = prev.mul(&TLElement::generator(k, k - 1)?)?;
            let corr = left.mul(&prev)?;
            let c = &RatFunc::from_poly(qint(k as u32 - 1)) / &qint_rat(k as u32);
            prev.sub(&corr.scale(&c))?
        };
        memo.push(next);
    }
    Ok(memo[n].clone())
}

/// For every matching on `n` strands, a parent and generator with
/// `parent · e_i = m` forming no loop. The identity has no entry.
pub fn reduced_words(n: usize) -> HashMap<Matching, (Matching, usize)> {
    let mut out = HashMap::new();
    let id = Matching::identity(n);
    let mut queue = VecDeque::from([id]);
    let gens: Vec<Matching> = (1..n).map(|i| Matching::generator(n, i).expect("valid")).collect();
    while let Some(m) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let (x, loops) = m.compose(g).expect("same size");
            if loops == 0 && x != id && !out.contains_key(&x) {
                out.insert(x, (m, i + 1));
                queue.push_back(x);
            }
        }
    }
    out
}

/// Computes `a · b` as `Σ_x b_x (a · x)`, evaluating each `a · x` along a
/// reduced word for `x`. This only ever multiplies by single generators,
/// and stops early along words once a partial product vanishes.
pub fn mul_by_words(a: &TLElement, b: &TLElement) -> Result<TLElement, Error> {
    let n = a.strands();
    if n != b.strands() {
        return Err(Error::StrandMismatch(n, b.strands()));
    }
    let words = reduced_words(n);
    let mut memo: HashMap<Matching, TLElement> = HashMap::new();
    memo.insert(Matching::identity(n), a.clone());
    fn get(
        m: Matching,
        words: &HashMap<Matching, (Matching, usize)>,
        memo: &mut HashMap<Matching, TLElement>,
    ) -> Result<TLElement, Error> {
        if let Some(v) = memo.get(&m) {
            return Ok(v.clone());
        }
        let (parent, i) = words[&m];
        let pv = get(parent, words, memo)?;
        let v = if pv.is_zero() {
            pv
        } else {
            pv.mul(&TLElement::generator(m.strands(), i)?)?
        };
        memo.insert(m, v.clone());
        Ok(v)
    }
    let mut out = TLElement::zero(n);
    for (m, c) in b.terms() {
        let v = get(*m, &words, &mut memo)?;
        if !v.is_zero() {
            out = out.add(&v.scale(c))?;
        }
    }
    Ok(out)
}

/// Checks `e_i p_n = p_n e_i = 0` for every turnback and `p_n² = p_n`.
pub fn turnback_annihilation(n: usize) -> Result<CheckReport, Error> {
    let p = jones_wenzl(n)?;
    let mut report = CheckReport::new(format!("projector axioms n={n}"));
    for i in 1..n {
        let e = TLElement::generator(n, i)?;
        let l = e.mul(&p)?;
        report.push(Check::from_bool(format!("e_{i} p_{n} = 0"), l.is_zero(), witness(&l)));
        let r = p.mul(&e)?;
        report.push(Check::from_bool(format!("p_{n} e_{i} = 0"), r.is_zero(), witness(&r)));
    }
    let sq = mul_by_words(&p, &p)?;
    let diff = sq.sub(&p)?;
    report.push(Check::from_bool(format!("p_{n}^2 = p_{n}"), diff.is_zero(), witness(&diff)));
    let tr = p.markov_trace();
    let expect = qint_rat(n as u32 + 1);
    report.push(Check::from_bool(format!("Tr(p_{n}) = [{}]", n + 1), tr == expect, format!("{tr}")));
    Ok(report)
}

fn witness(x: &TLElement) -> String {
    if x.is_zero() {
        "0".into()
    } else {
        format!("{} nonzero terms, first {}", x.num_terms(), x.terms().next().map(|(m, c)| format!("{c}·{m}")).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RatFunc;

    #[test]
    fn p1_and_p2() {
        assert_eq!(jones_wenzl(1).unwrap(), TLElement::identity(1));
        let expect = TLElement::identity(2)
            .sub(&TLElement::generator(2, 1).unwrap().scale(&qint_rat(2).inv().unwrap()))
            .unwrap();
        assert_eq!(jones_wenzl(2).unwrap(), expect);
    }

    #[test]
    fn p3_closed_form() {
        let c1 = -(&qint_rat(2) / &qint_rat(3));
        let c2 = qint_rat(3).inv().unwrap();
        let mut expect = TLElement::identity(3);
        for w in [&[1usize][..], &[2]] {
            expect = expect.add(&TLElement::word(3, w).unwrap().scale(&c1)).unwrap();
        }
        for w in [&[1usize, 2][..], &[2, 1]] {
            expect = expect.add(&TLElement::word(3, w).unwrap().scale(&c2)).unwrap();
        }
        assert_eq!(jones_wenzl(3).unwrap(), expect);
    }

    #[test]
    fn reduced_words_reach_everything() {
        for n in 1..=6 {
            assert_eq!(reduced_words(n).len() + 1, Matching::enumerate(n).len());
        }
    }

    #[test]
    fn word_product_agrees_with_direct() {
        let p = jones_wenzl(4).unwrap();
        let x = TLElement::word(4, &[2, 1, 3]).unwrap().add(&TLElement::identity(4).scale(&RatFunc::from_int(3))).unwrap();
        assert_eq!(mul_by_words(&x, &p).unwrap(), x.mul(&p).unwrap());
        assert_eq!(mul_by_words(&p, &p).unwrap(), p.mul(&p).unwrap());
    }

    #[test]
    fn small_axioms() {
        for n in 1..=5 {
            let r = turnback_annihilation(n).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn partial_close_of_p2() {
        let x = jones_wenzl(2).unwrap().partial_close().unwrap();
        let c = &qint_rat(3) / &qint_rat(2);
        assert_eq!(x, TLElement::identity(1).scale(&c));
    }
}
