use proptest::prelude::*;
use skein_core::coeff::{qint_rat, RatFunc};
use skein_core::tl::{in_projector_ideal, jones_wenzl, turnback_annihilation, Matching, TLElement};

fn e(n: usize, i: usize) -> TLElement {
    TLElement::generator(n, i).unwrap()
}

#[test]
fn projector_axioms_through_eight() {
    for n in 1..=8 {
        let r = turnback_annihilation(n).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn tl_relations_through_eight() {
    let two = qint_rat(2);
    for n in 2..=8 {
        for i in 1..n {
            assert_eq!(e(n, i).mul(&e(n, i)).unwrap(), e(n, i).scale(&two));
            for j in 1..n {
                let ij = e(n, i).mul(&e(n, j)).unwrap();
                if i.abs_diff(j) == 1 {
                    assert_eq!(ij.mul(&e(n, i)).unwrap(), e(n, i));
                } else if i.abs_diff(j) >= 2 {
                    assert_eq!(ij, e(n, j).mul(&e(n, i)).unwrap());
                }
            }
        }
    }
}

#[test]
fn p3_trace_is_quantum_four() {
    assert_eq!(jones_wenzl(3).unwrap().markov_trace(), qint_rat(4));
    assert_eq!(jones_wenzl(2).unwrap().markov_trace(), qint_rat(3));
}

#[test]
fn direct_square_matches_word_square_small() {
    for n in 2..=5 {
        let p = jones_wenzl(n).unwrap();
        assert_eq!(p.mul(&p).unwrap(), p);
    }
}

/// Rank of a family of coefficient vectors over ℚ(q), by elimination.
fn rank(mut rows: Vec<Vec<RatFunc>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = rows[r][c].inv().unwrap();
        let pivot: Vec<RatFunc> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..cols {
                    rows[i][k] = &rows[i][k] - &(&f * &pivot[k]);
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

fn coords(x: &TLElement, basis: &[Matching]) -> Vec<RatFunc> {
    basis.iter().map(|m| x.coeff(m)).collect()
}

/// Spanning set of the two-sided ideal: a·(1⊗p_N⊗1)·b over basis a, b.
fn ideal_span(n: usize, level: usize) -> Vec<TLElement> {
    let basis = Matching::enumerate(n);
    let p = jones_wenzl(level).unwrap();
    let mut out = Vec::new();
    for j in 0..=n - level {
        let g = p.extend_left(j).extend_right(n - level - j);
        for a in &basis {
            let left = TLElement::from_matching(*a, RatFunc::one()).mul(&g).unwrap();
            for b in &basis {
                out.push(left.mul(&TLElement::from_matching(*b, RatFunc::one())).unwrap());
            }
        }
    }
    out
}

#[test]
fn membership_agrees_with_span_oracle() {
    for n in 1..=4 {
        let basis = Matching::enumerate(n);
        for level in 1..=n {
            let span: Vec<Vec<RatFunc>> = ideal_span(n, level).iter().map(|x| coords(x, &basis)).collect();
            let base_rank = rank(span.clone());
            let mut samples: Vec<TLElement> =
                basis.iter().map(|m| TLElement::from_matching(*m, RatFunc::one())).collect();
            samples.push(jones_wenzl(level).unwrap().extend_right(n - level));
            if n >= 2 {
                samples.push(jones_wenzl(n).unwrap().add(&e(n, 1)).unwrap());
            }
            for x in samples {
                let mut with = span.clone();
                with.push(coords(&x, &basis));
                let oracle = rank(with) == base_rank;
                assert_eq!(in_projector_ideal(&x, level).unwrap(), oracle, "n={n} N={level} x={x}");
            }
        }
    }
}

#[test]
fn basis_diagrams_with_few_through_strands_are_not_in_ideal() {
    for n in 1..=6 {
        for level in 1..=n {
            for m in Matching::enumerate(n) {
                if m.through_strands() + n < 2 * level {
                    let x = TLElement::from_matching(m, RatFunc::one());
                    assert!(!in_projector_ideal(&x, level).unwrap(), "n={n} N={level} {m}");
                }
            }
        }
    }
}

fn word_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..n, 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn ideal_contains_glued_projectors(
        n in 2usize..=6,
        level_raw in 1usize..=4,
        pos_raw in 0usize..6,
        wx in word_strategy(6),
        wy in word_strategy(6),
    ) {
        let level = level_raw.min(n);
        let pos = pos_raw % (n - level + 1);
        let wx: Vec<usize> = wx.into_iter().filter(|&i| i < n).collect();
        let wy: Vec<usize> = wy.into_iter().filter(|&i| i < n).collect();
        let g = jones_wenzl(level).unwrap().extend_left(pos).extend_right(n - level - pos);
        let x = TLElement::word(n, &wx).unwrap().mul(&g).unwrap().mul(&TLElement::word(n, &wy).unwrap()).unwrap();
        prop_assert!(in_projector_ideal(&x, level).unwrap());
    }

    #[test]
    fn multiplication_is_associative(
        n in 1usize..=6,
        wa in word_strategy(6), wb in word_strategy(6), wc in word_strategy(6),
        ca in -3i64..4, cb in -3i64..4,
    ) {
        let pick = |w: Vec<usize>| TLElement::word(n, &w.into_iter().filter(|&i| i < n).collect::<Vec<_>>()).unwrap();
        let a = pick(wa).add(&TLElement::identity(n).scale(&RatFunc::from_int(ca))).unwrap();
        let b = pick(wb).scale(&qint_rat(3).inv().unwrap()).add(&TLElement::identity(n).scale(&RatFunc::from_int(cb))).unwrap();
        let c = pick(wc);
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
