use proptest::prelude::*;
use skein_core::annulus::{
    annular_closure, eigen_check, fusion_reduce, omega, phi, spin_split, verify_slide_identities, PhiElement,
};
use skein_core::coeff::{qint_rat, LaurentPoly, RatFunc};
use skein_core::tl::{jones_wenzl, TLElement};

#[test]
fn closure_of_projectors_is_phi() {
    for k in 0..=6 {
        assert_eq!(annular_closure(&jones_wenzl(k).unwrap()), phi(k as u32), "k={k}");
    }
}

#[test]
fn eigen_through_eight() {
    for n in 1..=8 {
        assert!(eigen_check(n).unwrap().all_passed());
    }
}

#[test]
fn slide_identities() {
    assert!(verify_slide_identities(2).unwrap().all_passed());
    assert!(verify_slide_identities(3).unwrap().all_passed());
}

#[test]
fn omega_examples() {
    let w2 = PhiElement::monomial(0, RatFunc::one())
        .add(&PhiElement::monomial(1, qint_rat(2)))
        .add(&PhiElement::monomial(2, qint_rat(3)));
    assert_eq!(omega(2), w2);
    assert_eq!(omega(0), PhiElement::monomial(0, RatFunc::one()));
    for n in 0..=8 {
        let (a, b) = spin_split(n);
        assert_eq!(a.add(&b), omega(n));
    }
}

#[test]
fn level_one_collapses() {
    let r = fusion_reduce(&omega(1), 1).unwrap();
    assert_eq!(r, fusion_reduce(&PhiElement::monomial(0, RatFunc::one()), 1).unwrap());
}

#[test]
fn glued_projectors_vanish_in_quotient() {
    // closures of a·(p_N ⊗ 1)·b, which contain a projector box
    for level in 1..=3usize {
        for n in level..=4 {
            let g = jones_wenzl(level).unwrap().extend_right(n - level);
            for wa in [vec![], vec![1], vec![2, 1], vec![3, 1]] {
                for wb in [vec![], vec![1], vec![1, 2]] {
                    if wa.iter().chain(&wb).any(|&i| i >= n) {
                        continue;
                    }
                    let x = TLElement::word(n, &wa).unwrap().mul(&g).unwrap().mul(&TLElement::word(n, &wb).unwrap()).unwrap();
                    let r = fusion_reduce(&annular_closure(&x).to_phi(), level as u32).unwrap();
                    assert!(r.is_zero(), "N={level} n={n} {wa:?} {wb:?}: {r}");
                }
            }
        }
    }
}

fn small_ratfunc(max_den: u32) -> impl Strategy<Value = RatFunc> {
    (-3i64..4, -2i32..3, 1u32..=max_den).prop_map(|(c, e, k)| {
        RatFunc::new(LaurentPoly::monomial(c, e), LaurentPoly::one()).unwrap() * qint_rat(k).inv().unwrap()
    })
}

fn phi_element(max_den: u32) -> impl Strategy<Value = PhiElement> {
    prop::collection::vec((0u32..=12, small_ratfunc(max_den)), 0..5)
        .prop_map(|ts| ts.into_iter().fold(PhiElement::zero(), |a, (k, c)| a.add(&PhiElement::monomial(k, c))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn basis_round_trip(v in phi_element(4)) {
        prop_assert_eq!(v.to_x().to_phi(), v);
    }

    #[test]
    fn reduction_is_linear_and_idempotent(
        (level, a, b) in (1u32..=4).prop_flat_map(|l| (Just(l), phi_element(l), phi_element(l)))
    ) {
        let ra = fusion_reduce(&a, level).unwrap();
        let rb = fusion_reduce(&b, level).unwrap();
        let rab = fusion_reduce(&a.add(&b), level).unwrap();
        let ring = skein_core::annulus::FusionRing::new(level).unwrap();
        prop_assert_eq!(rab, ra.add(&ring, &rb));
        prop_assert_eq!(fusion_reduce(&ra.lift(), level).unwrap(), ra);
    }
}
