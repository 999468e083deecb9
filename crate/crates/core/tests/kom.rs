use skein_core::cob::{cap_last, stack_plan, Cob, Planar};
use skein_core::kom::{
    diagram_complex, euler_check, idempotence_check, p2, projector, simplify, trace_complex, turnback_check, validate,
    PeriodicComplex, Summand, Truncation,
};

#[test]
fn turnbacks_kill_projectors() {
    for (n, hmax) in [(2, 12), (3, 10)] {
        let r = turnback_check(n, hmax).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn euler_characteristics_match_coefficients() {
    for n in [2, 3] {
        let r = euler_check(n, 20).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn p2_is_idempotent() {
    let r = idempotence_check(2, 8).unwrap();
    assert!(r.all_passed(), "{r}");
}

#[test]
fn projectors_validate() {
    for n in [2, 3] {
        let r = validate(&projector(n).unwrap()).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn circle_simplifies_to_shifted_empty() {
    let circle = Planar::circles(1, 0);
    let c = PeriodicComplex::single(circle, 0, 0);
    let s = simplify(&c, 2).unwrap();
    let mut shifts: Vec<i32> = s.level_at(0).iter().map(|x| x.shift).collect();
    shifts.sort();
    assert_eq!(shifts, vec![-1, 1]);
    assert!(s.level_at(0).iter().all(|x| x.obj == Planar::empty()));
}

#[test]
fn cone_of_cap_leaves_one_empty() {
    // the cap from a circle to nothing, coned: one copy of q∅ survives
    let circle = Planar::circles(1, 0);
    let cap = cap_last(&circle, false).unwrap();
    let d = skein_core::kom::Matrix::from_entries(1, 1, [(0, 0, cap)]);
    let c = PeriodicComplex::bounded(
        0,
        vec![vec![Summand { obj: circle, shift: 0 }], vec![Summand { obj: Planar::empty(), shift: -1 }]],
        vec![d],
    )
    .unwrap();
    let s = simplify(&c, 3).unwrap();
    let left: Vec<(i32, i32)> =
        (0..2).flat_map(|h| s.level_at(h).into_iter().map(move |x| (h, x.shift))).collect();
    assert_eq!(left, vec![(0, 1)]);
}

#[test]
fn reduced_p2_is_unchanged() {
    let p = p2();
    let s = simplify(&p, 8).unwrap();
    assert!(skein_core::kom::first_level_mismatch(&s, &p, 0, 6).is_none());
}

#[test]
fn flipped_sign_breaks_p2() {
    let p = p2();
    // a global sign on one map keeps d² = 0
    let neg = p.map_differentials(|deg, m| if deg == 1 { m.neg() } else { m.clone() });
    assert!(validate(&neg).unwrap().all_passed());
    // top dot + bottom dot in degree 1 does not
    let plus = p.differential(2).unwrap().clone();
    let bad = p.map_differentials(|deg, m| if deg == 1 { plus.clone() } else { m.clone() });
    let r = validate(&bad).unwrap();
    assert!(!r.all_passed());
    assert!(r.first_failure().unwrap().witness.contains("d_1 d_0"), "{r}");
}

#[test]
fn trace_of_p2() {
    let t = trace_complex(&p2(), Truncation::new(10, 40).unwrap()).unwrap();
    assert_eq!(t.first(), Some((0, &[-2, 0][..])));
}

#[test]
fn stacking_identity_diagram_is_neutral() {
    let p = p2();
    let id = diagram_complex(2, &[]);
    let s = skein_core::kom::tensor_with(&id, &p, &stack_plan(2), 8).unwrap();
    assert!(skein_core::kom::first_level_mismatch(&s, &p, 0, 6).is_none());
    let _ = Cob::identity(&Planar::empty());
}
