use skein_core::annulus::AnnularElement;
use skein_core::cob::Planar;
use skein_core::coeff::qint_rat;
use skein_core::kom::{p2, validate, PeriodicComplex, Truncation};
use skein_core::slide::*;
use skein_core::tl::Matching;

fn trunc() -> Truncation {
    Truncation::new(SLIDE_HMAX, 20).unwrap()
}

#[test]
fn trace_of_identity_strand() {
    let c = PeriodicComplex::single(Planar::from_matching(&Matching::identity(2)), 0, 0);
    let t = partial_trace(&c, &Closure::new(Side::Right, 1, 1).unwrap()).unwrap();
    let obj = &t.level_at(0)[0].obj;
    assert_eq!((obj.points(), obj.essential(), obj.trivial()), (2, 1, 0));
}

#[test]
fn trace_of_turnback() {
    let single = |m: &Matching| PeriodicComplex::single(Planar::from_matching(m), 0, 0);
    let cl = Closure::new(Side::Right, 1, 0).unwrap();
    let t = partial_trace(&single(&Matching::generator(2, 1).unwrap()), &cl).unwrap();
    let obj = &t.level_at(0)[0].obj;
    assert_eq!((obj.points(), obj.essential(), obj.trivial()), (2, 0, 0));
    let t = partial_trace(&single(&Matching::identity(2)), &cl).unwrap();
    assert_eq!(t.level_at(0)[0].obj.trivial(), 1);
}

#[test]
fn traced_projectors_are_complexes() {
    for n in [2, 3] {
        for cl in [Closure::config_a(n).unwrap(), Closure::config_b(n).unwrap()] {
            let (_, r) = partial_trace_checked(&projector_of(n), &cl).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }
}

fn projector_of(n: usize) -> PeriodicComplex {
    if n == 2 {
        p2()
    } else {
        skein_core::kom::projector(n).unwrap()
    }
}

#[test]
fn tails_for_two_agree_on_the_nose() {
    let r = tail_equality_check(2).unwrap();
    assert!(r.all_passed(), "{r}");
}

#[test]
fn tails_for_three_are_not_equivalent() {
    let r = tail_equality_check(3).unwrap();
    assert!(!r.all_passed());
    assert!(r.first_failure().is_some_and(|c| !c.witness.is_empty()));
}

#[test]
fn corrupted_sign_is_located() {
    let (a, b) = traced_tails(2).unwrap();
    let bad = b.map_differentials(|k, m| if k == 2 { m.neg() } else { m.clone() });
    let r = compare_tails(&a, &bad, true);
    let f = r.first_failure().expect("mismatch");
    assert!(f.witness.contains("degree 2"), "{r}");
    assert!(validate(&bad).unwrap().checks[0].passed);
}

#[test]
fn n2_certificate_accepted() {
    let c = build_slide_certificate(2).unwrap();
    assert_eq!(c.steps.len(), 2);
    let r = verify_certificate(&c, trunc()).unwrap();
    assert!(r.all_passed(), "{r}");
}

#[test]
fn n3_certificate_rejected_at_second_step() {
    let c = build_slide_certificate(3).unwrap();
    let r = verify_certificate(&c, trunc()).unwrap();
    let f = r.first_failure().expect("rejected");
    assert!(f.name.starts_with("step 2"), "{r}");
}

#[test]
fn flipped_sign_rejected() {
    let mut c = build_slide_certificate(2).unwrap();
    let m = c.steps[1].map.comps.get_mut(&0).unwrap();
    let x = m.get(0, 1).unwrap().neg();
    m.set(0, 1, x);
    let r = verify_certificate(&c, trunc()).unwrap();
    assert!(r.first_failure().unwrap().name.contains("chain map"), "{r}");
}

#[test]
fn missing_witness_rejected() {
    let mut c = build_slide_certificate(2).unwrap();
    c.steps[0].witness = None;
    let r = verify_certificate(&c, trunc()).unwrap();
    assert_eq!(r.first_failure().unwrap().witness, "missing projector witness");
}

#[test]
fn witness_without_projector_box_rejected() {
    let mut c = build_slide_certificate(2).unwrap();
    c.steps[0].witness.as_mut().unwrap().level = 1;
    let r = verify_certificate(&c, trunc()).unwrap();
    assert!(!r.all_passed());
    let mut c = build_slide_certificate(2).unwrap();
    c.steps[0].witness.as_mut().unwrap().closure = Closure::new(Side::Left, 2, 1).unwrap();
    let r = verify_certificate(&c, trunc()).unwrap();
    assert!(r.first_failure().unwrap().witness.starts_with("invalid ideal witness"), "{r}");
}

#[test]
fn window_mismatch_rejected() {
    let c = build_slide_certificate(2).unwrap();
    let r = verify_certificate(&c, Truncation::new(SLIDE_HMAX + 4, 20).unwrap()).unwrap();
    let f = r.first_failure().unwrap();
    assert_eq!(f.name, "window");
    assert!(f.witness.contains("needs 14"));
}

#[test]
fn certificate_round_trips_through_json() {
    let c = build_slide_certificate(2).unwrap();
    let s = serde_json::to_string(&c).unwrap();
    let back: EquivCertificate = serde_json::from_str(&s).unwrap();
    assert_eq!(back, c);
}

#[test]
fn omega_objects_and_classes() {
    let (p, m) = omega_objects(2).unwrap();
    assert_eq!((p.obj.essential(), p.obj.trivial()), (1, 0));
    assert_eq!((m.obj.essential(), m.obj.trivial()), (0, 1));
    let (p, m) = omega_objects(3).unwrap();
    assert_eq!((p.obj.essential(), p.obj.trivial()), (2, 0));
    assert_eq!((m.obj.essential(), m.obj.trivial()), (1, 1));
    let x = AnnularElement::x();
    assert_eq!(omega_class(3).unwrap(), x.mul(&x).add(&x.scale(&qint_rat(2))));
    assert!(omega_objects(4).is_err());
}

#[test]
fn shadows_hold_in_the_fusion_quotient() {
    for n in [2, 3] {
        let r = k0_shadow(n).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn spin_labels() {
    use OmegaLabel::*;
    assert_eq!(spin_labeling_demo(2, &[true, false]).unwrap(), vec![Minus, Plus]);
    assert_eq!(spin_labeling_demo(3, &[true, true, true]).unwrap(), vec![Minus; 3]);
    assert!(spin_labeling_demo(2, &[]).unwrap().is_empty());
}
