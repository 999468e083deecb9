use std::collections::BTreeMap;

use proptest::prelude::*;
use skein_core::cob::{deloop, evaluate_closed, AlphaPoly, Cob, Component, CycleMap, Planar};
use skein_core::tl::Matching;

// Frobenius algebra oracle: A = Z[a]{1, x}, x² = a.
// Linear maps between tensor powers as (src bits, tgt bits) -> coefficient.
type Map = BTreeMap<(Vec<u8>, Vec<u8>), AlphaPoly>;

fn mult(v: &[(u8, AlphaPoly)], w: &[(u8, AlphaPoly)]) -> Vec<(u8, AlphaPoly)> {
    let mut out: BTreeMap<u8, AlphaPoly> = BTreeMap::new();
    for (a, ca) in v {
        for (b, cb) in w {
            let (bit, extra) = match a + b {
                0 => (0, AlphaPoly::one()),
                1 => (1, AlphaPoly::one()),
                _ => (0, AlphaPoly::monomial(1, 1)),
            };
            let e = out.entry(bit).or_insert_with(AlphaPoly::zero);
            *e = e.add(&ca.mul(cb).mul(&extra));
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn comult(v: &[(u8, AlphaPoly)], outs: usize) -> Vec<(Vec<u8>, AlphaPoly)> {
    if outs == 0 {
        return v.iter().filter(|(b, _)| *b == 1).map(|(_, c)| (vec![], c.clone())).collect();
    }
    let mut cur: Vec<(Vec<u8>, AlphaPoly)> = v.iter().map(|(b, c)| (vec![*b], c.clone())).collect();
    for _ in 1..outs {
        let mut next = Vec::new();
        for (bits, c) in cur {
            let (last, rest) = bits.split_last().unwrap();
            let mut push = |a: u8, b: u8, k: AlphaPoly| {
                let mut nb = rest.to_vec();
                nb.push(a);
                nb.push(b);
                next.push((nb, c.mul(&k)));
            };
            if *last == 0 {
                push(0, 1, AlphaPoly::one());
                push(1, 0, AlphaPoly::one());
            } else {
                push(1, 1, AlphaPoly::one());
                push(0, 0, AlphaPoly::monomial(1, 1));
            }
        }
        cur = next;
    }
    cur
}

/// One connected component with `s` inputs and `t` outputs.
fn component_map(s: usize, t: usize, genus: u32, dots: u32) -> Map {
    let mut out = Map::new();
    for state in 0..(1u32 << s) {
        let bits: Vec<u8> = (0..s).map(|i| (state >> i & 1) as u8).collect();
        let mut v = vec![(0u8, AlphaPoly::one())];
        for &b in &bits {
            v = mult(&v, &[(b, AlphaPoly::one())]);
        }
        for _ in 0..dots {
            v = mult(&v, &[(1, AlphaPoly::one())]);
        }
        for _ in 0..genus {
            v = mult(&v, &[(1, AlphaPoly::constant(2))]);
        }
        for (tb, c) in comult(&v, t) {
            if !c.is_zero() {
                let e = out.entry((bits.clone(), tb)).or_insert_with(AlphaPoly::zero);
                *e = e.add(&c);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The map of a surface between circle-only objects, cycles `0..s` in the
/// source and `s..s+t` in the target.
fn surface_map(s: usize, t: usize, comps: &[(Vec<usize>, u32, u32)]) -> Map {
    let mut acc: Map = BTreeMap::from([((vec![0u8; s], vec![0u8; t]), AlphaPoly::one())]);
    // assemble by filling bits per component
    let mut first = true;
    for (cycles, genus, dots) in comps {
        let ins: Vec<usize> = cycles.iter().copied().filter(|&c| c < s).collect();
        let outs: Vec<usize> = cycles.iter().copied().filter(|&c| c >= s).map(|c| c - s).collect();
        let m = component_map(ins.len(), outs.len(), *genus, *dots);
        let mut next = Map::new();
        for ((sb, tb), c) in &acc {
            for ((ib, ob), d) in &m {
                let consistent = first || ins.iter().zip(ib).all(|(&i, _)| sb[i] == 0) && outs.iter().all(|&o| tb[o] == 0);
                if !consistent {
                    continue;
                }
                let mut sb2 = sb.clone();
                let mut tb2 = tb.clone();
                for (&i, &b) in ins.iter().zip(ib) {
                    sb2[i] = b;
                }
                for (&o, &b) in outs.iter().zip(ob) {
                    tb2[o] = b;
                }
                let e = next.entry((sb2, tb2)).or_insert_with(AlphaPoly::zero);
                *e = e.add(&c.mul(d));
            }
        }
        first = false;
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

fn compose_maps(g: &Map, f: &Map) -> Map {
    let mut out = Map::new();
    for ((a, b), c) in f {
        for ((b2, d), e) in g {
            if b == b2 {
                let x = out.entry((a.clone(), d.clone())).or_insert_with(AlphaPoly::zero);
                *x = x.add(&c.mul(e));
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Oracle map of a normal-form cobordism between circle-only objects: every
/// label is a disk, so each term is a tensor of units and counits.
fn cob_map(f: &Cob) -> Map {
    let s = f.src().trivial();
    let t = f.tgt().trivial();
    let mut total = Map::new();
    for (key, c) in f.terms() {
        let comps: Vec<(Vec<usize>, u32, u32)> = key.iter().enumerate().map(|(i, &l)| (vec![i], 0, l & 1)).collect();
        for (k, v) in surface_map(s, t, &comps) {
            let e = total.entry(k).or_insert_with(AlphaPoly::zero);
            *e = e.add(&v.mul(c));
        }
    }
    total.retain(|_, c| !c.is_zero());
    total
}

fn random_surface(s: usize, t: usize, assign: &[usize], genus: &[u32], dots: &[u32]) -> (Vec<Component>, Vec<(Vec<usize>, u32, u32)>) {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (c, &g) in assign.iter().enumerate().take(s + t) {
        groups.entry(g).or_default().push(c);
    }
    let mut comps = Vec::new();
    let mut oracle = Vec::new();
    for (i, (_, cycles)) in groups.into_iter().enumerate() {
        let g = genus[i % genus.len()];
        let d = dots[i % dots.len()];
        comps.push(Component { cycles: cycles.clone(), chi: 2 - 2 * g as i32 - cycles.len() as i32, dots: d });
        oracle.push((cycles, g, d));
    }
    (comps, oracle)
}

#[test]
fn closed_surfaces_match_oracle() {
    for g in 0..=5 {
        for d in 0..=4 {
            let m = component_map(0, 0, g, d);
            let expect = m.get(&(vec![], vec![])).cloned().unwrap_or_else(AlphaPoly::zero);
            assert_eq!(evaluate_closed(g, d), expect, "genus {g} dots {d}");
        }
    }
    assert_eq!(evaluate_closed(3, 0), AlphaPoly::monomial(8, 1));
}

#[test]
fn deloop_two_circles_twice() {
    let obj = Planar::circles(2, 0);
    let d1 = deloop(&obj).unwrap();
    assert!(d1.check().unwrap().all_passed());
    let mut shifts = Vec::new();
    for (s, o) in &d1.summands {
        let d2 = deloop(o).unwrap();
        assert!(d2.check().unwrap().all_passed());
        for (t, e) in &d2.summands {
            assert_eq!(*e, Planar::empty());
            shifts.push(s + t);
        }
    }
    shifts.sort();
    assert_eq!(shifts, vec![-2, 0, 0, 2]);
}

fn strategy_surface(max: usize) -> impl Strategy<Value = (usize, usize, Vec<usize>, Vec<u32>, Vec<u32>)> {
    (0..=max, 0..=max).prop_flat_map(|(s, t)| {
        let n = (s + t).max(1);
        (Just(s), Just(t), proptest::collection::vec(0..n, n), proptest::collection::vec(0u32..=1, n), proptest::collection::vec(0u32..=2, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_form_matches_tqft((s, t, assign, genus, dots) in strategy_surface(3)) {
        let (comps, oracle) = random_surface(s, t, &assign, &genus, &dots);
        let f = Cob::from_components(Planar::circles(s, 0), Planar::circles(t, 0), &comps).unwrap();
        prop_assert_eq!(cob_map(&f), surface_map(s, t, &oracle));
    }

    #[test]
    fn composition_matches_tqft(
        (s, t, a1, g1, d1) in strategy_surface(2),
        u in 0usize..=2,
        a2 in proptest::collection::vec(0usize..4, 4),
        g2 in proptest::collection::vec(0u32..=1, 4),
        d2 in proptest::collection::vec(0u32..=1, 4),
    ) {
        let (c1, _) = random_surface(s, t, &a1, &g1, &d1);
        let f = Cob::from_components(Planar::circles(s, 0), Planar::circles(t, 0), &c1).unwrap();
        let mut a2 = a2;
        a2.resize(t + u, 0);
        let (c2, _) = random_surface(t, u, &a2, &g2, &d2);
        let g = Cob::from_components(Planar::circles(t, 0), Planar::circles(u, 0), &c2).unwrap();
        let gf = g.after(&f).unwrap();
        prop_assert_eq!(cob_map(&gf), compose_maps(&cob_map(&g), &cob_map(&f)));
    }
}

fn disk_object(n: usize, code: usize, circles: usize) -> Planar {
    let all = Matching::enumerate(n);
    Planar::from_matching(&all[code % all.len()]).with_circles(circles, 0)
}

fn random_cob(src: &Planar, tgt: &Planar, assign: &[usize], dots: &[u32]) -> Cob {
    let cm = CycleMap::new(src, tgt).unwrap();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..cm.count() {
        groups.entry(assign[c % assign.len()]).or_default().push(c);
    }
    let comps: Vec<Component> =
        groups.into_values().enumerate().map(|(i, cycles)| Component::planar(cycles, dots[i % dots.len()])).collect();
    Cob::from_components(src.clone(), tgt.clone(), &comps).unwrap()
}

fn objects() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=3, proptest::collection::vec((0usize..5, 0usize..=1), 4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_associative(
        (n, objs) in objects(),
        assign in proptest::collection::vec(proptest::collection::vec(0usize..3, 8), 3),
        dots in proptest::collection::vec(proptest::collection::vec(0u32..=2, 4), 3),
    ) {
        let o: Vec<Planar> = objs.iter().map(|&(c, k)| disk_object(n, c, k)).collect();
        let f = random_cob(&o[0], &o[1], &assign[0], &dots[0]);
        let g = random_cob(&o[1], &o[2], &assign[1], &dots[1]);
        let h = random_cob(&o[2], &o[3], &assign[2], &dots[2]);
        let left = h.after(&g.after(&f).unwrap()).unwrap();
        let right = h.after(&g).unwrap().after(&f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn degree_is_additive(
        (n, objs) in objects(),
        assign in proptest::collection::vec(proptest::collection::vec(0usize..3, 8), 2),
        dots in proptest::collection::vec(proptest::collection::vec(0u32..=2, 4), 2),
    ) {
        let o: Vec<Planar> = objs.iter().map(|&(c, k)| disk_object(n, c, k)).collect();
        let f = random_cob(&o[0], &o[1], &assign[0], &dots[0]);
        let g = random_cob(&o[1], &o[2], &assign[1], &dots[1]);
        let gf = g.after(&f).unwrap();
        if !gf.is_zero() && !f.is_zero() && !g.is_zero() {
            prop_assert_eq!(gf.degree_t().unwrap(), f.degree_t().unwrap() + g.degree_t().unwrap());
        }
    }
}
