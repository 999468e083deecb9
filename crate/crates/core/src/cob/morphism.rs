use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::alpha::AlphaPoly;
use super::planar::Planar;
use crate::Error;

/// The boundary cycles of a cobordism between `src` and `tgt`: closed curves
/// made of source arcs, target arcs and the vertical segments over the marked
/// points, followed by the source circles and the target circles.
#[derive(Clone, Debug)]
pub struct CycleMap {
    point_cycle: Vec<usize>,
    essential: Vec<bool>,
    arc_cycles: usize,
    src_trivial: usize,
    src_essential: usize,
    tgt_trivial: usize,
    tgt_essential: usize,
}

impl CycleMap {
    pub fn new(src: &Planar, tgt: &Planar) -> Result<Self, Error> {
        let m = src.points();
        if tgt.points() != m {
            return Err(Error::ObjectMismatch(format!("{src} and {tgt} have different boundaries")));
        }
        let mut point_cycle = vec![usize::MAX; m];
        let mut essential = Vec::new();
        for start in 0..m {
            if point_cycle[start] != usize::MAX {
                continue;
            }
            let c = essential.len();
            let mut parity = false;
            let mut p = start;
            loop {
                point_cycle[p] = c;
                let q = src.partner(p);
                parity ^= src.wrap(p);
                point_cycle[q] = c;
                let r = tgt.partner(q);
                parity ^= tgt.wrap(q);
                p = r;
                if p == start {
                    break;
                }
            }
            essential.push(parity);
        }
        let arc_cycles = essential.len();
        essential.extend(std::iter::repeat(false).take(src.trivial()));
        essential.extend(std::iter::repeat(true).take(src.essential()));
        essential.extend(std::iter::repeat(false).take(tgt.trivial()));
        essential.extend(std::iter::repeat(true).take(tgt.essential()));
        Ok(Self {
            point_cycle,
            essential,
            arc_cycles,
            src_trivial: src.trivial(),
            src_essential: src.essential(),
            tgt_trivial: tgt.trivial(),
            tgt_essential: tgt.essential(),
        })
    }

    pub fn count(&self) -> usize {
        self.essential.len()
    }

    pub fn arc_cycles(&self) -> usize {
        self.arc_cycles
    }

    pub fn is_essential(&self, c: usize) -> bool {
        self.essential[c]
    }

    /// Cycle through the vertical segment over point `p`.
    pub fn of_point(&self, p: usize) -> usize {
        self.point_cycle[p]
    }

    pub fn src_trivial(&self, i: usize) -> usize {
        assert!(i < self.src_trivial);
        self.arc_cycles + i
    }

    pub fn src_essential(&self, i: usize) -> usize {
        assert!(i < self.src_essential);
        self.arc_cycles + self.src_trivial + i
    }

    pub fn tgt_trivial(&self, i: usize) -> usize {
        assert!(i < self.tgt_trivial);
        self.arc_cycles + self.src_trivial + self.src_essential + i
    }

    pub fn tgt_essential(&self, i: usize) -> usize {
        assert!(i < self.tgt_essential);
        self.arc_cycles + self.src_trivial + self.src_essential + self.tgt_trivial + i
    }
}

/// A connected surface given by the boundary cycles it touches, its Euler
/// characteristic and its number of dots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub cycles: Vec<usize>,
    pub chi: i32,
    pub dots: u32,
}

impl Component {
    /// A genus-zero surface through the given cycles.
    pub fn planar(cycles: Vec<usize>, dots: u32) -> Self {
        let chi = 2 - cycles.len() as i32;
        Self { cycles, chi, dots }
    }
}

const DOT: u32 = 1;
const ANNULUS: u32 = 2;
const UNSET: u32 = u32::MAX;

fn ann_label(partner: usize, dot: bool) -> u32 {
    ((partner as u32) << 2) | ANNULUS | dot as u32
}

/// `ε(x^k)` for the Frobenius algebra `ℤ[α][x]/(x² - α)`.
fn epsilon(k: u32) -> AlphaPoly {
    if k % 2 == 1 {
        AlphaPoly::monomial(1, (k - 1) / 2)
    } else {
        AlphaPoly::zero()
    }
}

/// Normal form of one connected component: every trivial boundary cycle is
/// neck-cut off as a disk (with or without a dot) and the core is evaluated,
/// or kept as an annulus when exactly two boundary cycles are essential.
pub(crate) fn reduce_component(
    chi: i32,
    dots: u32,
    cycles: &[usize],
    essential: impl Fn(usize) -> bool,
) -> Result<Vec<(Vec<(usize, u32)>, AlphaPoly)>, Error> {
    let r = cycles.len() as i32;
    let twice_genus = 2 - chi - r;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::Malformed(format!("no surface with chi={chi} and {r} boundary cycles")));
    }
    let genus = (twice_genus / 2) as u32;
    let (ess, triv): (Vec<usize>, Vec<usize>) = cycles.iter().partition(|&&c| essential(c));
    if ess.len() > 2 {
        return Err(Error::Unsupported(format!(
            "component with {} essential boundary cycles is outside the supported class",
            ess.len()
        )));
    }
    if ess.len() == 1 {
        return Err(Error::Malformed("a surface cannot have exactly one essential boundary cycle".into()));
    }
    let base = AlphaPoly::constant(1i64 << genus);
    let mut out = Vec::new();
    for mask in 0u32..(1 << triv.len()) {
        let zeros = triv.len() as u32 - mask.count_ones();
        let k = dots + genus + zeros;
        let mut labels: Vec<(usize, u32)> =
            triv.iter().enumerate().map(|(i, &c)| (c, (mask >> i) & 1)).collect();
        let coeff = if ess.is_empty() {
            epsilon(k)
        } else {
            let dot = k % 2 == 1;
            labels.push((ess[0], ann_label(ess[1], dot)));
            labels.push((ess[1], ann_label(ess[0], dot)));
            AlphaPoly::monomial(1, k / 2)
        };
        if !coeff.is_zero() {
            out.push((labels, coeff.mul(&base)));
        }
    }
    Ok(out)
}

/// Evaluation of a closed connected surface of genus `g` carrying `dots` dots.
pub fn evaluate_closed(genus: u32, dots: u32) -> AlphaPoly {
    reduce_component(2 - 2 * genus as i32, dots, &[], |_| false)
        .expect("closed surfaces reduce")
        .into_iter()
        .next()
        .map_or_else(AlphaPoly::zero, |(_, c)| c)
}

/// A piece of a normal-form term: a disk on one cycle or an annulus on two.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub chi: i32,
    pub dots: u32,
}

pub(crate) fn pieces_of(key: &[u32]) -> (Vec<Piece>, Vec<usize>) {
    let mut pieces = Vec::new();
    let mut owner = vec![usize::MAX; key.len()];
    for (c, &l) in key.iter().enumerate() {
        if l & ANNULUS == 0 {
            owner[c] = pieces.len();
            pieces.push(Piece { chi: 1, dots: l & DOT });
        } else {
            let p = (l >> 2) as usize;
            if c < p {
                owner[c] = pieces.len();
                owner[p] = pieces.len();
                pieces.push(Piece { chi: 0, dots: l & DOT });
            }
        }
    }
    (pieces, owner)
}

/// Multiplies out per-component normal forms into full terms.
pub(crate) fn combine_components(
    ncycles: usize,
    parts: Vec<Vec<(Vec<(usize, u32)>, AlphaPoly)>>,
    coeff: &AlphaPoly,
    into: &mut BTreeMap<Vec<u32>, AlphaPoly>,
) {
    let mut acc: Vec<(Vec<u32>, AlphaPoly)> = vec![(vec![UNSET; ncycles], coeff.clone())];
    for options in parts {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for (key, c) in &acc {
            for (labels, v) in &options {
                let mut k = key.clone();
                for &(cyc, l) in labels {
                    k[cyc] = l;
                }
                next.push((k, c.mul(v)));
            }
        }
        acc = next;
        if acc.is_empty() {
            return;
        }
    }
    for (k, c) in acc {
        debug_assert!(k.iter().all(|&l| l != UNSET), "cycle left unlabelled");
        add_term(into, k, c);
    }
}

pub(crate) fn add_term(map: &mut BTreeMap<Vec<u32>, AlphaPoly>, key: Vec<u32>, c: AlphaPoly) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            let s = v.add(&c);
            if s.is_zero() {
                map.remove(&key);
            } else {
                *v = s;
            }
        }
        None => {
            map.insert(key, c);
        }
    }
}

/// A morphism of the dotted cobordism category in normal form: a
/// `ℤ[α]`-combination of neck-cut surfaces, each recorded by a label per
/// boundary cycle (disk with or without a dot, or one end of an annulus).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "CobRepr", try_from = "CobRepr")]
pub struct Cob {
    src: Planar,
    tgt: Planar,
    terms: BTreeMap<Vec<u32>, AlphaPoly>,
}

#[derive(Serialize, Deserialize)]
struct CobRepr {
    src: Planar,
    tgt: Planar,
    terms: Vec<(Vec<u32>, AlphaPoly)>,
}

impl From<Cob> for CobRepr {
    fn from(c: Cob) -> Self {
        Self { src: c.src, tgt: c.tgt, terms: c.terms.into_iter().collect() }
    }
}

impl TryFrom<CobRepr> for Cob {
    type Error = Error;

    fn try_from(r: CobRepr) -> Result<Self, Error> {
        let cm = CycleMap::new(&r.src, &r.tgt)?;
        let mut terms = BTreeMap::new();
        for (k, c) in r.terms {
            if k.len() != cm.count() || !valid_key(&k, &cm) {
                return Err(Error::Malformed(format!("bad cobordism term {k:?}")));
            }
            add_term(&mut terms, k, c);
        }
        Ok(Cob { src: r.src, tgt: r.tgt, terms })
    }
}

fn valid_key(key: &[u32], cm: &CycleMap) -> bool {
    key.iter().enumerate().all(|(c, &l)| {
        if l & ANNULUS == 0 {
            l <= 1 && !cm.is_essential(c)
        } else {
            let p = (l >> 2) as usize;
            p != c
                && p < key.len()
                && cm.is_essential(c)
                && key[p] & ANNULUS != 0
                && (key[p] >> 2) as usize == c
                && key[p] & DOT == l & DOT
        }
    })
}

/// Topological and quantum degree of a homogeneous morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree {
    pub deg_t: i32,
    pub deg_q: i32,
}

impl Degree {
    pub fn total(&self) -> i32 {
        self.deg_t + self.deg_q
    }
}

impl Cob {
    pub fn zero(src: Planar, tgt: Planar) -> Self {
        Self { src, tgt, terms: BTreeMap::new() }
    }

    pub fn src(&self) -> &Planar {
        &self.src
    }

    pub fn tgt(&self) -> &Planar {
        &self.tgt
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &AlphaPoly)> {
        self.terms.iter()
    }

    pub fn cycles(&self) -> CycleMap {
        CycleMap::new(&self.src, &self.tgt).expect("validated at construction")
    }

    pub(crate) fn from_terms(src: Planar, tgt: Planar, terms: BTreeMap<Vec<u32>, AlphaPoly>) -> Self {
        Self { src, tgt, terms }
    }

    /// The surface made of the given connected components, put in normal form.
    /// Every boundary cycle must be used by exactly one component.
    pub fn from_components(src: Planar, tgt: Planar, comps: &[Component]) -> Result<Self, Error> {
        let cm = CycleMap::new(&src, &tgt)?;
        let mut used = vec![false; cm.count()];
        let mut parts = Vec::new();
        for comp in comps {
            for &c in &comp.cycles {
                if c >= cm.count() || used[c] {
                    return Err(Error::InvalidArgument(format!("cycle {c} missing or used twice")));
                }
                used[c] = true;
            }
            parts.push(reduce_component(comp.chi, comp.dots, &comp.cycles, |c| cm.is_essential(c))?);
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::InvalidArgument(format!("cycle {c} not covered")));
        }
        let mut terms = BTreeMap::new();
        combine_components(cm.count(), parts, &AlphaPoly::one(), &mut terms);
        Ok(Self { src, tgt, terms })
    }

    /// One undotted disk on every boundary cycle (e.g. a saddle, cup or cap
    /// between arc patterns). Fails if some cycle is essential.
    pub fn disks(src: Planar, tgt: Planar) -> Result<Self, Error> {
        Self::dotted_disks(src, tgt, &[])
    }

    /// Disks on every cycle, dotted on the listed cycles.
    pub fn dotted_disks(src: Planar, tgt: Planar, dotted: &[usize]) -> Result<Self, Error> {
        let cm = CycleMap::new(&src, &tgt)?;
        let comps: Vec<Component> =
            (0..cm.count()).map(|c| Component::planar(vec![c], dotted.contains(&c) as u32)).collect();
        Self::from_components(src, tgt, &comps)
    }

    /// The identity: a disk over every arc and a cylinder over every circle.
    pub fn identity(obj: &Planar) -> Self {
        let cm = CycleMap::new(obj, obj).expect("same object");
        let mut comps: Vec<Component> = (0..cm.arc_cycles()).map(|c| Component::planar(vec![c], 0)).collect();
        for i in 0..obj.trivial() {
            comps.push(Component::planar(vec![cm.src_trivial(i), cm.tgt_trivial(i)], 0));
        }
        for i in 0..obj.essential() {
            comps.push(Component::planar(vec![cm.src_essential(i), cm.tgt_essential(i)], 0));
        }
        Self::from_components(obj.clone(), obj.clone(), &comps).expect("identity is well formed")
    }

    /// The identity with one extra dot on the sheet through the given cycle.
    pub fn dot_on(obj: &Planar, cycle: usize) -> Result<Self, Error> {
        let id = Self::identity(obj);
        let cm = id.cycles();
        let dot = Self::dotted_disks_on_identity(obj, &cm, cycle)?;
        Ok(dot)
    }

    fn dotted_disks_on_identity(obj: &Planar, cm: &CycleMap, cycle: usize) -> Result<Self, Error> {
        let mut comps: Vec<Component> =
            (0..cm.arc_cycles()).map(|c| Component::planar(vec![c], (c == cycle) as u32)).collect();
        for i in 0..obj.trivial() {
            let (a, b) = (cm.src_trivial(i), cm.tgt_trivial(i));
            comps.push(Component::planar(vec![a, b], (cycle == a || cycle == b) as u32));
        }
        for i in 0..obj.essential() {
            let (a, b) = (cm.src_essential(i), cm.tgt_essential(i));
            comps.push(Component::planar(vec![a, b], (cycle == a || cycle == b) as u32));
        }
        if cycle >= cm.count() {
            return Err(Error::InvalidArgument(format!("no cycle {cycle}")));
        }
        Self::from_components(obj.clone(), obj.clone(), &comps)
    }

    pub fn add(&self, o: &Self) -> Result<Self, Error> {
        if self.src != o.src || self.tgt != o.tgt {
            return Err(Error::ObjectMismatch(format!("adding {self:?} and {o:?}")));
        }
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            add_term(&mut terms, k.clone(), c.clone());
        }
        Ok(Self { src: self.src.clone(), tgt: self.tgt.clone(), terms })
    }

    pub fn neg(&self) -> Self {
        self.scale(&AlphaPoly::constant(-1))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, Error> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &AlphaPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            add_term(&mut terms, k.clone(), v.mul(c));
        }
        Self { src: self.src.clone(), tgt: self.tgt.clone(), terms }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&AlphaPoly::constant(c))
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn after(&self, f: &Self) -> Result<Self, Error> {
        compose(self, f)
    }

    /// Renumbers marked points in source and target alike.
    pub fn permute_points(&self, perm: &[usize]) -> Self {
        let src = self.src.permute_points(perm);
        let tgt = self.tgt.permute_points(perm);
        let old = self.cycles();
        let new = CycleMap::new(&src, &tgt).expect("permutation keeps the boundary");
        let mut map: Vec<usize> = (0..old.count()).collect();
        for p in 0..self.src.points() {
            map[old.of_point(p)] = new.of_point(perm[p]);
        }
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut nk = vec![0u32; k.len()];
            for (i, &l) in k.iter().enumerate() {
                nk[map[i]] = if l & ANNULUS == 0 { l } else { ((map[(l >> 2) as usize] as u32) << 2) | (l & 3) };
            }
            terms.insert(nk, c.clone());
        }
        Self { src, tgt, terms }
    }

    /// Flips the wrap bits of source and target arcs joining `lower` to its
    /// complement. Every boundary cycle crosses an even number of such arcs,
    /// so the surface labels are unchanged.
    pub fn rewrap_crossing(&self, lower: &[usize]) -> Self {
        Self { src: self.src.rewrap_crossing(lower), tgt: self.tgt.rewrap_crossing(lower), terms: self.terms.clone() }
    }

    /// Mirror image swapping the bottom and top halves of the marked points.
    pub fn reflect(&self) -> Self {
        self.permute_points(&half_swap(self.src.points()))
    }

    /// `Some(±1)` when the morphism is plus or minus the identity.
    pub fn identity_sign(&self) -> Option<i64> {
        if self.src != self.tgt || self.terms.is_empty() {
            return None;
        }
        let id = Self::identity(&self.src);
        if *self == id {
            Some(1)
        } else if *self == id.neg() {
            Some(-1)
        } else {
            None
        }
    }

    /// The scalar of a morphism `∅ → ∅`.
    pub fn as_scalar(&self) -> Option<AlphaPoly> {
        if self.src.points() > 0 || self.src.trivial() + self.src.essential() + self.tgt.trivial() + self.tgt.essential() > 0 {
            return None;
        }
        Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(AlphaPoly::zero))
    }

    /// `deg_t = χ - m/2 - 2·dots` summed with `-4` per power of `α`, for
    /// every monomial; errors unless all monomials agree.
    pub fn degree_t(&self) -> Result<i32, Error> {
        let half = (self.src.points() / 2) as i32;
        let mut deg = None;
        for (key, c) in &self.terms {
            let (pieces, _) = pieces_of(key);
            let chi: i32 = pieces.iter().map(|p| p.chi).sum();
            let dots: i32 = pieces.iter().map(|p| p.dots as i32).sum();
            for k in c.powers() {
                let d = chi - half - 2 * dots - 4 * k as i32;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => {
                        return Err(Error::InvalidArgument(format!("inhomogeneous morphism: degrees {e} and {d}")))
                    }
                    _ => {}
                }
            }
        }
        deg.ok_or_else(|| Error::InvalidArgument("the zero morphism has no degree".into()))
    }

    /// A `ℤ`-basis of the morphisms `src → tgt` of topological degree `deg_t`:
    /// every neck-cut surface with essential cycles paired into annuli,
    /// times the power of `α` that fixes the degree.
    pub fn hom_basis(src: &Planar, tgt: &Planar, deg_t: i32) -> Result<Vec<Cob>, Error> {
        let cm = CycleMap::new(src, tgt)?;
        let n = cm.count();
        let mut keys: Vec<Vec<u32>> = vec![vec![UNSET; n]];
        for c in 0..n {
            let mut next = Vec::new();
            for k in keys {
                if k[c] != UNSET {
                    next.push(k);
                } else if !cm.is_essential(c) {
                    for d in 0..2 {
                        let mut k2 = k.clone();
                        k2[c] = d;
                        next.push(k2);
                    }
                } else {
                    for p in c + 1..n {
                        if k[p] == UNSET && cm.is_essential(p) {
                            for d in 0..2 {
                                let mut k2 = k.clone();
                                k2[c] = ann_label(p, d == 1);
                                k2[p] = ann_label(c, d == 1);
                                next.push(k2);
                            }
                        }
                    }
                }
            }
            keys = next;
        }
        let mut out = Vec::new();
        for k in keys {
            let unit = Cob { src: src.clone(), tgt: tgt.clone(), terms: BTreeMap::from([(k, AlphaPoly::one())]) };
            let d = unit.degree_t()?;
            if d >= deg_t && (d - deg_t) % 4 == 0 {
                out.push(unit.scale(&AlphaPoly::monomial(1, ((d - deg_t) / 4) as u32)));
            }
        }
        Ok(out)
    }

    /// Degree of the morphism between the shifted objects `q^a src → q^b tgt`.
    pub fn degree(&self, src_shift: i32, tgt_shift: i32) -> Result<Degree, Error> {
        Ok(Degree { deg_t: self.degree_t()?, deg_q: tgt_shift - src_shift })
    }
}

/// The permutation exchanging bottom point `i` with top point `i`.
pub fn half_swap(m: usize) -> Vec<usize> {
    let n = m / 2;
    (0..m).map(|p| if p < n { p + n } else { p - n }).collect()
}

/// `g ∘ f`, gluing along the middle object and reducing each component.
pub fn compose(g: &Cob, f: &Cob) -> Result<Cob, Error> {
    if f.tgt != g.src {
        return Err(Error::ObjectMismatch(format!("cannot compose {} -> {} after {} -> {}", g.src, g.tgt, f.src, f.tgt)));
    }
    let mid = &f.tgt;
    let cf = f.cycles();
    let cg = g.cycles();
    let out_src = f.src.clone();
    let out_tgt = g.tgt.clone();
    let co = CycleMap::new(&out_src, &out_tgt)?;
    let mut terms = BTreeMap::new();
    if f.terms.is_empty() || g.terms.is_empty() {
        return Ok(Cob::from_terms(out_src, out_tgt, terms));
    }
    let m = mid.points();
    let arcs: Vec<usize> = (0..m).filter(|&p| p < mid.partner(p)).collect();
    let fp: Vec<_> = f.terms.iter().map(|(k, c)| (pieces_of(k), c)).collect();
    let gp: Vec<_> = g.terms.iter().map(|(k, c)| (pieces_of(k), c)).collect();
    for ((fpieces, fown), fc) in &fp {
        for ((gpieces, gown), gc) in &gp {
            let nf = fpieces.len();
            let mut uf = UnionFind::new(nf + gpieces.len());
            let chi: Vec<i32> = fpieces.iter().chain(gpieces.iter()).map(|p| p.chi).collect();
            let dots: Vec<u32> = fpieces.iter().chain(gpieces.iter()).map(|p| p.dots).collect();
            let mut cuts = Vec::new();
            for &p in &arcs {
                cuts.push((fown[cf.of_point(p)], nf + gown[cg.of_point(p)], 1));
            }
            for i in 0..mid.trivial() {
                cuts.push((fown[cf.tgt_trivial(i)], nf + gown[cg.src_trivial(i)], 0));
            }
            for i in 0..mid.essential() {
                cuts.push((fown[cf.tgt_essential(i)], nf + gown[cg.src_essential(i)], 0));
            }
            for &(a, b, _) in &cuts {
                uf.union(a, b);
            }
            // output cycle -> piece
            let mut rep = vec![0usize; co.count()];
            for c in 0..co.arc_cycles() {
                let p = (0..out_src.points()).find(|&p| co.of_point(p) == c).expect("arc cycle has points");
                rep[c] = fown[cf.of_point(p)];
            }
            for i in 0..out_src.trivial() {
                rep[co.src_trivial(i)] = fown[cf.src_trivial(i)];
            }
            for i in 0..out_src.essential() {
                rep[co.src_essential(i)] = fown[cf.src_essential(i)];
            }
            for i in 0..out_tgt.trivial() {
                rep[co.tgt_trivial(i)] = nf + gown[cg.tgt_trivial(i)];
            }
            for i in 0..out_tgt.essential() {
                rep[co.tgt_essential(i)] = nf + gown[cg.tgt_essential(i)];
            }
            let parts = reduce_glued(&mut uf, &chi, &dots, &cuts, &rep, |c| co.is_essential(c))?;
            combine_components(co.count(), parts, &fc.mul(gc), &mut terms);
        }
    }
    Ok(Cob::from_terms(out_src, out_tgt, terms))
}

/// Groups glued pieces into components and reduces each one.
/// `cuts` lists glued pairs with the Euler characteristic of the gluing locus.
pub(crate) fn reduce_glued(
    uf: &mut UnionFind,
    chi: &[i32],
    dots: &[u32],
    cuts: &[(usize, usize, i32)],
    rep: &[usize],
    essential: impl Fn(usize) -> bool + Copy,
) -> Result<Vec<Vec<(Vec<(usize, u32)>, AlphaPoly)>>, Error> {
    let n = chi.len();
    let mut comp_chi: BTreeMap<usize, i32> = BTreeMap::new();
    let mut comp_dots: BTreeMap<usize, u32> = BTreeMap::new();
    for i in 0..n {
        let r = uf.find(i);
        *comp_chi.entry(r).or_insert(0) += chi[i];
        *comp_dots.entry(r).or_insert(0) += dots[i];
    }
    for &(a, _, x) in cuts {
        let r = uf.find(a);
        *comp_chi.get_mut(&r).unwrap() -= x;
    }
    let mut comp_cycles: BTreeMap<usize, Vec<usize>> = comp_chi.keys().map(|&r| (r, Vec::new())).collect();
    for (c, &piece) in rep.iter().enumerate() {
        let r = uf.find(piece);
        comp_cycles.get_mut(&r).unwrap().push(c);
    }
    let mut parts = Vec::new();
    for (r, cycles) in comp_cycles {
        let opts = reduce_component(comp_chi[&r], comp_dots[&r], &cycles, essential)?;
        if opts.is_empty() {
            return Ok(vec![Vec::new()]);
        }
        parts.push(opts);
    }
    Ok(parts)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl fmt::Display for Cob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let labels: Vec<String> = k
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &l)| {
                        if l & ANNULUS == 0 {
                            Some(format!("D{i}{}", if l & DOT == 1 { "*" } else { "" }))
                        } else if (l >> 2) as usize > i {
                            Some(format!("A{i},{}{}", l >> 2, if l & DOT == 1 { "*" } else { "" }))
                        } else {
                            None
                        }
                    })
                    .collect();
                format!("({c})[{}]", labels.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Cob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cob({} -> {}: {self})", self.src, self.tgt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tl::Matching;

    #[test]
    fn degree_zero_homs() {
        let x = Planar::circles(0, 1);
        let b = Cob::hom_basis(&x, &x, 0).unwrap();
        assert_eq!(b, vec![Cob::identity(&x)]);
        // a trivial circle: two disks with one dot between them, or a dotted
        // pair times α
        let o = Planar::circles(1, 0);
        assert_eq!(Cob::hom_basis(&o, &o, 0).unwrap().len(), 2);
        assert_eq!(Cob::hom_basis(&o, &o, -2).unwrap().len(), 2);
        assert!(Cob::hom_basis(&x, &Planar::empty(), 0).unwrap().is_empty());
    }

    fn disk_obj(n: usize, i: usize) -> Planar {
        let m = if i == 0 { Matching::identity(n) } else { Matching::generator(n, i).unwrap() };
        Planar::from_matching(&m)
    }

    #[test]
    fn closed_surfaces() {
        assert!(evaluate_closed(0, 0).is_zero());
        assert!(evaluate_closed(0, 1).is_one());
        assert!(evaluate_closed(0, 2).is_zero());
        assert_eq!(evaluate_closed(0, 3), AlphaPoly::monomial(1, 1));
        assert_eq!(evaluate_closed(1, 0), AlphaPoly::constant(2));
        assert_eq!(evaluate_closed(3, 0), AlphaPoly::monomial(8, 1));
    }

    #[test]
    fn two_dots_make_alpha() {
        let obj = disk_obj(1, 0);
        let dot = Cob::dot_on(&obj, 0).unwrap();
        let dd = dot.after(&dot).unwrap();
        assert_eq!(dd, Cob::identity(&obj).scale(&AlphaPoly::monomial(1, 1)));
    }

    #[test]
    fn identity_is_neutral() {
        let a = disk_obj(2, 0);
        let b = disk_obj(2, 1);
        let s = Cob::disks(a.clone(), b.clone()).unwrap();
        assert_eq!(Cob::identity(&b).after(&s).unwrap(), s);
        assert_eq!(s.after(&Cob::identity(&a)).unwrap(), s);
        let c = a.with_circles(2, 1);
        assert_eq!(Cob::identity(&c).after(&Cob::identity(&c)).unwrap(), Cob::identity(&c));
    }

    #[test]
    fn degrees() {
        let a = disk_obj(2, 0);
        let b = disk_obj(2, 1);
        let saddle = Cob::disks(a.clone(), b).unwrap();
        assert_eq!(saddle.degree_t().unwrap(), -1);
        let one = disk_obj(1, 0);
        let handle = Cob::from_components(one.clone(), one.clone(), &[Component { cycles: vec![0], chi: -1, dots: 0 }]).unwrap();
        assert_eq!(handle, Cob::dot_on(&one, 0).unwrap().scale_int(2));
        assert_eq!(handle.degree_t().unwrap(), -2);
        assert_eq!(Cob::dot_on(&one, 0).unwrap().degree_t().unwrap(), -2);
        assert_eq!(Cob::identity(&a).degree_t().unwrap(), 0);
        let mixed = Cob::identity(&one).add(&Cob::dot_on(&one, 0).unwrap()).unwrap();
        assert!(mixed.degree_t().is_err());
    }

    #[test]
    fn saddle_then_saddle_is_handle_like() {
        // id₂ → e₁ → id₂ by two saddles equals a tube, i.e. dot on one sheet plus dot on the other
        let a = disk_obj(2, 0);
        let b = disk_obj(2, 1);
        let s1 = Cob::disks(a.clone(), b.clone()).unwrap();
        let s2 = Cob::disks(b, a.clone()).unwrap();
        let x = s2.after(&s1).unwrap();
        assert_eq!(x.degree_t().unwrap(), -2);
        assert_eq!(x.num_terms(), 2);
    }

    #[test]
    fn torus_from_composition() {
        let circle = Planar::circles(1, 0);
        let empty = Planar::empty();
        let cup = Cob::disks(empty.clone(), circle.clone()).unwrap();
        let cap = Cob::disks(circle.clone(), empty.clone()).unwrap();
        // cap ∘ cup is an undotted sphere
        assert!(cap.after(&cup).unwrap().as_scalar().unwrap().is_zero());
        // the tube's trace via two saddles is a torus
        let dotted = Cob::dotted_disks(circle.clone(), empty, &[0]).unwrap();
        assert!(dotted.after(&cup).unwrap().as_scalar().unwrap().is_one());
    }

    #[test]
    fn annular_identity_composes() {
        let obj = Planar::circles(0, 2);
        let id = Cob::identity(&obj);
        assert_eq!(id.num_terms(), 1);
        assert_eq!(id.after(&id).unwrap(), id);
        let dot = Cob::dot_on(&obj, 0).unwrap();
        assert_eq!(dot.after(&dot).unwrap(), id.scale(&AlphaPoly::monomial(1, 1)));
    }

    #[test]
    fn one_essential_boundary_rejected() {
        let obj = Planar::circles(0, 1);
        assert!(Cob::disks(obj, Planar::empty()).is_err());
    }
}

#[cfg(test)]
mod serde_tests {
    use super::*;

    #[test]
    fn round_trip_and_reflection() {
        let a = Planar::new(vec![1, 0, 3, 2], vec![false; 4], 1, 0).unwrap();
        let b = Planar::new(vec![3, 2, 1, 0], vec![false; 4], 0, 0).unwrap();
        let f = Cob::dotted_disks(a.clone(), b.clone(), &[0]).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let back: Cob = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let r = f.reflect();
        assert_eq!(r.reflect(), f);
        let g = Cob::disks(b.clone(), a.clone()).unwrap();
        assert_eq!(g.after(&f).unwrap().reflect(), g.reflect().after(&r).unwrap());
    }
}
