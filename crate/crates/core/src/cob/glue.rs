//! Planar gluing of objects and morphisms along marked points.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::alpha::AlphaPoly;
use super::morphism::{combine_components, pieces_of, reduce_glued, Cob, CycleMap, UnionFind};
use super::planar::Planar;
use crate::Error;

/// A marked point of one of the parts being glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Port {
    pub part: usize,
    pub point: usize,
}

impl Port {
    pub fn new(part: usize, point: usize) -> Self {
        Self { part, point }
    }
}

/// Which points are joined, and which become the marked points of the result
/// (in order).
#[derive(Clone, Debug, Default)]
pub struct GluePlan {
    pub joins: Vec<(Port, Port)>,
    pub outputs: Vec<Port>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Origin {
    Carried { part: usize, index: usize },
    Loop(Port),
}

#[derive(Clone, Debug)]
struct Glued {
    obj: Planar,
    trivial: Vec<Origin>,
    essential: Vec<Origin>,
}

fn check_plan(sizes: &[usize], plan: &GluePlan) -> Result<HashMap<Port, Port>, Error> {
    let mut joined = HashMap::new();
    let mut seen = vec![Vec::new(); sizes.len()];
    for (k, &s) in sizes.iter().enumerate() {
        seen[k] = vec![0u8; s];
    }
    let mut mark = |p: Port| -> Result<(), Error> {
        let slot = seen
            .get_mut(p.part)
            .and_then(|v| v.get_mut(p.point))
            .ok_or_else(|| Error::InvalidArgument(format!("no point {p:?}")))?;
        *slot += 1;
        if *slot > 1 {
            return Err(Error::InvalidArgument(format!("point {p:?} used twice")));
        }
        Ok(())
    };
    for &(a, b) in &plan.joins {
        mark(a)?;
        mark(b)?;
        joined.insert(a, b);
        joined.insert(b, a);
    }
    for &o in &plan.outputs {
        mark(o)?;
    }
    for (k, v) in seen.iter().enumerate() {
        if let Some(i) = v.iter().position(|&c| c == 0) {
            return Err(Error::InvalidArgument(format!("point {i} of part {k} left dangling")));
        }
    }
    Ok(joined)
}

fn glue_planar(parts: &[&Planar], plan: &GluePlan, joined: &HashMap<Port, Port>) -> Glued {
    let out_index: HashMap<Port, usize> = plan.outputs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut visited: Vec<Vec<bool>> = parts.iter().map(|p| vec![false; p.points()]).collect();
    let m = plan.outputs.len();
    let mut partner = vec![usize::MAX; m];
    let mut wrap = vec![false; m];
    for (k, &start) in plan.outputs.iter().enumerate() {
        if partner[k] != usize::MAX {
            continue;
        }
        let mut cur = start;
        let mut w = false;
        let end = loop {
            let obj = parts[cur.part];
            let j = obj.partner(cur.point);
            w ^= obj.wrap(cur.point);
            visited[cur.part][cur.point] = true;
            visited[cur.part][j] = true;
            let far = Port::new(cur.part, j);
            if let Some(&e) = out_index.get(&far) {
                break e;
            }
            cur = joined[&far];
        };
        partner[k] = end;
        partner[end] = k;
        wrap[k] = w;
        wrap[end] = w;
    }
    let mut trivial = Vec::new();
    let mut essential = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        trivial.extend((0..p.trivial()).map(|index| Origin::Carried { part: k, index }));
        essential.extend((0..p.essential()).map(|index| Origin::Carried { part: k, index }));
    }
    for (k, p) in parts.iter().enumerate() {
        for i in 0..p.points() {
            if visited[k][i] {
                continue;
            }
            let start = Port::new(k, i);
            let mut cur = start;
            let mut w = false;
            loop {
                let obj = parts[cur.part];
                let j = obj.partner(cur.point);
                w ^= obj.wrap(cur.point);
                visited[cur.part][cur.point] = true;
                visited[cur.part][j] = true;
                cur = joined[&Port::new(cur.part, j)];
                if cur == start {
                    break;
                }
            }
            if w {
                essential.push(Origin::Loop(start));
            } else {
                trivial.push(Origin::Loop(start));
            }
        }
    }
    let obj = Planar::new(partner, wrap, trivial.len(), essential.len()).expect("gluing yields a valid object");
    Glued { obj, trivial, essential }
}

/// Glues objects along the plan. Loops closed up by the gluing become circles,
/// essential exactly when they cross the ray an odd number of times.
pub fn glue_objects(parts: &[&Planar], plan: &GluePlan) -> Result<Planar, Error> {
    let sizes: Vec<usize> = parts.iter().map(|p| p.points()).collect();
    let joined = check_plan(&sizes, plan)?;
    Ok(glue_planar(parts, plan, &joined).obj)
}

/// Glues morphisms along the plan, applied to sources and targets alike.
pub fn glue_cobs(parts: &[&Cob], plan: &GluePlan) -> Result<Cob, Error> {
    let sizes: Vec<usize> = parts.iter().map(|c| c.src().points()).collect();
    let joined = check_plan(&sizes, plan)?;
    let srcs: Vec<&Planar> = parts.iter().map(|c| c.src()).collect();
    let tgts: Vec<&Planar> = parts.iter().map(|c| c.tgt()).collect();
    let gs = glue_planar(&srcs, plan, &joined);
    let gt = glue_planar(&tgts, plan, &joined);
    let co = CycleMap::new(&gs.obj, &gt.obj)?;
    let cms: Vec<CycleMap> = parts.iter().map(|c| c.cycles()).collect();
    let mut terms = BTreeMap::new();
    if parts.iter().any(|c| c.is_zero()) {
        return Ok(Cob::from_terms(gs.obj, gt.obj, terms));
    }

    // for each output cycle: the part and the part-cycle it starts from
    let mut rep_cycle: Vec<(usize, usize)> = vec![(0, 0); co.count()];
    for c in 0..co.arc_cycles() {
        let p = (0..plan.outputs.len()).find(|&p| co.of_point(p) == c).expect("arc cycle has a point");
        let port = plan.outputs[p];
        rep_cycle[c] = (port.part, cms[port.part].of_point(port.point));
    }
    let circle = |o: &Origin, carried: &dyn Fn(&CycleMap, usize) -> usize| match *o {
        Origin::Carried { part, index } => (part, carried(&cms[part], index)),
        Origin::Loop(port) => (port.part, cms[port.part].of_point(port.point)),
    };
    for (i, o) in gs.trivial.iter().enumerate() {
        rep_cycle[co.src_trivial(i)] = circle(o, &|cm, k| cm.src_trivial(k));
    }
    for (i, o) in gs.essential.iter().enumerate() {
        rep_cycle[co.src_essential(i)] = circle(o, &|cm, k| cm.src_essential(k));
    }
    for (i, o) in gt.trivial.iter().enumerate() {
        rep_cycle[co.tgt_trivial(i)] = circle(o, &|cm, k| cm.tgt_trivial(k));
    }
    for (i, o) in gt.essential.iter().enumerate() {
        rep_cycle[co.tgt_essential(i)] = circle(o, &|cm, k| cm.tgt_essential(k));
    }
    let joins: Vec<((usize, usize), (usize, usize))> = plan
        .joins
        .iter()
        .map(|(a, b)| ((a.part, cms[a.part].of_point(a.point)), (b.part, cms[b.part].of_point(b.point))))
        .collect();

    let per_part: Vec<Vec<_>> =
        parts.iter().map(|c| c.terms().map(|(k, v)| (pieces_of(k), v.clone())).collect()).collect();
    let mut idx = vec![0usize; parts.len()];
    loop {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut chi = Vec::new();
        let mut dots = Vec::new();
        let mut coeff = AlphaPoly::one();
        for (k, &i) in idx.iter().enumerate() {
            let ((pieces, _), c) = &per_part[k][i];
            offsets.push(chi.len());
            chi.extend(pieces.iter().map(|p| p.chi));
            dots.extend(pieces.iter().map(|p| p.dots));
            coeff = coeff.mul(c);
        }
        let owner = |(part, cyc): (usize, usize)| offsets[part] + per_part[part][idx[part]].0 .1[cyc];
        let cuts: Vec<(usize, usize, i32)> = joins.iter().map(|&(a, b)| (owner(a), owner(b), 1)).collect();
        let rep: Vec<usize> = rep_cycle.iter().map(|&x| owner(x)).collect();
        let mut uf = UnionFind::new(chi.len());
        for &(a, b, _) in &cuts {
            uf.union(a, b);
        }
        let comps = reduce_glued(&mut uf, &chi, &dots, &cuts, &rep, |c| co.is_essential(c))?;
        combine_components(co.count(), comps, &coeff, &mut terms);

        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(Cob::from_terms(gs.obj, gt.obj, terms));
            }
            idx[k] += 1;
            if idx[k] < per_part[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
