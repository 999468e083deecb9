//! Cell (standard) modules `V_{n,k}` and the generic membership test for
//! the two-sided ideal generated by a projector.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::element::TLElement;
use crate::coeff::{qint_rat, RatFunc};
use crate::Error;

/// A half-diagram on `n` points: non-nested cups plus `k` defects, where no
/// defect sits under a cup.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfDiagram {
    /// `Some(j)` when point `i` is cupped to `j`, `None` for a defect.
    partner: Vec<Option<usize>>,
}

impl HalfDiagram {
    pub fn new(partner: Vec<Option<usize>>) -> Result<Self, Error> {
        let n = partner.len();
        let mut stack: Vec<usize> = Vec::new();
        for i in 0..n {
            match partner[i] {
                None => {
                    if !stack.is_empty() {
                        return Err(Error::InvalidArgument("defect enclosed by a cup".into()));
                    }
                }
                Some(j) if j >= n || partner[j] != Some(i) || j == i => {
                    return Err(Error::InvalidArgument("cup partners inconsistent".into()));
                }
                Some(j) if j > i => stack.push(i),
                Some(j) => {
                    if stack.pop() != Some(j) {
                        return Err(Error::InvalidArgument("cups cross".into()));
                    }
                }
            }
        }
        Ok(Self { partner })
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn defects(&self) -> usize {
        self.partner.iter().filter(|p| p.is_none()).count()
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        self.partner[i]
    }
}

impl fmt::Debug for HalfDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .partner
            .iter()
            .enumerate()
            .map(|(i, p)| match p {
                None => '|',
                Some(j) if *j > i => '(',
                Some(_) => ')',
            })
            .collect();
        write!(f, "{s}")
    }
}

/// All half-diagrams on `n` points with `k` defects.
pub fn cell_basis(n: usize, k: usize) -> Vec<HalfDiagram> {
    let mut out = Vec::new();
    if k > n || (n - k) % 2 != 0 {
        return out;
    }
    fn rec(n: usize, i: usize, defects_left: usize, stack: &mut Vec<usize>, cur: &mut Vec<Option<usize>>, out: &mut Vec<HalfDiagram>) {
        if i == n {
            if stack.is_empty() && defects_left == 0 {
                out.push(HalfDiagram { partner: cur.clone() });
            }
            return;
        }
        let remaining = n - i;
        if stack.is_empty() && defects_left > 0 {
            cur[i] = None;
            rec(n, i + 1, defects_left - 1, stack, cur, out);
        }
        if stack.len() + 1 + defects_left <= remaining - 1 {
            stack.push(i);
            rec(n, i + 1, defects_left, stack, cur, out);
            stack.pop();
        }
        if let Some(&j) = stack.last() {
            stack.pop();
            cur[i] = Some(j);
            cur[j] = Some(i);
            rec(n, i + 1, defects_left, stack, cur, out);
            stack.push(j);
            cur[j] = None;
            cur[i] = None;
        }
    }
    let mut cur = vec![None; n];
    rec(n, 0, k, &mut Vec::new(), &mut cur, &mut out);
    out.sort();
    out
}

/// A vector in the cell module `V_{n,k}`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellVector {
    n: usize,
    k: usize,
    terms: BTreeMap<HalfDiagram, RatFunc>,
}

impl CellVector {
    pub fn zero(n: usize, k: usize) -> Result<Self, Error> {
        if k > n || (n - k) % 2 != 0 {
            return Err(Error::InvalidArgument(format!("no cell module V_({n},{k})")));
        }
        Ok(Self { n, k, terms: BTreeMap::new() })
    }

    pub fn basis(h: HalfDiagram) -> Self {
        let (n, k) = (h.points(), h.defects());
        let mut terms = BTreeMap::new();
        terms.insert(h, RatFunc::one());
        Self { n, k, terms }
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn defects(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, h: &HalfDiagram) -> RatFunc {
        self.terms.get(h).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HalfDiagram, &RatFunc)> {
        self.terms.iter()
    }

    fn add_term(&mut self, h: HalfDiagram, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let s = &self.coeff(&h) + &c;
        if s.is_zero() {
            self.terms.remove(&h);
        } else {
            self.terms.insert(h, s);
        }
    }
}

impl fmt::Debug for CellVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({},{})", self.n, self.k)?;
        f.debug_map().entries(self.terms.iter().map(|(h, c)| (h, c.to_string()))).finish()
    }
}

/// Stacks one matching (given by its partner array) on top of a half-diagram.
/// Returns `None` when two defects get joined.
fn act_matching(partner: &[usize], h: &HalfDiagram) -> Option<(HalfDiagram, usize)> {
    let n = h.points();
    let mut out: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    let mut mid_seen = vec![false; n];
    for t in 0..n {
        if done[t] {
            continue;
        }
        let mut p = partner[n + t];
        let end = loop {
            if p >= n {
                break Some(p - n);
            }
            mid_seen[p] = true;
            match h.partner(p) {
                None => break None,
                Some(j) => {
                    mid_seen[j] = true;
                    p = partner[j];
                }
            }
        };
        done[t] = true;
        match end {
            Some(u) => {
                done[u] = true;
                out[t] = Some(u);
                out[u] = Some(t);
            }
            None => out[t] = None,
        }
    }
    // a defect reached from below but not from the top has been capped off
    let reached = out.iter().filter(|o| o.is_none()).count();
    if reached < h.defects() {
        return None;
    }
    let mut loops = 0;
    for m in 0..n {
        if mid_seen[m] {
            continue;
        }
        loops += 1;
        let mut p = m;
        loop {
            mid_seen[p] = true;
            let j = h.partner(p).expect("unreached points are cupped");
            mid_seen[j] = true;
            let next = partner[j];
            if next == m {
                break;
            }
            p = next;
        }
    }
    Some((HalfDiagram { partner: out }, loops))
}

/// The action `x · v`, with `x` stacked on top of `v`.
pub fn cell_action(x: &TLElement, v: &CellVector) -> Result<CellVector, Error> {
    if x.strands() != v.n {
        return Err(Error::StrandMismatch(x.strands(), v.n));
    }
    let two = qint_rat(2);
    let mut out = CellVector::zero(v.n, v.k)?;
    for (m, c) in x.terms() {
        let partner = m.partners();
        for (h, d) in &v.terms {
            if let Some((r, loops)) = act_matching(&partner, h) {
                out.add_term(r, &(c * d) * &two.pow(loops as u32));
            }
        }
    }
    Ok(out)
}

/// Whether `x ∈ TL_n` lies in the two-sided ideal generated by `p_N` (placed
/// anywhere among the strands), for generic `q`.
///
/// `1⊗p_N⊗1` acts on `V_{n,k}` without killing it exactly when some
/// half-diagram leaves the `N` projector points uncupped among themselves,
/// which needs `k ≥ 2N - n`. By semisimplicity the ideal is the sum of those
/// blocks, so `x` must act as zero on every `V_{n,k}` with `k < 2N - n`.
pub fn in_projector_ideal(x: &TLElement, level: usize) -> Result<bool, Error> {
    let n = x.strands();
    if n < level {
        return Err(Error::InvalidArgument(format!("membership in <p_{level}> needs n >= {level}, got {n}")));
    }
    let bound = (2 * level).saturating_sub(n);
    for k in (n % 2..bound).step_by(2) {
        for h in cell_basis(n, k) {
            if !cell_action(x, &CellVector::basis(h))?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
