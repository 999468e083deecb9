use std::fmt;

use serde::{Deserialize, Serialize};

use crate::tl::Matching;
use crate::Error;

/// A crossingless 1-manifold in the disk or the annulus with `m` marked
/// boundary points (all on the outer boundary).
///
/// Arcs carry a wrap bit: the parity of their crossings with a fixed ray
/// running from the puncture out to the right. In the disk every wrap bit is
/// zero and there are no essential circles. Closed components are counted
/// only, since circles of the same kind are interchangeable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Planar {
    partner: Vec<u16>,
    wrap: Vec<bool>,
    trivial: u16,
    essential: u16,
}

impl Planar {
    pub fn new(partner: Vec<usize>, wrap: Vec<bool>, trivial: usize, essential: usize) -> Result<Self, Error> {
        let m = partner.len();
        if wrap.len() != m {
            return Err(Error::InvalidArgument("wrap bits do not match points".into()));
        }
        for p in 0..m {
            let q = partner[p];
            if q >= m || q == p || partner[q] != p || wrap[p] != wrap[q] {
                return Err(Error::InvalidArgument(format!("bad arc at point {p}")));
            }
        }
        Ok(Self {
            partner: partner.iter().map(|&x| x as u16).collect(),
            wrap,
            trivial: trivial as u16,
            essential: essential as u16,
        })
    }

    /// Only circles.
    pub fn circles(trivial: usize, essential: usize) -> Self {
        Self { partner: Vec::new(), wrap: Vec::new(), trivial: trivial as u16, essential: essential as u16 }
    }

    pub fn empty() -> Self {
        Self::circles(0, 0)
    }

    /// A TL diagram as a disk object: bottom points `0..n`, top points `n..2n`.
    pub fn from_matching(m: &Matching) -> Self {
        let partner = m.partners();
        let wrap = vec![false; partner.len()];
        Self::new(partner, wrap, 0, 0).expect("matchings are valid")
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    pub fn wrap(&self, p: usize) -> bool {
        self.wrap[p]
    }

    pub fn trivial(&self) -> usize {
        self.trivial as usize
    }

    pub fn essential(&self) -> usize {
        self.essential as usize
    }

    pub fn is_disk_like(&self) -> bool {
        self.essential == 0 && self.wrap.iter().all(|w| !w)
    }

    /// The same arcs with `k` extra trivial and `e` extra essential circles.
    pub fn with_circles(&self, k: usize, e: usize) -> Self {
        let mut out = self.clone();
        out.trivial += k as u16;
        out.essential += e as u16;
        out
    }

    /// Drops `k` trivial circles.
    pub fn without_trivial(&self, k: usize) -> Result<Self, Error> {
        if k > self.trivial() {
            return Err(Error::InvalidArgument("not enough trivial circles".into()));
        }
        let mut out = self.clone();
        out.trivial -= k as u16;
        Ok(out)
    }

    /// The underlying matching when this is a disk object without circles
    /// on an even number of points (bottom half first).
    pub fn as_matching(&self) -> Option<Matching> {
        if !self.is_disk_like() || self.trivial > 0 || self.points() % 2 != 0 {
            return None;
        }
        Matching::from_partners(&self.partner.iter().map(|&x| x as usize).collect::<Vec<_>>()).ok()
    }

    /// Renumbers the marked points: point `p` becomes `perm[p]`.
    pub fn permute_points(&self, perm: &[usize]) -> Self {
        let m = self.points();
        let mut partner = vec![0u16; m];
        let mut wrap = vec![false; m];
        for p in 0..m {
            partner[perm[p]] = perm[self.partner(p)] as u16;
            wrap[perm[p]] = self.wrap[p];
        }
        Self { partner, wrap, trivial: self.trivial, essential: self.essential }
    }

    /// Flips the wrap bit of every arc joining a point in `lower` to one outside it.
    /// This converts between rays on opposite sides of the puncture.
    pub fn rewrap_crossing(&self, lower: &[usize]) -> Self {
        let mut out = self.clone();
        for p in 0..self.points() {
            let q = self.partner(p);
            if lower.contains(&p) != lower.contains(&q) {
                out.wrap[p] = !out.wrap[p];
            }
        }
        out
    }
}

impl fmt::Display for Planar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for p in 0..self.points() {
            let q = self.partner(p);
            if p < q {
                parts.push(format!("{p}-{q}{}", if self.wrap[p] { "~" } else { "" }));
            }
        }
        if self.trivial > 0 {
            parts.push(format!("O^{}", self.trivial));
        }
        if self.essential > 0 {
            parts.push(format!("X^{}", self.essential));
        }
        if parts.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Debug for Planar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Planar({self})")
    }
}
