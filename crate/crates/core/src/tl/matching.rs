use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// A crossingless matching of `2n` boundary points of a rectangle.
///
/// Point `i < n` is the `i`-th bottom point (left to right) and point
/// `n + i` the `i`-th top point. The canonical code reads the points
/// around the disk (bottom left to right, then top right to left) and
/// records an opening bracket wherever the partner comes later, so two
/// matchings are equal exactly when their codes are.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    n: u8,
    code: u64,
}

pub const MAX_STRANDS: usize = 32;

impl Matching {
    pub fn strands(&self) -> usize {
        self.n as usize
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// Position of boundary point `p` in the circular reading order.
    fn circ_pos(n: usize, p: usize) -> usize {
        if p < n {
            p
        } else {
            2 * n - 1 - (p - n)
        }
    }

    fn point_at(n: usize, pos: usize) -> usize {
        if pos < n {
            pos
        } else {
            n + (2 * n - 1 - pos)
        }
    }

    pub fn from_partners(partner: &[usize]) -> Result<Self, Error> {
        let len = partner.len();
        if len % 2 != 0 || len / 2 > MAX_STRANDS {
            return Err(Error::InvalidArgument(format!("bad point count {len}")));
        }
        let n = len / 2;
        let mut code = 0u64;
        let mut stack = Vec::new();
        for pos in 0..len {
            let p = Self::point_at(n, pos);
            let q = partner[p];
            if q >= len || partner[q] != p || q == p {
                return Err(Error::InvalidArgument("partner map is not a fixed-point-free involution".into()));
            }
            let qpos = Self::circ_pos(n, q);
            if qpos > pos {
                code |= 1 << pos;
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return Err(Error::InvalidArgument("matching has crossings".into()));
            }
        }
        Ok(Self { n: n as u8, code })
    }

    pub fn from_code(n: usize, code: u64) -> Result<Self, Error> {
        let m = Self { n: n as u8, code };
        let mut depth = 0i32;
        for pos in 0..2 * n {
            depth += if code >> pos & 1 == 1 { 1 } else { -1 };
            if depth < 0 {
                return Err(Error::InvalidArgument("unbalanced matching code".into()));
            }
        }
        if depth != 0 || (2 * n < 64 && code >> (2 * n) != 0) {
            return Err(Error::InvalidArgument("unbalanced matching code".into()));
        }
        Ok(m)
    }

    /// Partner of every boundary point.
    pub fn partners(&self) -> Vec<usize> {
        let n = self.strands();
        let mut out = vec![0; 2 * n];
        let mut stack = Vec::new();
        for pos in 0..2 * n {
            let p = Self::point_at(n, pos);
            if self.code >> pos & 1 == 1 {
                stack.push(p);
            } else {
                let q = stack.pop().expect("balanced code");
                out[p] = q;
                out[q] = p;
            }
        }
        out
    }

    pub fn identity(n: usize) -> Self {
        let partner: Vec<usize> = (0..2 * n).map(|p| if p < n { p + n } else { p - n }).collect();
        Self::from_partners(&partner).expect("identity is planar")
    }

    /// The generator `e_i` (1-based, `1 ≤ i < n`): a cap on top points
    /// `i, i+1` and a cup on the bottom ones.
    pub fn generator(n: usize, i: usize) -> Result<Self, Error> {
        if i == 0 || i >= n {
            return Err(Error::InvalidArgument(format!("e_{i} not in TL_{n}")));
        }
        let mut partner: Vec<usize> = (0..2 * n).map(|p| if p < n { p + n } else { p - n }).collect();
        let (a, b) = (i - 1, i);
        partner[a] = b;
        partner[b] = a;
        partner[n + a] = n + b;
        partner[n + b] = n + a;
        Ok(Self::from_partners(&partner).expect("generator is planar"))
    }

    /// Number of strands joining the bottom edge to the top edge.
    pub fn through_strands(&self) -> usize {
        let n = self.strands();
        self.partners().iter().take(n).filter(|&&q| q >= n).count()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.strands())
    }

    /// Stacks `self` on top of `below`, returning the diagram and the number
    /// of closed loops formed in the middle.
    pub fn compose(&self, below: &Matching) -> Result<(Matching, usize), Error> {
        if self.n != below.n {
            return Err(Error::StrandMismatch(self.strands(), below.strands()));
        }
        let n = self.strands();
        let top = self.partners();
        let bot = below.partners();
        let mut res = vec![usize::MAX; 2 * n];
        let mut seen_mid = vec![false; n];
        for start in 0..2 * n {
            if res[start] != usize::MAX {
                continue;
            }
            // (in_top_diagram, point)
            let (mut upper, mut pt) = (start >= n, start);
            let end = loop {
                let q = if upper { top[pt] } else { bot[pt] };
                if upper && q < n {
                    seen_mid[q] = true;
                    upper = false;
                    pt = q + n;
                } else if !upper && q >= n {
                    seen_mid[q - n] = true;
                    upper = true;
                    pt = q - n;
                } else {
                    break q;
                }
            };
            res[start] = end;
            res[end] = start;
        }
        let mut loops = 0;
        for m in 0..n {
            if seen_mid[m] {
                continue;
            }
            loops += 1;
            // walk the loop through middle point m
            let mut pt = m; // bottom point m of the upper diagram
            loop {
                seen_mid[pt] = true;
                let q = top[pt]; // lands on another bottom point of upper
                seen_mid[q] = true;
                let r = bot[q + n]; // from top point q of lower diagram
                let next = r - n;
                if next == m {
                    break;
                }
                pt = next;
            }
        }
        Ok((Matching::from_partners(&res)?, loops))
    }

    /// Places `self` to the left of `right`.
    pub fn juxtapose(&self, right: &Matching) -> Matching {
        let (a, b) = (self.strands(), right.strands());
        let n = a + b;
        let pa = self.partners();
        let pb = right.partners();
        let map_a = |p: usize| if p < a { p } else { n + (p - a) };
        let map_b = |p: usize| if p < b { a + p } else { n + a + (p - b) };
        let mut partner = vec![0; 2 * n];
        for p in 0..2 * a {
            partner[map_a(p)] = map_a(pa[p]);
        }
        for p in 0..2 * b {
            partner[map_b(p)] = map_b(pb[p]);
        }
        Matching::from_partners(&partner).expect("juxtaposition is planar")
    }

    /// Vertical mirror image (top and bottom exchanged).
    pub fn flip(&self) -> Matching {
        let n = self.strands();
        let p = self.partners();
        let sw = |x: usize| if x < n { x + n } else { x - n };
        let partner: Vec<usize> = (0..2 * n).map(|x| sw(p[sw(x)])).collect();
        Matching::from_partners(&partner).expect("mirror is planar")
    }

    /// Number of loops in the full Markov closure (top `i` joined to bottom `i`).
    pub fn closure_loops(&self) -> usize {
        let n = self.strands();
        let p = self.partners();
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for s in 0..2 * n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut x = s;
            loop {
                seen[x] = true;
                let y = p[x];
                seen[y] = true;
                x = if y < n { y + n } else { y - n };
                if x == s {
                    break;
                }
            }
        }
        loops
    }

    /// Loops of the closure, each given by how many of the `n` top-to-bottom
    /// closing arcs it runs along. In the annular closure these arcs cross the
    /// seam, so a loop is essential exactly when its count is odd.
    pub fn closure_loop_crossings(&self) -> Vec<usize> {
        let n = self.strands();
        let p = self.partners();
        let mut seen = vec![false; 2 * n];
        let mut out = Vec::new();
        for s in 0..2 * n {
            if seen[s] {
                continue;
            }
            let mut crossings = 0;
            let mut x = s;
            loop {
                seen[x] = true;
                let y = p[x];
                seen[y] = true;
                x = if y < n { y + n } else { y - n };
                crossings += 1;
                if x == s {
                    break;
                }
            }
            out.push(crossings);
        }
        out
    }

    /// Joins the last top point to the last bottom point.
    /// Returns the diagram on `n - 1` strands and the loops formed (0 or 1).
    pub fn close_last(&self) -> Result<(Matching, usize), Error> {
        let n = self.strands();
        if n == 0 {
            return Err(Error::InvalidArgument("no strand to close".into()));
        }
        let p = self.partners();
        let (b, t) = (n - 1, 2 * n - 1);
        if p[b] == t {
            let m = n - 1;
            let relabel = |x: usize| if x < n { x } else { x - 1 };
            let mut partner = vec![0; 2 * m];
            for x in (0..2 * n).filter(|&x| x != b && x != t) {
                partner[relabel(x)] = relabel(p[x]);
            }
            return Ok((Matching::from_partners(&partner)?, 1));
        }
        let mut partner = p.clone();
        let (x, y) = (p[b], p[t]);
        partner[x] = y;
        partner[y] = x;
        let m = n - 1;
        let relabel = |z: usize| if z < n { z } else { z - 1 };
        let mut out = vec![0; 2 * m];
        for z in (0..2 * n).filter(|&z| z != b && z != t) {
            out[relabel(z)] = relabel(partner[z]);
        }
        Ok((Matching::from_partners(&out)?, 0))
    }

    /// All crossingless matchings on `n` strands, in canonical order.
    pub fn enumerate(n: usize) -> Vec<Matching> {
        let mut out = Vec::new();
        fn rec(n2: usize, pos: usize, open: usize, code: u64, out: &mut Vec<u64>) {
            if pos == n2 {
                if open == 0 {
                    out.push(code);
                }
                return;
            }
            if open < n2 - pos {
                rec(n2, pos + 1, open + 1, code | 1 << pos, out);
            }
            if open > 0 {
                rec(n2, pos + 1, open - 1, code, out);
            }
        }
        let mut codes = Vec::new();
        rec(2 * n, 0, 0, 0, &mut codes);
        for c in codes {
            out.push(Matching { n: n as u8, code: c });
        }
        out.sort();
        out
    }

    /// Balanced-bracket rendering of the canonical code.
    pub fn brackets(&self) -> String {
        (0..2 * self.strands()).map(|pos| if self.code >> pos & 1 == 1 { '(' } else { ')' }).collect()
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}[{}]", self.n, self.brackets())
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.brackets())
    }
}
