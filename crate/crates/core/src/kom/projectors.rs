use std::sync::OnceLock;

use super::complex::{PeriodicComplex, Tail};
use super::matrix::{Matrix, Summand};
use crate::cob::{Cob, Planar};
use crate::tl::Matching;
use crate::Error;

pub(crate) fn tl_object(n: usize, word: &[usize]) -> Planar {
    let mut m = Matching::identity(n);
    for &i in word {
        m = m.compose(&Matching::generator(n, i).expect("valid generator")).expect("same size").0;
    }
    Planar::from_matching(&m)
}

fn saddle(a: &Planar, b: &Planar) -> Cob {
    Cob::disks(a.clone(), b.clone()).expect("disk objects")
}

/// Identity on `obj` with a dot on the sheet through point `p`.
pub fn dot_at(obj: &Planar, p: usize) -> Cob {
    let cm = Cob::identity(obj).cycles();
    Cob::dot_on(obj, cm.of_point(p)).expect("valid point")
}

/// Dot on the sheet of the top-left arc plus dot on the sheet of the bottom-left arc.
fn dot_sum(obj: &Planar, n: usize, sign: i64) -> Cob {
    let top = (n..2 * n).find(|&p| obj.partner(p) >= n).expect("a cap on top");
    let bot = (0..n).find(|&p| obj.partner(p) < n).expect("a cup on the bottom");
    dot_at(obj, top).add(&dot_at(obj, bot).scale_int(sign)).expect("same objects")
}

fn level(objs: &[&Planar], shift: i32) -> Vec<Summand> {
    objs.iter().map(|o| Summand::new((*o).clone(), shift)).collect()
}

/// The two-strand universal projector: `id₂ → q e₁ → q³ e₁ → q⁵ e₁ → ⋯`
/// with maps saddle, then top dot minus bottom dot and top dot plus bottom
/// dot alternately.
pub fn p2() -> PeriodicComplex {
    let id = tl_object(2, &[]);
    let e = tl_object(2, &[1]);
    let d0 = Matrix::from_entries(1, 1, [(0, 0, saddle(&id, &e))]);
    let minus = Matrix::from_entries(1, 1, [(0, 0, dot_sum(&e, 2, -1))]);
    let plus = Matrix::from_entries(1, 1, [(0, 0, dot_sum(&e, 2, 1))]);
    let tail = Tail { levels: vec![level(&[&e], 1), level(&[&e], 3)], d: vec![minus, plus], shift: 4 };
    PeriodicComplex::periodic(0, vec![level(&[&id], 0)], vec![d0], tail).expect("well formed").with_level(2)
}

/// Entry shapes of the three-strand complex, before signs.
struct P3Shapes {
    a: [Cob; 2],
    b: [[Cob; 2]; 2],
    c: [[Cob; 2]; 2],
    d: [[Cob; 2]; 2],
    e: [[Cob; 2]; 2],
}

fn p3_shapes() -> P3Shapes {
    let id = tl_object(3, &[]);
    let e = [tl_object(3, &[1]), tl_object(3, &[2])];
    let w = [tl_object(3, &[1, 2]), tl_object(3, &[2, 1])];
    let pick = |src: &[Planar; 2], tgt: &[Planar; 2], diag: bool| -> [[Cob; 2]; 2] {
        std::array::from_fn(|r| {
            std::array::from_fn(|c| if diag && r == c { dot_sum(&src[c], 3, 1) } else { saddle(&src[c], &tgt[r]) })
        })
    };
    P3Shapes {
        a: [saddle(&id, &e[0]), saddle(&id, &e[1])],
        b: pick(&e, &w, false),
        c: pick(&w, &w, true),
        d: pick(&w, &e, false),
        e: pick(&e, &e, true),
    }
}

/// Signs read off the printed matrices, in the order
/// `a0 a1 | b00 b01 b10 b11 | c.. | d.. | e..`.
pub const P3_PRINTED_SIGNS: [i8; 18] = [-1, 1, 1, -1, -1, 1, 1, 1, 1, 1, 1, -1, -1, 1, 1, 1, 1, 1];

/// Outcome of searching sign assignments for the three-strand complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSearch {
    pub printed: [i8; 18],
    pub chosen: [i8; 18],
    /// Number of assignments with `d∘d = 0` everywhere.
    pub solutions: usize,
    /// Entries where the chosen signs differ from the printed ones.
    pub changed: Vec<usize>,
    /// The first composite that fails for the printed signs.
    pub printed_failure: Option<String>,
}

fn mat2(s: &[i8], m: &[[Cob; 2]; 2]) -> Matrix {
    Matrix::from_entries(2, 2, (0..4).map(|k| (k / 2, k % 2, m[k / 2][k % 2].scale_int(s[k] as i64))))
}

fn col2(s: &[i8], a: &[Cob; 2]) -> Matrix {
    Matrix::from_entries(2, 1, (0..2).map(|k| (k, 0, a[k].scale_int(s[k] as i64))))
}

fn matrices(sh: &P3Shapes, s: &[i8; 18]) -> [Matrix; 5] {
    [col2(&s[0..2], &sh.a), mat2(&s[2..6], &sh.b), mat2(&s[6..10], &sh.c), mat2(&s[10..14], &sh.d), mat2(&s[14..18], &sh.e)]
}

/// Composites that must vanish, as index pairs into the five matrices
/// (second after first); the last one is the periodic wrap.
const SQUARES: [(usize, usize, &str); 5] = [(0, 1, "BA"), (1, 2, "CB"), (2, 3, "DC"), (3, 4, "ED"), (4, 1, "BE")];

/// Enumerates all sign assignments with `d∘d = 0` and picks the one
/// closest to the printed signs (ties broken lexicographically).
pub fn p3_sign_search() -> SignSearch {
    let sh = p3_shapes();
    let printed = P3_PRINTED_SIGNS;
    let pm = matrices(&sh, &printed);
    let printed_failure = SQUARES.iter().find_map(|&(i, j, name)| {
        let x = pm[j].after(&pm[i]).expect("composable");
        (!x.is_zero()).then(|| format!("{name} = {:?}", x.entries().next().map(|(k, v)| (k, v.to_string())).unwrap()))
    });
    // matrix k occupies sign slots ranges[k]
    let ranges = [0..2, 2..6, 6..10, 10..14, 14..18];
    let mut best: Option<(usize, [i8; 18])> = None;
    let mut solutions = 0;
    let mut signs = [0i8; 18];
    fn assign(k: usize, ranges: &[std::ops::Range<usize>; 5], signs: &mut [i8; 18], sh: &P3Shapes, found: &mut dyn FnMut(&[i8; 18])) {
        if k == 5 {
            found(signs);
            return;
        }
        let len = ranges[k].len();
        for mask in 0..(1u32 << len) {
            for b in 0..len {
                signs[ranges[k].start + b] = if mask >> b & 1 == 1 { -1 } else { 1 };
            }
            let ms = matrices(sh, signs);
            let ok = SQUARES
                .iter()
                .filter(|&&(i, j, _)| i.max(j) == k)
                .all(|&(i, j, _)| ms[j].after(&ms[i]).expect("composable").is_zero());
            if ok {
                assign(k + 1, ranges, signs, sh, found);
            }
        }
    }
    assign(0, &ranges, &mut signs, &sh, &mut |s: &[i8; 18]| {
        solutions += 1;
        let dist = s.iter().zip(printed.iter()).filter(|(a, b)| a != b).count();
        let better = match &best {
            None => true,
            Some((d, b)) => dist < *d || (dist == *d && s < b),
        };
        if better {
            best = Some((dist, *s));
        }
    });
    let chosen = best.map(|(_, s)| s).unwrap_or(printed);
    let changed = (0..18).filter(|&i| chosen[i] != printed[i]).collect();
    SignSearch { printed, chosen, solutions, changed, printed_failure }
}

fn p3_signs() -> &'static [i8; 18] {
    static SIGNS: OnceLock<[i8; 18]> = OnceLock::new();
    SIGNS.get_or_init(|| p3_sign_search().chosen)
}

/// The three-strand universal projector with the given signs.
pub fn p3_with_signs(signs: &[i8; 18]) -> PeriodicComplex {
    let sh = p3_shapes();
    let [a, b, c, d, e] = matrices(&sh, signs);
    let id = tl_object(3, &[]);
    let ee = [tl_object(3, &[1]), tl_object(3, &[2])];
    let ww = [tl_object(3, &[1, 2]), tl_object(3, &[2, 1])];
    let tail = Tail {
        levels: vec![level(&[&ww[0], &ww[1]], 2), level(&[&ww[0], &ww[1]], 4), level(&[&ee[0], &ee[1]], 5), level(&[&ee[0], &ee[1]], 7)],
        d: vec![c, d, e, b.clone()],
        shift: 6,
    };
    PeriodicComplex::periodic(0, vec![level(&[&id], 0), level(&[&ee[0], &ee[1]], 1)], vec![a, b], tail)
        .expect("well formed")
        .with_level(3)
}

/// The three-strand universal projector: `id₃ → q(e₁⊕e₂) → q²(e₁e₂⊕e₂e₁)`
/// followed by a 4-periodic block raising `q`-degree by 6 per period.
pub fn p3() -> PeriodicComplex {
    p3_with_signs(p3_signs())
}

/// The universal projector on `n ∈ {2, 3}` strands.
pub fn projector(n: usize) -> Result<PeriodicComplex, Error> {
    match n {
        2 => Ok(p2()),
        3 => Ok(p3()),
        _ => Err(Error::Unsupported(format!("no explicit projector complex for n = {n}"))),
    }
}

/// A single TL diagram as a complex in degree 0.
pub fn diagram_complex(n: usize, word: &[usize]) -> PeriodicComplex {
    PeriodicComplex::single(tl_object(n, word), 0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kom::validate;

    #[test]
    fn p2_validates() {
        let r = validate(&p2()).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn p2_objects() {
        let c = p2();
        let e = tl_object(2, &[1]);
        assert_eq!(c.level_at(3), vec![Summand::new(e.clone(), 5)]);
        assert_eq!(c.level_at(4), vec![Summand::new(e, 7)]);
    }

    #[test]
    fn printed_p3_signs_fail() {
        let s = p3_sign_search();
        assert!(s.printed_failure.is_some());
        assert!(s.solutions > 0);
        assert!(!validate(&p3_with_signs(&P3_PRINTED_SIGNS)).unwrap().all_passed());
    }

    #[test]
    fn p3_validates() {
        let r = validate(&p3()).unwrap();
        assert!(r.all_passed(), "{r}");
        let c = p3();
        assert_eq!(c.level_at(6)[0].shift, 8);
        assert_eq!(c.level_at(2)[0].obj, tl_object(3, &[1, 2]));
    }
}
