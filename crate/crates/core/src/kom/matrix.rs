use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cob::{Cob, Planar};
use crate::Error;

/// An object of the additive closure: a planar object with a `q`-shift.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub obj: Planar,
    pub shift: i32,
}

impl Summand {
    pub fn new(obj: Planar, shift: i32) -> Self {
        Self { obj, shift }
    }
}

pub type Level = Vec<Summand>;

/// A matrix of cobordisms; entry `(row, col)` maps source summand `col`
/// to target summand `row`. Zero entries are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MatrixRepr", from = "MatrixRepr")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Cob>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Cob)>,
}

impl From<Matrix> for MatrixRepr {
    fn from(m: Matrix) -> Self {
        Self { rows: m.rows, cols: m.cols, entries: m.entries.into_iter().map(|((r, c), x)| (r, c, x)).collect() }
    }
}

impl From<MatrixRepr> for Matrix {
    fn from(r: MatrixRepr) -> Self {
        let mut m = Matrix::zero(r.rows, r.cols);
        for (i, j, x) in r.entries {
            m.set(i, j, x);
        }
        m
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Cob> {
        self.entries.get(&(r, c))
    }

    /// Stores an entry; zero morphisms clear it.
    pub fn set(&mut self, r: usize, c: usize, x: Cob) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) outside {}x{}", self.rows, self.cols);
        if x.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), x);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Cob)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Cob)>) -> Self {
        let mut m = Self::zero(rows, cols);
        for (r, c, x) in entries {
            m.set(r, c, x);
        }
        m
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|(k, x)| (*k, x.neg())).collect() }
    }

    pub fn add(&self, o: &Self) -> Result<Self, Error> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::InvalidArgument(format!(
                "adding {}x{} and {}x{} matrices",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = self.clone();
        for (&(r, c), x) in &o.entries {
            let v = match out.entries.get(&(r, c)) {
                Some(y) => y.add(x)?,
                None => x.clone(),
            };
            out.set(r, c, v);
        }
        Ok(out)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &Matrix) -> Result<Matrix, Error> {
        if self.cols != f.rows {
            return Err(Error::InvalidArgument(format!(
                "composing {}x{} after {}x{}",
                self.rows, self.cols, f.rows, f.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Cob)>> = BTreeMap::new();
        for (&(j, k), x) in &f.entries {
            by_row.entry(j).or_default().push((k, x));
        }
        let mut acc: BTreeMap<(usize, usize), Cob> = BTreeMap::new();
        for (&(i, j), g) in &self.entries {
            if let Some(fs) = by_row.get(&j) {
                for &(k, fx) in fs {
                    let p = g.after(fx)?;
                    if p.is_zero() {
                        continue;
                    }
                    let v = match acc.remove(&(i, k)) {
                        Some(y) => y.add(&p)?,
                        None => p,
                    };
                    acc.insert((i, k), v);
                }
            }
        }
        Ok(Matrix::from_entries(self.rows, f.cols, acc.into_iter().map(|((i, k), x)| (i, k, x))))
    }

    /// Checks entry objects against the given source and target levels.
    pub fn check_shape(&self, src: &[Summand], tgt: &[Summand]) -> Result<(), Error> {
        if self.cols != src.len() || self.rows != tgt.len() {
            return Err(Error::ObjectMismatch(format!(
                "matrix is {}x{} between levels of size {} and {}",
                self.rows,
                self.cols,
                src.len(),
                tgt.len()
            )));
        }
        for (&(r, c), x) in &self.entries {
            if *x.src() != src[c].obj || *x.tgt() != tgt[r].obj {
                return Err(Error::ObjectMismatch(format!("entry ({r},{c}) is {x:?}")));
            }
        }
        Ok(())
    }

    /// Keeps only the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let rmap: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let cmap: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Matrix::zero(rows.len(), cols.len());
        for (&(r, c), x) in &self.entries {
            if let (Some(&i), Some(&j)) = (rmap.get(&r), cmap.get(&c)) {
                out.set(i, j, x.clone());
            }
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&Cob) -> Cob) -> Matrix {
        Matrix::from_entries(self.rows, self.cols, self.entries.iter().map(|(&(r, c), x)| (r, c, f(x))))
    }
}
