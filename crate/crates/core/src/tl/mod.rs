//! Temperley-Lieb diagram algebras over `ℚ(q)` with loop value `[2]`.

mod cell;
mod element;
mod jw;
mod matching;

pub use cell::{cell_action, cell_basis, in_projector_ideal, CellVector, HalfDiagram};
pub use element::TLElement;
pub use jw::{jones_wenzl, mul_by_words, reduced_words, turnback_annihilation, MAX_JW};
pub use matching::{Matching, MAX_STRANDS};
