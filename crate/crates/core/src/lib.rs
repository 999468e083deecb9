//! Exact Temperley-Lieb and cobordism computations for Jones-Wenzl
//! projectors and their categorified complexes, with replayable
//! certificates for handle slides modulo the projector ideal.

pub mod annulus;
pub mod cob;
pub mod coeff;
pub mod kom;
pub mod report;
pub mod slide;
pub mod tl;

mod error;

pub use error::Error;
