//! Chain complexes over the cobordism category: eventually periodic
//! complexes, cones, planar tensor products, simplification and the
//! universal projector complexes for two and three strands.

mod checks;
mod complex;
mod matrix;
mod ops;
mod projectors;

pub use complex::{validate, PeriodicComplex, SeriesTL, Tail, Truncation};
pub use matrix::{Level, Matrix, Summand};
pub use ops::{
    chain_map_defect, cone, deloop_complex, first_level_mismatch, gaussian_eliminate, glue_complex, simplify, tensor_with,
    ChainMap,
};
pub use projectors::{
    diagram_complex, dot_at, p2, p3, p3_sign_search, p3_with_signs, projector, SignSearch, P3_PRINTED_SIGNS,
};
pub use checks::{
    euler_check, idempotence_check, markov_plan, strip, trace_complex, turnback_check, turnback_check_on, turnback_complex, TraceReport,
};
