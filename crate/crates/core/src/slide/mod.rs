//! Annular closures of the projector complexes and certificates of
//! handle-slide equivalence.

mod certificate;
mod closure;
mod k0;
mod tails;

pub use closure::{
    close_cob, close_object, mirror_cob, mirror_complex, mirror_object, partial_trace, partial_trace_checked,
    Closure, Side,
};
pub use tails::{
    compare_tails, cone_identity_checks, identity_matrix, is_identity, match_complexes, permutation_at,
    permutation_matrix, scalar_ranks, tail, tail_equality_check, traced_tails, SummandPermutation,
};
pub use certificate::{
    build_slide_certificate, verify_certificate, Direction, EquivCertificate, EquivStep, IdealCertificate, IdealOp,
    CERT_VERSION, SLIDE_HMAX,
};
pub use k0::{
    close_through, closed_class, complex_class, k0_shadow, omega_class, omega_objects, spin_labeling_demo,
    traced_projector_class, OmegaLabel,
};
