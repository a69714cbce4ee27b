//! Exact linear algebra over Q(q) and the structural computations built on
//! it: normality certificates, centers, graded derivations.

mod center;
mod derivations;
pub mod linalg;
mod normal;
mod space;

pub use center::{center_basis, element_vector, space_elements};
pub use derivations::{
    b_ideal_failures, graded_derivation_space, inner_derivation, inner_span, space_derivations, DerivationCandidate, DerivationImage,
};
pub use linalg::{Field, KernelResult, SolveMode, SparseSystem};
pub use normal::{
    conjugate_past_normal, is_central, is_normal_qcentral, q_commutation_twist, right_divide, right_divide_by_normal,
    TwistCertificate, TwistEntry, TwistReport,
};
pub use space::{compare_spaces, Ambient, Coordinate, LinearSpace, SpaceComparison, SpaceRelation};
