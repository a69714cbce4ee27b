//! Exact symbolic computation in the quantum matrix algebras `O_q(M_{m,n})`.
//!
//! The crate is organised bottom-up:
//!
//! - [`coeff`]: Laurent polynomials in `q` and the field Q(q);
//! - [`pbw`]: PBW monomials, elements in normal form and the straightening
//!   engine that implements multiplication;
//! - [`minors`]: quantum minors, the quantum determinant, the staircase
//!   minors `b_i` and the anti-endomorphism `gamma`;
//! - [`morphisms`]: generator-image maps, relation checks, torus and
//!   transpose automorphisms;
//! - [`analysis`]: q-commutation certificates, centre and derivation
//!   solvers, principal normal ideal membership;
//! - [`expr`]: the expression language used by the CLI and the identity
//!   manifest;
//! - [`verify`]: the identity suite and the step-by-step replay of the
//!   3x3 argument.

pub mod analysis;
pub mod coeff;
pub mod error;
pub mod expr;
pub mod minors;
pub mod morphisms;
pub mod pbw;
pub mod verify;

pub use error::{Error, Result};
