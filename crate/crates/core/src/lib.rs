//! Finite sections of the twisted Hilbert spaces `Z_α`.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational:
//!
//! * [`linalg`]: complex vectors, dense operators, norms and seeded sampling.
//! * [`centralizer`]: the scalar twist `f_α` and the centralizer `Ω_α`.
//! * [`zspace`]: points of `Z_α`, the quasi-norm, conjugation and direct sums.
//! * [`cartesian`]: the odd/even splitting onto `Z_α ⊕ Z_α` and diagonal multipliers.
//! * [`ideal`]: factorization certificates for operators factoring through a `Z_α` section.
//! * [`pelczynski`]: a witness checker and search engine for direct-sum isomorphisms.
//!
//! Every estimator draws its randomness from per-trial substreams of a single
//! seed, so a report is a pure function of its configuration.

#![no_std]

extern crate alloc;

pub mod cartesian;
pub mod centralizer;
mod error;
pub mod ideal;
pub mod linalg;
pub mod pelczynski;
mod sampling;
pub mod zspace;

pub use centralizer::Alpha;
pub use error::Error;
pub use linalg::{Complex, ComplexVector, DenseOperator, Family, RandomSpec};
pub use zspace::{ConstantReport, EstimatorConfig, ZPoint};
