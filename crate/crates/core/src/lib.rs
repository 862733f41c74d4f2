//! Certified arithmetic for the difference of powers of two consecutive
//! balancing numbers.
//!
//! The balancing sequence 0, 1, 6, 35, 204, 1189, ... satisfies
//! B_n = 6 B_{n-1} - B_{n-2}. This crate decides, with error-tracked
//! arithmetic throughout, which B_{n+1}^x - B_n^x land back in the
//! sequence: it evaluates the explicit lower-bound constants for the
//! relevant linear forms in logarithms, reduces the resulting huge caps
//! with convergent-based reductions, audits the continued fraction of
//! log(4 sqrt 2)/log alpha, runs the exhaustive finite searches, and emits
//! a machine-checkable certificate of every stage.
//!
//! Modules:
//! - [`numerics`]: error-tracked fixed-point reals and certified comparison
//! - [`sequences`]: exact B_n / C_n arithmetic and membership testing
//! - [`contfrac`]: certified continued fractions and convergents
//! - [`bounds`]: the lower-bound constants, the bound chain, the reduction
//! - [`prover`]: the pipeline, the certificate, re-verification

pub mod bounds;
pub mod contfrac;
pub mod error;
pub mod numerics;
pub mod prover;
pub mod sequences;

pub use error::{Error, Result};
