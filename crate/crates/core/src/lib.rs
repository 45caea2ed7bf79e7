//! Computational engine for the q-deformed Euclidean algebra U_q(e^N).
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] and [`qscalar`]: dimension constants and exact scalars in s = q^{1/2};
//! * [`algebra`]: generator alphabet, relation catalog, parser and normal-ordering rewriter;
//! * [`rep`]: truncated lattice representations and sparse operators;
//! * [`verify`]: residual, adjointness, Casimir and highest-weight checks;
//! * [`classical`]: the q -> 1 limiting construction;
//! * [`tensor`]: highest-weight bookkeeping for tensor products with the singlet.

pub mod algebra;
pub mod classical;
pub mod error;
pub mod qscalar;
pub mod rep;
pub mod scalar;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use qscalar::QScalar;
pub use scalar::{metric, rho_vector, Dimension, MetricC, RhoVector};
