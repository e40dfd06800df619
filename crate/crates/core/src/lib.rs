//! Construction, decomposition and evaluation of q-ary entanglement-assisted
//! quantum error-correcting codes whose receiver-side ebits are noisy.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf`]: GF(q) and GF(q²) arithmetic with conjugation and traces.
//! - [`linalg`]: row reduction, kernels and subspace algebra over any shipped field.
//! - [`symplectic`]: the symplectic space F_q^{2n}, its duals, weights and
//!   hyperbolic decomposition, plus the isometry φ to F_{q²}^n.
//! - [`addcodes`]: additive codes over GF(q²), their duals, radicals and minimum distance.
//! - [`eaqec`]: stabilizer / EA parameters, matching subgroups and combination constructions.
//! - [`pauli`]: a dense-matrix oracle for the generalized Pauli group over prime fields.
//! - [`fidelity`]: binomial channel-fidelity approximations and code comparison.
//! - [`cli`]: the `eaqecc` command line.

pub mod addcodes;
pub mod cli;
pub mod eaqec;
pub mod error;
pub mod fidelity;
pub mod gf;
pub mod linalg;
pub mod pauli;
pub mod symplectic;
pub mod text;

pub use error::{Error, Result};
pub use gf::{Elem, FieldElement, FieldSpec};
pub use linalg::Matrix;
