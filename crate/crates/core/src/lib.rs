//! Operator calculus on a discrete momentum lattice.
//!
//! The crate is organised around five pieces:
//!
//! * [`lattice`]: the grid `p_j = p0 + j*a`, grid functions, the `a`-integral
//!   and the inner product built on it.
//! * [`operators`]: truncated matrix representations of the shift,
//!   difference, momentum, position and Hamiltonian operators, bracket
//!   arithmetic, interior residual checks and continuum-limit scans.
//! * [`algebra`]: an exact normal-ordering engine for the algebra generated by
//!   `P`, `A` and `Abar`, with a small expression language on top.
//! * [`eigen`]: the position-operator eigenproblem (recurrence, closed form,
//!   normalization, truncated spectrum).
//! * [`report`]: deterministic CSV/JSON serialisation helpers.

pub mod algebra;
pub mod eigen;
mod error;
pub mod lattice;
pub mod operators;
pub mod report;

pub use error::{Error, Result};
pub use lattice::{GridFunction, MomentumLattice};
pub use num_complex::Complex64;
