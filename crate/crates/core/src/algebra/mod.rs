//! Exact symbolic verification of operator identities.
//!
//! Elements of the algebra generated by `P`, `A` and `Abar` are kept in the
//! normal order `P^k A^m` with Laurent-polynomial coefficients in the spacing
//! `a`. Two exchange rules and the shift inverses are the whole presentation:
//! `A P = (P + a) A`, `Abar P = (P - a) Abar`, `A Abar = Abar A = 1`.

mod coefficient;
mod expr;
pub mod rewrite;
mod suite;
mod symbolic;

pub use coefficient::{Coefficient, GaussianRational};
pub use expr::{atom_normal_form, normal_form, normal_form_str, parse, Atom, Expression, MAX_EXPONENT};
pub use suite::{verify_symbolic_suite, Identity, IdentityKind, SymbolicCheck, IDENTITIES};
pub use symbolic::SymbolicOperator;
