//! Exact symbolic verification of compatible tuples of complete polynomial
//! vector fields on affine varieties.
//!
//! The crate is layered bottom-up:
//!
//! - [`poly`] and [`groebner`]: exact polynomial arithmetic over the
//!   rationals, parsing, matrices, Gröbner bases and ideal membership.
//! - [`derivations`]: varieties, vector fields as derivations, kernel
//!   degrees, completeness certificates and algebraic flows.
//! - [`certificates`]: admissible trees, condition (1) evidence, bracket
//!   identities, spanning and sufficiency checks, tuple verification.
//! - [`gv`]: Gromov–Vaserstein fibrations for the special linear and
//!   symplectic groups, determinant fields, fiber reduction, smoothness.
//! - [`catalog`]: ready-made certificate bundles.
//! - [`certfile`]: the text and JSON certificate file formats.

pub mod catalog;
pub mod certfile;
pub mod certificates;
pub mod derivations;
pub mod error;
pub mod groebner;
pub mod gv;
pub mod poly;
pub mod rational;

pub use error::{Error, Result};
pub use groebner::IdealPresentation;
pub use poly::{parse_poly, Ctx, MonomialOrder, PolyMatrix, Polynomial, VarContext};
pub use rational::Rational;
