//! Exact sparse multivariate polynomials over the rationals.

mod context;
mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod univariate;

pub(crate) use context::{same_ctx, valid_identifier};
pub use context::{Ctx, MonomialOrder, VarContext};
pub use matrix::{combinations, jacobian, jacobian_in, PolyMatrix, RatMatrix};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use polynomial::{Polynomial, Term};
pub use univariate::{gcd_degree, is_squarefree};
