//! Exact symbolic arithmetic: multivariate rational polynomials in named
//! parameters, and expressions that are polynomial in `s` or hyperbolic in
//! `u = s + theta` with such coefficients.

pub mod expr;
pub mod gcd;
pub mod param;
pub mod parse;
pub mod poly;

pub use expr::{BasisTerm, CoefficientSystem, ExprError, Mode, SymExpr};
pub use param::{Monomial, Param, MAX_COEF_INDEX};
pub use poly::{rat, ParamPoly, Rational};
