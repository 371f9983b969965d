//! Exact scalars, dense matrices and linear algebra over Q(i).

mod gaussian;
pub mod linalg;
mod matrix;
mod rational;

pub use gaussian::{gr_field_ops, FieldOp, GaussianRational};
pub use linalg::{rank_of_family, solve_in_span, SpanSolution, SpanSolver};
pub use matrix::{ExactMatrix, Realm};
pub use rational::Rational;
