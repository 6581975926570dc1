//! Numerical verification of operator inequalities of Levin-Steckin type for
//! real symmetric matrices.
//!
//! The layers build on each other: [`matcore`] (eigensolver, functional
//! calculus, Loewner order), [`quad`] (matrix-valued Gauss-Legendre
//! quadrature), [`funcs`] and [`weights`] (the catalogue of operator convex
//! functions and weights on `[0, 1]`), [`frechet`] (directional derivatives),
//! [`ineq`] (the inequality checkers) and [`harness`] (seeded campaigns and
//! reports).

pub mod error;
pub mod frechet;
pub mod funcs;
pub mod harness;
pub mod ineq;
pub mod matcore;
pub mod quad;
pub mod weights;

pub use error::{Error, Result};
pub use funcs::{Convexity, Domain, OperatorFunction};
pub use ineq::{IneqReport, TheoremId};
pub use matcore::{apply_fn, eigh, loewner_leq, LoewnerVerdict, SymMatrix};
pub use quad::{QuadratureRule, SemiInfiniteRule};
pub use weights::{Monotonicity, WeightFunction};
