//! Exact computation and verification toolkit for generalized central
//! trinomial coefficients `T_n(b, c)`, the coefficient of `x^n` in
//! `(x^2 + b x + c)^n`, and the structures built around them: the triangle
//! of `T(n, k)`, its row polynomials, the Laurent triangle `T_{n,k}(b, c)`,
//! Riordan arrays, Aigner recursive matrices and Hankel matrices.
//!
//! Everything is computed in exact arithmetic. Floats appear only where a
//! value is compared against the Gaussian density in [`limits`].
//!
//! Modules:
//!
//! * [`kernel`] integers, rationals, polynomials, truncated series, matrices
//!   and the `(b, c) -> (b^2 - 2c, c)` parity basis change.
//! * [`seqgen`] every sequence and triangle, each by several independent
//!   routes.
//! * [`riordan`] proper Riordan arrays and their A/Z sequences.
//! * [`aigner`] recursive matrices, the fundamental theorem and Hankel
//!   determinants.
//! * [`realroots`] Sturm chains, root isolation and strict interlacing.
//! * [`positivity`] total positivity, log-convexity, Stieltjes moment tests.
//! * [`limits`] mean, variance and asymptotic normality witnesses.
//! * [`structure`] parity-admissible matrices and the Hankel 2x2 minor
//!   factorization, with Motzkin analogues.
//! * [`report`] machine readable verification reports.

pub mod aigner;
pub mod error;
pub mod kernel;
pub mod limits;
pub mod positivity;
pub mod realroots;
pub mod report;
pub mod riordan;
pub mod seqgen;
pub mod structure;

pub use error::{Error, Result};
pub use kernel::{
    BiPoly, Integer, Matrix, Parity, ParityForm, Rational, Ring, TruncSeries, UVPoly, UniPoly,
};
