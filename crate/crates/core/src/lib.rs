//! Lower-bound constants for `|L(1,χ)|` over primitive, non-quadratic
//! Dirichlet characters, driven by nonnegative trigonometric polynomials.
//!
//! The pipeline: a coefficient vector `a` defines the even polynomial
//! `S(a,θ) = a₀ + 2Σ aₖ cos(kθ)`; an admissible, nonnegative choice of `a`
//! yields constants `c` and `λ` such that
//! `|L(1,χ)| ≥ F(s(q)) / (λ log(q/π))` for characters of order exceeding
//! the degree of `S`. The crate provides:
//!
//! - [`trigpoly`]: representation, products, autocorrelation construction,
//!   and certified global minima of the polynomials;
//! - [`specialfn`]: the real special functions (ζ, ζ′, ψ, ln Γ) behind the
//!   correction factor `F(s)` and the `G`-function inequalities;
//! - [`louboutin`]: the constant pipeline `a ↦ (A, c, λ, q_min)` and bound
//!   assembly;
//! - [`anneal`]: simulated-annealing searches for low-λ vectors (general
//!   degree and fixed small order), plus bounded integer searches;
//! - [`characters`]: Dirichlet characters mod q with conductor, order,
//!   parity, primitivized powers, and `L(1,χ)` evaluation;
//! - [`tables`]: bundled reference vectors and a mechanical verifier.

// `!(x > 0.0)` guards are deliberate: they reject NaN along with the
// out-of-domain sign.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod anneal;
pub mod characters;
pub mod error;
pub mod louboutin;
pub mod specialfn;
pub mod tables;
pub mod trigpoly;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
