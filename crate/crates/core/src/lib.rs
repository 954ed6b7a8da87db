//! Exact invariants, certified optimization, and desk-scale brute-force
//! oracles for the supersaturation behavior of color-critical graphs.
//!
//! The library computes, for an `r`-critical pattern `F`:
//!
//! * the exact copy-counting polynomial of the Turán-plus-one-edge host and
//!   its leading constants (`alpha`, `zeta`, `pi`);
//! * the per-vertex density polynomial `P_F`, its slice minima `p(rho)`, and
//!   the threshold densities where that curve meets the line of slope
//!   `alpha`;
//! * lower bounds on how long adding edges to the Turán graph stays optimal,
//!   and the asymptotic-optimality threshold `c2`;
//! * exhaustive ground-truth values of `ex(n, F)`, `h_F(n, q)`, and
//!   `t_F(n, q)` at small sizes, with witnesses.
//!
//! Exact arithmetic (big rationals) is used everywhere a constant is
//! defined; floating point enters only in the optimizer, which reports
//! certified enclosures.

// index loops here usually walk several arrays in lockstep
#![allow(clippy::needless_range_loop)]

pub mod autom;
pub mod bernstein;
pub mod cache;
pub mod coloring;
pub mod counting;
pub mod critical;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod optimize;
pub mod oracle;
pub mod patterns;
pub mod poly;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;

/// Exact scalar used by the symbolic layer.
pub type Rat = num::BigRational;
/// Polynomials with exact rational coefficients.
pub type RatPoly = poly::Polynomial<Rat>;
/// The same polynomials as seen by the numeric optimizer.
pub type FloatPoly = poly::Polynomial<f64>;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// Exact-to-float conversion for reporting.
pub fn rat_to_f64(x: &Rat) -> f64 {
    use num::ToPrimitive;
    x.to_f64().expect("rational out of f64 range")
}

pub fn rat_poly_to_float(p: &RatPoly) -> FloatPoly {
    p.map(rat_to_f64)
}
