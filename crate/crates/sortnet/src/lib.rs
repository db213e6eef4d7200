//! Uniformly random sorting networks and their local limit.
//!
//! The crate covers the whole pipeline from combinatorics to analysis:
//!
//! * [`tableau`]: Young diagrams, standard and Poissonized tableaux, uniform
//!   sampling by the hook walk, exact counting.
//! * [`network`]: the Edelman–Greene map from staircase tableaux to reduced
//!   words of the reverse permutation.
//! * [`jumps`]: the jump point process of a Poissonized tableau, tableaux on
//!   the infinite staircase and the rescaled window around a column.
//! * [`local_eg`]: the min-based local Edelman–Greene algorithm, both on
//!   tableaux and directly on point configurations.
//! * [`kernels`]: the edge kernel `K_edge` and the finite-shape kernel
//!   `K_λ` evaluated by double contour integration.
//! * [`fredholm`]: gap probabilities `det(I - K)` on an interval, the first
//!   swap law, the size-biased gap law and the large-gap tail.
//! * [`experiments`]: seeded Monte Carlo studies comparing simulation to the
//!   analytic predictions.
//!
//! Supporting modules provide special functions ([`special`]), Gauss–Legendre
//! quadrature ([`quad`]), Kolmogorov–Smirnov statistics ([`stats`]) and
//! reproducible random streams ([`rng`]).

// Negated comparisons such as `!(t >= 0.0)` reject NaN along with
// out-of-range arguments.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod antisym;
pub mod error;
pub mod experiments;
pub mod fredholm;
pub mod jumps;
pub mod kernels;
pub mod local_eg;
pub mod network;
pub mod quad;
pub mod rng;
pub mod special;
pub mod stats;
pub mod tableau;

pub use error::{Error, Result};
