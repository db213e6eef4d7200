//! Gap probabilities of the edge process on one line.
//!
//! On line `x = 0` the edge kernel reduces to
//! `K(u1, u2) = sin(u1-u2)/(π(u1-u2)) + sin(u1+u2)/(π(u1+u2))`.
//! The probability `F(t)` that `[0, t]` holds no point is the Fredholm
//! determinant `det(I - K)` on `L²[0, t]`. It equals the probability that the
//! rescaled first swap time exceeds `t`, and `F(a + b)` is the probability
//! that the gap straddling a fixed time extends `a` to the left and `b` to the
//! right.

use crate::kernels::k_edge_diagonal;
use crate::quad::GaussLegendre;
use crate::special::zeta_prime_minus_one;
use crate::{Error, Result};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

/// Gauss–Legendre nodes and weights on `[0, t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NystromGrid {
    /// Right end of the interval.
    pub t: f64,
    /// Nodes, strictly inside `(0, t)`.
    pub nodes: Vec<f64>,
    /// Weights, summing to `t`.
    pub weights: Vec<f64>,
}

impl NystromGrid {
    /// Grid with `m` nodes on `[0, t]`.
    pub fn new(t: f64, m: usize) -> Self {
        let (nodes, weights) = GaussLegendre::new(m).on_interval(0.0, t);
        NystromGrid { t, nodes, weights }
    }
}

/// Node count used when the caller does not choose one.
pub fn default_nodes(t: f64) -> usize {
    64.max((4.0 * t).ceil() as usize + 32)
}

/// `log det(I - K)` on `[0, t]` by the symmetrised Nyström method with `m` nodes.
pub fn log_gap_probability(t: f64, m: usize) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("t must be a finite number ≥ 0, got {t}")));
    }
    if m < 4 {
        return Err(Error::Domain(format!("need at least 4 nodes, got {m}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let g = NystromGrid::new(t, m);
    let sw: Vec<f64> = g.weights.iter().map(|w| w.sqrt()).collect();
    let mat = DMatrix::from_fn(m, m, |i, j| {
        let k = k_edge_diagonal(0, g.nodes[i], g.nodes[j]);
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - sw[i] * sw[j] * k
    });
    if let Some(ch) = mat.clone().cholesky() {
        let l = ch.l_dirty();
        return check_log_det(t, m, 2.0 * (0..m).map(|i| l[(i, i)].ln()).sum::<f64>());
    }
    let lu = mat.lu();
    let u = lu.u();
    let mut log_abs = 0.0;
    let mut negative = false;
    for i in 0..m {
        let d = u[(i, i)];
        if d == 0.0 {
            return Err(Error::Numerical("singular Nyström matrix".into()));
        }
        log_abs += d.abs().ln();
        negative ^= d < 0.0;
    }
    if negative ^ (lu.p().determinant::<f64>() < 0.0) {
        return Err(Error::Numerical(format!(
            "Nyström determinant is negative at t = {t}"
        )));
    }
    check_log_det(t, m, log_abs)
}

/// The kernel is a positive contraction, so `det(I - K)` lies in `[0, 1]`.
/// A larger value means the grid does not resolve the kernel.
fn check_log_det(t: f64, m: usize, log_det: f64) -> Result<f64> {
    if log_det > 1e-10 {
        return Err(Error::Numerical(format!(
            "det(I - K) = {} > 1 at t = {t}: {m} nodes do not resolve the kernel",
            log_det.exp()
        )));
    }
    Ok(log_det.min(0.0))
}

/// `F(t) = P(no point of line 0 in [0, t])` with `m` Nyström nodes.
pub fn gap_probability(t: f64, m: usize) -> Result<f64> {
    log_gap_probability(t, m).map(f64::exp)
}

/// `F(t)` with the default node count.
pub fn gap_probability_default(t: f64) -> Result<f64> {
    gap_probability(t, default_nodes(t))
}

/// Distribution function of the rescaled first swap time, `1 - F(t)`.
pub fn first_swap_cdf(t: f64) -> Result<f64> {
    gap_probability_default(t).map(|f| 1.0 - f)
}

/// `P(T_- > a, T_+ > b) = F(a + b)`.
pub fn gap_joint(a: f64, b: f64) -> Result<f64> {
    if a < 0.0 || b < 0.0 {
        return Err(Error::Domain(format!("need a, b ≥ 0, got ({a}, {b})")));
    }
    gap_probability_default(a + b)
}

fn second_difference(g: f64, h: f64) -> Result<f64> {
    let f = gap_probability_default;
    Ok((f(g + h)? - 2.0 * f(g)? + f(g - h)?) / (h * h))
}

/// Density `g F''(g)` of the gap straddling a fixed time.
///
/// `F''` comes from central differences with step `max(1e-3, 1e-2 g)` (capped
/// at `g/2`) and one Richardson extrapolation. Negative values are clipped.
pub fn gap_density(g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::Domain(format!("gap must be positive, got {g}")));
    }
    let h = 1e-3f64.max(1e-2 * g).min(0.5 * g);
    let d1 = second_difference(g, h)?;
    let d2 = second_difference(g, 0.5 * h)?;
    Ok((g * (4.0 * d2 - d1) / 3.0).max(0.0))
}

fn first_difference(g: f64, h: f64) -> Result<f64> {
    let f = gap_probability_default;
    Ok((f(g + h)? - f(g - h)?) / (2.0 * h))
}

/// `F'(g)` by central differences with one Richardson extrapolation, using
/// the same step rule as [`gap_density`]. At `g = 0` a one-sided quadratic
/// fit is used.
pub fn gap_probability_derivative(g: f64) -> Result<f64> {
    if !(g >= 0.0) {
        return Err(Error::Domain(format!("need g ≥ 0, got {g}")));
    }
    if g == 0.0 {
        let f = gap_probability_default;
        let h = 1e-3;
        return Ok((-3.0 * f(0.0)? + 4.0 * f(h)? - f(2.0 * h)?) / (2.0 * h));
    }
    let h = 1e-3f64.max(1e-2 * g).min(0.5 * g);
    let d1 = first_difference(g, h)?;
    let d2 = first_difference(g, 0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// Distribution function of the straddling gap,
/// `∫_0^g s F''(s) ds = 1 - F(g) + g F'(g)`.
pub fn gap_cdf(g: f64) -> Result<f64> {
    if !(g >= 0.0) {
        return Err(Error::Domain(format!("need g ≥ 0, got {g}")));
    }
    if g == 0.0 {
        return Ok(0.0);
    }
    let f = gap_probability_default(g)?;
    let fp = gap_probability_derivative(g)?;
    Ok((1.0 - f + g * fp).clamp(0.0, 1.0))
}

/// Constants of the large-gap expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DysonConstants {
    /// `ζ'(-1)`.
    pub zeta_prime_minus_one: f64,
    /// `(7/24) ln 2 + (3/2) ζ'(-1)`.
    pub c0: f64,
}

impl DysonConstants {
    /// Computes the constants from first principles.
    pub fn new() -> Self {
        let z = zeta_prime_minus_one();
        DysonConstants {
            zeta_prime_minus_one: z,
            c0: 7.0 / 24.0 * LN_2 + 1.5 * z,
        }
    }
}

impl Default for DysonConstants {
    fn default() -> Self {
        DysonConstants::new()
    }
}

/// Large-gap expansion `-t²/4 - t/2 - (1/8) ln t + c0` of `ln F(t)`.
pub fn dyson_tail(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    Ok(-0.25 * t * t - 0.5 * t - 0.125 * t.ln() + DysonConstants::new().c0)
}
