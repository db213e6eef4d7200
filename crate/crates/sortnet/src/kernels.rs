//! Correlation kernels: the edge kernel `K_edge` and the finite-shape kernel
//! `K_λ` of the jump process of a uniformly random Poissonized tableau.
//!
//! For `x2 ≥ x1`,
//! `K_edge(x1,u1; x2,u2) = (2/π) ∫_0^1 t^{x2-x1} cos(t u1 + π x1/2) cos(t u2 + π x2/2) dt`,
//! and for `x2 < x1` the same integrand is integrated over `[1, ∞)` with a
//! minus sign.
//!
//! `K_λ` is a double contour integral. The `z` contour encloses the integers
//! `0, …, λ_1 - x2 - 1` and the `w` contour encloses `0, …, n + x1 - 1`. The
//! `w` contour must never enclose the point `-z - (x2 - x1 + 1)` for `z` on
//! the `z` contour.

use crate::quad::{integrate_adaptive, GaussLegendre};
use crate::special::{expint_imag, ln_gamma, si, sin_tail};
use crate::tableau::YoungDiagram;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `i^k` with exact components.
fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn parity_sign(x: i64) -> f64 {
    if x.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `cos(t u + π x/2)` with the phase applied exactly.
fn cos_shift(t: f64, u: f64, x: i64) -> f64 {
    let p = i_pow(x);
    let (s, c) = (t * u).sin_cos();
    p.re * c - p.im * s
}

/// The edge kernel `K_edge(x1, u1; x2, u2)`.
pub fn k_edge(x1: i64, u1: f64, x2: i64, u2: f64) -> f64 {
    if x2 >= x1 {
        let d = (x2 - x1) as i32;
        let f = |t: f64| t.powi(d) * cos_shift(t, u1, x1) * cos_shift(t, u2, x2);
        let panels = 1 + ((u1.abs() + u2.abs()) / 4.0) as usize;
        2.0 / PI * integrate_adaptive(0.0, 1.0, panels, 1e-15, f)
    } else if x2 == x1 - 1 {
        -(parity_sign(x1) * sin_tail(u1 + u2) + sin_tail(u2 - u1)) / PI
    } else {
        // cos A cos B = (cos(A - B) + cos(A + B)) / 2, and
        // ∫_1^∞ t^{-m} cos(a t + φ) dt = Re(e^{iφ} E_m(-i a)).
        let m = (x1 - x2) as u32;
        let minus = i_pow(x1 - x2) * expint_imag(m, -(u1 - u2));
        let plus = i_pow(x1 + x2) * expint_imag(m, -(u1 + u2));
        -(2.0 / PI) * 0.5 * (minus.re + plus.re)
    }
}

/// Closed form of `K_edge(x, u1; x, u2)`:
/// `sin(u1-u2)/(π(u1-u2)) + (-1)^x sin(u1+u2)/(π(u1+u2))`.
pub fn k_edge_diagonal(x: i64, u1: f64, u2: f64) -> f64 {
    let sinc = |a: f64| if a == 0.0 { 1.0 / PI } else { a.sin() / (PI * a) };
    sinc(u1 - u2) + parity_sign(x) * sinc(u1 + u2)
}

/// Expected number of points of the edge process on `{x} × [a, b]`:
/// `(b-a)/π + ((-1)^x / 2π) (Si(2b) - Si(2a))`.
pub fn expected_count(x: i64, a: f64, b: f64) -> Result<f64> {
    if a < 0.0 || a > b {
        return Err(Error::Domain(format!("need 0 ≤ a ≤ b, got [{a}, {b}]")));
    }
    Ok((b - a) / PI + parity_sign(x) / (2.0 * PI) * (si(2.0 * b) - si(2.0 * a)))
}

fn check_n(shape: &YoungDiagram, n: usize) -> Result<()> {
    if n < shape.len() {
        return Err(Error::Domain(format!(
            "n = {n} is smaller than the number of rows {}",
            shape.len()
        )));
    }
    Ok(())
}

fn near_integer(u: Complex64) -> Option<i64> {
    let r = u.re.round();
    (u.im == 0.0 && (u.re - r).abs() < 1e-12).then_some(r as i64)
}

/// `G_λ(u) = Γ(u + 1 + n) / ∏_{i=1}^n (u - λ_i + i)`.
pub fn g_lambda(shape: &YoungDiagram, n: usize, u: Complex64) -> Result<Complex64> {
    check_n(shape, n)?;
    if let Some(k) = near_integer(u) {
        let hits_row = (1..=n).any(|i| k == shape.row_len(i) as i64 - i as i64);
        if hits_row || k + 1 + n as i64 <= 0 {
            return Err(Error::Pole(format!("G_λ has a pole at u = {k}")));
        }
    }
    let denom: Complex64 = (1..=n)
        .map(|i| u - shape.row_len(i) as f64 + i as f64)
        .product();
    Ok(ln_gamma(u + 1.0 + n as f64).exp() / denom)
}

/// `G_λ(u) = Γ(u + 1) ∏_{i=1}^{ℓ} (u + i)/(u - λ_i + i)`, the product form.
pub fn g_lambda_product(shape: &YoungDiagram, u: Complex64) -> Result<Complex64> {
    g_lambda(shape, shape.len(), u)
}

/// Contour parameters for [`k_lambda`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourConfig {
    /// Distance from the outermost enclosed integers to the vertical edges.
    pub margin: f64,
    /// Half-height of the `z` rectangle.
    pub half_height: f64,
    /// Quadrature nodes per unit of arc length.
    pub nodes_per_unit: usize,
}

impl Default for ContourConfig {
    fn default() -> Self {
        ContourConfig {
            margin: 0.4,
            half_height: 1.0,
            nodes_per_unit: 64,
        }
    }
}

/// Minimum distance from the contours to integers and to the cross pole.
pub const MIN_SEPARATION: f64 = 0.1;
const INNER_INSET: f64 = 0.15;

impl ContourConfig {
    fn validate(&self) -> Result<()> {
        let m = self.margin;
        if !(m - INNER_INSET >= MIN_SEPARATION && 1.0 - 2.0 * m >= MIN_SEPARATION) {
            return Err(Error::Contour(format!(
                "margin {m} must lie in [{}, {}]",
                MIN_SEPARATION + INNER_INSET,
                (1.0 - MIN_SEPARATION) / 2.0
            )));
        }
        if self.half_height < 2.0 * MIN_SEPARATION {
            return Err(Error::Contour(format!(
                "half-height {} below {}",
                self.half_height,
                2.0 * MIN_SEPARATION
            )));
        }
        if self.nodes_per_unit < 8 {
            return Err(Error::Contour("need at least 8 nodes per unit length".into()));
        }
        Ok(())
    }
}

/// Result of a kernel evaluation with quadrature diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    /// Real part of the kernel.
    pub value: f64,
    /// Absolute imaginary part of the contour integral.
    pub imag_residual: f64,
    /// Number of `z` nodes times number of `w` nodes, summed over evaluations.
    pub nodes: usize,
    /// Smallest `|w + z + x2 - x1 + 1|` over the node pairs.
    pub min_separation: f64,
}

/// Quadrature nodes `(point, weight · dz)` on a counter-clockwise rectangle.
fn rectangle(lo: f64, hi: f64, h: f64, cfg: &ContourConfig, rule: &GaussLegendre) -> Vec<(Complex64, Complex64)> {
    let corners = [
        Complex64::new(lo, -h),
        Complex64::new(hi, -h),
        Complex64::new(hi, h),
        Complex64::new(lo, h),
    ];
    let per_panel = rule.nodes().len();
    let panels_per_unit = (cfg.nodes_per_unit as f64 / per_panel as f64).max(1.0);
    let mut out = Vec::new();
    for e in 0..4 {
        let a = corners[e];
        let b = corners[(e + 1) % 4];
        let len = (b - a).norm();
        let panels = (len * panels_per_unit).ceil().max(1.0) as usize;
        for p in 0..panels {
            let s0 = p as f64 / panels as f64;
            let s1 = (p + 1) as f64 / panels as f64;
            let (ss, ws) = rule.on_interval(s0, s1);
            for (s, w) in ss.into_iter().zip(ws) {
                out.push((a + (b - a) * s, (b - a) * w));
            }
        }
    }
    out
}

/// Query for [`k_lambda`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaKernelQuery {
    /// Shape `λ`.
    pub shape: YoungDiagram,
    /// Number of particles, at least the number of rows.
    pub n: usize,
    /// First line.
    pub x1: i64,
    /// First time in `(0, 1]`.
    pub t1: f64,
    /// Second line.
    pub x2: i64,
    /// Second time in `(0, 1]`.
    pub t2: f64,
}

fn indicator_term(q: &LambdaKernelQuery) -> f64 {
    if q.t2 > q.t1 && q.x1 > q.x2 {
        let k = (q.x1 - q.x2 - 1) as i32;
        let fact: f64 = (1..=k).map(f64::from).product();
        (q.t1 - q.t2).powi(k) / fact
    } else {
        0.0
    }
}

/// Double contour integral part of `K_λ` for `t1, t2 < 1`.
fn contour_part(q: &LambdaKernelQuery, cfg: &ContourConfig) -> Result<KernelValue> {
    let shape = &q.shape;
    let n = q.n as i64;
    let lz = shape.row_len(1) as i64 - q.x2;
    let lw = n + q.x1;
    let d = q.x2 - q.x1 + 1;
    if lz <= 0 || lw <= 0 {
        return Ok(KernelValue {
            value: 0.0,
            imag_residual: 0.0,
            nodes: 0,
            min_separation: f64::INFINITY,
        });
    }
    let rule = GaussLegendre::new(16);
    let m = cfg.margin;
    let h = cfg.half_height;
    let z_nodes = rectangle(-m, (lz - 1) as f64 + m, h, cfg, &rule);

    // Reflected z region -Z - d covers the integers [-d - (lz - 1), -d].
    let (r_lo, r_hi) = (-d - (lz - 1), -d);
    let mut w_nodes = Vec::new();
    let mut group = |lo: i64, hi: i64, inset: f64, hh: f64| {
        if lo <= hi {
            w_nodes.extend(rectangle(lo as f64 - inset, hi as f64 + inset, hh, cfg, &rule));
        }
    };
    group(0, (lw - 1).min(r_lo - 1), m, h);
    group(0.max(r_lo), (lw - 1).min(r_hi), m - INNER_INSET, 0.5 * h);
    group(0.max(r_hi + 1), lw - 1, m, h);

    let log1m = |t: f64| (1.0 - t).ln();
    let (l1, l2) = (log1m(q.t1), log1m(q.t2));
    let rows: Vec<f64> = (1..=q.n).map(|i| shape.row_len(i) as f64 - i as f64).collect();
    let x1 = q.x1 as f64;
    let x2 = q.x2 as f64;
    let nf = q.n as f64;

    // A(w) = Γ(-w) (1-t1)^w / G_λ(x1 - 1 - w)
    let a_vals: Vec<Complex64> = w_nodes
        .iter()
        .map(|&(w, dw)| {
            let prod: Complex64 = rows.iter().map(|&r| x1 - 1.0 - w - r).product();
            let lg = ln_gamma(-w) - ln_gamma(x1 - w + nf) + w * l1;
            lg.exp() * prod * dw
        })
        .collect();
    // B(z) = G_λ(z + x2) (1-t2)^z / Γ(z + 1)
    let b_vals: Vec<Complex64> = z_nodes
        .iter()
        .map(|&(z, dz)| {
            let prod: Complex64 = rows.iter().map(|&r| z + x2 - r).product();
            let lg = ln_gamma(z + x2 + 1.0 + nf) - ln_gamma(z + 1.0) + z * l2;
            lg.exp() / prod * dz
        })
        .collect();

    let mut total = Complex64::new(0.0, 0.0);
    let mut min_sep = f64::INFINITY;
    for (&(w, _), &a) in w_nodes.iter().zip(&a_vals) {
        let mut inner = Complex64::new(0.0, 0.0);
        for (&(z, _), &b) in z_nodes.iter().zip(&b_vals) {
            let den = w + z + d as f64;
            min_sep = min_sep.min(den.norm());
            inner += b / den;
        }
        total += a * inner;
    }
    if min_sep < MIN_SEPARATION {
        return Err(Error::Contour(format!(
            "contours pass within {min_sep} of the cross pole"
        )));
    }
    // (2πi)^{-2} = -1/(4π²)
    let val = -total / (4.0 * PI * PI);
    Ok(KernelValue {
        value: val.re,
        imag_residual: val.im.abs(),
        nodes: w_nodes.len() * z_nodes.len(),
        min_separation: min_sep,
    })
}

/// Polynomial extrapolation to 0 of samples `(ε_k, v_k)` by Neville's scheme.
fn neville_at_zero(eps: &[f64], vals: &[f64]) -> f64 {
    let mut p = vals.to_vec();
    let k = eps.len();
    for level in 1..k {
        for i in 0..k - level {
            let (e0, e1) = (eps[i], eps[i + level]);
            p[i] = (e0 * p[i + 1] - e1 * p[i]) / (e0 - e1);
        }
    }
    p[0]
}

/// Tolerance on the imaginary residual before a value is rejected.
pub const IMAG_TOLERANCE: f64 = 1e-6;

/// The finite-shape kernel `K_λ(x1, t1; x2, t2)`.
///
/// Values at `t = 1` are limits, obtained by polynomial extrapolation from
/// `t = 1 - ε` on a geometric sequence of `ε`.
pub fn k_lambda(q: &LambdaKernelQuery, cfg: &ContourConfig) -> Result<KernelValue> {
    check_n(&q.shape, q.n)?;
    cfg.validate()?;
    for t in [q.t1, q.t2] {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::Domain(format!("times must lie in (0, 1], got {t}")));
        }
    }
    let ind = indicator_term(q);
    let contour = if q.t1 < 1.0 && q.t2 < 1.0 {
        contour_part(q, cfg)?
    } else {
        let lz = (q.shape.row_len(1) as i64 - q.x2).max(0);
        let lw = (q.n as i64 + q.x1).max(0);
        let levels = ((lz + lw + 1) as usize).clamp(4, 12);
        let eps: Vec<f64> = (0..levels).map(|k| 0.2 * 0.5f64.powi(k as i32)).collect();
        let mut vals = Vec::with_capacity(levels);
        let mut acc = KernelValue {
            value: 0.0,
            imag_residual: 0.0,
            nodes: 0,
            min_separation: f64::INFINITY,
        };
        for &e in &eps {
            let shifted = LambdaKernelQuery {
                t1: if q.t1 == 1.0 { 1.0 - e } else { q.t1 },
                t2: if q.t2 == 1.0 { 1.0 - e } else { q.t2 },
                ..q.clone()
            };
            let v = contour_part(&shifted, cfg)?;
            vals.push(v.value);
            acc.imag_residual = acc.imag_residual.max(v.imag_residual);
            acc.nodes += v.nodes;
            acc.min_separation = acc.min_separation.min(v.min_separation);
        }
        acc.value = neville_at_zero(&eps, &vals);
        acc
    };
    if contour.imag_residual > IMAG_TOLERANCE {
        return Err(Error::Numerical(format!(
            "imaginary residual {} exceeds {IMAG_TOLERANCE}",
            contour.imag_residual
        )));
    }
    Ok(KernelValue {
        value: ind + contour.value,
        ..contour
    })
}
