//! Jump point processes of tableaux and the window around a column.
//!
//! A Poissonized tableau of shape `λ` encodes non-intersecting particle paths:
//! the particle of row `i` moves one unit at each entry of row `i`. The entry
//! at cell `(i, j)` therefore produces exactly one jump, across the integer
//! `x = j - i`, at the time given by the entry. The set of these `(x, t)` is
//! the jump process.
//!
//! On the infinite staircase `Δ∞ = {(x, y) : y ≥ 0, x ≡ y mod 2}` a tableau and
//! its jump process determine each other. The values on line `x`, read upward,
//! are the successive jumps on that line.

use crate::tableau::PoissonizedTableau;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finite simple point configuration in `Z × [0, ∞)`, sorted by `(x, u)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PointConfiguration {
    points: Vec<(i64, f64)>,
}

impl PointConfiguration {
    /// Sorts the points by line and then by time.
    pub fn new(mut points: Vec<(i64, f64)>) -> Self {
        points.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        PointConfiguration { points }
    }

    /// The points, sorted by `(x, u)`.
    pub fn points(&self) -> &[(i64, f64)] {
        &self.points
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True if there are no points.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Times of the points on line `x`, increasing.
    pub fn line(&self, x: i64) -> Vec<f64> {
        let lo = self.points.partition_point(|p| p.0 < x);
        let hi = self.points.partition_point(|p| p.0 <= x);
        self.points[lo..hi].iter().map(|p| p.1).collect()
    }

    /// Number of points on line `x` with time in `[a, b]`.
    pub fn count(&self, x: i64, a: f64, b: f64) -> usize {
        self.line(x).iter().filter(|&&u| u >= a && u <= b).count()
    }

    /// Keeps the points with `u ≤ t_max`.
    pub fn truncate(&self, t_max: f64) -> Self {
        PointConfiguration {
            points: self.points.iter().copied().filter(|p| p.1 <= t_max).collect(),
        }
    }

    /// CSV with header `x,u`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,u\n");
        for (x, u) in &self.points {
            out.push_str(&format!("{x},{u:.17e}\n"));
        }
        out
    }

    /// JSON form `{"points":[[x,u],…]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("point serialization cannot fail")
    }

    fn check_simple(&self) -> Result<()> {
        match self.points.windows(2).find(|w| w[0] == w[1]) {
            Some(w) => Err(Error::Ties(format!("duplicate point {:?}", w[0]))),
            None => Ok(()),
        }
    }
}

/// Jump points of a Poissonized tableau: `(j - i, p(i, j))` for every cell.
pub fn pyt_to_jumps(p: &PoissonizedTableau) -> Result<PointConfiguration> {
    pyt_to_jumps_above(p, f64::NEG_INFINITY)
}

/// As [`pyt_to_jumps`], keeping only entries `≥ t_min`.
pub fn pyt_to_jumps_above(p: &PoissonizedTableau, t_min: f64) -> Result<PointConfiguration> {
    let mut values: Vec<f64> = p.entries().map(|(_, v)| v).collect();
    values.sort_by(f64::total_cmp);
    if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Ties(format!("value {} occurs twice", w[0])));
    }
    Ok(PointConfiguration::new(
        p.entries()
            .filter(|&(_, v)| v >= t_min)
            .map(|((i, j), v)| (j as i64 - i as i64, v))
            .collect(),
    ))
}

/// A tableau on `Δ∞` with finite support; cells outside the support hold `∞`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InfiniteTableau {
    cells: BTreeMap<(i64, i64), f64>,
}

impl InfiniteTableau {
    /// Builds a tableau from its finite cells and checks the constraint
    /// `T(x, y) ≤ min(T(x-1, y+1), T(x+1, y+1))`.
    pub fn new(cells: BTreeMap<(i64, i64), f64>) -> Result<Self> {
        for (&(x, y), &v) in &cells {
            if y < 0 || (x - y).rem_euclid(2) != 0 {
                return Err(Error::InvalidTableau(format!("({x}, {y}) is not a cell of Δ∞")));
            }
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidTableau(format!("value {v} at ({x}, {y})")));
            }
            if y > 0 {
                for dx in [-1, 1] {
                    match cells.get(&(x + dx, y - 1)) {
                        Some(&below) if below <= v => {}
                        _ => {
                            return Err(Error::InvalidTableau(format!(
                                "cell ({x}, {y}) lacks a smaller value below at ({}, {})",
                                x + dx,
                                y - 1
                            )))
                        }
                    }
                }
            }
        }
        Ok(InfiniteTableau { cells })
    }

    /// Finite cells and their values.
    pub fn cells(&self) -> &BTreeMap<(i64, i64), f64> {
        &self.cells
    }

    /// Value at `(x, y)`, `∞` outside the support.
    pub fn get(&self, x: i64, y: i64) -> f64 {
        self.cells.get(&(x, y)).copied().unwrap_or(f64::INFINITY)
    }

    /// Number of finite cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    /// True if no cell is finite.
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Jumps of a tableau on `Δ∞`: the value at `(x, y)` is a jump on line `x`.
pub fn tableau_to_jumps(t: &InfiniteTableau) -> PointConfiguration {
    PointConfiguration::new(t.cells.iter().map(|(&(x, _), &v)| (x, v)).collect())
}

/// Inverse of [`tableau_to_jumps`]: the `k`-th smallest point on line `x`
/// becomes `T(x, 2k - 1 - 1{x even})`.
pub fn jumps_to_tableau(points: &PointConfiguration) -> Result<InfiniteTableau> {
    points.check_simple()?;
    let mut cells = BTreeMap::new();
    let mut last: Option<(i64, i64)> = None;
    for &(x, u) in points.points() {
        let y = match last {
            Some((lx, ly)) if lx == x => ly + 2,
            _ => x.rem_euclid(2),
        };
        cells.insert((x, y), u);
        last = Some((x, y));
    }
    InfiniteTableau::new(cells)
}

/// Index of the swap at the centre of the window: `⌊n(1+α)/2⌋`.
pub fn center_swap(n: usize, alpha: f64) -> i64 {
    (n as f64 * (1.0 + alpha) / 2.0).floor() as i64
}

/// Position and scale of the window around column `αn`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    /// Relative column `α ∈ (-1, 1)`.
    pub alpha: f64,
    /// Order of the staircase.
    pub n: usize,
    /// Integer centre, of the same parity as `n`.
    pub c_n: i64,
    /// Time scale `√(1 - α²)`.
    pub beta: f64,
}

impl WindowSpec {
    /// Window for column `α` of `Δ_n`, with `c_n = 2⌊n(1+α)/2⌋ - n`.
    pub fn new(alpha: f64, n: usize) -> Result<Self> {
        if !(alpha > -1.0 && alpha < 1.0) {
            return Err(Error::Domain(format!("α must lie in (-1, 1), got {alpha}")));
        }
        Ok(WindowSpec {
            alpha,
            n,
            c_n: 2 * center_swap(n, alpha) - n as i64,
            beta: (1.0 - alpha * alpha).sqrt(),
        })
    }

    /// Rescaled time `nβ(1 - t)` of an entry `t`.
    pub fn rescale_time(&self, t: f64) -> f64 {
        (self.n as f64 * self.beta) * (1.0 - t)
    }

    /// Smallest entry whose rescaled time is at most `u_max`.
    pub fn entry_cutoff(&self, u_max: f64) -> f64 {
        1.0 - u_max / (self.n as f64 * self.beta)
    }
}

/// Maps each jump `(x, t)` to `(x - c_n, nβ(1 - t))`.
pub fn rescale_window(points: &PointConfiguration, w: &WindowSpec) -> PointConfiguration {
    PointConfiguration::new(
        points
            .points()
            .iter()
            .map(|&(x, t)| (x - w.c_n, w.rescale_time(t)))
            .collect(),
    )
}

/// Embeds a Poissonized staircase tableau into `Δ∞` around the window `w`.
///
/// Cell `(i, j)` goes to `(j - i - c_n, n - i - j)` with value `nβ(1 - p(i, j))`,
/// so the largest entries become the smallest values near the bottom level.
pub fn embed_staircase(p: &PoissonizedTableau, w: &WindowSpec) -> Result<InfiniteTableau> {
    match p.shape().staircase_order() {
        Some(n) if n == w.n => {}
        _ => {
            return Err(Error::Domain(format!(
                "shape {:?} is not the staircase of order {}",
                p.shape().rows(),
                w.n
            )))
        }
    }
    let n = w.n as i64;
    let cells = p
        .entries()
        .map(|((i, j), v)| {
            let (i, j) = (i as i64, j as i64);
            ((j - i - w.c_n, n - i - j), w.rescale_time(v))
        })
        .collect();
    InfiniteTableau::new(cells)
}
