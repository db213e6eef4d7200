//! Seeded Monte Carlo experiments that compare simulation with the analytic
//! predictions of the other modules.
//!
//! Trial `k` of an experiment with master seed `seed` draws all of its
//! randomness from [`rng::stream`]`(seed, k)`. Trials run in parallel on the
//! current rayon pool and are merged in trial order, so a report depends
//! only on the experiment parameters and the seed.

use crate::antisym::{antisymmetric_gaussian, tridiagonalize_antisymmetric, TridiagonalSpectrum};
use crate::fredholm::{first_swap_cdf, gap_cdf, gap_probability_default};
use crate::jumps::{center_swap, pyt_to_jumps_above, rescale_window, WindowSpec};
use crate::kernels::{expected_count, k_edge};
use crate::network::eg_steps;
use crate::quad::GaussLegendre;
use crate::rng::{self, StreamRng};
use crate::stats::{histogram, ks_from_counts, ks_one_sample, ks_two_sample, mean, std_error};
use crate::tableau::{poissonize, sample_syt_uniform, YoungDiagram};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

/// Histogram with bins `[edges[k], edges[k+1])`, the last bin closed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// Bin edges, increasing.
    pub edges: Vec<f64>,
    /// Number of samples per bin.
    pub counts: Vec<u64>,
}

impl Histogram {
    /// Total number of binned samples.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// A single comparison of an observed statistic with its prediction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    /// What is being compared.
    pub name: String,
    /// Monte Carlo value.
    pub observed: f64,
    /// Analytic value.
    pub expected: f64,
    /// Allowed absolute deviation, usually three standard errors.
    pub tolerance: f64,
    /// Whether `|observed - expected| ≤ tolerance`.
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, observed: f64, expected: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            observed,
            expected,
            tolerance,
            passed: (observed - expected).abs() <= tolerance,
        }
    }
}

/// Parameters that, together with the experiment name, determine a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    /// Order of the staircase, or corner size for the matrix experiment.
    pub n: usize,
    /// Relative column `α`.
    pub alpha: f64,
    /// Time fraction at which the gap experiment cuts the network.
    pub beta: Option<f64>,
    /// Number of trials requested.
    pub trials: usize,
    /// Master seed.
    pub seed: u64,
    /// Experiment-specific parameters.
    pub extra: BTreeMap<String, f64>,
}

/// Result of a seeded Monte Carlo experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    /// Experiment name.
    pub name: String,
    /// Parameters and seed.
    pub params: ExperimentParams,
    /// Histogram of `samples`; its counts sum to the number of samples.
    pub histogram: Histogram,
    /// Analytic density averaged over each histogram bin, when one exists.
    pub reference: Vec<f64>,
    /// One-sample KS distance of `samples` from the analytic law, when one
    /// is compared.
    pub ks: Option<f64>,
    /// Further comparisons.
    pub checks: Vec<Check>,
    /// The sample the histogram and KS distance are computed from.
    pub samples: Vec<f64>,
    /// Trials that produced no sample.
    pub discarded: usize,
    /// Elapsed time; excluded from reproducibility comparisons.
    pub wall_clock_secs: f64,
}

impl ExperimentReport {
    /// JSON form of the report.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    /// The report with the wall-clock time zeroed, for comparisons.
    pub fn without_timing(&self) -> Self {
        ExperimentReport {
            wall_clock_secs: 0.0,
            ..self.clone()
        }
    }

    /// One CSV row per bin: `lo,hi,count,density,reference`.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("lo,hi,count,density,reference\n");
        let total = self.histogram.total().max(1) as f64;
        for (k, &c) in self.histogram.counts.iter().enumerate() {
            let (lo, hi) = (self.histogram.edges[k], self.histogram.edges[k + 1]);
            let density = c as f64 / (total * (hi - lo));
            let reference = self
                .reference
                .get(k)
                .map(|r| format!("{r:.10e}"))
                .unwrap_or_default();
            out.push_str(&format!("{lo},{hi},{c},{density:.10e},{reference}\n"));
        }
        out
    }

    /// One CSV row per sample.
    pub fn samples_csv(&self) -> String {
        let mut out = String::from("sample\n");
        for s in &self.samples {
            out.push_str(&format!("{s:.17e}\n"));
        }
        out
    }

    /// Two-column data files `(bin centre, empirical density)` and
    /// `(bin centre, reference density)` for plotting.
    pub fn plot_data(&self) -> (String, String) {
        let total = self.histogram.total().max(1) as f64;
        let mut emp = String::new();
        let mut reference = String::new();
        for (k, &c) in self.histogram.counts.iter().enumerate() {
            let (lo, hi) = (self.histogram.edges[k], self.histogram.edges[k + 1]);
            let mid = 0.5 * (lo + hi);
            emp.push_str(&format!("{mid} {}\n", c as f64 / (total * (hi - lo))));
            if let Some(r) = self.reference.get(k) {
                reference.push_str(&format!("{mid} {r}\n"));
            }
        }
        (emp, reference)
    }

    /// True if every check passed.
    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs `trials` independent trials, trial `k` on stream `(seed, k)`, and
/// returns their results in trial order.
fn run_trials<T, F>(trials: usize, seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut StreamRng) -> Result<T> + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|k| f(&mut rng::stream(seed, k as u64)))
        .collect()
}

fn require_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    Ok(())
}

/// Equal-width bins on `[0, hi]`, widened on the right to hold every sample.
fn edges_for(samples: &[f64], hi: f64, width: f64) -> Vec<f64> {
    let bins = (hi / width).round().max(1.0) as usize;
    let mut edges: Vec<f64> = (0..=bins).map(|k| k as f64 * width).collect();
    let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if let Some(last) = edges.last_mut() {
        if max > *last {
            *last = max;
        }
    }
    edges
}

/// Bin averages `(C(e_{k+1}) - C(e_k)) / (e_{k+1} - e_k)` of a density with
/// distribution function `cdf`.
fn bin_reference<F: FnMut(f64) -> Result<f64>>(edges: &[f64], mut cdf: F) -> Result<Vec<f64>> {
    let values: Vec<f64> = edges.iter().map(|&e| cdf(e)).collect::<Result<_>>()?;
    Ok(edges
        .windows(2)
        .zip(values.windows(2))
        .map(|(e, v)| (v[1] - v[0]) / (e[1] - e[0]))
        .collect())
}

fn swap_for(n: usize, alpha: f64) -> Result<u32> {
    let s = center_swap(n, alpha);
    if s < 1 || s >= n as i64 {
        return Err(Error::Domain(format!(
            "column α = {alpha} has no swap position in S_{n}"
        )));
    }
    Ok(s as u32)
}

fn three_sigma(values: &[f64]) -> f64 {
    if values.len() < 2 {
        f64::INFINITY
    } else {
        3.0 * std_error(values)
    }
}

/// Rescaled first appearance time `2√(1-α²)/n · T_FS` of swap
/// `⌊n(1+α)/2⌋`, compared with `1 - F`.
pub fn first_swap_experiment(n: usize, alpha: f64, trials: usize, seed: u64) -> Result<ExperimentReport> {
    let start = Instant::now();
    if n < 10 {
        return Err(Error::Domain(format!("need n ≥ 10, got {n}")));
    }
    let window = WindowSpec::new(alpha, n)?;
    require_trials(trials)?;
    let s = swap_for(n, alpha)?;
    let scale = 2.0 * window.beta / n as f64;
    let shape = YoungDiagram::staircase(n);
    let samples = run_trials(trials, seed, |r| {
        let t = sample_syt_uniform(&shape, r);
        let first = eg_steps(&t)?
            .position(|x| x == s)
            .expect("every swap occurs in a sorting network");
        Ok(scale * (first + 1) as f64)
    })?;

    let edges = edges_for(&samples, 6.0, 0.25);
    let reference = bin_reference(&edges, first_swap_cdf)?;
    let ks = ks_one_sample(&samples, |t| first_swap_cdf(t).unwrap_or(f64::NAN));
    let rule = GaussLegendre::new(48);
    let mean_law = rule.integrate(0.0, 12.0, |t| gap_probability_default(t).unwrap_or(f64::NAN));
    let checks = vec![Check::new("mean", mean(&samples), mean_law, three_sigma(&samples))];

    let mut extra = BTreeMap::new();
    extra.insert("swap".into(), s as f64);
    Ok(ExperimentReport {
        name: "first-swap".into(),
        params: ExperimentParams {
            n,
            alpha,
            beta: None,
            trials,
            seed,
            extra,
        },
        histogram: Histogram {
            counts: histogram(&samples, &edges),
            edges,
        },
        reference,
        ks: Some(ks),
        checks,
        samples,
        discarded: 0,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

/// Grid of `(a, b)` pairs for the joint tail check of the gap experiment.
pub const GAP_GRID: [f64; 5] = [0.25, 0.5, 0.75, 1.0, 1.5];

/// Rescaled gap between the two occurrences of swap `⌊n(1+α)/2⌋` that
/// straddle step `βN`, compared with the density `g F''(g)`.
///
/// The halves `T_-` and `T_+` on either side of `βN` are compared on
/// [`GAP_GRID`]² with `P(T_- > a, T_+ > b) = F(a + b)`.
pub fn gap_experiment(n: usize, alpha: f64, beta: f64, trials: usize, seed: u64) -> Result<ExperimentReport> {
    let start = Instant::now();
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Domain(format!("β must lie in (0, 1), got {beta}")));
    }
    if n < 2 {
        return Err(Error::Domain(format!("need n ≥ 2, got {n}")));
    }
    let window = WindowSpec::new(alpha, n)?;
    require_trials(trials)?;
    let s = swap_for(n, alpha)?;
    let scale = 2.0 * window.beta / n as f64;
    let big_n = n * (n - 1) / 2;
    let tau = beta * big_n as f64;
    let shape = YoungDiagram::staircase(n);
    let halves = run_trials(trials, seed, |r| {
        let t = sample_syt_uniform(&shape, r);
        let mut before = None;
        for (k, x) in eg_steps(&t)?.enumerate() {
            if x != s {
                continue;
            }
            let step = (k + 1) as f64;
            if step <= tau {
                before = Some(step);
            } else {
                return Ok(before.map(|b| (scale * (tau - b), scale * (step - tau))));
            }
        }
        Ok(None)
    })?;
    let kept: Vec<(f64, f64)> = halves.iter().flatten().copied().collect();
    let discarded = trials - kept.len();
    if kept.is_empty() {
        return Err(Error::Domain("no trial produced a straddling pair".into()));
    }
    let samples: Vec<f64> = kept.iter().map(|(a, b)| a + b).collect();

    let edges = edges_for(&samples, 8.0, 0.25);
    let reference = bin_reference(&edges, gap_cdf)?;
    let ks = ks_one_sample(&samples, |g| gap_cdf(g).unwrap_or(f64::NAN));
    let mut sup: f64 = 0.0;
    for &a in &GAP_GRID {
        for &b in &GAP_GRID {
            let emp = kept.iter().filter(|&&(m, p)| m > a && p > b).count() as f64 / kept.len() as f64;
            sup = sup.max((emp - gap_probability_default(a + b)?).abs());
        }
    }
    let checks = vec![Check::new("joint tail sup error", sup, 0.0, 0.05)];

    let mut extra = BTreeMap::new();
    extra.insert("swap".into(), s as f64);
    extra.insert("tau".into(), tau);
    Ok(ExperimentReport {
        name: "gap".into(),
        params: ExperimentParams {
            n,
            alpha,
            beta: Some(beta),
            trials,
            seed,
            extra,
        },
        histogram: Histogram {
            counts: histogram(&samples, &edges),
            edges,
        },
        reference,
        ks: Some(ks),
        checks,
        samples,
        discarded,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

/// Observation window of [`correlation_experiment`]: lines `lines` (window
/// coordinates) times rescaled times `[0, u_max]`, cut into bins of width
/// `bin_width`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationWindow {
    /// Lines to observe; the first two are used for 2-point functions.
    pub lines: Vec<i64>,
    /// Largest rescaled time.
    pub u_max: f64,
    /// Width of the counting boxes.
    pub bin_width: f64,
}

impl Default for CorrelationWindow {
    fn default() -> Self {
        CorrelationWindow {
            lines: vec![0, 1],
            u_max: 3.0,
            bin_width: 0.5,
        }
    }
}

/// Times at which the empty-interval probability is compared.
pub const GAP_TIMES: [f64; 3] = [0.5, 1.0, 2.0];

fn two_point_integral(x1: i64, a: (f64, f64), x2: i64, b: (f64, f64)) -> f64 {
    let rule = GaussLegendre::new(8);
    let (ua, wa) = rule.on_interval(a.0, a.1);
    let (ub, wb) = rule.on_interval(b.0, b.1);
    let mut total = 0.0;
    for (&u, &wu) in ua.iter().zip(&wa) {
        for (&v, &wv) in ub.iter().zip(&wb) {
            let det = k_edge(x1, u, x1, u) * k_edge(x2, v, x2, v) - k_edge(x1, u, x2, v) * k_edge(x2, v, x1, u);
            total += wu * wv * det;
        }
    }
    total
}

/// Box-count estimates of the 1- and 2-point functions and of the empty
/// interval probability of the rescaled jump process `X_{α,n}`.
pub fn correlation_experiment(
    n: usize,
    alpha: f64,
    window: &CorrelationWindow,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let w = WindowSpec::new(alpha, n)?;
    require_trials(trials)?;
    if window.lines.is_empty() || !(window.u_max > 0.0) || !(window.bin_width > 0.0) {
        return Err(Error::Domain("window needs lines, u_max > 0 and a positive bin width".into()));
    }
    let bins = (window.u_max / window.bin_width).floor() as usize;
    if bins == 0 {
        return Err(Error::Domain("bin width exceeds u_max".into()));
    }
    let box_of = |k: usize| (k as f64 * window.bin_width, (k + 1) as f64 * window.bin_width);
    let gap_line = window.lines.iter().copied().find(|x| x.rem_euclid(2) == 0);
    let gap_times: Vec<f64> = GAP_TIMES.iter().copied().filter(|&t| t <= window.u_max).collect();
    let shape = YoungDiagram::staircase(n);
    let cutoff = w.entry_cutoff(window.u_max);

    struct Trial {
        counts: Vec<Vec<f64>>,
        empty: Vec<bool>,
        first_line_times: Vec<f64>,
    }
    let results = run_trials(trials, seed, |r| {
        let p = poissonize(&sample_syt_uniform(&shape, r), r);
        let pts = rescale_window(&pyt_to_jumps_above(&p, cutoff)?, &w);
        let counts = window
            .lines
            .iter()
            .map(|&x| {
                let line = pts.line(x);
                (0..bins)
                    .map(|k| {
                        let (a, b) = box_of(k);
                        line.iter().filter(|&&u| u >= a && u < b).count() as f64
                    })
                    .collect()
            })
            .collect();
        let empty = match gap_line {
            Some(x) => {
                let line = pts.line(x);
                gap_times.iter().map(|&t| line.iter().all(|&u| u > t)).collect()
            }
            None => Vec::new(),
        };
        let first_line_times = pts
            .line(window.lines[0])
            .into_iter()
            .filter(|&u| u <= window.u_max)
            .collect();
        Ok(Trial {
            counts,
            empty,
            first_line_times,
        })
    })?;

    let mut checks = Vec::new();
    for (li, &x) in window.lines.iter().enumerate() {
        for k in 0..bins {
            let (a, b) = box_of(k);
            let vals: Vec<f64> = results.iter().map(|t| t.counts[li][k]).collect();
            checks.push(Check::new(
                format!("1-point x={x} [{a}, {b}]"),
                mean(&vals),
                expected_count(x, a, b)?,
                three_sigma(&vals),
            ));
        }
    }
    if window.lines.len() >= 2 {
        let (x1, x2) = (window.lines[0], window.lines[1]);
        for ka in 0..bins.min(3) {
            for kb in 0..bins.min(3) {
                let vals: Vec<f64> = results.iter().map(|t| t.counts[0][ka] * t.counts[1][kb]).collect();
                let (a, b) = (box_of(ka), box_of(kb));
                checks.push(Check::new(
                    format!("2-point x={x1} [{}, {}] x={x2} [{}, {}]", a.0, a.1, b.0, b.1),
                    mean(&vals),
                    two_point_integral(x1, a, x2, b),
                    three_sigma(&vals),
                ));
            }
        }
    }
    if let Some(x) = gap_line {
        for (i, &t) in gap_times.iter().enumerate() {
            let p = results.iter().filter(|r| r.empty[i]).count() as f64 / trials as f64;
            let f = gap_probability_default(t)?;
            let sigma = (f * (1.0 - f) / trials as f64).sqrt();
            checks.push(Check::new(format!("empty x={x} [0, {t}]"), p, f, 3.0 * sigma));
        }
    }

    let samples: Vec<f64> = results.into_iter().flat_map(|t| t.first_line_times).collect();
    let edges: Vec<f64> = (0..=bins).map(|k| k as f64 * window.bin_width).collect();
    let x0 = window.lines[0];
    let expected: Vec<f64> = (0..bins)
        .map(|k| {
            let (a, b) = box_of(k);
            expected_count(x0, a, b).map(|c| c / (b - a))
        })
        .collect::<Result<_>>()?;
    // Reference is the intensity per trial; convert to a density of the
    // pooled sample so the CSV columns are comparable.
    let total_expected: f64 = expected.iter().sum::<f64>() * window.bin_width;
    let reference = expected.iter().map(|e| e / total_expected).collect();
    let samples_in_range: Vec<f64> = samples.iter().copied().filter(|&u| u <= edges[bins]).collect();

    let mut extra = BTreeMap::new();
    extra.insert("u_max".into(), window.u_max);
    extra.insert("bin_width".into(), window.bin_width);
    extra.insert("c_n".into(), w.c_n as f64);
    Ok(ExperimentReport {
        name: "correlation".into(),
        params: ExperimentParams {
            n,
            alpha,
            beta: None,
            trials,
            seed,
            extra,
        },
        histogram: Histogram {
            counts: histogram(&samples_in_range, &edges),
            edges,
        },
        reference,
        ks: None,
        checks,
        samples: samples_in_range,
        discarded: 0,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

/// Number of points of the grid `t_max · k/4`, `k = 1..=4`, used by
/// [`intensity_experiment`].
pub const INTENSITY_GRID: usize = 4;

/// Mean number of jumps on line 0 of the window at `α = 0` in `[0, t]`,
/// compared with the expected count of the edge process.
///
/// Also reports the analytic ratio `E N_0(100) / 100` against `1/π`.
pub fn intensity_experiment(n: usize, t_max: f64, trials: usize, seed: u64) -> Result<ExperimentReport> {
    let start = Instant::now();
    if !(t_max >= 0.0) {
        return Err(Error::Domain(format!("t_max must be ≥ 0, got {t_max}")));
    }
    if n < 2 {
        return Err(Error::Domain(format!("need n ≥ 2, got {n}")));
    }
    require_trials(trials)?;
    let w = WindowSpec::new(0.0, n)?;
    let grid: Vec<f64> = (1..=INTENSITY_GRID)
        .map(|k| t_max * k as f64 / INTENSITY_GRID as f64)
        .collect();
    let shape = YoungDiagram::staircase(n);
    let cutoff = w.entry_cutoff(t_max);
    let counts = run_trials(trials, seed, |r| {
        let p = poissonize(&sample_syt_uniform(&shape, r), r);
        let line = rescale_window(&pyt_to_jumps_above(&p, cutoff)?, &w).line(0);
        Ok(grid
            .iter()
            .map(|&t| line.iter().filter(|&&u| u <= t).count() as f64)
            .collect::<Vec<f64>>())
    })?;

    let mut checks = Vec::new();
    for (i, &t) in grid.iter().enumerate() {
        let vals: Vec<f64> = counts.iter().map(|c| c[i]).collect();
        let expected = expected_count(0, 0.0, t)?;
        let tol = if vals.iter().all(|&v| v == vals[0]) {
            1e-12
        } else {
            three_sigma(&vals)
        };
        checks.push(Check::new(format!("mean N_0({t})"), mean(&vals), expected, tol));
    }
    checks.push(Check::new(
        "expected_count(0, 0, 100) / 100",
        expected_count(0, 0.0, 100.0)? / 100.0,
        1.0 / PI,
        0.01,
    ));

    let samples: Vec<f64> = counts.iter().map(|c| c[INTENSITY_GRID - 1]).collect();
    let max = samples.iter().copied().fold(0.0, f64::max);
    let edges: Vec<f64> = (0..=(max as usize + 1)).map(|k| k as f64 - 0.5).collect();
    let mut extra = BTreeMap::new();
    extra.insert("t_max".into(), t_max);
    Ok(ExperimentReport {
        name: "intensity".into(),
        params: ExperimentParams {
            n,
            alpha: 0.0,
            beta: None,
            trials,
            seed,
            extra,
        },
        histogram: Histogram {
            counts: histogram(&samples, &edges),
            edges,
        },
        reference: Vec::new(),
        ks: None,
        checks,
        samples,
        discarded: 0,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

/// Distribution function of the semicircle law on `(0, 1)`, with density
/// `(8/π) √(x(1-x))`.
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let y = 2.0 * x - 1.0;
    0.5 + (y * (1.0 - y * y).sqrt() + y.asin()) / PI
}

/// Columns at which the local swap rate is measured.
pub const RATE_ALPHAS: [f64; 2] = [0.0, 0.5];

/// Pooled swap positions `s/n` compared with the semicircle law, plus the
/// swap rate per unit of `2i/n` time at the columns [`RATE_ALPHAS`].
///
/// KS is computed exactly from the per-position counts. The sample holds the
/// per-trial means of `s/n`.
pub fn semicircle_experiment(n: usize, trials: usize, seed: u64) -> Result<ExperimentReport> {
    let start = Instant::now();
    if n < 50 {
        return Err(Error::Domain(format!("need n ≥ 50, got {n}")));
    }
    require_trials(trials)?;
    let shape = YoungDiagram::staircase(n);
    let per_trial = run_trials(trials, seed, |r| {
        let mut counts = vec![0u64; n];
        for s in eg_steps(&sample_syt_uniform(&shape, r))? {
            counts[s as usize] += 1;
        }
        Ok(counts)
    })?;
    let mut counts = vec![0u64; n];
    for c in &per_trial {
        for (acc, v) in counts.iter_mut().zip(c) {
            *acc += v;
        }
    }
    let nf = n as f64;
    let ks = ks_from_counts(&counts, |s| semicircle_cdf(s as f64 / nf));
    let big_n = (n * (n - 1) / 2) as f64;
    let samples: Vec<f64> = per_trial
        .iter()
        .map(|c| c.iter().enumerate().map(|(s, &k)| s as f64 * k as f64).sum::<f64>() / (nf * big_n))
        .collect();
    let mut checks = vec![Check::new("mean s/n", mean(&samples), 0.5, three_sigma(&samples))];
    for &alpha in &RATE_ALPHAS {
        let s = swap_for(n, alpha)? as usize;
        let beta = (1.0 - alpha * alpha).sqrt();
        // Total 2i/n time of the network is 2N/n = n - 1.
        let rates: Vec<f64> = per_trial.iter().map(|c| c[s] as f64 / (nf - 1.0)).collect();
        let predicted = 2.0 * beta / PI;
        checks.push(Check::new(format!("swap rate α={alpha}"), mean(&rates), predicted, 0.1 * predicted));
    }

    let edges: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
    let mut hist = vec![0u64; edges.len() - 1];
    for (s, &c) in counts.iter().enumerate() {
        let x = s as f64 / nf;
        let k = ((x * 20.0).floor() as usize).min(19);
        hist[k] += c;
    }
    let reference = bin_reference(&edges, |x| Ok(semicircle_cdf(x)))?;
    Ok(ExperimentReport {
        name: "semicircle".into(),
        params: ExperimentParams {
            n,
            alpha: 0.0,
            beta: None,
            trials,
            seed,
            extra: BTreeMap::new(),
        },
        histogram: Histogram { edges, counts: hist },
        reference,
        ks: Some(ks),
        checks,
        samples,
        discarded: 0,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

/// Parameters of [`ague_corners_experiment`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgueSpec {
    /// Half-size `M` of the reference corner `2M`.
    pub m: usize,
    /// Number of sampled matrices.
    pub samples: usize,
    /// Level offsets `j`; corner `2M + j` is level `j`. Level 0 is always
    /// included.
    pub levels: Vec<i64>,
}

impl AgueSpec {
    fn validate(&self) -> Result<Vec<i64>> {
        if self.m < 10 {
            return Err(Error::Domain(format!("need M ≥ 10, got {}", self.m)));
        }
        require_trials(self.samples)?;
        let mut levels = self.levels.clone();
        levels.push(0);
        levels.sort_unstable();
        levels.dedup();
        if levels[0] + 2 * self.m as i64 <= 0 {
            return Err(Error::Domain(format!("level {} has an empty corner", levels[0])));
        }
        Ok(levels)
    }
}

/// Window `[0, AGUE_WINDOW]` of scaled eigenvalues on which level densities
/// are compared.
pub const AGUE_WINDOW: f64 = 3.0;

/// Corners of the antisymmetric Gaussian matrix `(G - Gᵀ)/√2` near the hard
/// edge: the points `(j, √(2M) σ)` for eigenvalues `±iσ` of the corner
/// `2M + j`, compared with the edge process.
pub fn ague_corners_experiment(spec: &AgueSpec, seed: u64) -> Result<ExperimentReport> {
    let start = Instant::now();
    let levels = spec.validate()?;
    let two_m = 2 * spec.m;
    let size = (two_m as i64 + levels[levels.len() - 1]) as usize;
    let scale = (two_m as f64).sqrt();
    let unit_bins: Vec<(f64, f64)> = (0..AGUE_WINDOW as usize).map(|k| (k as f64, (k + 1) as f64)).collect();
    struct Sample {
        smallest: f64,
        counts: Vec<Vec<f64>>,
    }
    let results = run_trials(spec.samples, seed, |r| {
        let a = antisymmetric_gaussian(size, r);
        let mut smallest = f64::NAN;
        let mut counts = Vec::with_capacity(levels.len());
        for &j in &levels {
            let m = (two_m as i64 + j) as usize;
            let corner = a.view((0, 0), (m, m)).into_owned();
            let spectrum = TridiagonalSpectrum::new(&tridiagonalize_antisymmetric(&corner)?);
            if j == 0 {
                smallest = scale * spectrum.kth_positive(1);
            }
            let below = |u: f64| spectrum.positive_count_below(u / scale) as f64;
            let mut c: Vec<f64> = unit_bins.iter().map(|&(lo, hi)| below(hi) - below(lo)).collect();
            c.push(below(AGUE_WINDOW));
            counts.push(c);
        }
        Ok(Sample { smallest, counts })
    })?;

    let mut checks = Vec::new();
    for (li, &j) in levels.iter().enumerate() {
        let total: Vec<f64> = results.iter().map(|s| s.counts[li][unit_bins.len()]).collect();
        checks.push(Check::new(
            format!("level {j} count [0, {AGUE_WINDOW}]"),
            mean(&total),
            expected_count(j, 0.0, AGUE_WINDOW)?,
            three_sigma(&total),
        ));
        if j == 0 {
            for (k, &(lo, hi)) in unit_bins.iter().enumerate() {
                let vals: Vec<f64> = results.iter().map(|s| s.counts[li][k]).collect();
                checks.push(Check::new(
                    format!("level 0 count [{lo}, {hi}]"),
                    mean(&vals),
                    expected_count(0, lo, hi)?,
                    three_sigma(&vals),
                ));
            }
        }
    }
    let samples: Vec<f64> = results.iter().map(|s| s.smallest).collect();
    let ks = ks_one_sample(&samples, |t| first_swap_cdf(t).unwrap_or(f64::NAN));
    let edges = edges_for(&samples, 6.0, 0.25);
    let reference = bin_reference(&edges, first_swap_cdf)?;

    let mut extra = BTreeMap::new();
    extra.insert("M".into(), spec.m as f64);
    for &j in &levels {
        extra.insert(format!("level {j}"), j as f64);
    }
    Ok(ExperimentReport {
        name: "ague".into(),
        params: ExperimentParams {
            n: two_m,
            alpha: 0.0,
            beta: None,
            trials: spec.samples,
            seed,
            extra,
        },
        histogram: Histogram {
            counts: histogram(&samples, &edges),
            edges,
        },
        reference,
        ks: Some(ks),
        checks,
        samples,
        discarded: 0,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}

/// Time stationarity of the swap process in the bulk.
///
/// For every column `s ∈ [n/4, 3n/4]`, with time scale `2√(1-α_s²)/n` and
/// `α_s = 2s/n - 1`, two windows are compared: the one starting at step 0 and
/// the one starting at step `shift`. For each window the rescaled waiting
/// time until the first swap at `s` and the number of swaps at `s` within
/// rescaled time `window` are pooled over columns and trials. The report's
/// `ks` is the larger of the two two-sample KS distances.
pub fn stationarity_experiment(
    n: usize,
    shift: usize,
    window: f64,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    if n < 8 {
        return Err(Error::Domain(format!("need n ≥ 8, got {n}")));
    }
    require_trials(trials)?;
    let big_n = n * (n - 1) / 2;
    if !(window > 0.0) {
        return Err(Error::Domain(format!("window must be positive, got {window}")));
    }
    let nf = n as f64;
    let columns: Vec<usize> = (n.div_ceil(4)..=3 * n / 4).collect();
    let scales: Vec<f64> = columns
        .iter()
        .map(|&s| {
            let a = 2.0 * s as f64 / nf - 1.0;
            2.0 * (1.0 - a * a).sqrt() / nf
        })
        .collect();
    let max_len = scales.iter().map(|sc| (window / sc).ceil() as usize).max().unwrap_or(0);
    if shift + max_len >= big_n {
        return Err(Error::Domain(format!(
            "shift {shift} plus window leaves the network of length {big_n}"
        )));
    }
    let shape = YoungDiagram::staircase(n);
    struct Trial {
        first: [Vec<f64>; 2],
        count: [Vec<f64>; 2],
    }
    let results = run_trials(trials, seed, |r| {
        let t = sample_syt_uniform(&shape, r);
        let mut first = [vec![f64::NAN; columns.len()], vec![f64::NAN; columns.len()]];
        let mut count = [vec![0.0; columns.len()], vec![0.0; columns.len()]];
        let origins = [0usize, shift];
        let mut missing = 2 * columns.len();
        let lo = columns[0];
        for (k, x) in eg_steps(&t)?.enumerate() {
            let step = k + 1;
            if step > shift + max_len && missing == 0 {
                break;
            }
            let x = x as usize;
            if x < lo || x > columns[columns.len() - 1] {
                continue;
            }
            let c = x - lo;
            for (side, &o) in origins.iter().enumerate() {
                if step <= o {
                    continue;
                }
                let elapsed = scales[c] * (step - o) as f64;
                if first[side][c].is_nan() {
                    first[side][c] = elapsed;
                    missing -= 1;
                }
                if elapsed <= window {
                    count[side][c] += 1.0;
                }
            }
        }
        Ok(Trial { first, count })
    })?;

    let mut first = [Vec::new(), Vec::new()];
    let mut count = [Vec::new(), Vec::new()];
    let mut discarded = 0;
    for t in &results {
        if t.first.iter().any(|f| f.iter().any(|v| v.is_nan())) {
            discarded += 1;
            continue;
        }
        for side in 0..2 {
            first[side].extend_from_slice(&t.first[side]);
            count[side].extend_from_slice(&t.count[side]);
        }
    }
    if first[0].is_empty() {
        return Err(Error::Domain("every trial was discarded".into()));
    }
    let ks_first = ks_two_sample(&first[0], &first[1]);
    let ks_count = ks_two_sample(&count[0], &count[1]);
    // Conservative 1% two-sample level with the number of trials as the
    // effective sample size.
    let level = 1.63 * (2.0 / (trials - discarded) as f64).sqrt();
    let checks = vec![
        Check::new("KS first swap, shifted vs origin", ks_first, 0.0, level),
        Check::new("KS window count, shifted vs origin", ks_count, 0.0, level),
        Check::new(
            "mean window count, shifted vs origin",
            mean(&count[1]),
            mean(&count[0]),
            3.0 * (std_error(&count[0]).powi(2) + std_error(&count[1]).powi(2)).sqrt(),
        ),
    ];
    let edges = edges_for(&first[1], 6.0, 0.25);
    let reference = bin_reference(&edges, first_swap_cdf)?;
    let samples = first[1].clone();

    let mut extra = BTreeMap::new();
    extra.insert("shift".into(), shift as f64);
    extra.insert("window".into(), window);
    extra.insert("columns".into(), columns.len() as f64);
    Ok(ExperimentReport {
        name: "stationarity".into(),
        params: ExperimentParams {
            n,
            alpha: 0.0,
            beta: None,
            trials,
            seed,
            extra,
        },
        histogram: Histogram {
            counts: histogram(&samples, &edges),
            edges,
        },
        reference,
        ks: Some(ks_first.max(ks_count)),
        checks,
        samples,
        discarded,
        wall_clock_secs: start.elapsed().as_secs_f64(),
    })
}
