//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls the routine it is used to check: tableaux and reduced
//! words are enumerated by brute force, correlation functions of small shapes
//! come from exact order-statistic densities, and oscillatory integrals use a
//! plain composite Simpson rule.

#![allow(dead_code)]

use std::f64::consts::PI;

/// All standard Young tableaux of `shape`, as row vectors.
pub fn enumerate_syt(shape: &[usize]) -> Vec<Vec<Vec<u32>>> {
    let total: usize = shape.iter().sum();
    if total == 0 {
        return vec![shape.iter().map(|_| Vec::new()).collect()];
    }
    let mut out = Vec::new();
    for r in 0..shape.len() {
        let is_corner = shape[r] > 0 && (r + 1 == shape.len() || shape[r + 1] < shape[r]);
        if !is_corner {
            continue;
        }
        let mut smaller = shape.to_vec();
        smaller[r] -= 1;
        for mut t in enumerate_syt(&smaller) {
            t[r].push(total as u32);
            out.push(t);
        }
    }
    out
}

/// All reduced words of the reverse permutation of `S_n`, by depth-first
/// search over swaps that create a new inversion.
pub fn reduced_words(n: usize) -> Vec<Vec<u32>> {
    fn go(perm: &mut Vec<usize>, word: &mut Vec<u32>, len: usize, out: &mut Vec<Vec<u32>>) {
        if word.len() == len {
            out.push(word.clone());
            return;
        }
        for s in 1..perm.len() {
            if perm[s - 1] < perm[s] {
                perm.swap(s - 1, s);
                word.push(s as u32);
                go(perm, word, len, out);
                word.pop();
                perm.swap(s - 1, s);
            }
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), n * (n - 1) / 2, &mut out);
    out
}

fn ln_fact(k: usize) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

/// Density of the `k`-th of `big_n` sorted uniforms at `t`.
pub fn order_stat_density(k: usize, big_n: usize, t: f64) -> f64 {
    let c = ln_fact(big_n) - ln_fact(k - 1) - ln_fact(big_n - k);
    (c + (k - 1) as f64 * t.ln() + (big_n - k) as f64 * (1.0 - t).ln()).exp()
}

/// Joint density of the `a`-th and `b`-th sorted uniforms at `(s, t)`.
pub fn order_stat_joint(a: usize, b: usize, big_n: usize, s: f64, t: f64) -> f64 {
    if a > b {
        return order_stat_joint(b, a, big_n, t, s);
    }
    if s >= t {
        return 0.0;
    }
    let c = ln_fact(big_n) - ln_fact(a - 1) - ln_fact(b - a - 1) - ln_fact(big_n - b);
    (c + (a - 1) as f64 * s.ln() + (b - a - 1) as f64 * (t - s).ln() + (big_n - b) as f64 * (1.0 - t).ln())
        .exp()
}

fn cells_on_line(shape: &[usize], x: i64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &len) in shape.iter().enumerate() {
        for c in 0..len {
            if c as i64 - r as i64 == x {
                out.push((r, c));
            }
        }
    }
    out
}

/// Exact 1-point function of the jump process of a uniform Poissonized
/// tableau of `shape` on line `x` at time `t`.
pub fn exact_rho1(shape: &[usize], x: i64, t: f64) -> f64 {
    let tabs = enumerate_syt(shape);
    let big_n: usize = shape.iter().sum();
    let cells = cells_on_line(shape, x);
    let total: f64 = tabs
        .iter()
        .map(|tab| {
            cells
                .iter()
                .map(|&(r, c)| order_stat_density(tab[r][c] as usize, big_n, t))
                .sum::<f64>()
        })
        .sum();
    total / tabs.len() as f64
}

/// Exact 2-point function at `(x1, t1), (x2, t2)` with `t1 ≠ t2`.
pub fn exact_rho2(shape: &[usize], x1: i64, t1: f64, x2: i64, t2: f64) -> f64 {
    let tabs = enumerate_syt(shape);
    let big_n: usize = shape.iter().sum();
    let c1 = cells_on_line(shape, x1);
    let c2 = cells_on_line(shape, x2);
    let mut total = 0.0;
    for tab in &tabs {
        for &(r1, k1) in &c1 {
            for &(r2, k2) in &c2 {
                if (r1, k1) != (r2, k2) {
                    let a = tab[r1][k1] as usize;
                    let b = tab[r2][k2] as usize;
                    total += order_stat_joint(a, b, big_n, t1, t2);
                }
            }
        }
    }
    total / tabs.len() as f64
}

/// Composite Simpson rule with `panels` (rounded up to even) subintervals.
pub fn simpson<F: Fn(f64) -> f64>(a: f64, b: f64, panels: usize, f: F) -> f64 {
    let m = panels + panels % 2;
    let h = (b - a) / m as f64;
    let mut s = f(a) + f(b);
    for k in 1..m {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

fn phase_cos(t: f64, u: f64, x: i64) -> f64 {
    (t * u + PI * x as f64 / 2.0).cos()
}

/// `K_edge` straight from its defining integrals.
///
/// For `x2 < x1` the range `[1, L]` is integrated by Simpson's rule and the
/// remainder `[L, ∞)` by its leading integration-by-parts term.
pub fn edge_kernel_reference(x1: i64, u1: f64, x2: i64, u2: f64) -> f64 {
    if x2 >= x1 {
        let d = (x2 - x1) as i32;
        let f = |t: f64| t.powi(d) * phase_cos(t, u1, x1) * phase_cos(t, u2, x2);
        return 2.0 / PI * simpson(0.0, 1.0, 20_000, f);
    }
    let m = (x1 - x2) as i32;
    let big_l = 2_000.0;
    let f = |t: f64| t.powi(-m) * phase_cos(t, u1, x1) * phase_cos(t, u2, x2);
    let body = simpson(1.0, big_l, 2_000_000, f);
    // cos A cos B = (cos(A-B) + cos(A+B))/2 and
    // ∫_L^∞ t^{-m} cos(a t + φ) dt ≈ -sin(a L + φ) / (a L^m).
    let phi = |x: i64| PI * x as f64 / 2.0;
    let tail_one = |a: f64, ph: f64| {
        if a == 0.0 {
            ph.cos() * big_l.powi(1 - m) / (m - 1) as f64
        } else {
            -(a * big_l + ph).sin() / (a * big_l.powi(m))
        }
    };
    let tail = 0.5
        * (tail_one(u1 - u2, phi(x1) - phi(x2)) + tail_one(u1 + u2, phi(x1) + phi(x2)));
    -2.0 / PI * (body + tail)
}
