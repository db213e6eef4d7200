//! Gauss–Legendre quadrature.

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Rule with `m ≥ 1` nodes, computed by Newton iteration on `P_m`.
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "a quadrature rule needs at least one node");
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        let mf = m as f64;
        for k in 0..m.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (mf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(m, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[k] = -x;
            nodes[m - 1 - k] = x;
            weights[k] = w;
            weights[m - 1 - k] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Nodes on `[-1, 1]`, increasing.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights matching [`GaussLegendre::nodes`].
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let h = 0.5 * (b - a);
        let c = 0.5 * (a + b);
        (
            self.nodes.iter().map(|x| c + h * x).collect(),
            self.weights.iter().map(|w| h * w).collect(),
        )
    }

    /// `∫_a^b f`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let h = 0.5 * (b - a);
        let c = 0.5 * (a + b);
        h * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + h * x))
            .sum::<f64>()
    }

    /// `∫_a^b f` split into `panels` equal subintervals.
    pub fn integrate_composite<F: FnMut(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: F,
    ) -> f64 {
        let panels = panels.max(1);
        let step = (b - a) / panels as f64;
        (0..panels)
            .map(|p| {
                let lo = a + step * p as f64;
                self.integrate(lo, lo + step, &mut f)
            })
            .sum()
    }
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive composite Gauss–Legendre: doubles the panel count until two
/// successive estimates agree to `tol` (absolute) or a panel cap is reached.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(a: f64, b: f64, start_panels: usize, tol: f64, f: F) -> f64 {
    let rule = GaussLegendre::new(20);
    let mut panels = start_panels.max(1);
    let mut prev = rule.integrate_composite(a, b, panels, &f);
    loop {
        panels *= 2;
        let next = rule.integrate_composite(a, b, panels, &f);
        if (next - prev).abs() <= tol || panels >= 1 << 14 {
            return next;
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for m in [1, 2, 5, 20, 64, 128] {
            let g = GaussLegendre::new(m);
            let s: f64 = g.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "m = {m}");
        }
    }

    #[test]
    fn exact_for_polynomials() {
        let g = GaussLegendre::new(10);
        let v = g.integrate(0.0, 2.0, |x| x.powi(19));
        assert!((v - 2f64.powi(20) / 20.0).abs() < 1e-9);
    }

    #[test]
    fn oscillatory_integral() {
        let v = integrate_adaptive(0.0, 10.0, 2, 1e-14, |x| (3.0 * x).cos());
        assert!((v - (30f64).sin() / 3.0).abs() < 1e-13);
    }
}
