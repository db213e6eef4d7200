//! Summary statistics and Kolmogorov–Smirnov distances.

/// One-sample KS distance between the empirical law of `samples` and `cdf`,
/// evaluated exactly at the sample points.
pub fn ks_one_sample<F: FnMut(f64) -> f64>(samples: &[f64], mut cdf: F) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in s.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs()).max((f - i as f64 / n).abs());
    }
    d
}

/// Two-sample KS distance between empirical laws.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Sample mean.
pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Unbiased sample variance.
pub fn variance(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (x.len() as f64 - 1.0)
}

/// Standard error of the mean.
pub fn std_error(x: &[f64]) -> f64 {
    (variance(x) / x.len() as f64).sqrt()
}

/// Counts of `samples` in the bins `[edges[k], edges[k+1])`, with the last
/// bin closed on the right. Samples outside `[edges[0], edges[last]]` are
/// not counted.
pub fn histogram(samples: &[f64], edges: &[f64]) -> Vec<u64> {
    let mut counts = vec![0u64; edges.len().saturating_sub(1)];
    let Some(&last) = edges.last() else {
        return counts;
    };
    for &x in samples {
        let k = edges.partition_point(|&e| e <= x);
        if k >= 1 && k < edges.len() {
            counts[k - 1] += 1;
        } else if x == last && k == edges.len() && k >= 2 {
            counts[k - 2] += 1;
        }
    }
    counts
}

/// One-sample KS distance for integer-valued data given as `counts[v]`, the
/// number of samples equal to `v`, against the distribution function `cdf`
/// evaluated at each value.
pub fn ks_from_counts<F: FnMut(usize) -> f64>(counts: &[u64], mut cdf: F) -> f64 {
    let total: u64 = counts.iter().sum();
    let n = total as f64;
    let mut below = 0u64;
    let mut d: f64 = 0.0;
    for (v, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let f = cdf(v);
        d = d.max((below as f64 / n - f).abs());
        below += c;
        d = d.max((below as f64 / n - f).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_of_uniform_grid() {
        let s: Vec<f64> = (0..100).map(|k| (k as f64 + 0.5) / 100.0).collect();
        assert!((ks_one_sample(&s, |x| x) - 0.005).abs() < 1e-12);
    }

    #[test]
    fn two_sample_identical() {
        let a = [0.1, 0.4, 0.2];
        assert_eq!(ks_two_sample(&a, &a), 0.0);
        assert_eq!(ks_two_sample(&[0.0, 0.1], &[1.0, 2.0]), 1.0);
    }

    #[test]
    fn histogram_counts() {
        assert_eq!(histogram(&[0.1, 0.5, 0.5, 2.0], &[0.0, 0.5, 1.0]), vec![1, 2]);
        assert_eq!(histogram(&[1.0, 0.0], &[0.0, 0.5, 1.0]), vec![1, 1]);
    }

    #[test]
    fn counts_ks_matches_sample_ks_at_jumps() {
        // Values 0..4 with counts; reference uniform on [0, 4].
        let counts = [1u64, 0, 2, 1];
        let d = ks_from_counts(&counts, |v| v as f64 / 4.0);
        // Empirical steps: 0.25 at 0, 0.75 at 2, 1 at 3.
        assert!((d - 0.25).abs() < 1e-15);
    }
}
