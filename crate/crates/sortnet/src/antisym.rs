//! Spectra of real antisymmetric matrices.
//!
//! The eigenvalues of a real antisymmetric matrix come in pairs `±iσ`, with
//! an extra zero when the order is odd. A Householder similarity reduces the
//! matrix to antisymmetric tridiagonal form with subdiagonal `e`. A diagonal
//! unitary change of basis then turns this into the symmetric tridiagonal
//! matrix with zero diagonal and off-diagonal `|e|`, whose eigenvalues are
//! `±σ`. Those are located by Sturm-sequence bisection.

use crate::{Error, Result};
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

/// `A = (G - Gᵀ)/√2` with `G` an `m × m` matrix of independent standard
/// Gaussians, filled row by row.
pub fn antisymmetric_gaussian<R: Rng + ?Sized>(m: usize, rng: &mut R) -> DMatrix<f64> {
    let g: Vec<f64> = (0..m * m).map(|_| rng.sample(StandardNormal)).collect();
    let g = DMatrix::from_row_slice(m, m, &g);
    (&g - g.transpose()) * std::f64::consts::FRAC_1_SQRT_2
}

/// Subdiagonal of an antisymmetric tridiagonal matrix similar to `a`.
///
/// Fails if `a` is not square or not antisymmetric to a relative `1e-12`.
pub fn tridiagonalize_antisymmetric(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    let m = a.nrows();
    if a.ncols() != m {
        return Err(Error::Domain(format!("matrix is {m} × {}", a.ncols())));
    }
    let scale = a.amax().max(f64::MIN_POSITIVE);
    for i in 0..m {
        for j in 0..=i {
            if (a[(i, j)] + a[(j, i)]).abs() > 1e-12 * scale {
                return Err(Error::Domain(format!("matrix is not antisymmetric at ({i}, {j})")));
            }
        }
    }
    if m < 2 {
        return Ok(Vec::new());
    }
    // Row-major working copy.
    let mut w: Vec<f64> = (0..m * m).map(|k| a[(k / m, k % m)]).collect();
    let mut e = Vec::with_capacity(m - 1);
    let mut v = vec![0.0; m];
    let mut q = vec![0.0; m];
    for k in 0..m - 2 {
        let lo = k + 1;
        let norm = (lo..m).map(|i| w[i * m + k].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            e.push(0.0);
            continue;
        }
        let x0 = w[lo * m + k];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in lo..m {
            v[i] = w[i * m + k];
        }
        v[lo] -= alpha;
        let vn = (lo..m).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        for x in &mut v[lo..m] {
            *x /= vn;
        }
        // Trailing block B ← (I - 2vvᵀ) B (I - 2vvᵀ) = B + 2 v qᵀ - 2 q vᵀ, q = Bv.
        for i in lo..m {
            let row = &w[i * m + lo..i * m + m];
            q[i] = row.iter().zip(&v[lo..m]).map(|(b, x)| b * x).sum();
        }
        for i in lo..m {
            let (vi, qi) = (2.0 * v[i], 2.0 * q[i]);
            let row = &mut w[i * m + lo..i * m + m];
            for (j, b) in row.iter_mut().enumerate() {
                *b += vi * q[lo + j] - qi * v[lo + j];
            }
        }
        for i in lo..m {
            w[i * m + k] = 0.0;
            w[k * m + i] = 0.0;
        }
        w[lo * m + k] = alpha;
        w[k * m + lo] = -alpha;
        e.push(alpha);
    }
    e.push(w[(m - 1) * m + (m - 2)]);
    Ok(e)
}

/// Spectrum of the symmetric tridiagonal matrix with zero diagonal and
/// off-diagonal `|e|`, queried by Sturm counts.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSpectrum {
    offdiag_sq: Vec<f64>,
    bound: f64,
}

impl TridiagonalSpectrum {
    /// Spectrum with off-diagonal entries `e` (signs are irrelevant).
    pub fn new(e: &[f64]) -> Self {
        let abs: Vec<f64> = e.iter().map(|x| x.abs()).collect();
        let bound = (0..=abs.len())
            .map(|i| {
                let left = if i > 0 { abs[i - 1] } else { 0.0 };
                let right = abs.get(i).copied().unwrap_or(0.0);
                left + right
            })
            .fold(0.0, f64::max);
        TridiagonalSpectrum {
            offdiag_sq: e.iter().map(|x| x * x).collect(),
            bound,
        }
    }

    /// Order of the matrix.
    pub fn order(&self) -> usize {
        self.offdiag_sq.len() + 1
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt() * (1.0 + self.bound);
        // A vanishing pivot is replaced by -tiny before it is counted.
        let pivot = |d: f64| if d.abs() <= tiny { -tiny } else { d };
        let mut d = pivot(-x);
        let mut count = usize::from(d < 0.0);
        for &b2 in &self.offdiag_sq {
            d = pivot(-x - b2 / d);
            count += usize::from(d < 0.0);
        }
        count
    }

    /// Number of eigenvalues in `(0, x)` for `x > 0`.
    pub fn positive_count_below(&self, x: f64) -> usize {
        self.count_below(x).saturating_sub(self.order().div_ceil(2))
    }

    /// The `k`-th smallest positive eigenvalue, `k ≥ 1`.
    pub fn kth_positive(&self, k: usize) -> f64 {
        let target = self.order().div_ceil(2) + k;
        let (mut lo, mut hi) = (0.0, self.bound * (1.0 + 1e-12) + f64::MIN_POSITIVE);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// All positive eigenvalues, increasing. Exact zeros beyond the one forced
    /// by odd order are reported as `0`.
    pub fn positive_values(&self) -> Vec<f64> {
        (1..=self.order() / 2).map(|k| self.kth_positive(k)).collect()
    }
}

/// The magnitudes `σ` of the eigenvalue pairs `±iσ` of the top-left `m × m`
/// corner of `a`, increasing, one per pair.
pub fn corner_magnitudes(a: &DMatrix<f64>, m: usize) -> Result<Vec<f64>> {
    if m == 0 || m > a.nrows() || m > a.ncols() {
        return Err(Error::Domain(format!(
            "corner {m} does not fit a {} × {} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    let corner = a.view((0, 0), (m, m)).into_owned();
    let e = tridiagonalize_antisymmetric(&corner)?;
    Ok(TridiagonalSpectrum::new(&e).positive_values())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_by_three_closed_form() {
        let (a, b, c) = (0.3, -1.2, 2.0);
        let m = DMatrix::from_row_slice(3, 3, &[0.0, a, b, -a, 0.0, c, -b, -c, 0.0]);
        let s = corner_magnitudes(&m, 3).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0] - (a * a + b * b + c * c).sqrt()).abs() < 1e-13);
    }

    #[test]
    fn sturm_counts_of_small_matrix() {
        // Zero diagonal, off-diagonal (1, 1): eigenvalues -√2, 0, √2.
        let s = TridiagonalSpectrum::new(&[1.0, -1.0]);
        assert_eq!(s.count_below(-2.0), 0);
        assert_eq!(s.count_below(-1.0), 1);
        assert_eq!(s.count_below(1.0), 2);
        assert_eq!(s.positive_count_below(1.5), 1);
        assert!((s.kth_positive(1) - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!(tridiagonalize_antisymmetric(&m).is_err());
    }
}
