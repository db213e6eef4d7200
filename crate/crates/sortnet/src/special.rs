//! Special functions: complex log-Gamma, sine and cosine integrals, the
//! generalized exponential integral on the imaginary axis, and `ζ'(-1)`.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `log Γ(z)` on the principal branch of the logarithm of each factor.
///
/// The imaginary part is only defined modulo `2π`, which is harmless for
/// callers that exponentiate sums of log-Gamma values. Uses the Lanczos
/// approximation with reflection for `Re z < 1/2`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z) Γ(1 - z) = π / sin(πz)
        let s = (Complex64::from(PI) * z).sin();
        return Complex64::from(PI.ln()) - s.ln() - ln_gamma(Complex64::from(1.0) - z);
    }
    let z = z - 1.0;
    let mut acc = Complex64::from(LANCZOS[0]);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Complex64::from(0.5 * (2.0 * PI).ln()) + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `Γ(z)` for complex `z` away from the poles.
pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// Sine integral `Si(x) = ∫_0^x sin(t)/t dt`.
pub fn si(x: f64) -> f64 {
    sici(x).0
}

/// Cosine integral `Ci(x) = γ + ln x + ∫_0^x (cos t - 1)/t dt` for `x > 0`.
pub fn ci(x: f64) -> f64 {
    sici(x).1
}

/// `(Si(x), Ci(|x|))`. Power series for `|x| ≤ 4`, continued fraction for
/// `E_1(i|x|)` beyond.
pub fn sici(x: f64) -> (f64, f64) {
    let ax = x.abs();
    if ax == 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    let (s, c) = if ax <= 4.0 {
        let x2 = ax * ax;
        let mut term = ax; // x^{2k+1}/(2k+1)!
        let mut s = ax;
        let mut k = 0usize;
        let mut cterm = 1.0; // x^{2k}/(2k)!
        let mut c = 0.0;
        loop {
            k += 1;
            term *= -x2 / ((2 * k) as f64 * (2 * k + 1) as f64);
            cterm *= -x2 / ((2 * k - 1) as f64 * (2 * k) as f64);
            let ds = term / (2 * k + 1) as f64;
            let dc = cterm / (2 * k) as f64;
            s += ds;
            c += dc;
            if ds.abs() < 1e-17 * s.abs() && dc.abs() < 1e-17 * (c.abs() + 1.0) {
                break;
            }
        }
        (s, EULER_GAMMA + ax.ln() + c)
    } else {
        let e1 = expint_imag(1, ax);
        (FRAC_PI_2 + e1.im, -e1.re)
    };
    (s.copysign(x), c)
}

/// `∫_1^∞ sin(a t)/t dt = sgn(a) π/2 - Si(a)`.
pub fn sin_tail(a: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        FRAC_PI_2.copysign(a) - si(a)
    }
}

/// Generalized exponential integral `E_m(z) = ∫_1^∞ e^{-zt} t^{-m} dt` at
/// `z = i a` for integer `m ≥ 1` and real `a ≠ 0` (or `m ≥ 2`, `a = 0`).
///
/// Series expansion for `|a| ≤ 2`, modified Lentz continued fraction
/// otherwise.
pub fn expint_imag(m: u32, a: f64) -> Complex64 {
    assert!(m >= 1, "E_m needs m ≥ 1");
    if a == 0.0 {
        assert!(m >= 2, "E_1 diverges at 0");
        return Complex64::from(1.0 / (m - 1) as f64);
    }
    let z = Complex64::new(0.0, a);
    let nm1 = (m - 1) as i64;
    if a.abs() <= 2.0 {
        let mut ans = if nm1 != 0 {
            Complex64::from(1.0 / nm1 as f64)
        } else {
            -z.ln() - EULER_GAMMA
        };
        let mut fact = Complex64::from(1.0);
        for i in 1..200i64 {
            fact *= -z / i as f64;
            let del = if i != nm1 {
                -fact / (i - nm1) as f64
            } else {
                let psi = -EULER_GAMMA + (1..=nm1).map(|k| 1.0 / k as f64).sum::<f64>();
                fact * (-z.ln() + psi)
            };
            ans += del;
            if del.norm() < ans.norm() * 1e-17 {
                break;
            }
        }
        ans
    } else {
        let tiny = 1e-300;
        let mut b = z + m as f64;
        let mut c = Complex64::from(1.0 / tiny);
        let mut d = b.inv();
        let mut h = d;
        for i in 1..100_000i64 {
            let an = -(i * (nm1 + i)) as f64;
            b += 2.0;
            d = (d * an + b).inv();
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() < 1e-16 {
                break;
            }
        }
        h * (-z).exp()
    }
}

/// `ζ'(-1)` from the Glaisher–Kinkelin constant, itself computed by the
/// Euler–Maclaurin expansion of `Σ_{k≤n} k ln k`.
pub fn zeta_prime_minus_one() -> f64 {
    1.0 / 12.0 - ln_glaisher()
}

/// `ln A` for the Glaisher–Kinkelin constant `A`.
pub fn ln_glaisher() -> f64 {
    let n = 50usize;
    let nf = n as f64;
    let s: f64 = (1..=n).map(|k| k as f64 * (k as f64).ln()).sum();
    // Σ_{k≤n} k ln k = (n²/2 + n/2 + 1/12) ln n - n²/4 + ln A
    //                 + 1/(720 n²) - 1/(5040 n⁴) + 1/(10080 n⁶) + …
    let main = (nf * nf / 2.0 + nf / 2.0 + 1.0 / 12.0) * nf.ln() - nf * nf / 4.0;
    let n2 = nf * nf;
    s - main - 1.0 / (720.0 * n2) + 1.0 / (5040.0 * n2 * n2) - 1.0 / (10080.0 * n2 * n2 * n2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_at_integers_and_half() {
        assert!((gamma(Complex64::from(5.0)).re - 24.0).abs() < 1e-12);
        assert!((gamma(Complex64::from(0.5)).re - PI.sqrt()).abs() < 1e-13);
        assert!((gamma(Complex64::from(-0.5)).re + 2.0 * PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gamma_recurrence_complex() {
        for &(re, im) in &[(0.3, 0.7), (-2.4, 1.1), (7.5, -3.0), (-0.4, -1.0)] {
            let z = Complex64::new(re, im);
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm(), "{z}");
        }
    }

    #[test]
    fn sine_integral_values() {
        assert!((si(2.0 * PI) - 1.418_151_576_132_628_4).abs() < 1e-13);
        assert!((si(1.0) - 0.946_083_070_367_183).abs() < 1e-14);
        assert!((si(10.0) - 1.658_347_594_218_874).abs() < 1e-13);
        assert!((si(-3.0) + 1.848_652_527_999_468).abs() < 1e-13);
        assert!((ci(1.0) - 0.337_403_922_900_968_1).abs() < 1e-13);
    }

    #[test]
    fn sine_integral_continuous_at_switch() {
        let below = si(4.0);
        let above = si(4.0 + 1e-12);
        assert!((below - above).abs() < 1e-12);
    }

    #[test]
    fn glaisher() {
        assert!((ln_glaisher().exp() - 1.282_427_129_100_622_6).abs() < 1e-10);
        assert!((zeta_prime_minus_one() + 0.165_421_143_7).abs() < 1e-9);
    }
}
