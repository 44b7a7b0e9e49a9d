//! The standard Cantor function and its running integral.

/// Ternary digits examined before giving up; the remaining error is below 2^-60.
const DEPTH: usize = 60;

/// Cantor function `c(t)`, the distribution function of the Cantor measure.
pub fn cantor_cdf(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let mut x = t;
    let mut scale = 0.5;
    let mut acc = 0.0;
    for _ in 0..DEPTH {
        x *= 3.0;
        if x >= 2.0 {
            acc += scale;
            x -= 2.0;
        } else if x >= 1.0 {
            // middle third: plateau
            return acc + scale;
        }
        scale *= 0.5;
    }
    acc
}

/// `I(t) = ∫₀ᵗ c(s) ds`, evaluated through the self-similar recursion
///
/// ```text
/// I(t) = I(3t)/6                          t in [0, 1/3]
/// I(t) = 1/12 + (t - 1/3)/2               t in [1/3, 2/3]
/// I(t) = 1/4 + (t - 2/3)/2 + I(3t - 2)/6  t in [2/3, 1]
/// ```
pub fn cantor_integral(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 0.5;
    }
    const THIRD: f64 = 1.0 / 3.0;
    const TWO_THIRDS: f64 = 2.0 / 3.0;
    let mut x = t;
    let mut factor = 1.0;
    let mut acc = 0.0;
    for _ in 0..DEPTH {
        if x <= 0.0 {
            return acc;
        }
        if x >= 1.0 {
            return acc + factor * 0.5;
        }
        if x < THIRD {
            factor /= 6.0;
            x *= 3.0;
        } else if x <= TWO_THIRDS {
            return acc + factor * (1.0 / 12.0 + (x - THIRD) / 2.0);
        } else {
            acc += factor * (0.25 + (x - TWO_THIRDS) / 2.0);
            factor /= 6.0;
            x = 3.0 * x - 2.0;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn midpoint(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
    }

    #[test]
    fn known_values() {
        assert_eq!(cantor_cdf(0.5), 0.5);
        assert_eq!(cantor_cdf(1.0 / 3.0), 0.5);
        assert_eq!(cantor_cdf(2.0 / 3.0), 0.5);
        assert!((cantor_cdf(0.25) - 1.0 / 3.0).abs() < 1e-15);
        assert!((cantor_cdf(0.75) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(cantor_integral(1.0), 0.5);
        assert!((cantor_integral(1.0 / 3.0) - 1.0 / 12.0).abs() < 1e-15);
        assert!((cantor_integral(0.5) - (1.0 / 12.0 + 1.0 / 12.0)).abs() < 1e-15);
    }

    #[test]
    fn integral_matches_quadrature_of_cdf() {
        for &t in &[1.0 / 3.0, 0.1, 0.5, 0.7, 0.9, 1.0] {
            let q = midpoint(cantor_cdf, 0.0, t, 200_000);
            assert!(
                (q - cantor_integral(t)).abs() < 1e-6,
                "t={t}: quadrature {q} vs recursion {}",
                cantor_integral(t)
            );
        }
    }

    #[test]
    fn cdf_is_monotone_and_symmetric() {
        let mut prev = 0.0;
        for k in 0..=3000 {
            let t = k as f64 / 3000.0;
            let c = cantor_cdf(t);
            assert!(c >= prev);
            // c is only Hölder-0.63, so rounding in 1 - t is amplified
            assert!((c + cantor_cdf(1.0 - t) - 1.0).abs() < 1e-9);
            prev = c;
        }
    }
}
