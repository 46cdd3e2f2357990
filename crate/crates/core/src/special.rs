//! Log-gamma helpers used to evaluate moment sequences without overflow.

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `ln n!`.
pub fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// `ln[Γ(x + s) / Γ(x)]` for `x > 0`, `x + s > 0`.
///
/// Small non-negative integer shifts use the recurrence `Γ(x+1) = xΓ(x)` as a
/// sum of logarithms, which keeps full relative accuracy where the difference
/// of two large `lgamma` values would cancel.
pub fn ln_gamma_ratio(x: f64, s: f64) -> f64 {
    if s >= 0.0 && s.fract() == 0.0 && s <= 64.0 {
        (0..s as u32).map(|k| (x + k as f64).ln()).sum()
    } else {
        ln_gamma(x + s) - ln_gamma(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_half_integer_products() {
        // Γ(n + 1/2) = (2n)! √π / (4ⁿ n!)
        for n in 0..60u64 {
            let direct = ln_factorial(2 * n) + 0.5 * std::f64::consts::PI.ln()
                - (n as f64) * 4f64.ln()
                - ln_factorial(n);
            let got = ln_gamma(n as f64 + 0.5);
            assert!((got - direct).abs() <= 1e-13 * direct.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn ratio_integer_shift() {
        assert!((ln_gamma_ratio(3.5, 2.0) - (3.5f64 * 4.5).ln()).abs() < 1e-15);
        assert_eq!(ln_gamma_ratio(7.0, 0.0), 0.0);
        let r = ln_gamma_ratio(10.0, 1.5);
        assert!((r - (ln_gamma(11.5) - ln_gamma(10.0))).abs() < 1e-14);
    }
}
