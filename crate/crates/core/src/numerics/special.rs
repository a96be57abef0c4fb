//! Gamma-family functions on [`Real`].
//!
//! Gamma, log-gamma and digamma are delegated to MPFR, which rounds correctly
//! at the operand precision. The wrappers add pole detection, reciprocal gamma
//! and the Pochhammer/binomial conventions used throughout the crate.

use std::cmp::Ordering;

use rug::Float;

use super::{Precision, Real};
use crate::error::{Error, Result};

/// Products longer than this switch to a gamma-ratio evaluation.
const PRODUCT_LIMIT: i64 = 512;

fn pole(function: &'static str, x: &Real) -> Error {
    Error::Pole {
        function,
        at: x.to_decimal_string(Some(12)),
    }
}

pub fn gamma_fn(x: &Real) -> Result<Real> {
    if x.is_nonpositive_integer() {
        return Err(pole("gamma", x));
    }
    Ok(Real::from_float(x.as_float().clone().gamma()))
}

/// `1/Γ(x)`, which is entire: zero at the non-positive integers.
pub fn rgamma(x: &Real) -> Real {
    if x.is_nonpositive_integer() {
        return Real::zero(x.precision());
    }
    Real::from_float(x.as_float().clone().gamma()).recip()
}

/// `ln|Γ(x)|`.
pub fn log_gamma(x: &Real) -> Result<Real> {
    log_abs_gamma(x).map(|(v, _)| v)
}

/// `ln|Γ(x)|` together with `true` when `Γ(x) < 0`.
pub fn log_abs_gamma(x: &Real) -> Result<(Real, bool)> {
    if x.is_nonpositive_integer() {
        return Err(pole("log_gamma", x));
    }
    let (v, sign) = x.as_float().clone().ln_abs_gamma();
    Ok((Real::from_float(v), sign == Ordering::Less))
}

pub fn digamma(x: &Real) -> Result<Real> {
    if x.is_nonpositive_integer() {
        return Err(pole("digamma", x));
    }
    Ok(Real::from_float(x.as_float().clone().digamma()))
}

/// Rising factorial `(a)_k`, extended to negative `k` by
/// `(a)_{-k} = (-1)^k / (1-a)_k`.
pub fn pochhammer(a: &Real, k: i64) -> Result<Real> {
    match k.cmp(&0) {
        Ordering::Equal => Ok(Real::one(a.precision())),
        Ordering::Greater => Ok(rising(a, k)),
        Ordering::Less => {
            let m = -k;
            let one_minus_a = 1i64 - a;
            let denom = rising(&one_minus_a, m);
            if denom.is_zero() {
                return Err(pole("pochhammer", a));
            }
            let v = denom.recip();
            Ok(if m % 2 == 1 { -v } else { v })
        }
    }
}

fn rising(a: &Real, k: i64) -> Real {
    if a.is_nonpositive_integer() {
        let start = a.to_i64_exact().unwrap_or(i64::MIN);
        if start + k > 0 {
            // the product runs through zero
            return Real::zero(a.precision());
        }
        // (a)_k = (-1)^k (1-a-k)_k with 1-a-k >= 1
        let reflected = rising(&(1i64 - a - k), k);
        return if k % 2 == 1 { -reflected } else { reflected };
    }
    if k <= PRODUCT_LIMIT {
        let mut acc = Real::one(a.precision());
        let mut t = a.clone();
        for _ in 0..k {
            acc *= &t;
            t += 1i64;
        }
        return acc;
    }
    gamma_ratio(a, k)
}

/// `Γ(a+k)/Γ(a)` through log-gamma, carrying enough extra bits that the
/// exponentiation does not amplify the rounding of the logarithms.
fn gamma_ratio(a: &Real, k: i64) -> Real {
    let prec = a.prec_bits();
    let end = a + k;
    let magnitude = (end.to_f64().abs() + 2.0) * (end.to_f64().abs() + 2.0).ln();
    let extra = magnitude.log2().max(0.0).ceil() as u32 + 16;
    let wa = Float::with_val(prec + extra, a.as_float());
    let we = Float::with_val(prec + extra, end.as_float());
    let (la, sa) = wa.ln_abs_gamma();
    let (le, se) = we.ln_abs_gamma();
    let mut v = Float::with_val(prec + extra, &le - &la).exp();
    if sa != se {
        v = -v;
    }
    Real::from_float(Float::with_val(prec, v))
}

/// `binom(top, n) = Γ(top+1)/(Γ(n+1)Γ(top-n+1))` for real `top` and integer `n ≥ 0`.
///
/// As a polynomial in `top` this is defined everywhere; it vanishes exactly
/// when `top` is an integer in `0..n`.
pub fn binomial_real(top: &Real, n: u64) -> Real {
    let prec = top.precision();
    if n == 0 {
        return Real::one(prec);
    }
    let k = n as i64;
    let numer = rising(&(top - k + 1i64), k);
    if numer.is_zero() {
        return numer;
    }
    let factorial = if k <= PRODUCT_LIMIT {
        rising(&Real::one(prec), k)
    } else {
        Real::from_float(Float::with_val(top.prec_bits(), Float::factorial(n as u32)))
    };
    numer / factorial
}

/// Total mass `∫(1−x)^α(1+x)^β dx = 2^{α+β+1} Γ(α+1)Γ(β+1)/Γ(α+β+2)` of the
/// Jacobi weight, for `α, β > −1`.
pub fn jacobi_mass(alpha: &Real, beta: &Real) -> Result<Real> {
    let s = alpha + beta;
    let scale = Real::int_pow(2, &(&s + 1i64));
    Ok(scale * gamma_fn(&(alpha + 1i64))? * gamma_fn(&(beta + 1i64))? / gamma_fn(&(s + 2i64))?)
}

/// `H_{n-1} = Σ_{k=1}^{n-1} 1/k`.
pub fn harmonic(n: u64, prec: Precision) -> Real {
    if n <= 1 {
        return Real::zero(prec);
    }
    if n <= 4096 {
        let mut acc = Real::zero(prec);
        // smallest terms first
        for k in (1..n).rev() {
            acc += Real::one(prec) / k as i64;
        }
        return acc;
    }
    let x = Real::from_i64(n as i64, prec);
    digamma(&x).expect("positive argument") + Real::euler_gamma(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::digits(40)
    }

    fn r(s: &str) -> Real {
        Real::parse(s, p()).unwrap()
    }

    fn close(a: &Real, b: &Real, rel: f64) -> bool {
        let d = (a - b).abs();
        d <= b.abs() * rel || d < rel * 1e-300
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&r("3"), 4).unwrap(), 360i64);
        assert_eq!(pochhammer(&r("0.5"), 0).unwrap(), 1i64);
        let v = pochhammer(&r("0.5"), -2).unwrap();
        assert!(close(&v, &(Real::from_i64(4, p()) / 3i64), 1e-39));
    }

    #[test]
    fn pochhammer_negative_index_pole() {
        // (2)_{-3} = 1/((1)(0)(-1))
        assert!(matches!(pochhammer(&r("2"), -3), Err(Error::Pole { .. })));
        assert!(pochhammer(&r("4"), -3).is_ok());
    }

    #[test]
    fn pochhammer_through_zero_and_reflection() {
        assert!(pochhammer(&r("-3"), 5).unwrap().is_zero());
        // (-4)_3 = (-4)(-3)(-2)
        assert_eq!(pochhammer(&r("-4"), 3).unwrap(), -24i64);
    }

    #[test]
    fn pochhammer_long_products_use_gamma_ratio() {
        let a = r("0.3");
        let direct = {
            let mut acc = Real::one(p());
            let mut t = a.clone();
            for _ in 0..1000 {
                acc *= &t;
                t += 1i64;
            }
            acc
        };
        assert!(close(&gamma_ratio(&a, 1000), &direct, 1e-36));
        let neg = r("-7.25");
        let direct_neg = {
            let mut acc = Real::one(p());
            let mut t = neg.clone();
            for _ in 0..600 {
                acc *= &t;
                t += 1i64;
            }
            acc
        };
        assert!(close(&pochhammer(&neg, 600).unwrap(), &direct_neg, 1e-36));
    }

    #[test]
    fn gamma_examples() {
        let sqrt_pi = Real::sqrt_pi(p());
        assert!(close(&gamma_fn(&r("0.5")).unwrap(), &sqrt_pi, 1e-39));
        assert_eq!(gamma_fn(&r("5")).unwrap(), 24i64);
        let expected = sqrt_pi * 4i64 / 3i64;
        assert!(close(&gamma_fn(&r("-1.5")).unwrap(), &expected, 1e-39));
        assert!(gamma_fn(&r("-2")).is_err());
        assert!(gamma_fn(&r("0")).is_err());
        assert!(rgamma(&r("-2")).is_zero());
    }

    #[test]
    fn log_gamma_sign_on_negative_axis() {
        let (v, neg) = log_abs_gamma(&r("-0.5")).unwrap();
        // Γ(-1/2) = -2√π
        let expected = (Real::sqrt_pi(p()) * 2i64).ln();
        assert!(neg);
        assert!(close(&v, &expected, 1e-38));
    }

    #[test]
    fn digamma_examples() {
        let g = Real::euler_gamma(p());
        assert!(close(&digamma(&r("1")).unwrap(), &(-&g), 1e-39));
        let half = -&g - Real::ln2(p()) * 2i64;
        assert!(close(&digamma(&r("0.5")).unwrap(), &half, 1e-39));
        assert!(close(&digamma(&r("2")).unwrap(), &(1i64 - &g), 1e-39));
        assert!(digamma(&r("-1")).is_err());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_real(&r("4"), 2), 6i64);
        assert_eq!(binomial_real(&r("5"), 5), 1i64);
        assert_eq!(binomial_real(&r("2.5"), 2), 1.875);
        assert!(binomial_real(&r("3"), 7).is_zero());
        // binom(-1, n) = (-1)^n
        assert_eq!(binomial_real(&r("-1"), 7), -1i64);
    }

    #[test]
    fn binomial_large_n_matches_gamma_form() {
        let top = r("1234.7");
        let n = 1000u64;
        let via_gamma = (log_gamma(&(&top + 1i64)).unwrap()
            - log_gamma(&Real::from_i64(n as i64 + 1, p())).unwrap()
            - log_gamma(&(&top - n as i64 + 1i64)).unwrap())
        .exp();
        assert!(close(&binomial_real(&top, n), &via_gamma, 1e-34));
    }

    #[test]
    fn jacobi_mass_examples() {
        assert_eq!(jacobi_mass(&r("0"), &r("0")).unwrap(), 2i64);
        let half = jacobi_mass(&r("0.5"), &r("0.5")).unwrap();
        assert!(close(&half, &(Real::pi(p()) / 2i64), 1e-39));
    }

    #[test]
    fn harmonic_examples() {
        assert!(harmonic(1, p()).is_zero());
        let h4 = harmonic(4, p());
        assert!(close(&h4, &(Real::from_i64(11, p()) / 6i64), 1e-39));
        let h100 = harmonic(100, p());
        let via_digamma = digamma(&r("100")).unwrap() + Real::euler_gamma(p());
        assert!(close(&h100, &via_digamma, 1e-30));
        let big = harmonic(10_000, p());
        let direct: f64 = (1..10_000).map(|k| 1.0 / k as f64).sum();
        assert!((big.to_f64() - direct).abs() < 1e-11);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn real(x: f64) -> Real {
            Real::from_f64(x, p())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn pochhammer_splits(a in -20.0f64..20.0, m in 0i64..40, k in 0i64..40) {
                let a = real(a);
                let whole = pochhammer(&a, m + k).unwrap();
                let split = pochhammer(&a, m).unwrap() * pochhammer(&(&a + m), k).unwrap();
                prop_assert!((&whole - &split).abs() <= whole.abs() * 1e-35 + 1e-300);
            }

            #[test]
            fn gamma_duplication(x in 0.05f64..40.0) {
                // Γ(x)Γ(x+½) = 2^{1−2x} √π Γ(2x)
                let x = real(x);
                let half = Real::one(p()) / 2i64;
                let lhs = gamma_fn(&x).unwrap() * gamma_fn(&(&x + &half)).unwrap();
                let rhs = Real::int_pow(2, &(1i64 - &x * 2i64)) * Real::sqrt_pi(p()) * gamma_fn(&(&x * 2i64)).unwrap();
                prop_assert!(close(&lhs, &rhs, 1e-25));
            }

            #[test]
            fn gamma_and_digamma_recurrences(x in -30.0f64..60.0) {
                let x = real(x);
                prop_assume!(!x.is_integer() || x > 0i64);
                let g = gamma_fn(&x).unwrap();
                prop_assert!(close(&gamma_fn(&(&x + 1i64)).unwrap(), &(&g * &x), 1e-36));
                let d = digamma(&x).unwrap();
                let shifted = digamma(&(&x + 1i64)).unwrap();
                prop_assert!((shifted - d - x.recip()).abs().to_f64() < 1e-30);
            }

            #[test]
            fn binomial_times_factorial_is_falling_factorial(top in -30.0f64..60.0, n in 0u64..30) {
                // binom(t, n) n! = (t−n+1)_n
                let t = real(top);
                let lhs = binomial_real(&t, n) * pochhammer(&Real::one(p()), n as i64).unwrap();
                let rhs = pochhammer(&(&t - n as i64 + 1i64), n as i64).unwrap();
                prop_assert!((&lhs - &rhs).abs() <= rhs.abs() * 1e-35 + 1e-300);
            }
        }
    }
}
