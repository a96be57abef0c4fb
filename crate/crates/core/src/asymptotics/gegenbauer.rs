use rug::Rational;

use super::{
    log_transfer, non_generic, power_transfer, AsymptoticExpansion, AsymptoticTerm, LeadingCase, LeadingTerm, Origin,
    Remainder,
};
use crate::error::{Error, Result};
use crate::eval::{Budget, Evaluation, Method};
use crate::exact::c_at_one;
use crate::numerics::{digamma, gamma_fn, pochhammer, rgamma, CancellationReport, Precision, Real};
use crate::params::GegenbauerParams;

fn require_generic(g: &GegenbauerParams) -> Result<()> {
    let c = g.classify();
    if c.class.is_generic() {
        Ok(())
    } else {
        Err(Error::Domain(format!("parameters are non-generic ({})", c.class)))
    }
}

/// `Σ_{ℓ≤m/2} num(ℓ)/(den(ℓ) (m−2ℓ)!) (−1)^ℓ/4^ℓ`, shared by the `A_m`/`B_m`
/// sums of the Gegenbauer and integer-λ series.
pub(super) fn quarter_sum(
    m: u32,
    ell_max: i64,
    prec: Precision,
    term: impl Fn(i64) -> Result<(Real, Real)>,
) -> Result<Real> {
    let m = m as i64;
    let one = Real::one(prec);
    let mut sum = Real::zero(prec);
    for ell in 0..=(m / 2).min(ell_max) {
        let (num, den) = term(ell)?;
        if den.is_zero() {
            return Err(Error::Domain("non-generic parameters: a coefficient denominator vanishes".into()));
        }
        let t = num / (den * pochhammer(&one, m - 2 * ell)? * Real::int_pow(4, &Real::from_i64(ell, prec)));
        sum += if ell % 2 == 1 { -t } else { t };
    }
    Ok(sum)
}

/// `A_m`, from the double poles at `−λ−ℓ`.
pub fn gegen_coefficient_a(g: &GegenbauerParams, m: u32, prec: Precision) -> Result<Real> {
    require_generic(g)?;
    let (l, mu) = (g.lambda.real(prec), g.mu.real(prec));
    let half = Real::one(prec) / 2i64;
    let pre = (|| -> Result<Real> {
        Ok(gamma_fn(&(&l + &half))? * gamma_fn(&(&half + &mu - &l))? / gamma_fn(&l)? * rgamma(&(&mu + 1i64 - &l)))
    })()
    .map_err(non_generic)?;
    let one = Real::one(prec);
    let sum = quarter_sum(m, i64::MAX, prec, |ell| {
        let num = pochhammer(&(1i64 - &l), ell)? * pochhammer(&(&l - &mu), ell)? * pochhammer(&l, m as i64 - ell)?;
        let den = pochhammer(&(&half + &l - &mu), ell)? * pochhammer(&one, ell)?.square();
        Ok((num, den))
    })?;
    Ok(pre * sum)
}

/// `B_m`, from the simple poles at `−μ−½−ℓ`.
pub fn gegen_coefficient_b(g: &GegenbauerParams, m: u32, prec: Precision) -> Result<Real> {
    require_generic(g)?;
    let (l, mu) = (g.lambda.real(prec), g.mu.real(prec));
    let half = Real::one(prec) / 2i64;
    let pre = (|| -> Result<Real> {
        Ok(gamma_fn(&(&l + &half))? * gamma_fn(&(&l - &mu - &half))?.square() * gamma_fn(&(&mu + &half))?
            / (Real::int_pow(4, &(&mu + 1i64 - &l)) * Real::sqrt_pi(prec) * gamma_fn(&l)?)
            * rgamma(&(&l * 2i64 - &mu - &half)))
    })()
    .map_err(non_generic)?;
    let one = Real::one(prec);
    let three_halves = Real::from_i64(3, prec) / 2i64;
    let sum = quarter_sum(m, i64::MAX, prec, |ell| {
        let num = pochhammer(&half, ell)?
            * pochhammer(&(&three_halves + &mu - &l * 2i64), ell)?
            * pochhammer(&(&mu + &half), m as i64 - ell)?;
        let den = pochhammer(&(&three_halves + &mu - &l), ell)?.square() * pochhammer(&one, ell)?;
        Ok((num, den))
    })?;
    Ok(pre * sum)
}

/// Evaluates `C_n(1) Σ_{m≤M} [A_m (−1)^m m!/(n⋯(n−m)) + B_m binom(n+2λ−2μ−2−m, n)]`.
pub(super) fn gegen_series(
    lambda: &Real,
    mu: &Real,
    n: u64,
    m_max: u32,
    origins: (Origin, Origin),
    coefficients: impl Fn(u32) -> Result<(Real, Real)>,
) -> Result<AsymptoticExpansion> {
    if n <= m_max as u64 {
        return Err(Error::Domain(format!("asymptotic series with M = {m_max} needs n > M, got n = {n}")));
    }
    let prec = lambda.precision();
    let scale = c_at_one(lambda, n)?;
    let (lf, mf) = (lambda.to_f64(), mu.to_f64());
    let mut terms = Vec::new();
    for m in 0..=m_max {
        let (a, b) = coefficients(m)?;
        let va = &scale * &a * log_transfer(m, n, prec)?;
        // binom(n+2λ−2μ−2−m, n) = [z^n] (1−z)^{2μ+1−2λ+m}
        let vb = &scale * &b * power_transfer(&(mu * 2i64 + 1i64 - lambda * 2i64 + m as i64), n);
        terms.push(AsymptoticTerm {
            origin: origins.0,
            index: m,
            coefficient: a,
            n_exponent: 2.0 * lf - 2.0 - m as f64,
            log_power: 0,
            value: va,
        });
        terms.push(AsymptoticTerm {
            origin: origins.1,
            index: m,
            coefficient: b,
            n_exponent: 4.0 * lf - 2.0 * mf - 3.0 - m as f64,
            log_power: 0,
            value: vb,
        });
    }
    Ok(AsymptoticExpansion::new(n, m_max, terms))
}

/// The series for `J_n^{(λ;μ)}` truncated after index `M`, for generic
/// parameters and `n > M`.
pub fn jn_asymptotic(g: &GegenbauerParams, n: u64, m_max: u32, budget: &Budget) -> Result<(Evaluation, AsymptoticExpansion)> {
    require_generic(g)?;
    let prec = budget.working();
    let (l, mu) = (g.lambda.real(prec), g.mu.real(prec));
    let expansion = gegen_series(&l, &mu, n, m_max, (Origin::GegenA, Origin::GegenB), |m| {
        Ok((gegen_coefficient_a(g, m, prec)?, gegen_coefficient_b(g, m, prec)?))
    })?;
    let value = expansion.value(prec);
    let eval = Evaluation::new(value.clone(), Method::Asymptotic(m_max), CancellationReport::exact(&value), prec, budget);
    Ok((eval, expansion))
}

/// `√π Γ(μ+½−λ)/(2^{2λ−1} Γ(λ)² Γ(μ+1−λ))`, the constant of the case
/// `μ > λ − ½`.
pub fn gegen_leading_constant(lambda: &Real, mu: &Real) -> Result<Real> {
    let prec = lambda.precision();
    let half = Real::one(prec) / 2i64;
    Ok(Real::sqrt_pi(prec) * gamma_fn(&(mu + &half - lambda))? * rgamma(&(mu + 1i64 - lambda))
        / (Real::int_pow(2, &(lambda * 2i64 - 1i64)) * gamma_fn(lambda)?.square()))
}

/// The leading term of `J_n^{(λ;μ)}`, split by μ against `λ − ½`.
pub fn gegen_leading_term(g: &GegenbauerParams, n: u64, prec: Precision) -> Result<LeadingTerm> {
    let (l, mu) = (g.lambda.real(prec), g.mu.real(prec));
    let (lf, mf) = (g.lambda.to_f64(), g.mu.to_f64());
    let half = Real::one(prec) / 2i64;
    let boundary = g.lambda.value().clone() - Rational::from((1, 2));
    let gl2 = gamma_fn(&l)?.square();
    match g.mu.value().cmp(&boundary) {
        std::cmp::Ordering::Greater => LeadingTerm::new(
            gegen_leading_constant(&l, &mu)?,
            &l * 2i64 - 2i64,
            None,
            n,
            LeadingCase::MuAboveLambdaMinusHalf,
            vec![Remainder::plain(2.0 * lf - 3.0), Remainder::plain(4.0 * lf - 2.0 * mf - 3.0)],
        ),
        std::cmp::Ordering::Equal => LeadingTerm::new(
            Real::int_pow(2, &(2i64 - &l * 2i64)) / gl2,
            &l * 2i64 - 2i64,
            Some(Real::ln2(prec) * 2i64 - digamma(&l)?),
            n,
            LeadingCase::MuEqLambdaMinusHalf,
            vec![Remainder {
                exponent: 2.0 * lf - 3.0,
                log_power: 1,
            }],
        ),
        std::cmp::Ordering::Less => {
            let c = Real::sqrt_pi(prec) * gamma_fn(&(&l - &mu - &half))? * gamma_fn(&(&mu + &half))?
                * rgamma(&(&l - &mu))
                * rgamma(&(&l * 2i64 - &mu - &half))
                / (Real::int_pow(2, &(&l * 2i64 - 1i64)) * gl2);
            LeadingTerm::new(
                c,
                &l * 4i64 - &mu * 2i64 - 3i64,
                None,
                n,
                LeadingCase::MuBelowLambdaMinusHalf,
                vec![Remainder::plain(2.0 * lf - 2.0), Remainder::plain(4.0 * lf - 2.0 * mf - 4.0)],
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::jn;
    use crate::params::Param;

    fn prec() -> Precision {
        Precision::digits(40)
    }

    fn gp(l: &str, m: &str) -> GegenbauerParams {
        GegenbauerParams::new(Param::parse(l).unwrap(), Param::parse(m).unwrap()).unwrap()
    }

    #[test]
    fn a0_is_the_prefactor() {
        let g = gp("0.7", "1.3");
        let (l, mu) = (g.lambda.real(prec()), g.mu.real(prec()));
        let half = Real::one(prec()) / 2i64;
        let expected = gamma_fn(&(&l + &half)).unwrap() * gamma_fn(&(&half + &mu - &l)).unwrap()
            / (gamma_fn(&l).unwrap() * gamma_fn(&(&mu + 1i64 - &l)).unwrap());
        assert!(((gegen_coefficient_a(&g, 0, prec()).unwrap() - &expected) / &expected).abs().to_f64() < 1e-38);
    }

    #[test]
    fn b0_at_chebyshev_first_kind_is_pi() {
        let g = GegenbauerParams::from_f64(1.0, 0.0).unwrap();
        let b0 = gegen_coefficient_b(&g, 0, prec()).unwrap();
        assert!(((b0 - Real::pi(prec())) / Real::pi(prec())).abs().to_f64() < 1e-38);
    }

    #[test]
    fn leading_examples() {
        let t = gegen_leading_term(&gp("0.5", "1"), 64, prec()).unwrap();
        assert_eq!(t.case, LeadingCase::MuAboveLambdaMinusHalf);
        assert!((t.constant.to_f64() - 2.0 / std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(t.exponent.to_f64(), -1.0);
        let t = gegen_leading_term(&gp("1", "0"), 64, prec()).unwrap();
        assert_eq!(t.case, LeadingCase::MuBelowLambdaMinusHalf);
        assert!((t.constant.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let t = gegen_leading_term(&gp("1", "0.5"), 4096, prec()).unwrap();
        assert_eq!(t.case, LeadingCase::MuEqLambdaMinusHalf);
        let expected = (4096f64).ln() + 0.5772156649015329 + 2.0 * std::f64::consts::LN_2;
        assert!((t.value.to_f64() - expected).abs() < 1e-12);
    }

    #[test]
    fn series_tracks_exact_values() {
        let g = gp("0.7", "0.1");
        let n = 512;
        let budget = Budget::digits(30);
        let exact = jn(&g, n, &budget).unwrap().value;
        let errs: Vec<f64> = (0..4)
            .map(|m| ((jn_asymptotic(&g, n, m, &budget).unwrap().0.value - &exact) / &exact).abs().to_f64())
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0] / 50.0), "{errs:?}");
        let (_, exp) = jn_asymptotic(&g, n, 0, &budget).unwrap();
        assert!((exp.leading_exponent().unwrap() - (-0.4)).abs() < 1e-12);
    }
}
