use rug::Rational;

use super::gegenbauer::{gegen_series, quarter_sum};
use super::{AsymptoticExpansion, LeadingCase, LeadingTerm, Origin, Remainder};
use crate::error::{Error, Result};
use crate::eval::{Budget, Evaluation, Method};
use crate::numerics::{binomial_real, gamma_fn, pochhammer, CancellationReport, Precision, Real};
use crate::params::Param;

/// Main term of `J_n^{(λ;λ−k)}`:
/// `√π Γ(k−½)Γ(½+λ−k)/(2^{2λ−1} Γ(λ)² (k−1)! Γ(k+λ−½)) · n^{2λ+2k−3}`.
pub fn jn_lambda_minus_k_leading(lambda: &Param, k: u32, n: u64, prec: Precision) -> Result<LeadingTerm> {
    if k == 0 {
        return Err(Error::Domain("lambda - k leading term needs k >= 1".into()));
    }
    if Rational::from(lambda.value() - k) + Rational::from((1, 2)) <= 0 {
        return Err(Error::Domain(format!("lambda - k = {lambda} - {k} must exceed -1/2")));
    }
    let l = lambda.real(prec);
    let half = Real::one(prec) / 2i64;
    let ki = k as i64;
    let c = Real::sqrt_pi(prec) * gamma_fn(&(Real::from_i64(ki, prec) - &half))? * gamma_fn(&(&half + &l - ki))?
        / (Real::int_pow(2, &(&l * 2i64 - 1i64))
            * gamma_fn(&l)?.square()
            * pochhammer(&Real::one(prec), ki - 1)?
            * gamma_fn(&(&l + ki - &half))?);
    let e = lambda.to_f64() * 2.0 + 2.0 * k as f64 - 3.0;
    LeadingTerm::new(c, &l * 2i64 + (2 * ki - 3), None, n, LeadingCase::LambdaMinusK, vec![Remainder::plain(e - 1.0)])
}

/// `2π binom(2k,k)/(4^{λ+k} Γ(λ)²)`, the leading constant of `J^{(λ;λ+k)}`.
pub fn mu_lambda_plus_k_constant(lambda: &Real, k: u32) -> Result<Real> {
    let prec = lambda.precision();
    let ki = k as i64;
    Ok(Real::pi(prec) * 2i64 * binomial_real(&Real::from_i64(2 * ki, prec), k as u64)
        / (Real::int_pow(4, &(lambda + ki)) * gamma_fn(lambda)?.square()))
}

fn check_nat(k: u32, mu: &Param) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("integer lambda series needs k >= 1".into()));
    }
    if mu.is_tagged() && Rational::from(mu.value() * 2u32).is_integer() {
        return Err(Error::Domain(format!("mu = {mu}: mu and 2mu must not be integers")));
    }
    Ok(())
}

/// `(A_m, B_m)` of the series for `J_n^{(k;μ)}`, `λ = k ∈ ℕ`. The factor
/// `(1−k)_ℓ` truncates the `A_m` sum at `ℓ ≤ k−1`.
pub fn nat_lambda_coefficients(k: u32, mu: &Param, m: u32, prec: Precision) -> Result<(Real, Real)> {
    check_nat(k, mu)?;
    let mu = mu.real(prec);
    let ki = k as i64;
    let kr = Real::from_i64(ki, prec);
    let one = Real::one(prec);
    let half = &one / 2i64;
    let gk = gamma_fn(&kr)?;
    let pre_a = Real::sqrt_pi(prec) * gamma_fn(&(&mu + &half))? / gamma_fn(&(&mu + 1i64))? * pochhammer(&half, ki)?
        * pochhammer(&(-&mu), ki)?
        / (&gk * pochhammer(&(&half - &mu), ki)?);
    let a = quarter_sum(m, ki - 1, prec, |ell| {
        let num = pochhammer(&(1i64 - &kr), ell)? * pochhammer(&(&kr - &mu), ell)? * pochhammer(&kr, m as i64 - ell)?;
        let den = pochhammer(&(&kr + &half - &mu), ell)? * pochhammer(&one, ell)?.square();
        Ok((num, den))
    })?;
    let mh = -&half - &mu;
    let pre_b = Real::int_pow(2, &(Real::from_i64(2 * ki - 2, prec) - &mu * 2i64)) * gamma_fn(&mh)? * gamma_fn(&(&mu + &half))?
        * pochhammer(&half, ki)?
        * pochhammer(&mh, ki)?.square()
        / (&gk * pochhammer(&mh, 2 * ki)?);
    let three_halves = Real::from_i64(3, prec) / 2i64;
    let b = quarter_sum(m, i64::MAX, prec, |ell| {
        let num = pochhammer(&half, ell)?
            * pochhammer(&(&three_halves + &mu - 2 * ki), ell)?
            * pochhammer(&(&mu + &half), m as i64 - ell)?;
        let den = pochhammer(&(&three_halves + &mu - ki), ell)?.square() * pochhammer(&one, ell)?;
        Ok((num, den))
    })?;
    Ok((pre_a * a, pre_b * b))
}

/// The series for `J_n^{(k;μ)}` with `λ = k ∈ ℕ`, truncated after index `M`.
pub fn jn_nat_lambda_asymptotic(
    k: u32,
    mu: &Param,
    n: u64,
    m_max: u32,
    budget: &Budget,
) -> Result<(Evaluation, AsymptoticExpansion)> {
    check_nat(k, mu)?;
    let prec = budget.working();
    let l = Real::from_i64(k as i64, prec);
    let expansion = gegen_series(&l, &mu.real(prec), n, m_max, (Origin::NatLambdaA, Origin::NatLambdaB), |m| {
        nat_lambda_coefficients(k, mu, m, prec)
    })?;
    let value = expansion.value(prec);
    let eval = Evaluation::new(value.clone(), Method::Asymptotic(m_max), CancellationReport::exact(&value), prec, budget);
    Ok((eval, expansion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::gegen_leading_constant;
    use crate::exact::{jn, jn_lambda_minus_k};
    use crate::params::GegenbauerParams;

    fn prec() -> Precision {
        Precision::digits(40)
    }

    fn p(s: &str) -> Param {
        Param::parse(s).unwrap()
    }

    #[test]
    fn lambda_minus_k_leading_examples() {
        let t = jn_lambda_minus_k_leading(&p("1"), 1, 100, prec()).unwrap();
        assert!((t.constant.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(t.exponent.to_f64(), 1.0);
        let t = jn_lambda_minus_k_leading(&p("2.5"), 2, 100, prec()).unwrap();
        assert_eq!(t.exponent.to_f64(), 6.0);
        let budget = Budget::digits(30);
        let mut last = f64::INFINITY;
        for e in 8..=13 {
            let n = 1u64 << e;
            let exact = jn_lambda_minus_k(&p("2.5"), 2, n, &budget).unwrap().value;
            let lead = jn_lambda_minus_k_leading(&p("2.5"), 2, n, prec()).unwrap().value;
            let dev = (exact / lead - 1i64).abs().to_f64();
            assert!(dev * (n as f64) < 40.0 && dev < last);
            last = dev;
        }
    }

    #[test]
    fn plus_k_constant_matches_generic_constant() {
        for l in ["0.4", "1.7"] {
            let l = Real::parse(l, prec()).unwrap();
            for k in 0..=6u32 {
                let generic = gegen_leading_constant(&l, &(&l + k as i64)).unwrap();
                let special = mu_lambda_plus_k_constant(&l, k).unwrap();
                assert!(((generic - &special) / &special).abs().to_f64() < 1e-35);
            }
        }
    }

    #[test]
    fn nat_lambda_coefficient_examples() {
        let mu = p("1/4");
        let (a0, _) = nat_lambda_coefficients(1, &mu, 0, prec()).unwrap();
        let m = Real::parse("0.25", prec()).unwrap();
        let half = Real::one(prec()) / 2i64;
        let expected = Real::sqrt_pi(prec()) * gamma_fn(&(&m + &half)).unwrap() / gamma_fn(&(&m + 1i64)).unwrap() * &half * (-&m)
            / (&half - &m);
        assert!(((a0 - &expected) / &expected).abs().to_f64() < 1e-38);
        assert!(nat_lambda_coefficients(2, &p("3/2"), 0, prec()).is_err());
        assert!(nat_lambda_coefficients(2, &p("1/1"), 0, prec()).is_err());
    }

    #[test]
    fn nat_lambda_series_tracks_exact_values() {
        let mu = p("0.3");
        let g = GegenbauerParams::new(p("2/1"), mu.clone()).unwrap();
        let budget = Budget::digits(30);
        let n = 512;
        let exact = jn(&g, n, &budget).unwrap().value;
        let errs: Vec<f64> = (0..3)
            .map(|m| ((jn_nat_lambda_asymptotic(2, &mu, n, m, &budget).unwrap().0.value - &exact) / &exact).abs().to_f64())
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0] / 50.0), "{errs:?}");
    }
}
