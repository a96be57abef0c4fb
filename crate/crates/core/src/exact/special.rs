use super::c_at_one;
use crate::error::{Error, Result};
use crate::eval::{escalate, Budget, Evaluation, Method};
use crate::numerics::{binomial_real, gamma_fn, pochhammer, CancellationReport, CompensatedSum, Precision, Real};
use crate::params::Param;

/// Numerator data of the rational generating function of `J^{(λ;λ−k)}`:
/// coefficients `p_0..p_{2k−2}` with
/// `Σ_n J_n z^n/C_n(1) = Σ_r p_r (1−z)^r / (1−z)^{2k−1}`.
pub fn lambda_minus_k_numerator(lambda: &Real, k: u32) -> Result<Vec<Real>> {
    let prec = lambda.precision();
    let k = k as i64;
    let half = Real::one(prec) / 2i64;
    let scale = Real::int_pow(4, &Real::from_i64(k - 1, prec)) * Real::sqrt_pi(prec) * gamma_fn(&(lambda + &half))?
        / gamma_fn(lambda)?;
    let base = lambda - k + &half;
    (0..=2 * k - 2)
        .map(|r| {
            let mut acc = CompensatedSum::new(prec);
            for ell in 0..=r / 2 {
                let num = pochhammer(&half, k - ell - 1)?.square() * pochhammer(&half, ell)?;
                let den = Real::int_pow(4, &Real::from_i64(ell, prec))
                    * pochhammer(&Real::one(prec), r - 2 * ell)?
                    * pochhammer(&Real::one(prec), ell)?
                    * pochhammer(&(&base - ell + r), 2 * k - r - 1)?;
                acc.add(&(num / den));
            }
            Ok(acc.value() * &scale)
        })
        .collect()
}

fn check_lambda_minus_k(lambda: &Param, k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("lambda - k closed form needs k >= 1".into()));
    }
    let mu = rug::Rational::from(lambda.value() - k) + rug::Rational::from((1, 2));
    if mu.cmp0().is_le() {
        return Err(Error::Domain(format!("lambda - k = {} - {k} must exceed -1/2", lambda)));
    }
    Ok(())
}

/// `J_n^{(λ;λ−k)} = C_n(1) · q_k(n)` with `q_k` a polynomial of degree
/// `2k−2`, for `k ≥ 1` and `λ − k > −½`.
pub fn jn_lambda_minus_k(lambda: &Param, k: u32, n: u64, budget: &Budget) -> Result<Evaluation> {
    check_lambda_minus_k(lambda, k)?;
    let (value, report, w) = escalate(budget, |prec| {
        let l = lambda.real(prec);
        let p = lambda_minus_k_numerator(&l, k)?;
        let mut acc = CompensatedSum::new(prec);
        let ni = n as i64;
        for (r, pr) in p.iter().enumerate() {
            let top = Real::from_i64(ni + 2 * k as i64 - 2 - r as i64, prec);
            acc.add(&(binomial_real(&top, n) * pr));
        }
        let (sum, report) = acc.finish();
        Ok((c_at_one(&l, n)? * sum, report))
    })?;
    Ok(Evaluation::new(value, Method::ClosedForm, report, w, budget))
}

/// `J_n^{(λ;λ+k)}` for `k ≥ 0` as a finite sum of gamma ratios.
pub fn jn_lambda_plus_k(lambda: &Param, k: u32, n: u64, budget: &Budget) -> Result<Evaluation> {
    let (value, report, w) = escalate(budget, |prec| lambda_plus_k_at(lambda, k, n, prec))?;
    Ok(Evaluation::new(value, Method::ClosedForm, report, w, budget))
}

fn lambda_plus_k_at(lambda: &Param, k: u32, n: u64, prec: Precision) -> Result<(Real, CancellationReport)> {
    let l = lambda.real(prec);
    let half = Real::one(prec) / 2i64;
    let ni = n as i64;
    if k == 0 {
        let v = c_at_one(&l, n)? * Real::sqrt_pi(prec) * gamma_fn(&(&l + &half))? / gamma_fn(&l)? / (&l + ni);
        let report = CancellationReport::exact(&v);
        return Ok((v, report));
    }
    let ki = k as i64;
    let scale = Real::pi(prec) * 2i64 / (Real::int_pow(4, &(&l + ki)) * gamma_fn(&l)?.square());
    let g2l = gamma_fn(&(&l * 2i64))?;
    let mut acc = CompensatedSum::new(prec);
    for ell in 0..=ki.min(ni / 2) {
        let m = ni - 2 * ell;
        let binom = binomial_real(&Real::from_i64(ki, prec), ell as u64);
        // Γ(n−ℓ+λ)/Γ(n+k−ℓ+1+λ) and Γ(n+2k−2ℓ+2λ)/Γ(n−2ℓ+1)
        let ratio = pochhammer(&(&l + (ni - ell)), ki + 1)?.recip();
        let tail = &g2l * c_at_one(&l, m as u64)? * pochhammer(&(&l * 2i64 + m), 2 * ki)?;
        acc.add(&(binom.square() * ratio.square() * (&l + (m + ki)) * tail));
    }
    let (sum, report) = acc.finish();
    Ok((scale * sum, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::jn_exact;
    use crate::params::GegenbauerParams;

    fn budget() -> Budget {
        Budget::digits(40)
    }

    fn rel(a: &Real, b: &Real) -> f64 {
        ((a - b) / b).abs().to_f64()
    }

    fn p(s: &str) -> Param {
        Param::parse(s).unwrap()
    }

    fn exact(l: &str, mu: &str, n: u64) -> Real {
        let g = GegenbauerParams::new(p(l), p(mu)).unwrap();
        jn_exact(&g, n, &budget()).unwrap().value
    }

    #[test]
    fn chebyshev_first_kind_weight_gives_linear_growth() {
        let pi = Real::pi(Precision::digits(60));
        for n in [0u64, 1, 6, 100] {
            let v = jn_lambda_minus_k(&p("1"), 1, n, &budget()).unwrap().value;
            assert!(rel(&v, &(&pi * (n as i64 + 1))) < 1e-39);
        }
    }

    #[test]
    fn lambda_minus_k_matches_hypergeometric_form() {
        for (l, k, mu, n) in [("5/2", 1, "3/2", 7), ("3", 2, "1", 0), ("3", 2, "1", 9), ("1.2", 1, "0.2", 5), ("2.7", 3, "-0.3", 8)]
        {
            let v = jn_lambda_minus_k(&p(l), k, n, &budget()).unwrap().value;
            assert!(rel(&v, &exact(l, mu, n)) < 1e-38, "{l} {k} {n}");
        }
    }

    #[test]
    fn lambda_minus_k_domain() {
        assert!(jn_lambda_minus_k(&p("1"), 0, 3, &budget()).is_err());
        assert!(jn_lambda_minus_k(&p("1.5"), 2, 3, &budget()).is_err());
        assert!(jn_lambda_minus_k(&p("1.6"), 2, 3, &budget()).is_ok());
    }

    #[test]
    fn numerator_leading_coefficient() {
        let prec = Precision::digits(40);
        let l = Real::parse("2.7", prec).unwrap();
        let k = 3;
        let num = lambda_minus_k_numerator(&l, k).unwrap();
        assert_eq!(num.len(), 5);
        let half = Real::one(prec) / 2i64;
        let expected = Real::from_i64(16, prec) * Real::sqrt_pi(prec) * gamma_fn(&(&l + &half)).unwrap()
            / gamma_fn(&l).unwrap()
            * pochhammer(&half, 2).unwrap().square()
            / pochhammer(&(&l - 3i64 + &half), 5).unwrap();
        assert!(rel(&num[0], &expected) < 1e-38);
        let unit = lambda_minus_k_numerator(&Real::one(prec), 1).unwrap();
        assert!(rel(&unit[0], &Real::pi(prec)) < 1e-39);
    }

    #[test]
    fn lambda_plus_k_examples() {
        let half_pi = Real::pi(Precision::digits(60)) / 2i64;
        assert!(rel(&jn_lambda_plus_k(&p("1"), 0, 3, &budget()).unwrap().value, &half_pi) < 1e-39);
        for (l, k, mu, n) in [("1/2", 1, "3/2", 6), ("0.8", 3, "3.8", 2), ("0.8", 3, "3.8", 11), ("1.4", 2, "3.4", 0)] {
            let v = jn_lambda_plus_k(&p(l), k, n, &budget()).unwrap().value;
            assert!(rel(&v, &exact(l, mu, n)) < 1e-38, "{l} {k} {n}");
        }
    }
}
