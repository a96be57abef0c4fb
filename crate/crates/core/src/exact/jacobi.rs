use rug::{Integer, Rational};

use super::{c_at_one, jn};
use crate::error::{Error, Result};
use crate::eval::{escalate, Budget, Evaluation, Method};
use crate::hypergeom::{eval_terminating, eval_terminating_unchecked, PFqSpec};
use crate::numerics::{binomial_real, jacobi_mass, pochhammer, CancellationReport, CompensatedSum, Precision, Real};
use crate::params::{GegenbauerParams, JacobiParams, Param};

/// `I_n^{(λ;α,β)}` from the balanced ₅F₄ at unit argument.
pub fn in_exact(p: &JacobiParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    let (value, report, w) = escalate(budget, |prec| in_exact_at(p, n, prec))?;
    Ok(Evaluation::new(value, Method::Exact5F4, report, w, budget))
}

fn in_exact_at(p: &JacobiParams, n: u64, prec: Precision) -> Result<(Real, CancellationReport)> {
    let l = p.lambda.real(prec);
    let a = p.alpha.real(prec);
    let b = p.beta.real(prec);
    let half = Real::one(prec) / 2i64;
    let s = &a + &b;
    let spec = PFqSpec::new(
        vec![
            Real::from_i64(-(n as i64), prec),
            &l * 2i64 + n as i64,
            l.clone(),
            &a + 1i64,
            &b + 1i64,
        ],
        vec![&l * 2i64, &l + &half, (&s + 2i64) / 2i64, (&s + 3i64) / 2i64],
        Real::one(prec),
    );
    let (f, report) = eval_terminating(&spec)?;
    let scale = c_at_one(&l, n)?.square() * jacobi_mass(&a, &b)?;
    Ok((scale * f, report))
}

/// `b_ℓ` for `k = 2m + η` in closed form
/// `binom(m,ℓ) (m+η)_{m−ℓ}/(½+η)_{m−ℓ}`, times `2m+1` when `η = 1`.
pub fn b_coefficient(m: u32, eta: u32, ell: u32) -> Integer {
    assert!(eta <= 1 && ell <= m, "b_coefficient needs eta in {{0,1}} and ell <= m");
    let mut r = Rational::from(Integer::from(Integer::binomial_u(m, ell)));
    let half_eta = Rational::from((2 * eta as i64 + 1, 2));
    for j in 0..(m - ell) as i64 {
        r *= Rational::from((m + eta) as i64 + j);
        r /= half_eta.clone() + j;
    }
    if eta == 1 {
        r *= 2 * m + 1;
    }
    assert!(r.is_integer(), "closed form of b_ell must be an integer");
    r.into_numer_denom().0
}

/// `b_ℓ = Σ_{u=ℓ}^{m} binom(2m+η, 2u) binom(u, ℓ)`, the defining double sum.
pub fn b_coefficient_double_sum(m: u32, eta: u32, ell: u32) -> Integer {
    (ell..=m)
        .map(|u| Integer::from(Integer::binomial_u(2 * m + eta, 2 * u)) * Integer::from(Integer::binomial_u(u, ell)))
        .sum()
}

/// `I_n^{(λ;α,α+k)}` as the alternating combination
/// `Σ_ℓ (−1)^ℓ b_ℓ J_n^{(λ;α+½+ℓ)}`.
///
/// `β − α` must be a positive integer by exact tags.
pub fn in_via_alpha_beta_connection(p: &JacobiParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    let k = integer_gap(p)
        .filter(|k| *k > 0)
        .ok_or_else(|| Error::Domain(format!("beta - alpha = {} - {} is not a tagged positive integer", p.beta, p.alpha)))?;
    let (m, eta) = ((k / 2) as u32, (k % 2) as u32);
    let inner: Vec<GegenbauerParams> = (0..=m)
        .map(|ell| {
            let shift = Rational::from((2 * ell as i64 + 1, 2));
            GegenbauerParams::new(p.lambda.clone(), p.alpha.offset(&shift))
        })
        .collect::<Result<_>>()?;
    let (value, report, w) = escalate(budget, |prec| {
        let mut acc = CompensatedSum::new(prec);
        let mut inner_report: Option<CancellationReport> = None;
        for (ell, g) in inner.iter().enumerate() {
            let j = jn(g, n, &Budget::new(prec))?;
            inner_report = Some(match inner_report.take() {
                Some(r) => r.merge(j.report.clone()),
                None => j.report.clone(),
            });
            let b = Real::from_integer(&b_coefficient(m, eta, ell as u32), prec);
            let term = b * j.value.with_precision(prec);
            acc.add(&if ell % 2 == 1 { -term } else { term });
        }
        let (sum, report) = acc.finish();
        Ok((sum, report))
    })?;
    Ok(Evaluation::new(value, Method::Connection, report, w, budget))
}

fn integer_gap(p: &JacobiParams) -> Option<i64> {
    if !(p.alpha.is_tagged() && p.beta.is_tagged()) {
        return None;
    }
    let gap = Rational::from(p.beta.value() - p.alpha.value());
    if gap.is_integer() {
        gap.numer().to_i64()
    } else {
        None
    }
}

/// `I_n^{(λ;α,β)}` from the values `I_k^{(ρ;α,β)}, 0 ≤ k ≤ n`, through the
/// connection between `C^{(λ)}` and `C^{(ρ)}`.
///
/// `inner(k, prec)` supplies `I_k^{(ρ;α,β)}` accurate at `prec`; it is called
/// rather than recomputed so that the route doubles as a consistency check
/// between parameter families.
pub fn in_via_lambda_rho_connection(
    p: &JacobiParams,
    rho: &Param,
    n: u64,
    budget: &Budget,
    inner: &dyn Fn(u64, Precision) -> Result<Real>,
) -> Result<Evaluation> {
    if rho.value().cmp0().is_le() {
        return Err(Error::Domain(format!("rho = {rho} must be positive")));
    }
    let (value, report, w) = escalate(budget, |prec| {
        let l = p.lambda.real(prec);
        let r = rho.real(prec);
        let half = Real::one(prec) / 2i64;
        let ni = n as i64;
        let mut acc = CompensatedSum::new(prec);
        // the ₅F₄ factors may cancel to zero, so their rounding is weighed
        // in absolute terms against the final sum
        let mut worst = Real::zero(prec);
        for k in 0..=ni {
            let spec = PFqSpec::new(
                vec![
                    Real::from_i64(k - ni, prec),
                    &l * 2i64 + (k + ni),
                    &l + k,
                    &r * 2i64 + k,
                    &r + &half + k,
                ],
                vec![&r * 2i64 + (2 * k + 1), &r + k, &l * 2i64 + k, &l + &half + k],
                Real::one(prec),
            );
            let (f, rep) = eval_terminating_unchecked(&spec)?;
            let kf = pochhammer(&Real::one(prec), k)?;
            let coeff = binomial_real(&Real::from_i64(ni, prec), k as u64)
                * kf.square()
                * pochhammer(&(&l * 2i64 + k), ni)?
                * pochhammer(&l, k)?
                * pochhammer(&(&r + &half), k)?
                / (pochhammer(&(&r * 2i64), 2 * k)? * pochhammer(&r, k)? * pochhammer(&(&l + &half), k)?);
            let weight = coeff * inner(k as u64, prec)?;
            worst = worst.max(weight.abs() * &rep.max_abs_term);
            acc.add(&(weight * f));
        }
        let (sum, report) = acc.finish();
        let report = CancellationReport::new(worst.max(report.max_abs_term), sum.abs());
        report.check(prec)?;
        let nf = pochhammer(&Real::one(prec), ni)?;
        let value = pochhammer(&(&l * 2i64), ni)? / nf.square() * sum;
        Ok((value, report))
    })?;
    Ok(Evaluation::new(value, Method::Connection, report, w, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::jn_exact;

    fn budget() -> Budget {
        Budget::digits(40)
    }

    fn jp(l: &str, a: &str, b: &str) -> JacobiParams {
        JacobiParams::new(Param::parse(l).unwrap(), Param::parse(a).unwrap(), Param::parse(b).unwrap()).unwrap()
    }

    fn rel(a: &Real, b: &Real) -> f64 {
        ((a - b) / b).abs().to_f64()
    }

    #[test]
    fn legendre_and_trivial_values() {
        let v = in_exact(&jp("1/2", "0", "0"), 3, &budget()).unwrap().value;
        assert!(rel(&v, &(Real::from_i64(2, Precision::digits(60)) / 7i64)) < 1e-39);
        for l in ["0.3", "1", "2.5"] {
            assert_eq!(in_exact(&jp(l, "0", "0"), 0, &budget()).unwrap().value, 2i64);
        }
    }

    #[test]
    fn reflection_symmetry() {
        for n in [0, 1, 4, 9] {
            let a = in_exact(&jp("0.7", "0.3", "1.2"), n, &budget()).unwrap();
            let b = in_exact(&jp("0.7", "1.2", "0.3"), n, &budget()).unwrap();
            assert!(rel(&a.value, &b.value) < 1e-38);
        }
    }

    #[test]
    fn symmetric_weight_matches_gegenbauer_form() {
        let g = GegenbauerParams::new(Param::parse("0.7").unwrap(), Param::parse("1.3").unwrap()).unwrap();
        for n in [0, 3, 10] {
            let a = in_exact(&jp("0.7", "0.8", "0.8"), n, &budget()).unwrap();
            let b = jn_exact(&g, n, &budget()).unwrap();
            assert!(rel(&a.value, &b.value) < 1e-38);
        }
    }

    #[test]
    fn shifted_weight_matches_gegenbauer_form() {
        // I^{(λ; μ+½, μ−½)} = J^{(λ;μ)}
        let g = GegenbauerParams::new(Param::parse("0.7").unwrap(), Param::parse("1.3").unwrap()).unwrap();
        for n in [0, 3, 10] {
            let a = in_exact(&jp("0.7", "1.8", "0.8"), n, &budget()).unwrap();
            let b = jn_exact(&g, n, &budget()).unwrap();
            assert!(rel(&a.value, &b.value) < 1e-38);
        }
    }

    #[test]
    fn b_coefficient_examples() {
        assert_eq!(b_coefficient(1, 0, 0), 2);
        assert_eq!(b_coefficient(1, 0, 1), 1);
        assert_eq!(b_coefficient(0, 1, 0), 1);
        for m in 0..8 {
            for eta in 0..2 {
                for ell in 0..=m {
                    assert_eq!(b_coefficient(m, eta, ell), b_coefficient_double_sum(m, eta, ell));
                }
            }
        }
    }

    #[test]
    fn alpha_beta_connection_matches_direct_sum() {
        for (l, a, b, n) in [("1", "0/1", "2/1", 3), ("0.6", "-1/5", "24/5", 10), ("1.3", "2/5", "7/5", 6)] {
            let p = jp(l, a, b);
            let c = in_via_alpha_beta_connection(&p, n, &budget()).unwrap();
            let d = in_exact(&p, n, &budget()).unwrap();
            assert!(rel(&c.value, &d.value) < 1e-38, "{l} {a} {b}");
        }
    }

    #[test]
    fn alpha_beta_connection_requires_tagged_integer_gap() {
        assert!(in_via_alpha_beta_connection(&jp("1", "0.2", "1.2"), 3, &budget()).is_err());
        assert!(in_via_alpha_beta_connection(&jp("1", "2/1", "0/1"), 3, &budget()).is_err());
    }

    #[test]
    fn lambda_rho_connection_from_legendre_values() {
        let p = jp("1", "0", "0");
        let rho = Param::parse("1/2").unwrap();
        let legendre = |k: u64, prec: Precision| Ok(Real::from_i64(2, prec) / (2 * k as i64 + 1));
        for n in [0, 1, 4, 7] {
            let c = in_via_lambda_rho_connection(&p, &rho, n, &budget(), &legendre).unwrap();
            let d = in_exact(&p, n, &budget()).unwrap();
            assert!(rel(&c.value, &d.value) < 1e-38, "n = {n}");
        }
    }

    #[test]
    fn lambda_rho_connection_with_equal_indices_and_jacobi_weight() {
        let p = jp("0.8", "0.3", "1.2");
        for (rho, n) in [("0.8", 6), ("1.7", 5), ("0.4", 7)] {
            let rho = Param::parse(rho).unwrap();
            let q = JacobiParams::new(rho.clone(), p.alpha.clone(), p.beta.clone()).unwrap();
            let inner = |k: u64, prec: Precision| Ok(in_exact(&q, k, &Budget::new(prec))?.value);
            let c = in_via_lambda_rho_connection(&p, &rho, n, &budget(), &inner).unwrap();
            let d = in_exact(&p, n, &budget()).unwrap();
            assert!(rel(&c.value, &d.value) < 1e-36);
        }
    }
}
