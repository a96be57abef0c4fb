use rug::Rational;

use super::{
    gegen_leading_term, log_transfer, non_generic, power_transfer, AsymptoticExpansion, AsymptoticTerm, LeadingCase,
    LeadingTerm, Origin, Remainder,
};
use crate::error::{Error, Result};
use crate::eval::{Budget, Evaluation, Method};
use crate::exact::c_at_one;
use crate::numerics::{digamma, gamma_fn, pochhammer, rgamma, CancellationReport, Precision, Real};
use crate::params::{GegenbauerParams, JacobiParams, Param};

fn require_generic(p: &JacobiParams) -> Result<()> {
    let c = p.classify();
    if c.class.is_generic() {
        Ok(())
    } else {
        Err(Error::Domain(format!("parameters are non-generic ({})", c.class)))
    }
}

fn nonzero(v: Real, what: &str) -> Result<Real> {
    if v.is_zero() {
        Err(Error::Domain(format!("non-generic parameters: {what} vanishes")))
    } else {
        Ok(v)
    }
}

/// `D_m`, from the double poles at `−λ−ℓ`.
pub fn jacobi_coefficient_d(p: &JacobiParams, m: u32, prec: Precision) -> Result<Real> {
    require_generic(p)?;
    let (l, a, b) = (p.lambda.real(prec), p.alpha.real(prec), p.beta.real(prec));
    let half = Real::one(prec) / 2i64;
    let s = &a + &b;
    let pre = (|| -> Result<Real> {
        Ok(gamma_fn(&(&l + &half))? * gamma_fn(&(&a + 1i64 - &l))? * gamma_fn(&(&b + 1i64 - &l))?
            / (Real::int_pow(2, &(&l * 2i64 - &s - 1i64))
                * Real::sqrt_pi(prec)
                * gamma_fn(&l)?
                * gamma_fn(&(&s + 2i64 - &l * 2i64))?))
    })()
    .map_err(non_generic)?;
    let m = m as i64;
    let one = Real::one(prec);
    let mut sum = Real::zero(prec);
    for ell in 0..=m / 2 {
        let num = pochhammer(&(1i64 - &l), ell)? * pochhammer(&(&l * 2i64 - &s - 1i64), 2 * ell)? * pochhammer(&l, m - ell)?;
        let den = nonzero(pochhammer(&(&l - &a), ell)? * pochhammer(&(&l - &b), ell)?, "(λ−α)_ℓ(λ−β)_ℓ")?
            * pochhammer(&one, ell)?.square()
            * pochhammer(&one, m - 2 * ell)?
            * Real::int_pow(16, &Real::from_i64(ell, prec));
        let t = num / den;
        sum += if ell % 2 == 1 { -t } else { t };
    }
    Ok(pre * sum)
}

fn coefficient_a(l: &Real, a: &Real, b: &Real, m: u32) -> Result<Real> {
    let prec = l.precision();
    let pre = (|| -> Result<Real> {
        Ok(gamma_fn(&(l + &Real::one(prec) / 2i64))? * gamma_fn(&(a + 1i64))? * gamma_fn(&(l - a - 1i64))?.square()
            / (Real::int_pow(2, &(a * 3i64 + 4i64 - b - l * 2i64)) * Real::sqrt_pi(prec) * gamma_fn(l)?)
            * rgamma(&(l * 2i64 - a - 1i64)))
    })()
    .map_err(non_generic)?;
    let m = m as i64;
    let one = Real::one(prec);
    let mut sum = Real::zero(prec);
    for ell in 0..=m / 2 {
        let num = pochhammer(&(a + 2i64 - l * 2i64), ell)? * pochhammer(&(a - b + 1i64), 2 * ell)? * pochhammer(&(a + 1i64), m - ell)?;
        let den = nonzero(pochhammer(&(a - b + 1i64), ell)? * pochhammer(&(a + 2i64 - l), ell)?.square(), "(1+α−β)_ℓ(2+α−λ)_ℓ²")?
            * pochhammer(&one, ell)?
            * pochhammer(&one, m - 2 * ell)?
            * Real::int_pow(16, &Real::from_i64(ell, prec));
        let t = num / den;
        sum += if ell % 2 == 1 { -t } else { t };
    }
    Ok(pre * sum)
}

/// `A_m`, from the simple poles at `−α−1−ℓ`.
pub fn jacobi_coefficient_a(p: &JacobiParams, m: u32, prec: Precision) -> Result<Real> {
    require_generic(p)?;
    coefficient_a(&p.lambda.real(prec), &p.alpha.real(prec), &p.beta.real(prec), m)
}

/// `B_m`, from the simple poles at `−β−1−ℓ`; `A_m` with α and β exchanged.
pub fn jacobi_coefficient_b(p: &JacobiParams, m: u32, prec: Precision) -> Result<Real> {
    require_generic(p)?;
    coefficient_a(&p.lambda.real(prec), &p.beta.real(prec), &p.alpha.real(prec), m)
}

/// The series for `I_n^{(λ;α,β)}` truncated after index `M` in each of the
/// `D`, `A` and `B` families, for generic parameters and `n > M`.
pub fn in_asymptotic(p: &JacobiParams, n: u64, m_max: u32, budget: &Budget) -> Result<(Evaluation, AsymptoticExpansion)> {
    require_generic(p)?;
    if n <= m_max as u64 {
        return Err(Error::Domain(format!("asymptotic series with M = {m_max} needs n > M, got n = {n}")));
    }
    let prec = budget.working();
    let (l, a, b) = (p.lambda.real(prec), p.alpha.real(prec), p.beta.real(prec));
    let scale = c_at_one(&l, n)?;
    let (lf, af, bf) = (p.lambda.to_f64(), p.alpha.to_f64(), p.beta.to_f64());
    let mut terms = Vec::new();
    for m in 0..=m_max {
        let mi = m as i64;
        let d = jacobi_coefficient_d(p, m, prec)?;
        let value = &scale * &d * log_transfer(m, n, prec)?;
        terms.push(term(Origin::JacobiD, m, d, 2.0 * lf - 2.0 - m as f64, value));
        for (origin, c, e, ef) in [
            (Origin::JacobiA, jacobi_coefficient_a(p, m, prec)?, &a, af),
            (Origin::JacobiB, jacobi_coefficient_b(p, m, prec)?, &b, bf),
        ] {
            // binom(n+2λ−2e−3−m, n) = [z^n] (1−z)^{2e+2−2λ+m}
            let value = &scale * &c * power_transfer(&(e * 2i64 + 2i64 - &l * 2i64 + mi), n);
            terms.push(term(origin, m, c, 4.0 * lf - 2.0 * ef - 4.0 - m as f64, value));
        }
    }
    let expansion = AsymptoticExpansion::new(n, m_max, terms);
    let value = expansion.value(prec);
    let eval = Evaluation::new(value.clone(), Method::Asymptotic(m_max), CancellationReport::exact(&value), prec, budget);
    Ok((eval, expansion))
}

fn term(origin: Origin, index: u32, coefficient: Real, n_exponent: f64, value: Real) -> AsymptoticTerm {
    AsymptoticTerm {
        origin,
        index,
        coefficient,
        n_exponent,
        log_power: 0,
        value,
    }
}

/// The leading term of `I_n^{(λ;α,β)}` in its three cases, split by the
/// smaller of α, β against `λ − 1`. Equal α and β fall through to the
/// Gegenbauer theorem with `μ = α + ½`.
///
/// In the case `min(α,β) < λ − 1` the constant carries the factor
/// `1/Γ(2λ−2α−2)` produced by transferring `A_0`; it is what makes the
/// symmetric case agree with the Gegenbauer constant.
pub fn jacobi_leading_term(p: &JacobiParams, n: u64, prec: Precision) -> Result<LeadingTerm> {
    if p.alpha.value() == p.beta.value() {
        let mu = p.alpha.offset(&Rational::from((1, 2)));
        let g = GegenbauerParams::new(p.lambda.clone(), mu)?;
        return gegen_leading_term(&g, n, prec);
    }
    let (lo, hi): (&Param, &Param) = if p.alpha.value() < p.beta.value() {
        (&p.alpha, &p.beta)
    } else {
        (&p.beta, &p.alpha)
    };
    let l = p.lambda.real(prec);
    let (a, b) = (lo.real(prec), hi.real(prec));
    let (lf, af, bf) = (p.lambda.to_f64(), lo.to_f64(), hi.to_f64());
    let boundary = Rational::from(p.lambda.value() - 1u32);
    let two = |e: Real| Real::int_pow(2, &e);
    let gl2 = gamma_fn(&l)?.square();
    match lo.value().cmp(&boundary) {
        std::cmp::Ordering::Greater => {
            let c = two(&a + &b + 2i64 - &l * 4i64) * gamma_fn(&(&a + 1i64 - &l))? * gamma_fn(&(&b + 1i64 - &l))?
                * rgamma(&(&a + &b + 2i64 - &l * 2i64))
                / gl2;
            LeadingTerm::new(
                c,
                &l * 2i64 - 2i64,
                None,
                n,
                LeadingCase::AlphaAboveLambdaMinus1,
                vec![Remainder::plain(2.0 * lf - 3.0), Remainder::plain(4.0 * lf - 2.0 * af - 4.0)],
            )
        }
        std::cmp::Ordering::Equal => {
            let c = two(&b + 2i64 - &l * 3i64) / gl2;
            let big_a = (Real::euler_gamma(prec) - Real::ln2(prec) * 4i64 + digamma(&(&b + 1i64 - &l))? + digamma(&l)? * 2i64)
                / 2i64;
            LeadingTerm::new(
                c,
                &l * 2i64 - 2i64,
                Some(-big_a),
                n,
                LeadingCase::AlphaEqLambdaMinus1,
                vec![
                    Remainder {
                        exponent: 2.0 * lf - 3.0,
                        log_power: 1,
                    },
                    Remainder::plain(4.0 * lf - 2.0 * bf - 5.0),
                ],
            )
        }
        std::cmp::Ordering::Less => {
            let c = two(&b - &a * 3i64 - 3i64) * gamma_fn(&(&a + 1i64))? * gamma_fn(&(&l - &a - 1i64))?.square()
                * rgamma(&(&l * 2i64 - &a - 1i64))
                * rgamma(&(&l * 2i64 - &a * 2i64 - 2i64))
                / gl2;
            LeadingTerm::new(
                c,
                &l * 4i64 - &a * 2i64 - 4i64,
                None,
                n,
                LeadingCase::AlphaBelowLambdaMinus1,
                vec![
                    Remainder::plain(2.0 * lf - 2.0),
                    Remainder::plain(4.0 * lf - 2.0 * af - 5.0),
                    Remainder::plain(4.0 * lf - 2.0 * bf - 4.0),
                ],
            )
        }
    }
}
