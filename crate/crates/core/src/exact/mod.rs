//! Finite-sum evaluations of `I_n^{(λ;α,β)}` and `J_n^{(λ;μ)}`.
//!
//! Every route here is exact up to rounding: terminating hypergeometric
//! sums, positive-term connection sums, closed forms for integer parameter
//! gaps and the three-term recurrence in `n`. The dispatchers [`jn`] and
//! [`in_`] choose a route from the parameter classification and the
//! cancellation diagnostics.

mod gegenbauer;
mod jacobi;
mod special;

pub use gegenbauer::{jn_connection, jn_exact, jn_recurrence, recurrence_coefficients, recurrence_residual};
pub use jacobi::{
    b_coefficient, b_coefficient_double_sum, in_exact, in_via_alpha_beta_connection, in_via_lambda_rho_connection,
};
pub use special::{jn_lambda_minus_k, jn_lambda_plus_k, lambda_minus_k_numerator};

use crate::error::Result;
use crate::eval::{Budget, Evaluation, GUARD_DIGITS};
use crate::numerics::{gamma_fn, pochhammer, Real};
use crate::params::{GegenbauerParams, JacobiParams, ParamClass};

/// `C_n^{(λ)}(1) = (2λ)_n / n!`.
pub(crate) fn c_at_one(lambda: &Real, n: u64) -> Result<Real> {
    let n = n as i64;
    let one = Real::one(lambda.precision());
    Ok(pochhammer(&(lambda * 2i64), n)? / pochhammer(&one, n)?)
}

/// `J_0^{(λ;μ)} = √π Γ(μ+½)/Γ(μ+1)`, the mass of `(1−x²)^{μ−½}`.
pub(crate) fn gegenbauer_mass(mu: &Real) -> Result<Real> {
    let half = Real::one(mu.precision()) / 2i64;
    Ok(Real::sqrt_pi(mu.precision()) * gamma_fn(&(mu + &half))? / gamma_fn(&(mu + 1i64))?)
}

/// Best available evaluation of `J_n^{(λ;μ)}`.
///
/// Integer gaps between λ and μ use their closed forms. Otherwise the ₄F₃ is
/// tried without escalation and abandoned for the positive-term connection
/// sum when its cancellation would eat into the budget.
pub fn jn(g: &GegenbauerParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    match g.classify().class {
        ParamClass::LambdaMinusMuIsPosInt(k) => return jn_lambda_minus_k(&g.lambda, k, n, budget),
        ParamClass::MuMinusLambdaIsPosInt(k) => return jn_lambda_plus_k(&g.lambda, k, n, budget),
        _ => {}
    }
    let target = budget.target_digits();
    let quick = budget.with_max_working_digits(target + GUARD_DIGITS);
    if let Ok(e) = jn_exact(g, n, &quick) {
        if e.report.digits_lost + target as f64 + 2.0 <= e.working_digits as f64 {
            return Ok(e);
        }
    }
    if g.mu.value().cmp0().is_ne() {
        jn_connection(g, n, budget)
    } else {
        jn_exact(g, n, budget)
    }
}

/// Best available evaluation of `I_n^{(λ;α,β)}`: symmetric weights go
/// through [`jn`], integer `β − α` through the α/β connection, everything
/// else through the ₅F₄.
pub fn in_(p: &JacobiParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    if let Some(g) = p.as_gegenbauer() {
        return jn(&g, n, budget);
    }
    let mut connected = None;
    if p.alpha.is_tagged() && p.beta.is_tagged() {
        let gap = rug::Rational::from(p.beta.value() - p.alpha.value());
        if gap.is_integer() && gap.cmp0().is_gt() {
            connected = Some(p.clone());
        } else if gap.is_integer() && gap.cmp0().is_lt() {
            connected = Some(p.swapped());
        }
    }
    match connected {
        Some(q) => in_via_alpha_beta_connection(&q, n, budget),
        None => in_exact(p, n, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Method;
    use crate::params::Param;

    fn budget() -> Budget {
        Budget::digits(40)
    }

    #[test]
    fn dispatcher_prefers_closed_forms_for_integer_gaps() {
        let g = GegenbauerParams::new(Param::parse("5/2").unwrap(), Param::parse("3/2").unwrap()).unwrap();
        assert_eq!(jn(&g, 7, &budget()).unwrap().method, Method::ClosedForm);
        let generic = GegenbauerParams::from_f64(0.7, 1.3).unwrap();
        assert_eq!(jn(&generic, 5, &budget()).unwrap().method, Method::Exact4F3);
        assert_eq!(jn(&generic, 12, &budget()).unwrap().method, Method::Connection);
    }

    #[test]
    fn dispatcher_switches_to_connection_under_cancellation() {
        let g = GegenbauerParams::from_f64(0.3, 0.9).unwrap();
        let e = jn(&g, 400, &budget()).unwrap();
        assert_eq!(e.method, Method::Connection);
        let exact = jn_exact(&g, 400, &budget()).unwrap();
        let rel = ((&e.value - &exact.value) / &exact.value).abs();
        assert!(rel.to_f64() < 1e-35);
    }

    #[test]
    fn in_dispatch_routes_symmetric_and_integer_gap_weights() {
        let sym = JacobiParams::new(Param::parse("0.7").unwrap(), Param::parse("1/5").unwrap(), Param::parse("1/5").unwrap())
            .unwrap();
        assert_ne!(in_(&sym, 5, &budget()).unwrap().method, Method::Exact5F4);
        let gap = JacobiParams::new(Param::parse("1").unwrap(), Param::parse("2/1").unwrap(), Param::parse("0/1").unwrap()).unwrap();
        let e = in_(&gap, 3, &budget()).unwrap();
        assert_eq!(e.method, Method::Connection);
        let direct = in_exact(&gap, 3, &budget()).unwrap();
        assert!(((&e.value - &direct.value) / &direct.value).abs().to_f64() < 1e-35);
    }
}
