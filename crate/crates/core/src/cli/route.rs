//! Maps a `--method` request onto the library routes.

use rug::Rational;

use crate::asymptotics::{
    gegen_leading_term, in_asymptotic, jacobi_leading_term, jn_asymptotic, jn_nat_lambda_asymptotic, LeadingTerm, Target,
};
use crate::error::{Error, Result};
use crate::eval::{Budget, Evaluation, Method};
use crate::exact::{
    in_, in_exact, in_via_alpha_beta_connection, jn, jn_connection, jn_exact, jn_lambda_minus_k, jn_lambda_plus_k,
    jn_recurrence,
};
use crate::genfun::{in_genfun, jn_genfun};
use crate::numerics::CancellationReport;
use crate::params::{Classification, GegenbauerParams, ParamClass};
use crate::quadrature::{in_oracle, jn_oracle};

/// An evaluation with the metadata the output formats report.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub eval: Evaluation,
    pub classification: Classification,
    /// Remainder exponents of a leading-term theorem.
    pub eta_exponents: Option<Vec<f64>>,
    pub warnings: Vec<String>,
}

pub fn classify(target: &Target) -> Classification {
    match target {
        Target::Jacobi(p) => p.classify(),
        Target::Gegenbauer(g) => g.classify(),
    }
}

/// The Gegenbauer form of a target, when its weight is symmetric.
fn symmetric(target: &Target) -> Option<GegenbauerParams> {
    match target {
        Target::Jacobi(p) => p.as_gegenbauer(),
        Target::Gegenbauer(g) => Some(g.clone()),
    }
}

fn needs_symmetric(target: &Target, method: Method) -> Result<GegenbauerParams> {
    symmetric(target).ok_or_else(|| Error::Domain(format!("method {method} needs a symmetric weight (alpha = beta)")))
}

fn from_leading(lead: LeadingTerm, budget: &Budget) -> Evaluation {
    let report = CancellationReport::exact(&lead.value);
    Evaluation::new(lead.value, Method::LeadingTerm, report, budget.working(), budget)
}

/// Evaluates `n`-th term of `target` by `method`, or by the default
/// dispatcher when `method` is `None`.
pub fn evaluate(target: &Target, n: u64, method: Option<Method>, budget: &Budget) -> Result<Outcome> {
    let classification = classify(target);
    let mut warnings = classification.warnings.clone();
    let mut eta_exponents = None;
    let eval = match method {
        None => match target {
            Target::Jacobi(p) => in_(p, n, budget)?,
            Target::Gegenbauer(g) => jn(g, n, budget)?,
        },
        Some(Method::Exact5F4) => match target {
            Target::Jacobi(p) => in_exact(p, n, budget)?,
            Target::Gegenbauer(g) => in_exact(&g.jacobi(), n, budget)?,
        },
        Some(m @ Method::Exact4F3) => jn_exact(&needs_symmetric(target, m)?, n, budget)?,
        Some(Method::Connection) => match (symmetric(target), target) {
            (Some(g), _) => jn_connection(&g, n, budget)?,
            (None, Target::Jacobi(p)) if p.beta.value() < p.alpha.value() => {
                in_via_alpha_beta_connection(&p.swapped(), n, budget)?
            }
            (None, Target::Jacobi(p)) => in_via_alpha_beta_connection(p, n, budget)?,
            (None, Target::Gegenbauer(_)) => unreachable!("Gegenbauer targets are symmetric"),
        },
        Some(m @ Method::Recurrence) => {
            let g = needs_symmetric(target, m)?;
            let mut seq = jn_recurrence(&g, n.max(2), budget)?;
            seq.swap_remove(n as usize)
        }
        Some(Method::GenFun) => match target {
            Target::Jacobi(p) => in_genfun(p, n, budget)?,
            Target::Gegenbauer(g) => jn_genfun(g, n, budget)?,
        },
        Some(Method::Quadrature) => match target {
            Target::Jacobi(p) => in_oracle(p, n, budget)?,
            Target::Gegenbauer(g) => jn_oracle(g, n, budget)?,
        },
        Some(Method::Asymptotic(m)) => {
            let (eval, expansion) = match target {
                Target::Jacobi(p) => in_asymptotic(p, n, m, budget)?,
                Target::Gegenbauer(g) => match classification.class {
                    ParamClass::LambdaIsPosInt(k) => jn_nat_lambda_asymptotic(k, &g.mu, n, m, budget)?,
                    _ => jn_asymptotic(g, n, m, budget)?,
                },
            };
            warnings.extend(expansion.warnings);
            eval
        }
        Some(Method::LeadingTerm) => {
            let lead = match target {
                Target::Jacobi(p) => jacobi_leading_term(p, n, budget.working())?,
                Target::Gegenbauer(g) => gegen_leading_term(g, n, budget.working())?,
            };
            eta_exponents = Some(lead.remainders.iter().map(|r| r.exponent).collect());
            from_leading(lead, budget)
        }
        Some(m @ Method::ClosedForm) => closed_form(&needs_symmetric(target, m)?, n, budget)?,
    };
    Ok(Outcome {
        eval,
        classification,
        eta_exponents,
        warnings,
    })
}

/// Closed forms exist when `μ − λ` is an integer. An explicit request
/// decides this from the values, tagged or not.
fn closed_form(g: &GegenbauerParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    let gap = Rational::from(g.mu.value() - g.lambda.value());
    if !gap.is_integer() {
        return Err(Error::Domain(format!(
            "closedForm needs mu - lambda to be an integer, got {}",
            gap.to_f64()
        )));
    }
    let k = gap.numer().to_i64().ok_or_else(|| Error::Domain("mu - lambda out of range".into()))?;
    let k32 = |v: i64| u32::try_from(v).map_err(|_| Error::Domain("mu - lambda out of range".into()));
    if k >= 0 {
        jn_lambda_plus_k(&g.lambda, k32(k)?, n, budget)
    } else {
        jn_lambda_minus_k(&g.lambda, k32(-k)?, n, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Real;
    use crate::params::{JacobiParams, Param};

    fn gegen(l: &str, m: &str) -> Target {
        Target::Gegenbauer(GegenbauerParams::new(Param::parse(l).unwrap(), Param::parse(m).unwrap()).unwrap())
    }

    #[test]
    fn closed_form_uses_values() {
        let b = Budget::digits(40);
        let out = evaluate(&gegen("1", "0"), 9, Some(Method::ClosedForm), &b).unwrap();
        let ten_pi = Real::pi(b.precision) * 10i64;
        assert!(((out.eval.value - &ten_pi) / ten_pi).abs() < 1e-38);
        let out = evaluate(&gegen("0.6", "2.6"), 4, Some(Method::ClosedForm), &b).unwrap();
        assert_eq!(out.eval.method, Method::ClosedForm);
        assert!(evaluate(&gegen("0.6", "2.5"), 4, Some(Method::ClosedForm), &b).is_err());
    }

    #[test]
    fn symmetric_methods_reject_jacobi_weights() {
        let p = JacobiParams::new(Param::parse("1").unwrap(), Param::parse("0").unwrap(), Param::parse("0.5").unwrap()).unwrap();
        let b = Budget::digits(30);
        for m in [Method::Exact4F3, Method::Recurrence, Method::ClosedForm] {
            assert!(matches!(evaluate(&Target::Jacobi(p.clone()), 3, Some(m), &b), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn recurrence_entry_matches_dispatcher() {
        let b = Budget::digits(30);
        let t = gegen("0.7", "0.2");
        for n in [0, 1, 5] {
            let r = evaluate(&t, n, Some(Method::Recurrence), &b).unwrap().eval.value;
            let d = evaluate(&t, n, None, &b).unwrap().eval.value;
            assert!(((&r - &d) / &d).abs() < 1e-25, "n = {n}");
        }
    }

    #[test]
    fn leading_term_reports_eta() {
        let out = evaluate(&gegen("0.7", "1.3"), 64, Some(Method::LeadingTerm), &Budget::digits(30)).unwrap();
        assert!(out.eta_exponents.is_some_and(|e| !e.is_empty()));
    }
}
