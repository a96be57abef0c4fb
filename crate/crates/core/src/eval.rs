//! Evaluation results and the working-precision policy shared by all routes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{CancellationReport, Precision, Real};

/// Digits carried beyond the requested budget on every first attempt.
pub const GUARD_DIGITS: u32 = 10;

/// Default ceiling for automatic precision escalation.
pub const DEFAULT_MAX_WORKING_DIGITS: u32 = 20_000;

/// Output accuracy requested by the caller and the most working precision
/// the library may spend to deliver it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub precision: Precision,
    pub max_working_digits: u32,
}

impl Budget {
    pub fn new(precision: Precision) -> Self {
        Budget {
            precision,
            max_working_digits: DEFAULT_MAX_WORKING_DIGITS,
        }
    }

    pub fn digits(digits: u32) -> Self {
        Self::new(Precision::digits(digits))
    }

    /// With `max == budget` every evaluation runs once at the budget and
    /// fails as soon as fewer than 12 digits survive.
    pub fn with_max_working_digits(self, max: u32) -> Self {
        Budget {
            max_working_digits: max,
            ..self
        }
    }

    pub fn target_digits(&self) -> u32 {
        self.precision.decimal_digits()
    }

    fn cap(&self) -> u32 {
        self.max_working_digits.max(self.target_digits())
    }

    /// Working precision for routes whose error does not depend on cancellation.
    pub fn working(&self) -> Precision {
        Precision::digits((self.target_digits() + GUARD_DIGITS).min(self.cap()))
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Precision::default())
    }
}

impl From<Precision> for Budget {
    fn from(precision: Precision) -> Self {
        Self::new(precision)
    }
}

/// Runs `f` at increasing working precision until the cancellation it reports
/// leaves the full budget intact.
///
/// Digits lost depend on the terms, not on the precision, so one retry at
/// `budget + lost + guard` normally suffices.
pub(crate) fn escalate<T>(
    budget: &Budget,
    f: impl FnMut(Precision) -> Result<(T, CancellationReport)>,
) -> Result<(T, CancellationReport, Precision)> {
    escalate_from(budget, budget.target_digits() + GUARD_DIGITS, f)
}

/// As [`escalate`], with the first attempt at `start` digits.
pub(crate) fn escalate_from<T>(
    budget: &Budget,
    start: u32,
    mut f: impl FnMut(Precision) -> Result<(T, CancellationReport)>,
) -> Result<(T, CancellationReport, Precision)> {
    let target = budget.target_digits();
    let cap = budget.cap();
    let mut w = start.min(cap);
    loop {
        let prec = Precision::digits(w);
        let lost = match f(prec) {
            Ok((value, report)) => {
                if report.digits_lost + target as f64 + 2.0 <= w as f64 {
                    return Ok((value, report, prec));
                }
                let needed = required(target, report.digits_lost);
                if needed > cap as f64 || needed <= w as f64 {
                    report.check(prec)?;
                    return Ok((value, report, prec));
                }
                report.digits_lost
            }
            Err(Error::PrecisionExhausted { digits_lost, working_digits }) => {
                let needed = required(target, digits_lost);
                if needed > cap as f64 || needed <= w as f64 {
                    return Err(Error::PrecisionExhausted {
                        digits_lost,
                        working_digits,
                    });
                }
                digits_lost
            }
            Err(e) => return Err(e),
        };
        w = (required(target, lost) as u32).max(w + 1);
    }
}

fn required(target: u32, lost: f64) -> f64 {
    target as f64 + lost.ceil() + GUARD_DIGITS as f64
}

/// Evaluation route that produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact5F4,
    Exact4F3,
    Connection,
    Recurrence,
    GenFun,
    Quadrature,
    Asymptotic(u32),
    LeadingTerm,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact5F4 => f.write_str("exact5F4"),
            Method::Exact4F3 => f.write_str("exact4F3"),
            Method::Connection => f.write_str("connection"),
            Method::Recurrence => f.write_str("recurrence"),
            Method::GenFun => f.write_str("genfun"),
            Method::Quadrature => f.write_str("quadrature"),
            Method::Asymptotic(m) => write!(f, "asymptotic({m})"),
            Method::LeadingTerm => f.write_str("leadingTerm"),
            Method::ClosedForm => f.write_str("closedForm"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts the display names; a bare `asymptotic` means `M = 0`.
    fn from_str(s: &str) -> Result<Self> {
        let m = match s {
            "exact5F4" => Method::Exact5F4,
            "exact4F3" => Method::Exact4F3,
            "connection" => Method::Connection,
            "recurrence" => Method::Recurrence,
            "genfun" => Method::GenFun,
            "quadrature" => Method::Quadrature,
            "asymptotic" => Method::Asymptotic(0),
            "leadingTerm" => Method::LeadingTerm,
            "closedForm" => Method::ClosedForm,
            _ => {
                let inner = s
                    .strip_prefix("asymptotic(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(s.to_string()))?;
                Method::Asymptotic(inner.parse().map_err(|_| Error::Parse(s.to_string()))?)
            }
        };
        Ok(m)
    }
}

/// A value together with the route that produced it and its diagnostics.
#[derive(Debug, Clone)]
pub struct Evaluation {
    /// Rounded to the requested budget.
    pub value: Real,
    pub method: Method,
    pub report: CancellationReport,
    pub working_digits: u32,
    /// Relative error bound, when the route tracks one explicitly.
    pub error_estimate: Option<f64>,
}

impl Evaluation {
    pub(crate) fn new(value: Real, method: Method, report: CancellationReport, working: Precision, budget: &Budget) -> Self {
        Evaluation {
            value: value.with_precision(budget.precision),
            method,
            report,
            working_digits: working.decimal_digits(),
            error_estimate: None,
        }
    }
}
