use super::{Precision, Real};
use crate::error::{Error, Result};

/// Magnitude bookkeeping for a sum whose terms may cancel.
#[derive(Debug, Clone, PartialEq)]
pub struct CancellationReport {
    pub max_abs_term: Real,
    pub result_abs: Real,
    /// `log10(max_abs_term / result_abs)`, clamped at zero; infinite when the
    /// result vanished while some term did not.
    pub digits_lost: f64,
}

impl CancellationReport {
    pub fn new(max_abs_term: Real, result_abs: Real) -> Self {
        let digits_lost = if max_abs_term.is_zero() {
            0.0
        } else if result_abs.is_zero() {
            f64::INFINITY
        } else {
            (max_abs_term.log10_abs() - result_abs.log10_abs()).max(0.0)
        };
        CancellationReport {
            max_abs_term,
            result_abs,
            digits_lost,
        }
    }

    /// A report for a value obtained without any summation.
    pub fn exact(value: &Real) -> Self {
        Self::new(value.abs(), value.abs())
    }

    /// A sum that cancelled to zero without a single rounding error.
    pub fn exact_zero(max_abs_term: Real) -> Self {
        let result_abs = Real::zero(max_abs_term.precision());
        CancellationReport {
            max_abs_term,
            result_abs,
            digits_lost: 0.0,
        }
    }

    /// Worst case of two reports, used when a result combines several sums.
    pub fn merge(self, other: CancellationReport) -> CancellationReport {
        if other.digits_lost > self.digits_lost {
            other
        } else {
            self
        }
    }

    /// Fails when fewer than 12 significant digits survive at `working`.
    pub fn check(&self, working: Precision) -> Result<()> {
        let budget = working.decimal_digits() as f64 - 12.0;
        if self.digits_lost > budget {
            Err(Error::PrecisionExhausted {
                digits_lost: self.digits_lost,
                working_digits: working.decimal_digits(),
            })
        } else {
            Ok(())
        }
    }

    /// Rough count of trustworthy digits left at `working` precision.
    pub fn surviving_digits(&self, working: Precision) -> f64 {
        working.decimal_digits() as f64 - self.digits_lost
    }
}

/// Neumaier-compensated accumulator that also tracks the largest term.
#[derive(Debug, Clone)]
pub struct CompensatedSum {
    sum: Real,
    compensation: Real,
    max_abs_term: Real,
    rounded: bool,
}

impl CompensatedSum {
    pub fn new(prec: Precision) -> Self {
        CompensatedSum {
            sum: Real::zero(prec),
            compensation: Real::zero(prec),
            max_abs_term: Real::zero(prec),
            rounded: false,
        }
    }

    pub fn add(&mut self, term: &Real) {
        let abs = term.abs();
        if abs > self.max_abs_term {
            self.max_abs_term = abs.clone();
        }
        let t = &self.sum + term;
        // the correction is exact, and zero exactly when the addition was
        let err = if self.sum.abs() >= abs {
            (&self.sum - &t) + term
        } else {
            (term - &t) + &self.sum
        };
        if !err.is_zero() {
            self.rounded = true;
            self.compensation += err;
        }
        self.sum = t;
    }

    pub fn value(&self) -> Real {
        &self.sum + &self.compensation
    }

    pub fn max_abs_term(&self) -> &Real {
        &self.max_abs_term
    }

    /// True while no addition so far has rounded.
    pub fn is_exact(&self) -> bool {
        !self.rounded
    }

    pub fn finish(self) -> (Real, CancellationReport) {
        let value = self.value();
        let report = CancellationReport::new(self.max_abs_term, value.abs());
        (value, report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_recovers_low_order_bits() {
        // At 16 digits, 1 + 1e-20 - 1 is lost by naive summation.
        let p = Precision::digits(16);
        let mut acc = CompensatedSum::new(p);
        acc.add(&Real::one(p));
        acc.add(&Real::parse("1e-20", p).unwrap());
        acc.add(&Real::from_i64(-1, p));
        let (v, report) = acc.finish();
        assert!((v.to_f64() - 1e-20).abs() < 1e-30);
        assert!((report.digits_lost - 20.0).abs() < 1e-9);
    }

    #[test]
    fn guard_threshold_is_budget_minus_twelve() {
        let p = Precision::digits(40);
        let one = Real::one(p);
        let ok = CancellationReport::new(Real::parse("1e27", p).unwrap(), one.clone());
        assert!(ok.check(p).is_ok());
        let bad = CancellationReport::new(Real::parse("1e29", p).unwrap(), one);
        assert!(matches!(bad.check(p), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn exactness_tracking() {
        let p = Precision::digits(20);
        let mut acc = CompensatedSum::new(p);
        for t in [1i64, -2, 1] {
            acc.add(&Real::from_i64(t, p));
        }
        assert!(acc.is_exact());
        assert!(acc.value().is_zero());
        acc.add(&(Real::one(p) / 3i64));
        acc.add(&Real::from_i64(1_000_000, p));
        assert!(!acc.is_exact());
    }

    #[test]
    fn zero_result_loses_everything() {
        let p = Precision::default();
        let r = CancellationReport::new(Real::one(p), Real::zero(p));
        assert!(r.digits_lost.is_infinite());
        let quiet = CancellationReport::new(Real::zero(p), Real::zero(p));
        assert_eq!(quiet.digits_lost, 0.0);
    }
}
