//! Generalized hypergeometric sums `pFq(a; b; z)`.
//!
//! Terms are generated by multiplying the previous term with the rational
//! ratio `Π(aᵢ+k) / Π(bⱼ+k) · z/(k+1)` and accumulated in ascending order
//! with compensation, so results are reproducible bit for bit.

use std::cmp::Ordering;

use rug::ops::{AddAssignRound, DivAssignRound, MulAssignRound};
use rug::float::Round;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{pochhammer, CancellationReport, CompensatedSum, Precision, Real};

/// Parameters closer than this to a non-positive integer are snapped onto it.
pub const INTEGER_SNAP: f64 = 1e-20;

/// Term cap for [`eval_convergent`].
pub const DEFAULT_TERM_CAP: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct PFqSpec {
    pub upper: Vec<Real>,
    pub lower: Vec<Real>,
    pub argument: Real,
}

impl PFqSpec {
    pub fn new(upper: Vec<Real>, lower: Vec<Real>, argument: Real) -> Self {
        PFqSpec { upper, lower, argument }
    }

    /// Largest precision among the parameters and the argument.
    pub fn precision(&self) -> Precision {
        self.upper
            .iter()
            .chain(&self.lower)
            .chain(std::iter::once(&self.argument))
            .map(|r| r.precision())
            .fold(Precision::digits(0), Precision::max)
    }

    /// Index of the last nonzero term when some upper parameter is a
    /// non-positive integer.
    pub fn terminating_index(&self) -> Option<u64> {
        self.upper.iter().filter_map(nonpositive_integer).min()
    }

    pub fn is_terminating(&self) -> bool {
        self.terminating_index().is_some()
    }

    /// Parameters with near-integers snapped, so the zero factor is exact.
    fn snapped(&self) -> PFqSpec {
        let snap = |r: &Real| match nonpositive_integer(r) {
            Some(k) => Real::from_i64(-(k as i64), r.precision()),
            None => r.clone(),
        };
        PFqSpec {
            upper: self.upper.iter().map(snap).collect(),
            lower: self.lower.iter().map(snap).collect(),
            argument: self.argument.clone(),
        }
    }

    /// First index whose term would divide by zero, if any.
    fn lower_pole(&self) -> Option<u64> {
        self.lower.iter().filter_map(nonpositive_integer).min().map(|k| k + 1)
    }
}

/// `Some(k)` when `r` equals `-k` for an integer `k ≥ 0`, up to [`INTEGER_SNAP`].
fn nonpositive_integer(r: &Real) -> Option<u64> {
    if r.is_nonpositive_integer() {
        return r.to_i64_exact().map(|v| v.unsigned_abs());
    }
    if r.is_sign_negative() || r.is_zero() {
        let nearest = r.as_float().clone().round();
        let gap = (Real::from_float(nearest.clone()) - r).abs();
        if gap < INTEGER_SNAP && nearest <= 0 {
            return nearest.to_integer().and_then(|i| i.to_u64().or_else(|| (-i).to_u64()));
        }
    }
    None
}

/// Incremental term generator that remembers whether any step rounded.
struct Terms {
    spec: PFqSpec,
    term: Float,
    k: u64,
    rounded: bool,
}

impl Terms {
    fn new(spec: PFqSpec) -> Self {
        let bits = spec.precision().bits();
        Terms {
            term: Float::with_val(bits, 1),
            spec,
            k: 0,
            rounded: false,
        }
    }

    fn current(&self) -> Real {
        Real::from_float(self.term.clone())
    }

    /// Moves to term `k+1`.
    fn advance(&mut self) {
        let bits = self.term.prec();
        let k = self.k;
        let mut rounded = false;
        let mut track = |o: Ordering| rounded |= o != Ordering::Equal;
        for a in &self.spec.upper {
            let mut f = Float::with_val(bits, a.as_float());
            track(f.add_assign_round(k, Round::Nearest));
            track(self.term.mul_assign_round(&f, Round::Nearest));
        }
        for b in &self.spec.lower {
            let mut f = Float::with_val(bits, b.as_float());
            track(f.add_assign_round(k, Round::Nearest));
            track(self.term.div_assign_round(&f, Round::Nearest));
        }
        track(self.term.mul_assign_round(self.spec.argument.as_float(), Round::Nearest));
        track(self.term.div_assign_round(k + 1, Round::Nearest));
        self.rounded |= rounded;
        self.k += 1;
    }
}

fn finish(acc: CompensatedSum, terms_rounded: bool) -> (Real, CancellationReport) {
    let exact = acc.is_exact() && !terms_rounded;
    let max = acc.max_abs_term().clone();
    let (value, report) = acc.finish();
    if value.is_zero() && exact {
        return (value, CancellationReport::exact_zero(max));
    }
    (value, report)
}

/// Finite sum of a terminating series at the precision of its parameters.
pub fn eval_terminating(spec: &PFqSpec) -> Result<(Real, CancellationReport)> {
    let (value, report) = eval_terminating_unchecked(spec)?;
    report.check(spec.precision())?;
    Ok((value, report))
}

/// As [`eval_terminating`] but without the surviving-digits guard, for
/// callers that weigh the absolute error `max_abs_term · ulp` themselves.
pub(crate) fn eval_terminating_unchecked(spec: &PFqSpec) -> Result<(Real, CancellationReport)> {
    let n = spec
        .terminating_index()
        .ok_or_else(|| Error::Domain("series does not terminate".into()))?;
    if let Some(pole) = spec.lower_pole() {
        if pole <= n {
            return Err(Error::Pole {
                function: "pFq lower parameter",
                at: format!("term {pole}"),
            });
        }
    }
    let prec = spec.precision();
    let mut terms = Terms::new(spec.snapped());
    let mut acc = CompensatedSum::new(prec);
    acc.add(&terms.current());
    for _ in 0..n {
        terms.advance();
        acc.add(&terms.current());
    }
    Ok(finish(acc, terms.rounded))
}

/// Partial sums until three consecutive terms are below `tol` relative to the
/// running sum, with the default term cap.
pub fn eval_convergent(spec: &PFqSpec, tol: &Real) -> Result<(Real, CancellationReport)> {
    eval_convergent_capped(spec, tol, DEFAULT_TERM_CAP)
}

pub fn eval_convergent_capped(spec: &PFqSpec, tol: &Real, cap: usize) -> Result<(Real, CancellationReport)> {
    let (p, q) = (spec.upper.len(), spec.lower.len());
    if p > q + 1 {
        return Err(Error::Domain(format!("{p}F{q} diverges for nonzero argument")));
    }
    if p == q + 1 && spec.argument.abs() >= 1i64 && !spec.is_terminating() {
        return Err(Error::Domain("argument outside the unit disk".into()));
    }
    let limit = spec.terminating_index();
    if let (Some(pole), true) = (spec.lower_pole(), !spec.argument.is_zero()) {
        if limit.is_none_or(|n| pole <= n) {
            return Err(Error::Pole {
                function: "pFq lower parameter",
                at: format!("term {pole}"),
            });
        }
    }
    let prec = spec.precision();
    let mut terms = Terms::new(spec.snapped());
    let mut acc = CompensatedSum::new(prec);
    acc.add(&terms.current());
    let mut small = 0;
    for _ in 0..cap {
        if limit.is_some_and(|n| terms.k >= n) {
            break;
        }
        terms.advance();
        let t = terms.current();
        acc.add(&t);
        if t.is_zero() || t.abs() <= acc.value().abs() * tol {
            small += 1;
            if small == 3 || t.is_zero() {
                let (value, report) = finish(acc, terms.rounded);
                report.check(prec)?;
                return Ok((value, report));
            }
        } else {
            small = 0;
        }
    }
    if limit.is_some() {
        let (value, report) = finish(acc, terms.rounded);
        report.check(prec)?;
        return Ok((value, report));
    }
    Err(Error::NoConvergence { terms: cap })
}

/// Closed form `λ/(n+λ) · n!/(2λ)_n` of `3F2(−n, n+2λ, λ; 2λ, λ+1; 1)`.
pub fn pfaff_saalschutz(n: u64, lambda: &Real) -> Real {
    let prec = lambda.precision();
    let two_lambda = lambda * 2i64;
    let ratio = pochhammer(&Real::one(prec), n as i64).expect("positive argument")
        / pochhammer(&two_lambda, n as i64).expect("positive argument");
    lambda / (lambda + n as i64) * ratio
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p() -> Precision {
        Precision::digits(40)
    }

    fn r(v: f64) -> Real {
        Real::from_f64(v, p())
    }

    fn spec(upper: &[f64], lower: &[f64], z: f64) -> PFqSpec {
        PFqSpec::new(upper.iter().map(|&v| r(v)).collect(), lower.iter().map(|&v| r(v)).collect(), r(z))
    }

    #[test]
    fn terminating_examples() {
        let (v, report) = eval_terminating(&spec(&[-2.0, 1.0], &[1.0], 1.0)).unwrap();
        assert!(v.is_zero());
        assert_eq!(report.digits_lost, 0.0);

        let (v, _) = eval_terminating(&spec(&[-2.0, 4.0, 1.0], &[2.0, 2.0], 1.0)).unwrap();
        assert!(((v - Real::one(p()) / 9i64).abs()) < 1e-39);

        let empty = spec(&[0.0, 2.0, 1.0, 1.3, 2.2], &[2.0, 1.5, 2.75, 3.25], 1.0);
        assert_eq!(eval_terminating(&empty).unwrap().0, 1i64);
    }

    #[test]
    fn termination_index_uses_the_first_zero() {
        assert_eq!(spec(&[-5.0, -2.0], &[], 1.0).terminating_index(), Some(2));
        let near = PFqSpec::new(
            vec![Real::parse("-3.00000000000000000000001", p()).unwrap()],
            vec![],
            r(1.0),
        );
        assert_eq!(near.terminating_index(), Some(3));
        assert!(spec(&[-2.5, 1.0], &[], 1.0).terminating_index().is_none());
    }

    #[test]
    fn lower_pole_before_termination_is_an_error() {
        let bad = spec(&[-3.0, 1.0], &[-1.0], 1.0);
        assert!(matches!(eval_terminating(&bad), Err(Error::Pole { .. })));
        // the upper zero arrives first
        let ok = spec(&[-1.0, 1.0], &[-2.0], 1.0);
        assert!(eval_terminating(&ok).is_ok());
    }

    #[test]
    fn guard_raises_on_heavy_cancellation() {
        // 1F0(-n;;1) = 0 with binomial-sized terms
        let heavy = PFqSpec::new(
            vec![Real::from_i64(-200, Precision::digits(20))],
            vec![],
            Real::from_f64(1.0 + 1e-3, Precision::digits(20)),
        );
        assert!(matches!(eval_terminating(&heavy), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn convergent_examples() {
        let tol = Real::parse("1e-45", p()).unwrap();
        let (v, _) = eval_convergent(&spec(&[1.0], &[], 0.5), &tol).unwrap();
        assert!((v - 2i64).abs() < 1e-38);
        let (v, _) = eval_convergent(&spec(&[1.0, 1.0], &[2.0], 0.5), &tol).unwrap();
        let two_log2 = Real::ln2(p()) * 2i64;
        assert!((v - two_log2).abs() < 1e-38);
    }

    #[test]
    fn convergent_matches_naive_partial_sum() {
        // 3F2(λ, λ, μ+½; 2λ, μ+1; w) at λ = μ = 1, w = -0.1
        let s = spec(&[1.0, 1.0, 1.5], &[2.0, 2.0], -0.1);
        let tol = Real::parse("1e-42", p()).unwrap();
        let (v, _) = eval_convergent(&s, &tol).unwrap();
        let mut naive = Real::zero(p());
        let mut term = Real::one(p());
        for k in 0..200i64 {
            naive += &term;
            term = term * (k + 1) * (k + 1) * (r(1.5) + k) / ((k + 2) * (k + 2) * (k + 1)) * r(-0.1);
        }
        assert!((v - naive).abs() < 1e-38);
    }

    #[test]
    fn convergent_rejects_bad_arguments() {
        let tol = r(1e-30);
        assert!(eval_convergent(&spec(&[1.0, 1.0], &[], 0.5), &tol).is_err());
        assert!(eval_convergent(&spec(&[1.0], &[], 1.5), &tol).is_err());
        assert!(matches!(
            eval_convergent_capped(&spec(&[1.0], &[], 0.999999), &tol, 100),
            Err(Error::NoConvergence { terms: 100 })
        ));
    }

    #[test]
    fn pfaff_saalschutz_examples() {
        let ps = pfaff_saalschutz(2, &r(1.0));
        assert!((ps - Real::one(p()) / 9i64).abs() < 1e-39);
        assert_eq!(pfaff_saalschutz(0, &r(0.37)), 1i64);
        let ps = pfaff_saalschutz(5, &r(0.5));
        assert!((ps - Real::one(p()) / 11i64).abs() < 1e-39);
    }

    #[test]
    fn saalschutz_sum_matches_closed_form() {
        let wide = Precision::digits(80);
        for lambda in [0.3, 0.7, 1.0, 2.5] {
            for n in 0..=40u64 {
                let l = Real::from_f64(lambda, wide);
                let s = PFqSpec::new(
                    vec![Real::from_i64(-(n as i64), wide), &l * 2i64 + n as i64, l.clone()],
                    vec![&l * 2i64, &l + 1i64],
                    Real::one(wide),
                );
                let (v, _) = eval_terminating(&s).unwrap();
                let closed = pfaff_saalschutz(n, &l);
                let rel = ((v - &closed) / &closed).abs();
                assert!(rel < 1e-25, "lambda={lambda} n={n} rel={rel:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn zero_argument_gives_one(
            a in prop::collection::vec(-3.7f64..4.1, 0..4),
            b in prop::collection::vec(0.2f64..4.0, 0..4),
        ) {
            let s = PFqSpec::new(a.iter().map(|&v| r(v)).collect(), b.iter().map(|&v| r(v)).collect(), Real::zero(p()));
            let tol = r(1e-30);
            if a.len() <= b.len() + 1 {
                let (v, _) = eval_convergent(&s, &tol).unwrap();
                prop_assert_eq!(v, 1i64);
            }
        }
    }
}
