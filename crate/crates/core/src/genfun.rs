//! Taylor coefficients of the normalised generating functions
//! `𝓘(z) = Σ n!/(2λ)_n I_n z^n` and `𝓙(z) = Σ n!/(2λ)_n J_n z^n`.
//!
//! Both are `(1−z)^{−2λ}` times a hypergeometric function of
//! `w = −4z/(1−z)²`. Since `w` has valuation 1, the first `N+1` hypergeometric
//! terms fix the coefficients up to `z^N`; they are composed by Horner's rule
//! in truncated power-series arithmetic. `w` alternates in sign, so the same
//! composition is run on `|w|` and absolute hypergeometric terms to measure
//! the cancellation in every coefficient.

use crate::error::{Error, Result};
use crate::eval::{escalate_from, Budget, Evaluation, Method, GUARD_DIGITS};
use crate::exact::lambda_minus_k_numerator;
use crate::numerics::{binomial_real, jacobi_mass, CancellationReport, Precision, Real};
use crate::params::{GegenbauerParams, JacobiParams};

/// Coefficients `c_0..c_N` of a power series about `z = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    pub coefficients: Vec<Real>,
}

impl TaylorSeries {
    pub fn new(coefficients: Vec<Real>) -> Self {
        assert!(!coefficients.is_empty(), "a Taylor series keeps at least c_0");
        TaylorSeries { coefficients }
    }

    pub fn constant(c: Real, order: usize) -> Self {
        let zero = Real::zero(c.precision());
        let mut coefficients = vec![zero; order + 1];
        coefficients[0] = c;
        TaylorSeries { coefficients }
    }

    /// `N`, the highest retained power.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, n: usize) -> &Real {
        &self.coefficients[n]
    }

    /// Product truncated to the shorter order.
    pub fn mul(&self, other: &TaylorSeries) -> TaylorSeries {
        let order = self.order().min(other.order());
        let prec = self.coefficients[0].precision();
        let coefficients = (0..=order)
            .map(|n| {
                let mut acc = Real::zero(prec);
                for j in 0..=n {
                    acc += &self.coefficients[j] * &other.coefficients[n - j];
                }
                acc
            })
            .collect();
        TaylorSeries { coefficients }
    }

    pub fn abs(&self) -> TaylorSeries {
        TaylorSeries {
            coefficients: self.coefficients.iter().map(Real::abs).collect(),
        }
    }

    /// `Σ_j h_j w(z)^j` for `w` with zero constant term, by Horner's rule.
    /// Terms with `j > N` cannot reach `z^N` and may be omitted.
    pub fn compose(h: &[Real], w: &TaylorSeries) -> TaylorSeries {
        assert!(w.coefficients[0].is_zero(), "inner series must vanish at 0");
        let order = w.order();
        let prec = w.coefficients[0].precision();
        let mut acc = TaylorSeries::constant(Real::zero(prec), order);
        for hj in h.iter().take(order + 1).rev() {
            acc = acc.mul(w);
            acc.coefficients[0] += hj;
        }
        acc
    }

    /// `(1−z)^{−a}` up to `z^N`, coefficients `(a)_n/n!`.
    pub fn binomial(a: &Real, order: usize) -> TaylorSeries {
        let mut coefficients = Vec::with_capacity(order + 1);
        let mut c = Real::one(a.precision());
        for n in 0..=order as i64 {
            coefficients.push(c.clone());
            c = c * (a + n) / (n + 1);
        }
        TaylorSeries { coefficients }
    }
}

/// `w(z) = −4z/(1−z)²` (or `|w|` for `sign = 1`) to order `N`.
fn argument_series(order: usize, prec: Precision, sign: i64) -> TaylorSeries {
    let coefficients = (0..=order as i64).map(|n| Real::from_i64(sign * 4 * n, prec)).collect();
    TaylorSeries { coefficients }
}

/// Terms `h_j` of `pFq(upper; lower; w)` for `j ≤ N`.
fn hypergeometric_terms(upper: &[Real], lower: &[Real], order: usize, prec: Precision) -> Vec<Real> {
    let mut h = Vec::with_capacity(order + 1);
    let mut t = Real::one(prec);
    for j in 0..=order as i64 {
        h.push(t.clone());
        for a in upper {
            t *= a + j;
        }
        for b in lower {
            t /= b + j;
        }
        t /= j + 1;
    }
    h
}

/// `mass · (1−z)^{−2λ} · pFq(upper; lower; w)` together with the worst
/// per-coefficient cancellation.
fn composed(
    lambda: &Real,
    mass: &Real,
    upper: &[Real],
    lower: &[Real],
    order: usize,
) -> (TaylorSeries, CancellationReport) {
    let prec = lambda.precision();
    let h = hypergeometric_terms(upper, lower, order, prec);
    let h_abs: Vec<Real> = h.iter().map(Real::abs).collect();
    let outer = TaylorSeries::binomial(&(lambda * 2i64), order);
    let series = TaylorSeries::compose(&h, &argument_series(order, prec, -1)).mul(&outer);
    let shadow = TaylorSeries::compose(&h_abs, &argument_series(order, prec, 1)).mul(&outer.abs());
    let mut report = CancellationReport::exact(&series.coefficients[0]);
    for (c, s) in series.coefficients.iter().zip(&shadow.coefficients) {
        report = report.merge(CancellationReport::new(s.clone(), c.abs()));
    }
    let coefficients = series.coefficients.into_iter().map(|c| c * mass).collect();
    (TaylorSeries { coefficients }, report)
}

fn run(
    budget: &Budget,
    f: impl Fn(Precision) -> Result<(TaylorSeries, CancellationReport)>,
) -> Result<(TaylorSeries, CancellationReport, Precision)> {
    // composition compounds rounding, so start at twice the budget
    let start = 2 * budget.target_digits() + GUARD_DIGITS;
    let (series, report, w) = escalate_from(budget, start, f)?;
    let coefficients = series.coefficients.iter().map(|c| c.with_precision(budget.precision)).collect();
    Ok((TaylorSeries { coefficients }, report, w))
}

fn jacobi_series(p: &JacobiParams, order: usize, prec: Precision) -> Result<(TaylorSeries, CancellationReport)> {
    let l = p.lambda.real(prec);
    let a = p.alpha.real(prec);
    let b = p.beta.real(prec);
    let s = &a + &b;
    let upper = [l.clone(), l.clone(), &a + 1i64, &b + 1i64];
    let lower = [&l * 2i64, (&s + 2i64) / 2i64, (&s + 3i64) / 2i64];
    Ok(composed(&l, &jacobi_mass(&a, &b)?, &upper, &lower, order))
}

fn gegenbauer_series(g: &GegenbauerParams, order: usize, prec: Precision) -> Result<(TaylorSeries, CancellationReport)> {
    let l = g.lambda.real(prec);
    let mu = g.mu.real(prec);
    let half = Real::one(prec) / 2i64;
    let upper = [l.clone(), l.clone(), &mu + &half];
    let lower = [&l * 2i64, &mu + 1i64];
    Ok(composed(&l, &crate::exact::gegenbauer_mass(&mu)?, &upper, &lower, order))
}

/// `c_0..c_N` of `𝓘^{(λ;α,β)}(z)`, so that `I_n = (2λ)_n/n! · c_n`.
pub fn gen_fn_coefficients_i(p: &JacobiParams, order: usize, budget: &Budget) -> Result<TaylorSeries> {
    Ok(run(budget, |prec| jacobi_series(p, order, prec))?.0)
}

/// `c_0..c_N` of `𝓙^{(λ;μ)}(z)`, so that `J_n = (2λ)_n/n! · c_n`.
pub fn gen_fn_coefficients_j(g: &GegenbauerParams, order: usize, budget: &Budget) -> Result<TaylorSeries> {
    Ok(run(budget, |prec| gegenbauer_series(g, order, prec))?.0)
}

/// `I_n^{(λ;α,β)}` from the `n`-th Taylor coefficient of `𝓘`.
pub fn in_genfun(p: &JacobiParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    let (series, report, w) = run(budget, |prec| jacobi_series(p, n as usize, prec))?;
    let l = p.lambda.real(w);
    let value = crate::exact::c_at_one(&l, n)? * series.coefficient(n as usize).with_precision(w);
    Ok(Evaluation::new(value, Method::GenFun, report, w, budget))
}

/// `J_n^{(λ;μ)}` from the `n`-th Taylor coefficient of `𝓙`.
pub fn jn_genfun(g: &GegenbauerParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    let (series, report, w) = run(budget, |prec| gegenbauer_series(g, n as usize, prec))?;
    let l = g.lambda.real(w);
    let value = crate::exact::c_at_one(&l, n)? * series.coefficient(n as usize).with_precision(w);
    Ok(Evaluation::new(value, Method::GenFun, report, w, budget))
}

/// For `μ = λ − k`, `𝓙` is rational:
/// `Σ_{r=0}^{2k−2} p_r (1−z)^r / (1−z)^{2k−1}`. Returns `(p, 2k−1)`.
pub fn gen_fn_rational_form(lambda: &Real, k: u32) -> Result<(Vec<Real>, u32)> {
    if k == 0 {
        return Err(Error::Domain("rational form needs k >= 1".into()));
    }
    let half = Real::one(lambda.precision()) / 2i64;
    if !(lambda - k as i64 + &half > 0i64) {
        return Err(Error::Domain(format!("lambda - k must exceed -1/2 (k = {k})")));
    }
    Ok((lambda_minus_k_numerator(lambda, k)?, 2 * k - 1))
}

/// Taylor expansion of `Σ_r p_r (1−z)^{r−e}` to order `N`.
pub fn rational_form_series(numerator: &[Real], exponent: u32, order: usize) -> TaylorSeries {
    let prec = numerator[0].precision();
    let coefficients = (0..=order as i64)
        .map(|n| {
            let mut acc = Real::zero(prec);
            for (r, pr) in numerator.iter().enumerate() {
                // [z^n] (1−z)^{r−e} = binom(n+e−r−1, n)
                let top = Real::from_i64(n + exponent as i64 - r as i64 - 1, prec);
                acc += binomial_real(&top, n as u64) * pr;
            }
            acc
        })
        .collect();
    TaylorSeries { coefficients }
}

/// Largest relative residual of the three-term recurrence satisfied by the
/// numerator coefficients `p_0..p_{2k−2}` (with `p_{2k−1} = 0`).
pub fn rational_form_recurrence_residual(lambda: &Real, k: u32, numerator: &[Real]) -> Real {
    let prec = lambda.precision();
    let k = k as i64;
    let l = lambda;
    let at = |i: i64| numerator.get(i as usize).cloned().unwrap_or_else(|| Real::zero(prec));
    let mut worst = Real::zero(prec);
    for n in 0..=(2 * k - 3) {
        let s = 2 - 2 * k + n;
        let a = (l * 2i64 + (1 - 2 * k + n)) * (l + (1 - k + n)) * s;
        let inner = (l * 3i64 + (4 - k + 2 * n)) * s + l + k + l * (4 * k);
        let b = inner * s + l * (2 * k);
        let c = Real::from_i64((3 - 2 * k + n).pow(2) * (2 + n), prec);
        let (x, y, z) = (a * at(n), b * at(n + 1), c * at(n + 2));
        let scale = x.abs().max(y.abs()).max(z.abs());
        if !scale.is_zero() {
            worst = worst.max((x - y + z).abs() / scale);
        }
    }
    worst
}
