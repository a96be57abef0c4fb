//! Gauss–Jacobi quadrature as an independent oracle for `I_n`.
//!
//! `(C_n^{(λ)})²` is a polynomial of degree `2n`, so the `(n+1)`-node rule for
//! the weight `(1−x)^α(1+x)^β` integrates it exactly. Nodes are seeded by the
//! Golub–Welsch eigenvalue problem in double precision and polished by Newton
//! iteration on `P_N^{(α,β)}` at the working precision.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::eval::{Budget, Evaluation, Method};
use crate::numerics::{gamma_fn, pochhammer, CompensatedSum, Real};
use crate::params::{GegenbauerParams, JacobiParams};

/// Newton steps allowed per node before giving up.
const NEWTON_LIMIT: usize = 60;

/// `C_n^{(λ)}(x)` by the three-term recurrence in `n`.
pub fn gegenbauer_eval(lambda: &Real, n: u64, x: &Real) -> Real {
    let prec = x.precision().max(lambda.precision());
    let mut prev = Real::one(prec);
    if n == 0 {
        return prev;
    }
    let mut cur = lambda * x * 2i64;
    for k in 1..n as i64 {
        // (k+1) C_{k+1} = 2(k+λ) x C_k − (k+2λ−1) C_{k−1}
        let next = ((lambda + k) * x * &cur * 2i64 - (lambda * 2i64 + (k - 1)) * &prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// A Gauss–Jacobi rule for the weight `(1−x)^α(1+x)^β`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    /// Strictly increasing, inside `(−1, 1)`.
    pub nodes: Vec<Real>,
    /// Positive; their sum is the mass of the weight.
    pub weights: Vec<Real>,
    pub alpha: Real,
    pub beta: Real,
    /// Highest polynomial degree integrated exactly, `2·nodes − 1`.
    pub degree: usize,
}

impl QuadratureRule {
    pub fn integrate(&self, f: impl Fn(&Real) -> Real) -> Real {
        let mut acc = CompensatedSum::new(self.alpha.precision());
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(&(f(x) * w));
        }
        acc.value()
    }

    pub fn mass(&self) -> Real {
        self.integrate(|x| Real::one(x.precision()))
    }
}

type RuleKey = (String, String, usize, u32);

fn cache() -> &'static Mutex<HashMap<RuleKey, Arc<QuadratureRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<QuadratureRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `node_count`-point rule at the precision of `alpha`, shared through a
/// process-wide cache.
pub fn build_rule(alpha: &Real, beta: &Real, node_count: usize) -> Result<Arc<QuadratureRule>> {
    if node_count == 0 {
        return Err(Error::Domain("a quadrature rule needs at least one node".into()));
    }
    if !(*alpha > -1i64 && *beta > -1i64) {
        return Err(Error::Domain("Jacobi weight needs alpha, beta > -1".into()));
    }
    let prec = alpha.precision().max(beta.precision());
    let key = (
        alpha.as_float().to_string_radix(16, None),
        beta.as_float().to_string_radix(16, None),
        node_count,
        prec.bits(),
    );
    if let Some(rule) = cache().lock().expect("rule cache").get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(compute_rule(&alpha.with_precision(prec), &beta.with_precision(prec), node_count)?);
    cache().lock().expect("rule cache").insert(key, rule.clone());
    Ok(rule)
}

/// Eigenvalues of the Jacobi matrix of the orthonormal Jacobi polynomials.
fn golub_welsch_seeds(alpha: f64, beta: f64, n: usize) -> Vec<f64> {
    let s = alpha + beta;
    let mut m = DMatrix::<f64>::zeros(n, n);
    m[(0, 0)] = (beta - alpha) / (s + 2.0);
    for j in 1..n {
        let jf = j as f64;
        let t = 2.0 * jf + s;
        m[(j, j)] = (beta * beta - alpha * alpha) / (t * (t + 2.0));
        // j = 1 is written in cancelled form because α+β+1 may vanish
        let off2 = if j == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((s + 2.0) * (s + 2.0) * (s + 3.0))
        } else {
            4.0 * jf * (jf + alpha) * (jf + beta) * (jf + s) / (t * t * (t + 1.0) * (t - 1.0))
        };
        m[(j, j - 1)] = off2.sqrt();
        m[(j - 1, j)] = off2.sqrt();
    }
    let mut seeds: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().cloned().collect();
    seeds.sort_by(|a, b| a.total_cmp(b));
    seeds
}

/// `(P_N(x), P_{N−1}(x))` for the Jacobi polynomials `P^{(α,β)}`.
fn jacobi_pair(alpha: &Real, beta: &Real, n: usize, x: &Real) -> (Real, Real) {
    let prec = x.precision();
    let s = alpha + beta;
    let mut prev = Real::one(prec);
    let mut cur = ((&s + 2i64) * x + alpha - beta) / 2i64;
    for k in 2..=n as i64 {
        let t = &s + 2 * k;
        let a = (&s + k) * (&t - 2i64) * (2 * k);
        let b = (&t - 1i64) * ((&t * (&t - 2i64)) * x + alpha.square() - beta.square());
        let c = (alpha + (k - 1)) * (beta + (k - 1)) * &t * 2i64;
        let next = (b * &cur - c * &prev) / a;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `P'_N(x)` from `(2N+α+β)(1−x²)P'_N = N[α−β−(2N+α+β)x]P_N + 2(N+α)(N+β)P_{N−1}`.
fn jacobi_derivative(alpha: &Real, beta: &Real, n: usize, x: &Real, p: &Real, q: &Real) -> Real {
    let ni = n as i64;
    let t = alpha + beta + 2 * ni;
    let lhs = (alpha - beta - &t * x) * p * ni + (alpha + ni) * (beta + ni) * q * 2i64;
    lhs / (t * (1i64 - x.square()))
}

fn compute_rule(alpha: &Real, beta: &Real, n: usize) -> Result<QuadratureRule> {
    let prec = alpha.precision();
    let tol = Real::int_pow(2, &Real::from_i64(6 - prec.bits() as i64, prec));
    let seeds = golub_welsch_seeds(alpha.to_f64(), beta.to_f64(), n);
    let ni = n as i64;
    let s = alpha + beta;
    // Γ(N+α+1)Γ(N+β+1)/(Γ(N+α+β+1) N!) 2^{α+β+1}
    let scale = gamma_fn(&(alpha + (ni + 1)))? * gamma_fn(&(beta + (ni + 1)))?
        / (gamma_fn(&(&s + (ni + 1)))? * pochhammer(&Real::one(prec), ni)?)
        * Real::int_pow(2, &(&s + 1i64));
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (i, seed) in seeds.into_iter().enumerate() {
        let mut x = Real::from_f64(seed, prec);
        let mut converged = false;
        for _ in 0..NEWTON_LIMIT {
            let (p, q) = jacobi_pair(alpha, beta, n, &x);
            let dp = jacobi_derivative(alpha, beta, n, &x, &p, &q);
            let step = p / dp;
            x -= &step;
            if step.abs() <= tol {
                converged = true;
                break;
            }
        }
        if !converged || !(x > -1i64 && x < 1i64) {
            return Err(Error::Convergence(format!("Newton iteration for node {i} of {n} failed")));
        }
        let (p, q) = jacobi_pair(alpha, beta, n, &x);
        let dp = jacobi_derivative(alpha, beta, n, &x, &p, &q);
        weights.push(&scale / ((1i64 - x.square()) * dp.square()));
        nodes.push(x);
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Convergence(format!("Newton iteration merged nodes of the {n}-point rule")));
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        alpha: alpha.clone(),
        beta: beta.clone(),
        degree: 2 * n - 1,
    })
}

fn oracle_sum(lambda: &Real, n: u64, rule: &QuadratureRule) -> Real {
    rule.integrate(|x| gegenbauer_eval(lambda, n, x).square())
}

/// `I_n^{(λ;α,β)}` as `Σ w_i C_n(x_i)²` on the `(n+1)`-node rule, confirmed on
/// the `(n+5)`-node rule.
///
/// Both rules are exact for the integrand, so any disagreement beyond the
/// budget is a rule bug and is reported as a convergence error.
pub fn in_oracle(p: &JacobiParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    let prec = budget.working();
    let l = p.lambda.real(prec);
    let a = p.alpha.real(prec);
    let b = p.beta.real(prec);
    let minimal = build_rule(&a, &b, n as usize + 1)?;
    let value = oracle_sum(&l, n, &minimal);
    let check = oracle_sum(&l, n, &*build_rule(&a, &b, n as usize + 5)?);
    let disagreement = ((&value - &check) / &value).abs().to_f64();
    let tolerance = 10f64.powi(-(budget.target_digits() as i32));
    if !(disagreement <= tolerance) {
        return Err(Error::Convergence(format!(
            "quadrature rules with {} and {} nodes disagree by {disagreement:e}",
            n + 1,
            n + 5
        )));
    }
    // every term is positive
    let report = crate::numerics::CancellationReport::exact(&value);
    let mut eval = Evaluation::new(value, Method::Quadrature, report, prec, budget);
    eval.error_estimate = Some(disagreement);
    Ok(eval)
}

/// `J_n^{(λ;μ)}` through [`in_oracle`] with `α = β = μ − ½`.
pub fn jn_oracle(g: &GegenbauerParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    in_oracle(&g.jacobi(), n, budget)
}
