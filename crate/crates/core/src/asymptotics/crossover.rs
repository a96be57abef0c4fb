use std::time::Instant;

use super::{in_asymptotic, jn_asymptotic};
use crate::error::{Error, Result};
use crate::eval::{Budget, Evaluation};
use crate::exact::{in_, jn};
use crate::params::{GegenbauerParams, JacobiParams};

/// Largest `n` the crossover search will try.
pub const CROSSOVER_LIMIT: u64 = 1 << 20;

/// Sequence whose asymptotic series is compared with exact values.
#[derive(Debug, Clone)]
pub enum Target {
    Jacobi(JacobiParams),
    Gegenbauer(GegenbauerParams),
}

impl Target {
    fn exact(&self, n: u64, budget: &Budget) -> Result<Evaluation> {
        match self {
            Target::Jacobi(p) => in_(p, n, budget),
            Target::Gegenbauer(g) => jn(g, n, budget),
        }
    }

    fn asymptotic(&self, n: u64, m: u32, budget: &Budget) -> Result<Evaluation> {
        match self {
            Target::Jacobi(p) => in_asymptotic(p, n, m, budget).map(|r| r.0),
            Target::Gegenbauer(g) => jn_asymptotic(g, n, m, budget).map(|r| r.0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CrossoverResult {
    /// Smallest `n` found with relative error at most the tolerance.
    pub n: u64,
    pub relative_error: f64,
    /// Wall time of the exact evaluation over that of the series, at `n`.
    pub time_ratio: f64,
}

struct Probe {
    error: f64,
    exact_secs: f64,
    asymptotic_secs: f64,
}

fn probe(target: &Target, n: u64, m: u32, budget: &Budget) -> Result<Probe> {
    let t0 = Instant::now();
    let exact = target.exact(n, budget)?;
    let t1 = Instant::now();
    let asym = target.asymptotic(n, m, budget)?;
    let t2 = Instant::now();
    let error = ((&asym.value - &exact.value) / &exact.value).abs().to_f64();
    Ok(Probe {
        error,
        exact_secs: (t1 - t0).as_secs_f64(),
        asymptotic_secs: (t2 - t1).as_secs_f64(),
    })
}

/// Smallest `n > M` with `|asymptotic_M(n) − exact(n)|/exact(n) ≤ tol`,
/// located by doubling and then bisection. Assumes the error decreases in
/// `n` past the first success.
pub fn crossover(target: &Target, tol: f64, m: u32, budget: &Budget) -> Result<CrossoverResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut lo = m as u64; // last n known to fail (or inadmissible)
    let mut hi = m as u64 + 1;
    let mut best = loop {
        let pr = probe(target, hi, m, budget)?;
        if pr.error <= tol {
            break (hi, pr);
        }
        lo = hi;
        hi *= 2;
        if hi > CROSSOVER_LIMIT {
            return Err(Error::NotReached { limit: CROSSOVER_LIMIT });
        }
    };
    while best.0 - lo > 1 {
        let mid = lo + (best.0 - lo) / 2;
        let pr = probe(target, mid, m, budget)?;
        if pr.error <= tol {
            best = (mid, pr);
        } else {
            lo = mid;
        }
    }
    let (n, pr) = best;
    Ok(CrossoverResult {
        n,
        relative_error: pr.error,
        time_ratio: pr.exact_secs / pr.asymptotic_secs.max(1e-9),
    })
}
