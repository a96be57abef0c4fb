//! Asymptotic expansions of `I_n` and `J_n` for large `n`.
//!
//! Each generating function has its dominant singularity at `z = 1`; every
//! local term `(1−z)^a` or `(1−z)^m log(1/(1−z))` transfers to an exact
//! coefficient formula ([`power_transfer`], [`log_transfer`]). The series
//! keep those formulas unexpanded and multiply by `C_n(1) = (2λ)_n/n!`.

mod crossover;
mod gegenbauer;
mod jacobi;
mod special;

use std::fmt;

pub use crossover::{crossover, CrossoverResult, Target, CROSSOVER_LIMIT};
pub use gegenbauer::{gegen_coefficient_a, gegen_coefficient_b, gegen_leading_constant, gegen_leading_term, jn_asymptotic};
pub use jacobi::{
    in_asymptotic, jacobi_coefficient_a, jacobi_coefficient_b, jacobi_coefficient_d, jacobi_leading_term,
};
pub use special::{
    jn_lambda_minus_k_leading, jn_nat_lambda_asymptotic, mu_lambda_plus_k_constant, nat_lambda_coefficients,
};

use crate::error::{Error, Result};
use crate::eval::GUARD_DIGITS;
use crate::numerics::{binomial_real, pochhammer, Precision, Real};

/// `[z^n] (1−z)^a = binom(n−a−1, n)`.
pub fn power_transfer(a: &Real, n: u64) -> Real {
    binomial_real(&(Real::from_i64(n as i64 - 1, a.precision()) - a), n)
}

/// `[z^n] (1−z)^m log(1/(1−z)) = (−1)^m m!/(n(n−1)…(n−m))` for `n > m`.
pub fn log_transfer(m: u32, n: u64, prec: Precision) -> Result<Real> {
    if n <= m as u64 {
        return Err(Error::Domain(format!("log transfer of order {m} needs n > {m}, got n = {n}")));
    }
    let mut falling = Real::one(prec);
    for j in 0..=m as i64 {
        falling *= n as i64 - j;
    }
    let v = pochhammer(&Real::one(prec), m as i64)? / falling;
    Ok(if m % 2 == 1 { -v } else { v })
}

/// Where a term of an expansion comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    JacobiD,
    JacobiA,
    JacobiB,
    GegenA,
    GegenB,
    NatLambdaA,
    NatLambdaB,
    LambdaMinusK,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Origin::JacobiD => "JacobiD",
            Origin::JacobiA => "JacobiA",
            Origin::JacobiB => "JacobiB",
            Origin::GegenA => "GegenA",
            Origin::GegenB => "GegenB",
            Origin::NatLambdaA => "NatLambdaA",
            Origin::NatLambdaB => "NatLambdaB",
            Origin::LambdaMinusK => "LambdaMinusK",
        };
        f.write_str(s)
    }
}

/// One transferred singular contribution.
#[derive(Debug, Clone)]
pub struct AsymptoticTerm {
    pub origin: Origin,
    /// Index `m` in its coefficient sequence.
    pub index: u32,
    pub coefficient: Real,
    /// Growth `n^{exponent} (log n)^{log_power}` of `value`.
    pub n_exponent: f64,
    pub log_power: u32,
    /// Contribution to the sequence at the evaluation point, `C_n(1)` included.
    pub value: Real,
}

/// Terms ordered by decreasing growth, as evaluated at one `n`.
#[derive(Debug, Clone)]
pub struct AsymptoticExpansion {
    pub n: u64,
    /// Highest coefficient index `M` retained.
    pub truncation: u32,
    pub terms: Vec<AsymptoticTerm>,
    /// Interlacing violations at `n`: a later scale not smaller than an earlier one.
    pub warnings: Vec<String>,
}

/// Exponents closer than this are one scale.
const SAME_SCALE: f64 = 1e-9;

impl AsymptoticExpansion {
    /// Sorts by dominance and checks that the magnitudes of successive
    /// scales strictly decrease at `n`. Equal exponents are summed first.
    /// Scales that vanish, exactly or below the rounding level of the largest
    /// one, are skipped.
    pub(crate) fn new(n: u64, truncation: u32, mut terms: Vec<AsymptoticTerm>) -> Self {
        terms.sort_by(|a, b| {
            b.n_exponent
                .total_cmp(&a.n_exponent)
                .then(b.log_power.cmp(&a.log_power))
        });
        let mut scales: Vec<(f64, u32, Real)> = Vec::new();
        for t in &terms {
            match scales.last_mut() {
                Some((e, l, v)) if (*e - t.n_exponent).abs() < SAME_SCALE && *l == t.log_power => *v += &t.value,
                _ => scales.push((t.n_exponent, t.log_power, t.value.clone())),
            }
        }
        let largest = scales.iter().map(|(_, _, v)| v.abs()).fold(None, |m: Option<Real>, v| match m {
            Some(m) if m >= v => Some(m),
            _ => Some(v),
        });
        let floor = largest.map(|m| {
            let digits = m.precision().decimal_digits().saturating_sub(GUARD_DIGITS);
            &m * Real::parse(&format!("1e-{digits}"), m.precision()).expect("literal")
        });
        let scales: Vec<_> = scales
            .into_iter()
            .filter(|(_, _, v)| !v.is_zero() && floor.as_ref().is_none_or(|f| v.abs() > *f))
            .collect();
        let warnings = scales
            .windows(2)
            .filter(|w| w[1].2.abs() >= w[0].2.abs())
            .map(|w| {
                format!(
                    "TruncationWarning: at n = {n} the n^{:.4} scale ({:.3e}) is not smaller than the n^{:.4} scale ({:.3e})",
                    w[1].0,
                    w[1].2.abs().to_f64(),
                    w[0].0,
                    w[0].2.abs().to_f64()
                )
            })
            .collect();
        AsymptoticExpansion {
            n,
            truncation,
            terms,
            warnings,
        }
    }

    pub fn value(&self, prec: Precision) -> Real {
        let mut acc = Real::zero(prec);
        for t in &self.terms {
            acc += &t.value;
        }
        acc
    }

    /// Growth exponent of the dominant term.
    pub fn leading_exponent(&self) -> Option<f64> {
        self.terms.first().map(|t| t.n_exponent)
    }
}

/// Which formula of a leading-term theorem applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeadingCase {
    AlphaAboveLambdaMinus1,
    AlphaEqLambdaMinus1,
    AlphaBelowLambdaMinus1,
    MuAboveLambdaMinusHalf,
    MuEqLambdaMinusHalf,
    MuBelowLambdaMinusHalf,
    LambdaMinusK,
}

impl fmt::Display for LeadingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LeadingCase::AlphaAboveLambdaMinus1 => "alphaAboveLambdaMinus1",
            LeadingCase::AlphaEqLambdaMinus1 => "alphaEqLambdaMinus1",
            LeadingCase::AlphaBelowLambdaMinus1 => "alphaBelowLambdaMinus1",
            LeadingCase::MuAboveLambdaMinusHalf => "muAboveLambdaMinusHalf",
            LeadingCase::MuEqLambdaMinusHalf => "muEqLambdaMinusHalf",
            LeadingCase::MuBelowLambdaMinusHalf => "muBelowLambdaMinusHalf",
            LeadingCase::LambdaMinusK => "lambdaMinusK",
        };
        f.write_str(s)
    }
}

/// Order `n^{exponent} (log n)^{log_power}` of an error term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Remainder {
    pub exponent: f64,
    pub log_power: u32,
}

impl Remainder {
    fn plain(exponent: f64) -> Self {
        Remainder { exponent, log_power: 0 }
    }
}

/// `constant · n^{exponent} · (log n + log_shift)` (or without the log
/// factor), with the theorem's remainder orders as metadata.
#[derive(Debug, Clone)]
pub struct LeadingTerm {
    pub value: Real,
    pub constant: Real,
    pub exponent: Real,
    pub log_shift: Option<Real>,
    pub case: LeadingCase,
    pub remainders: Vec<Remainder>,
}

impl LeadingTerm {
    fn new(
        constant: Real,
        exponent: Real,
        log_shift: Option<Real>,
        n: u64,
        case: LeadingCase,
        remainders: Vec<Remainder>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("leading terms need n >= 2, got {n}")));
        }
        let nr = Real::from_i64(n as i64, constant.precision());
        let mut value = &constant * nr.powr(&exponent);
        if let Some(shift) = &log_shift {
            value *= nr.ln() + shift;
        }
        Ok(LeadingTerm {
            value,
            constant,
            exponent,
            log_shift,
            case,
            remainders,
        })
    }

    /// The largest remainder exponent (the theorem's η).
    pub fn eta(&self) -> Option<f64> {
        self.remainders.iter().map(|r| r.exponent).reduce(f64::max)
    }
}

/// Converts gamma poles of a prefactor into the domain error of a
/// non-generic parameter set.
pub(crate) fn non_generic(e: Error) -> Error {
    match e {
        Error::Pole { function, at } => {
            Error::Domain(format!("non-generic parameters: {function} has a pole at {at}"))
        }
        other => other,
    }
}
