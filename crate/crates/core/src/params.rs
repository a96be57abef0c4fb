//! Validated parameter records and the generic/non-generic classification.
//!
//! Every parameter is stored as an exact rational so it can be materialised
//! at any working precision. Only values entered as `p/q` (or built with
//! [`Param::exact`]) carry an exactness tag; the case analysis of the
//! asymptotic theorems consults tags only, so an untagged value is always
//! presumed generic.

use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{Precision, Real};

/// Distance to an integer below which an untagged relation earns a warning.
pub const PROXIMITY: f64 = 1e-6;

#[derive(Clone)]
pub struct Param {
    value: Rational,
    tagged: bool,
    text: String,
}

impl Param {
    /// An exactly known value `numer/denom`.
    pub fn exact(numer: i64, denom: i64) -> Self {
        Self::from_rational(Rational::from((numer, denom)), true)
    }

    pub fn from_rational(value: Rational, tagged: bool) -> Self {
        let text = if tagged {
            value.to_string()
        } else {
            format!("{}", value.to_f64())
        };
        Param { value, tagged, text }
    }

    /// An untagged value taken from the shortest decimal form of `v`.
    pub fn float(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Parse(v.to_string()));
        }
        let mut p = Self::parse_decimal(&format!("{v}"))?;
        p.text = format!("{v}");
        Ok(p)
    }

    /// `p/q` or an integer with a slash-free form such as `3/1` produce a
    /// tagged value; decimal and scientific notation produce an untagged one.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: Integer = num.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            let den: Integer = den.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            if den == 0 {
                return Err(Error::Parse(s.into()));
            }
            let mut p = Self::from_rational(Rational::from((num, den)), true);
            p.text = s.to_string();
            return Ok(p);
        }
        let mut p = Self::parse_decimal(s)?;
        p.text = s.to_string();
        Ok(p)
    }

    fn parse_decimal(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (negative, mantissa) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let digits = format!("{int_part}{frac_part}");
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut value = Rational::from(digits.parse::<Integer>().map_err(|_| bad())?);
        let scale = exponent - frac_part.len() as i32;
        let ten = Integer::from(Integer::u_pow_u(10, scale.unsigned_abs()));
        if scale >= 0 {
            value *= ten;
        } else {
            value /= ten;
        }
        if negative {
            value = -value;
        }
        Ok(Self::from_rational(value, false))
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn is_tagged(&self) -> bool {
        self.tagged
    }

    pub fn real(&self, prec: Precision) -> Real {
        Real::from_rational(&self.value, prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// `self + delta`, keeping the tag (the shift itself is exact).
    pub fn offset(&self, delta: &Rational) -> Param {
        Self::from_rational(Rational::from(&self.value + delta), self.tagged)
    }

    /// The input as it was written, used for echoing parameters back.
    pub fn text(&self) -> &str {
        &self.text
    }
}

impl PartialEq for Param {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.tagged == other.tagged
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tagged {
            write!(f, "{}!", self.value)
        } else {
            write!(f, "{}", self.text)
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn half() -> Rational {
    Rational::from((1, 2))
}

/// Parameters `(λ, α, β)` of the Jacobi-weighted integral.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiParams {
    pub lambda: Param,
    pub alpha: Param,
    pub beta: Param,
}

impl JacobiParams {
    pub fn new(lambda: Param, alpha: Param, beta: Param) -> Result<Self> {
        if *lambda.value() <= 0 {
            return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
        }
        for (name, p) in [("alpha", &alpha), ("beta", &beta)] {
            if *p.value() <= -1 {
                return Err(Error::Domain(format!("{name} must exceed -1, got {p}")));
            }
        }
        Ok(JacobiParams { lambda, alpha, beta })
    }

    pub fn from_f64(lambda: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Param::float(lambda)?, Param::float(alpha)?, Param::float(beta)?)
    }

    /// Same integral with `x → −x`.
    pub fn swapped(&self) -> Self {
        JacobiParams {
            lambda: self.lambda.clone(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// The symmetric weight `α = β = μ − ½` as Gegenbauer parameters.
    pub fn as_gegenbauer(&self) -> Option<GegenbauerParams> {
        if self.alpha.value() != self.beta.value() {
            return None;
        }
        let mu = Param::from_rational(
            self.alpha.value().clone() + half(),
            self.alpha.is_tagged() && self.beta.is_tagged(),
        );
        Some(GegenbauerParams {
            lambda: self.lambda.clone(),
            mu,
        })
    }

    pub fn classify(&self) -> Classification {
        if let Some(g) = self.as_gegenbauer() {
            if self.alpha.is_tagged() && self.beta.is_tagged() {
                return g.classify();
            }
        }
        let (l, a, b) = (&self.lambda, &self.alpha, &self.beta);
        let mut c = Classifier::default();
        let (lo, _) = if a.value() <= b.value() { (a, b) } else { (b, a) };
        let alpha_log_case = c.equals(&[(1, lo), (-1, l)], -1);
        let any = [
            c.integer(&[(1, a), (-1, l)], "alpha - lambda"),
            c.integer(&[(1, b), (-1, l)], "beta - lambda"),
            c.integer(&[(1, a), (-1, b)], "alpha - beta"),
            c.integer(&[(1, a), (-2, l)], "alpha - 2 lambda"),
            c.integer(&[(1, b), (-2, l)], "beta - 2 lambda"),
            c.integer(&[(1, a), (1, b), (-2, l)], "alpha + beta - 2 lambda"),
            c.integer(&[(1, l)], "lambda"),
        ]
        .into_iter()
        .any(|x| x);
        let class = if alpha_log_case {
            ParamClass::AlphaEqLambdaMinus1
        } else if any {
            ParamClass::OtherNonGeneric
        } else {
            ParamClass::Generic
        };
        c.finish(class)
    }
}

/// Parameters `(λ, μ)` of the symmetric weight `(1−x²)^{μ−½}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GegenbauerParams {
    pub lambda: Param,
    pub mu: Param,
}

impl GegenbauerParams {
    pub fn new(lambda: Param, mu: Param) -> Result<Self> {
        if *lambda.value() <= 0 {
            return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
        }
        if *mu.value() <= -half() {
            return Err(Error::Domain(format!("mu must exceed -1/2, got {mu}")));
        }
        Ok(GegenbauerParams { lambda, mu })
    }

    pub fn from_f64(lambda: f64, mu: f64) -> Result<Self> {
        Self::new(Param::float(lambda)?, Param::float(mu)?)
    }

    /// `α = β = μ − ½`.
    pub fn jacobi(&self) -> JacobiParams {
        let a = self.mu.offset(&-half());
        JacobiParams {
            lambda: self.lambda.clone(),
            alpha: a.clone(),
            beta: a,
        }
    }

    pub fn classify(&self) -> Classification {
        let (l, m) = (&self.lambda, &self.mu);
        let mut c = Classifier::default();
        let class = if c.equals(&[(1, m), (-1, l)], -half()) {
            ParamClass::MuEqLambdaMinusHalf
        } else if let Some(k) = c.positive_integer(&[(1, l), (-1, m)], "lambda - mu") {
            ParamClass::LambdaMinusMuIsPosInt(k)
        } else if let Some(k) = c.nonnegative_integer(&[(1, m), (-1, l)], "mu - lambda") {
            ParamClass::MuMinusLambdaIsPosInt(k)
        } else if let Some(k) = c.positive_integer(&[(1, l)], "lambda") {
            if c.integer(&[(2, m)], "2 mu") {
                ParamClass::OtherNonGeneric
            } else {
                ParamClass::LambdaIsPosInt(k)
            }
        } else {
            let any = [
                c.integer(&[(1, m), (-1, l)], "mu + 1 - lambda"),
                c.shifted_integer(&[(1, m), (-2, l)], half(), "mu + 1/2 - 2 lambda"),
                c.shifted_integer(&[(1, m), (-1, l)], half(), "mu + 1/2 - lambda"),
            ]
            .into_iter()
            .any(|x| x);
            if any {
                ParamClass::OtherNonGeneric
            } else {
                ParamClass::Generic
            }
        };
        c.finish(class)
    }
}

/// Parameter regime, decided from exact tags only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamClass {
    Generic,
    /// `min(α, β) = λ − 1`: logarithmic leading term for the Jacobi weight.
    AlphaEqLambdaMinus1,
    /// `μ = λ − ½`: logarithmic leading term for the Gegenbauer weight.
    MuEqLambdaMinusHalf,
    /// `λ − μ = k ≥ 1`: rational generating function.
    LambdaMinusMuIsPosInt(u32),
    /// `μ − λ = k ≥ 0`: finite closed form.
    MuMinusLambdaIsPosInt(u32),
    /// `λ = k ∈ ℕ` with `μ` and `2μ` not integers.
    LambdaIsPosInt(u32),
    OtherNonGeneric,
}

impl ParamClass {
    pub fn is_generic(self) -> bool {
        self == ParamClass::Generic
    }
}

impl fmt::Display for ParamClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamClass::Generic => f.write_str("generic"),
            ParamClass::AlphaEqLambdaMinus1 => f.write_str("alphaEqLambdaMinus1"),
            ParamClass::MuEqLambdaMinusHalf => f.write_str("muEqLambdaMinusHalf"),
            ParamClass::LambdaMinusMuIsPosInt(k) => write!(f, "lambdaMinusMuIsPosInt({k})"),
            ParamClass::MuMinusLambdaIsPosInt(k) => write!(f, "muMinusLambdaIsPosInt({k})"),
            ParamClass::LambdaIsPosInt(k) => write!(f, "lambdaIsPosInt({k})"),
            ParamClass::OtherNonGeneric => f.write_str("otherNonGeneric"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub class: ParamClass,
    /// Untagged relations that sit within [`PROXIMITY`] of an integer.
    pub warnings: Vec<String>,
}

#[derive(Default)]
struct Classifier {
    warnings: Vec<String>,
}

impl Classifier {
    /// Value of `Σ c·p + shift`, or `None` (after a possible warning) when
    /// some parameter is untagged.
    fn decide(&mut self, parts: &[(i64, &Param)], shift: Rational, name: &str) -> Option<Rational> {
        let mut v = shift;
        for (c, p) in parts {
            v += Rational::from(p.value() * *c);
        }
        if parts.iter().all(|(_, p)| p.is_tagged()) {
            return Some(v);
        }
        let x = v.to_f64();
        let gap = (x - x.round()).abs();
        if gap < PROXIMITY {
            let msg = format!(
                "{name} = {x} lies within {PROXIMITY:e} of an integer; untagged input treated as generic"
            );
            if !self.warnings.contains(&msg) {
                self.warnings.push(msg);
            }
        }
        None
    }

    fn integer(&mut self, parts: &[(i64, &Param)], name: &str) -> bool {
        self.shifted_integer(parts, Rational::new(), name)
    }

    fn shifted_integer(&mut self, parts: &[(i64, &Param)], shift: Rational, name: &str) -> bool {
        self.decide(parts, shift, name).is_some_and(|v| v.is_integer())
    }

    /// Exact equality; proximity is reported by the integer checks, which
    /// cover every relation tested here.
    fn equals(&self, parts: &[(i64, &Param)], target: impl Into<Rational>) -> bool {
        if !parts.iter().all(|(_, p)| p.is_tagged()) {
            return false;
        }
        let mut v = Rational::new();
        for (c, p) in parts {
            v += Rational::from(p.value() * *c);
        }
        v == target.into()
    }

    fn positive_integer(&mut self, parts: &[(i64, &Param)], name: &str) -> Option<u32> {
        self.nonnegative_integer(parts, name).filter(|&k| k > 0)
    }

    fn nonnegative_integer(&mut self, parts: &[(i64, &Param)], name: &str) -> Option<u32> {
        let v = self.decide(parts, Rational::new(), name)?;
        if v.is_integer() && v >= 0 {
            v.numer().to_u32()
        } else {
            None
        }
    }

    fn finish(self, class: ParamClass) -> Classification {
        Classification {
            class,
            warnings: self.warnings,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Param {
        Param::parse(s).unwrap()
    }

    #[test]
    fn parsing_sets_tags() {
        assert!(p("1/2").is_tagged());
        assert_eq!(*p("1/2").value(), Rational::from((1, 2)));
        assert!(!p("0.5").is_tagged());
        assert_eq!(*p("0.5").value(), Rational::from((1, 2)));
        assert_eq!(*p("-1.25e-2").value(), Rational::from((-1, 80)));
        assert_eq!(*p("3E2").value(), 300);
        assert!(Param::parse("1/0").is_err());
        assert!(Param::parse("abc").is_err());
        assert!(Param::parse("").is_err());
        assert_eq!(*Param::float(0.3).unwrap().value(), Rational::from((3, 10)));
    }

    #[test]
    fn validation() {
        assert!(JacobiParams::new(p("0"), p("0"), p("0")).is_err());
        assert!(JacobiParams::new(p("1"), p("-1"), p("0")).is_err());
        assert!(GegenbauerParams::new(p("1"), p("-1/2")).is_err());
        assert!(GegenbauerParams::new(p("1"), p("-0.49")).is_ok());
    }

    #[test]
    fn untagged_points_are_generic() {
        let g = GegenbauerParams::new(p("1"), p("0.5")).unwrap();
        let c = g.classify();
        assert_eq!(c.class, ParamClass::Generic);
        assert!(!c.warnings.is_empty());
        let j = JacobiParams::from_f64(0.7, 0.3, 1.2).unwrap();
        let c = j.classify();
        assert_eq!(c.class, ParamClass::Generic);
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn gegenbauer_classes() {
        let cls = |l: &str, m: &str| GegenbauerParams::new(p(l), p(m)).unwrap().classify().class;
        assert_eq!(cls("1/1", "1/2"), ParamClass::MuEqLambdaMinusHalf);
        assert_eq!(cls("1/1", "0/1"), ParamClass::LambdaMinusMuIsPosInt(1));
        assert_eq!(cls("5/2", "1/2"), ParamClass::LambdaMinusMuIsPosInt(2));
        assert_eq!(cls("1/2", "7/2"), ParamClass::MuMinusLambdaIsPosInt(3));
        assert_eq!(cls("7/10", "7/10"), ParamClass::MuMinusLambdaIsPosInt(0));
        assert_eq!(cls("2/1", "3/10"), ParamClass::LambdaIsPosInt(2));
        assert_eq!(cls("2/1", "0.3"), ParamClass::LambdaIsPosInt(2));
        assert_eq!(cls("2/1", "5/2"), ParamClass::OtherNonGeneric);
        assert_eq!(cls("7/10", "9/10"), ParamClass::OtherNonGeneric);
        assert_eq!(cls("7/10", "13/10"), ParamClass::Generic);
    }

    #[test]
    fn jacobi_classes() {
        let cls = |l: &str, a: &str, b: &str| JacobiParams::new(p(l), p(a), p(b)).unwrap().classify().class;
        assert_eq!(cls("1/1", "0/1", "1/2"), ParamClass::AlphaEqLambdaMinus1);
        assert_eq!(cls("1/1", "1/2", "0/1"), ParamClass::AlphaEqLambdaMinus1);
        assert_eq!(cls("7/10", "3/10", "6/5"), ParamClass::Generic);
        assert_eq!(cls("7/10", "3/10", "13/10"), ParamClass::OtherNonGeneric);
        // symmetric weight falls through to the Gegenbauer regimes
        assert_eq!(cls("1/1", "0/1", "0/1"), ParamClass::MuEqLambdaMinusHalf);
        assert_eq!(cls("1/2", "0", "0"), ParamClass::Generic);
    }

    #[test]
    fn gegenbauer_to_jacobi_keeps_tags() {
        let g = GegenbauerParams::new(p("1"), p("3/2")).unwrap();
        let j = g.jacobi();
        assert!(j.alpha.is_tagged());
        assert_eq!(*j.alpha.value(), 1);
        assert_eq!(j.as_gegenbauer().unwrap().mu, g.mu);
    }
}
