use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision, counted in significant decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 40;
    /// Below this the cancellation guard would leave nothing to work with.
    pub const MIN_DIGITS: u32 = 16;

    pub fn digits(digits: u32) -> Self {
        Precision {
            digits: digits.max(Self::MIN_DIGITS),
        }
    }

    /// The largest digit count fully representable in `bits` bits.
    pub fn from_bits(bits: u32) -> Self {
        Self::digits(((bits.saturating_sub(2)) as f64 / LOG2_10).floor() as u32)
    }

    pub fn decimal_digits(self) -> u32 {
        self.digits
    }

    pub fn bits(self) -> u32 {
        (self.digits as f64 * LOG2_10).ceil() as u32 + 2
    }

    pub fn widened(self, extra: u32) -> Self {
        Self::digits(self.digits + extra)
    }

    pub fn max(self, other: Self) -> Self {
        if self.digits >= other.digits {
            self
        } else {
            other
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::digits(Self::DEFAULT_DIGITS)
    }
}

/// Extended-precision real number backed by MPFR.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Real(Float);

impl Real {
    pub fn zero(prec: Precision) -> Self {
        Real(Float::new(prec.bits()))
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        Real(Float::with_val(prec.bits(), v))
    }

    /// Exact conversion of the binary value of `v`.
    pub fn from_f64(v: f64, prec: Precision) -> Self {
        Real(Float::with_val(prec.bits().max(53), v))
    }

    pub fn from_rational(v: &Rational, prec: Precision) -> Self {
        Real(Float::with_val(prec.bits(), v))
    }

    pub fn from_integer(v: &Integer, prec: Precision) -> Self {
        Real(Float::with_val(prec.bits(), v))
    }

    /// Parses a decimal literal (`"0.25"`, `"-1.5e-3"`) rounded to `prec`.
    pub fn parse(s: &str, prec: Precision) -> Result<Self> {
        let parsed = Float::parse(s.trim()).map_err(|_| Error::Parse(s.to_string()))?;
        Ok(Real(Float::with_val(prec.bits(), parsed)))
    }

    pub fn pi(prec: Precision) -> Self {
        Real(Float::with_val(prec.bits(), Constant::Pi))
    }

    pub fn euler_gamma(prec: Precision) -> Self {
        Real(Float::with_val(prec.bits(), Constant::Euler))
    }

    pub fn ln2(prec: Precision) -> Self {
        Real(Float::with_val(prec.bits(), Constant::Log2))
    }

    pub fn sqrt_pi(prec: Precision) -> Self {
        Self::pi(prec).sqrt()
    }

    pub(crate) fn from_float(f: Float) -> Self {
        Real(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn prec_bits(&self) -> u32 {
        self.0.prec()
    }

    pub fn precision(&self) -> Precision {
        Precision::from_bits(self.0.prec())
    }

    /// Same value rounded (or exactly extended) to `prec`.
    pub fn with_precision(&self, prec: Precision) -> Self {
        Real(Float::with_val(prec.bits(), &self.0))
    }

    /// Same value at the precision of `other`, when that is wider.
    pub fn widen_to(&self, other: &Real) -> Self {
        if other.0.prec() > self.0.prec() {
            Real(Float::with_val(other.0.prec(), &self.0))
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `Some(k)` when the value is exactly the integer `k` and fits in `i64`.
    pub fn to_i64_exact(&self) -> Option<i64> {
        if !self.0.is_integer() {
            return None;
        }
        self.0.to_integer().and_then(|i| i.to_i64())
    }

    /// True for exact non-positive integers (the poles of the gamma function).
    pub fn is_nonpositive_integer(&self) -> bool {
        self.0.is_zero() || (self.0.is_integer() && self.0.is_sign_negative())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.0.to_rational()
    }

    pub fn abs(&self) -> Self {
        Real(self.0.clone().abs())
    }

    pub fn exp(&self) -> Self {
        Real(self.0.clone().exp())
    }

    pub fn ln(&self) -> Self {
        Real(self.0.clone().ln())
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.clone().sqrt())
    }

    pub fn recip(&self) -> Self {
        Real(self.0.clone().recip())
    }

    pub fn floor(&self) -> Self {
        Real(self.0.clone().floor())
    }

    pub fn square(&self) -> Self {
        Real(self.0.clone().square())
    }

    /// `self^exponent` for real exponents (`self > 0`).
    pub fn powr(&self, exponent: &Real) -> Self {
        let prec = self.0.prec().max(exponent.0.prec());
        Real(Float::with_val(prec, (&self.0).pow(&exponent.0)))
    }

    pub fn powi(&self, exponent: i64) -> Self {
        Real(Float::with_val(self.0.prec(), (&self.0).pow(exponent)))
    }

    /// `base^exponent` evaluated at `prec`.
    pub fn int_pow(base: i64, exponent: &Real) -> Self {
        let b = Float::with_val(exponent.0.prec(), base);
        Real(b.pow(&exponent.0))
    }

    /// Decimal logarithm of `|self|` as a double; `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (mantissa, exp) = self.0.to_f64_exp();
        (mantissa.abs().log2() + exp as f64) / LOG2_10
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Scientific decimal string with `digits` significant digits, or with
    /// enough digits to round-trip exactly when `digits` is `None`.
    pub fn to_decimal_string(&self, digits: Option<u32>) -> String {
        if !self.0.is_finite() {
            return self.0.to_string();
        }
        let digits = digits.map(|d| d.max(1) as usize);
        self.0.to_string_radix_round(10, digits, Round::Nearest)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal_string(Some(self.precision().decimal_digits())))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p as u32).unwrap_or(self.precision().decimal_digits());
        f.write_str(&self.to_decimal_string(Some(digits)))
    }
}

macro_rules! real_binop {
    ($Trait:ident, $method:ident, $Assign:ident, $assign:ident) => {
        impl<'a, 'b> $Trait<&'b Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'b Real) -> Real {
                let prec = self.0.prec().max(rhs.0.prec());
                Real(Float::with_val(prec, $Trait::$method(&self.0, &rhs.0)))
            }
        }
        impl<'b> $Trait<&'b Real> for Real {
            type Output = Real;
            fn $method(mut self, rhs: &'b Real) -> Real {
                $Assign::$assign(&mut self, rhs);
                self
            }
        }
        impl<'a> $Trait<Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                $Trait::$method(self, &rhs)
            }
        }
        impl $Trait<Real> for Real {
            type Output = Real;
            fn $method(mut self, rhs: Real) -> Real {
                $Assign::$assign(&mut self, &rhs);
                self
            }
        }
        impl<'b> $Assign<&'b Real> for Real {
            fn $assign(&mut self, rhs: &'b Real) {
                if rhs.0.prec() > self.0.prec() {
                    self.0.set_prec(rhs.0.prec());
                }
                $Assign::$assign(&mut self.0, &rhs.0);
            }
        }
        impl $Assign<Real> for Real {
            fn $assign(&mut self, rhs: Real) {
                $Assign::$assign(self, &rhs);
            }
        }
        real_binop!(@scalar $Trait, $method, $Assign, $assign, i64);
        real_binop!(@scalar $Trait, $method, $Assign, $assign, f64);
    };
    (@scalar $Trait:ident, $method:ident, $Assign:ident, $assign:ident, $S:ty) => {
        impl<'a> $Trait<$S> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: $S) -> Real {
                Real(Float::with_val(self.0.prec(), $Trait::$method(&self.0, rhs)))
            }
        }
        impl $Trait<$S> for Real {
            type Output = Real;
            fn $method(mut self, rhs: $S) -> Real {
                $Assign::$assign(&mut self.0, rhs);
                self
            }
        }
        impl<'a> $Trait<&'a Real> for $S {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                Real(Float::with_val(rhs.0.prec(), $Trait::$method(self, &rhs.0)))
            }
        }
        impl $Trait<Real> for $S {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                $Trait::$method(self, &rhs)
            }
        }
        impl $Assign<$S> for Real {
            fn $assign(&mut self, rhs: $S) {
                $Assign::$assign(&mut self.0, rhs);
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign);
real_binop!(Sub, sub, SubAssign, sub_assign);
real_binop!(Mul, mul, MulAssign, mul_assign);
real_binop!(Div, div, DivAssign, div_assign);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(Float::with_val(self.0.prec(), -&self.0))
    }
}

impl PartialEq<i64> for Real {
    fn eq(&self, other: &i64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i64> for Real {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_bits_cover_digits() {
        let p = Precision::digits(40);
        assert!(p.bits() as f64 >= 40.0 * LOG2_10);
        assert_eq!(Precision::from_bits(p.bits()).decimal_digits(), 40);
        assert_eq!(Precision::digits(3).decimal_digits(), Precision::MIN_DIGITS);
    }

    #[test]
    fn mixed_precision_takes_the_wider_operand() {
        let a = Real::from_i64(1, Precision::digits(20));
        let b = Real::from_i64(3, Precision::digits(60));
        let q = &a / &b;
        assert_eq!(q.prec_bits(), Precision::digits(60).bits());
        let mut c = a.clone();
        c /= &b;
        assert_eq!(c, q);
    }

    #[test]
    fn scalar_operators() {
        let p = Precision::default();
        let x = Real::from_i64(3, p);
        assert_eq!(&x * 2i64, 6i64);
        assert_eq!(1i64 - &x, -2i64);
        assert_eq!(&x / 0.5, 6i64);
        assert!(x > 2i64);
    }

    #[test]
    fn parse_and_round_trip() {
        let p = Precision::digits(45);
        let third = Real::one(p) / 3i64;
        let s = third.to_decimal_string(None);
        assert_eq!(Real::parse(&s, p).unwrap(), third);
        assert!(Real::parse("abc", p).is_err());
        let small = Real::parse("-1.5e-3", p).unwrap();
        assert!((small * 1000i64 + 1.5).abs() < 1e-40);
    }

    #[test]
    fn log10_abs_tracks_magnitude() {
        let p = Precision::default();
        let x = Real::parse("1e-300", p).unwrap();
        assert!((x.log10_abs() + 300.0).abs() < 1e-9);
        assert_eq!(Real::zero(p).log10_abs(), f64::NEG_INFINITY);
    }

    #[test]
    fn nonpositive_integer_detection() {
        let p = Precision::default();
        assert!(Real::from_i64(0, p).is_nonpositive_integer());
        assert!(Real::from_i64(-3, p).is_nonpositive_integer());
        assert!(!Real::from_i64(2, p).is_nonpositive_integer());
        assert!(!Real::from_f64(-0.5, p).is_nonpositive_integer());
    }
}
