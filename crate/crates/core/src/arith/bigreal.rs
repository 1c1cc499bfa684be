//! MPFR-backed real scalar.
//!
//! Arithmetic between two values rounds to the larger of the two operand
//! precisions. Small exact constants (`Zero::zero`, `One::one`, integers
//! produced by `num_traits`) are created at 64 bits and therefore never
//! degrade a working-precision operand they are combined with.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{
    Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign,
};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use rug::float::{Constant, Round};
use rug::integer::Order;
use rug::ops::AssignRound;
use rug::{Float, Integer, Rational};

use super::{PrecisionContext, Real};

const SMALL_PREC: u32 = 64;
const PARSE_PREC: u32 = 512;

#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigReal(Float);

impl BigReal {
    pub fn from_float(f: Float) -> Self {
        BigReal(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Round to a (usually lower) precision.
    pub fn rounded_to(&self, prec: u32) -> Self {
        BigReal(Float::with_val(prec, &self.0))
    }

    /// Units in the last place of `self` at precision `prec`.
    pub fn ulp(&self, prec: u32) -> BigReal {
        match self.0.get_exp() {
            Some(e) => BigReal(Float::with_val(prec, 1) << (e - prec as i32)),
            None => BigReal(Float::with_val(prec, 0)),
        }
    }
}

pub fn big_int_to_rug(v: &BigInt) -> Integer {
    let (sign, digits) = v.to_u32_digits();
    let mag = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

fn binary_prec(a: &Float, b: &Float) -> u32 {
    a.prec().max(b.prec())
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident, $op:tt) => {
        impl<'a> $tr<&'a BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &'a BigReal) -> BigReal {
                BigReal(Float::with_val(binary_prec(&self.0, &rhs.0), &self.0 $op &rhs.0))
            }
        }
        impl<'a> $tr<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $m(mut self, rhs: &'a BigReal) -> BigReal {
                self.$am(rhs);
                self
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $m(mut self, rhs: BigReal) -> BigReal {
                self.$am(&rhs);
                self
            }
        }
        impl<'a> $atr<&'a BigReal> for BigReal {
            fn $am(&mut self, rhs: &'a BigReal) {
                if self.0.prec() < rhs.0.prec() {
                    self.0.set_prec(rhs.0.prec());
                }
                self.0.$am(&rhs.0);
            }
        }
        impl $atr<BigReal> for BigReal {
            fn $am(&mut self, rhs: BigReal) {
                self.$am(&rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, +);
binop!(Sub, sub, SubAssign, sub_assign, -);
binop!(Mul, mul, MulAssign, mul_assign, *);
binop!(Div, div, DivAssign, div_assign, /);

impl Rem for BigReal {
    type Output = BigReal;
    fn rem(self, rhs: BigReal) -> BigReal {
        let prec = binary_prec(&self.0, &rhs.0);
        let mut r = Float::new(prec);
        r.assign_round(&self.0 % &rhs.0, Round::Nearest);
        BigReal(r)
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(Float::with_val(self.0.prec(), -&self.0))
    }
}

impl Zero for BigReal {
    fn zero() -> Self {
        BigReal(Float::with_val(SMALL_PREC, 0))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigReal {
    fn one() -> Self {
        BigReal(Float::with_val(SMALL_PREC, 1))
    }
}

impl Num for BigReal {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        let parsed = Float::parse_radix(s, radix as i32).map_err(|e| e.to_string())?;
        Ok(BigReal(Float::with_val(PARSE_PREC, parsed)))
    }
}

impl Sum for BigReal {
    fn sum<I: Iterator<Item = BigReal>>(iter: I) -> BigReal {
        iter.fold(BigReal::zero(), |acc, x| acc + x)
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({}, prec={})", self.to_decimal(30), self.0.prec())
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| {
            (f64::from(self.0.prec()) * std::f64::consts::LOG10_2).ceil() as usize
        });
        f.write_str(&self.to_decimal(digits.max(1)))
    }
}

impl PartialEq<f64> for BigReal {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for BigReal {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl Real for BigReal {
    fn mantissa_bits(ctx: &PrecisionContext) -> u32 {
        ctx.working_bits()
    }

    fn from_int(v: i64, ctx: &PrecisionContext) -> Self {
        BigReal(Float::with_val(ctx.working_bits(), v))
    }

    fn from_big_int(v: &BigInt, ctx: &PrecisionContext) -> Self {
        BigReal(Float::with_val(ctx.working_bits(), big_int_to_rug(v)))
    }

    fn from_big_rational(r: &BigRational, ctx: &PrecisionContext) -> Self {
        let q = Rational::from((big_int_to_rug(r.numer()), big_int_to_rug(r.denom())));
        BigReal(Float::with_val(ctx.working_bits(), &q))
    }

    fn from_ratio(num: i64, den: i64, ctx: &PrecisionContext) -> Self {
        let q = Rational::from((num, den));
        BigReal(Float::with_val(ctx.working_bits(), &q))
    }

    fn from_f64(v: f64, ctx: &PrecisionContext) -> Self {
        BigReal(Float::with_val(ctx.working_bits(), v))
    }

    fn parse_decimal(s: &str, ctx: &PrecisionContext) -> Option<Self> {
        let parsed = Float::parse(s.trim()).ok()?;
        Some(BigReal(Float::with_val(ctx.working_bits(), parsed)))
    }

    fn pi(ctx: &PrecisionContext) -> Self {
        BigReal(Float::with_val(ctx.working_bits(), Constant::Pi))
    }

    fn euler_gamma(ctx: &PrecisionContext) -> Self {
        BigReal(Float::with_val(ctx.working_bits(), Constant::Euler))
    }

    fn exp(&self) -> Self {
        BigReal(self.0.clone().exp())
    }

    fn ln(&self) -> Self {
        BigReal(self.0.clone().ln())
    }

    fn sin(&self) -> Self {
        BigReal(self.0.clone().sin())
    }

    fn cos(&self) -> Self {
        BigReal(self.0.clone().cos())
    }

    fn atan2(&self, x: &Self) -> Self {
        BigReal(Float::with_val(
            binary_prec(&self.0, &x.0),
            self.0.atan2_ref(&x.0),
        ))
    }

    fn sqrt(&self) -> Self {
        BigReal(self.0.clone().sqrt())
    }

    fn abs(&self) -> Self {
        BigReal(self.0.clone().abs())
    }

    fn floor(&self) -> Self {
        BigReal(self.0.clone().floor())
    }

    fn mul_pow2(&self, e: i32) -> Self {
        BigReal(self.0.clone() << e)
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn round_to_i128(&self) -> Option<i128> {
        let r = self.0.clone().round();
        r.to_integer().and_then(|i| i.to_i128())
    }

    fn to_decimal(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        self.0.to_string_radix(10, Some(digits.max(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(256).unwrap()
    }

    #[test]
    fn mixed_precision_takes_max() {
        let third = BigReal::from_ratio(1, 3, &ctx());
        let one = BigReal::one();
        let sum = one + &third;
        assert_eq!(sum.prec(), ctx().working_bits());
        let back = sum - BigReal::one();
        assert!((back - &third).abs() <= third.ulp(ctx().working_bits()).mul_pow2(2));
    }

    #[test]
    fn exact_small_integers_and_dyadics() {
        let c = ctx();
        let x = BigReal::from_ratio(3, 8, &c);
        assert_eq!(x, 0.375);
        assert_eq!(BigReal::from_int(-7, &c).round_to_i128(), Some(-7));
        assert_eq!(BigReal::pow2(-3, &c), 0.125);
    }

    #[test]
    fn exp_zero_is_one() {
        let c = ctx();
        assert_eq!(BigReal::from_int(0, &c).exp(), 1.0);
    }

    #[test]
    fn atan2_diagonal_is_quarter_pi() {
        let c = ctx();
        let one = BigReal::from_int(1, &c);
        let q = one.atan2(&one);
        let expect = BigReal::pi(&c).mul_pow2(-2);
        assert!((q - &expect).abs() <= expect.ulp(c.working_bits()).mul_pow2(2));
    }

    #[test]
    fn big_rational_conversion() {
        let c = ctx();
        let r = BigRational::new(BigInt::from(-22), BigInt::from(7));
        let x = BigReal::from_big_rational(&r, &c);
        let y = BigReal::from_ratio(-22, 7, &c);
        assert_eq!(x, y);
    }

    #[test]
    fn decimal_rendering() {
        let c = ctx();
        let s = BigReal::from_ratio(1, 4, &c).to_decimal(5);
        assert!(s.starts_with("2.5000"), "{s}");
        assert_eq!(BigReal::zero().to_decimal(10), "0");
    }
}
