//! The scalar abstraction shared by all numerical code.
//!
//! Every algorithm in this crate is written once against [`Real`]; the
//! concrete instantiations are `f64`/`f32` (fast, machine precision) and
//! [`BigReal`](super::BigReal) (MPFR-backed, precision taken from the
//! [`PrecisionContext`]).

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{
    Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

use super::PrecisionContext;

pub trait Real:
    Num
    + Clone
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
    + Sum
{
    /// Mantissa bits actually carried by values built from `ctx`.
    fn mantissa_bits(ctx: &PrecisionContext) -> u32;

    fn from_int(v: i64, ctx: &PrecisionContext) -> Self;
    fn from_big_int(v: &BigInt, ctx: &PrecisionContext) -> Self;
    fn from_big_rational(r: &BigRational, ctx: &PrecisionContext) -> Self;
    /// Exact conversion of the binary value `v` (then rounded to context).
    fn from_f64(v: f64, ctx: &PrecisionContext) -> Self;
    /// Parse a decimal literal such as `-1.25e-3`.
    fn parse_decimal(s: &str, ctx: &PrecisionContext) -> Option<Self>;

    fn pi(ctx: &PrecisionContext) -> Self;
    fn euler_gamma(ctx: &PrecisionContext) -> Self;

    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn floor(&self) -> Self;
    /// Multiply by `2^e` exactly.
    fn mul_pow2(&self, e: i32) -> Self;
    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;
    /// Nearest integer, if it fits.
    fn round_to_i128(&self) -> Option<i128>;
    /// Scientific decimal rendering with `digits` significant digits.
    fn to_decimal(&self, digits: usize) -> String;

    fn from_ratio(num: i64, den: i64, ctx: &PrecisionContext) -> Self {
        Self::from_int(num, ctx) / Self::from_int(den, ctx)
    }

    /// `2^-k` at context precision.
    fn pow2(k: i32, ctx: &PrecisionContext) -> Self {
        Self::from_int(1, ctx).mul_pow2(k)
    }

    /// Unit roundoff of values built from `ctx`.
    fn epsilon(ctx: &PrecisionContext) -> Self {
        Self::pow2(-(Self::mantissa_bits(ctx) as i32), ctx)
    }

    fn powi(&self, n: i32) -> Self {
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        if n < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

macro_rules! impl_real_for_float {
    ($t:ty, $mant:expr, $pi:expr, $gamma:expr) => {
        impl Real for $t {
            fn mantissa_bits(_ctx: &PrecisionContext) -> u32 {
                $mant
            }
            fn from_int(v: i64, _ctx: &PrecisionContext) -> Self {
                v as $t
            }
            fn from_big_int(v: &BigInt, _ctx: &PrecisionContext) -> Self {
                v.to_f64().unwrap_or(f64::NAN) as $t
            }
            fn from_big_rational(r: &BigRational, _ctx: &PrecisionContext) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $t
            }
            fn from_f64(v: f64, _ctx: &PrecisionContext) -> Self {
                v as $t
            }
            fn parse_decimal(s: &str, _ctx: &PrecisionContext) -> Option<Self> {
                s.trim().parse::<$t>().ok()
            }
            fn pi(_ctx: &PrecisionContext) -> Self {
                $pi
            }
            fn euler_gamma(_ctx: &PrecisionContext) -> Self {
                $gamma
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn sin(&self) -> Self {
                <$t>::sin(*self)
            }
            fn cos(&self) -> Self {
                <$t>::cos(*self)
            }
            fn atan2(&self, x: &Self) -> Self {
                <$t>::atan2(*self, *x)
            }
            fn sqrt(&self) -> Self {
                <$t>::sqrt(*self)
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn floor(&self) -> Self {
                <$t>::floor(*self)
            }
            fn mul_pow2(&self, e: i32) -> Self {
                *self * (2.0 as $t).powi(e)
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }
            fn round_to_i128(&self) -> Option<i128> {
                let r = <$t>::round(*self);
                if r.is_finite() && (r.abs() as f64) < 1.7e38 {
                    Some(r as i128)
                } else {
                    None
                }
            }
            fn to_decimal(&self, digits: usize) -> String {
                format!("{:.*e}", digits.saturating_sub(1), self)
            }
        }
    };
}

impl_real_for_float!(f64, 53, std::f64::consts::PI, 0.577_215_664_901_532_9_f64);
impl_real_for_float!(f32, 24, std::f32::consts::PI, 0.577_215_7_f32);
