//! Complex elementary functions over any [`Real`].
//!
//! `num_complex` only provides transcendental functions for `Float`
//! component types, so the handful needed here are written against `Real`.

use num_complex::Complex;
use num_rational::Ratio;

use super::{PrecisionContext, Real};
use crate::error::{Error, Result};

pub fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

pub fn from_int<T: Real>(v: i64, ctx: &PrecisionContext) -> Complex<T> {
    real(T::from_int(v, ctx))
}

/// Multiply by the real scalar `k`.
pub fn scale<T: Real>(z: &Complex<T>, k: &T) -> Complex<T> {
    Complex::new(z.re.clone() * k, z.im.clone() * k)
}

pub fn abs<T: Real>(z: &Complex<T>) -> T {
    (z.re.clone() * &z.re + z.im.clone() * &z.im).sqrt()
}

/// `e^{i theta}`.
pub fn cis<T: Real>(theta: &T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

pub fn exp<T: Real>(z: &Complex<T>) -> Complex<T> {
    let m = z.re.exp();
    Complex::new(m.clone() * z.im.cos(), m * z.im.sin())
}

pub fn ln<T: Real>(z: &Complex<T>) -> Result<Complex<T>> {
    if z.re.is_zero() && z.im.is_zero() {
        return Err(Error::domain("log of zero"));
    }
    Ok(Complex::new(abs(z).ln(), z.im.atan2(&z.re)))
}

pub fn sqrt<T: Real>(z: &Complex<T>, ctx: &PrecisionContext) -> Complex<T> {
    if z.im.is_zero() && z.re >= T::zero() {
        return real(z.re.sqrt());
    }
    let r = abs(z);
    let half = T::from_ratio(1, 2, ctx);
    let re = ((r.clone() + &z.re) * &half).sqrt();
    let im_mag = ((r - &z.re) * &half).sqrt();
    let im = if z.im < T::zero() { -im_mag } else { im_mag };
    Complex::new(re, im)
}

pub fn div<T: Real>(a: &Complex<T>, b: &Complex<T>) -> Result<Complex<T>> {
    if b.re.is_zero() && b.im.is_zero() {
        return Err(Error::domain("division by zero"));
    }
    Ok(a.clone() / b.clone())
}

/// `x^{-s} = exp(-s ln x)` given `ln x`.
pub fn real_pow_neg<T: Real>(ln_x: &T, s: &Complex<T>) -> Complex<T> {
    if s.im.is_zero() {
        return real((-(s.re.clone() * ln_x)).exp());
    }
    let m = (-(s.re.clone() * ln_x)).exp();
    let phase = -(s.im.clone() * ln_x);
    Complex::new(m.clone() * phase.cos(), m * phase.sin())
}

/// `e^{2 pi i r}` for an exact rational `r`, reduced so that the quarter
/// turns come out exact.
pub fn root_of_unity<T: Real>(r: Ratio<i64>, ctx: &PrecisionContext) -> Complex<T> {
    let (num, den) = (r.numer().rem_euclid(*r.denom()), *r.denom());
    // Work with num/den in [0, 1); fold onto the first quadrant.
    let four_num = 4 * num;
    if four_num % den == 0 {
        return match four_num / den {
            0 => from_int(1, ctx),
            1 => Complex::new(T::zero(), T::from_int(1, ctx)),
            2 => from_int(-1, ctx),
            _ => Complex::new(T::zero(), T::from_int(-1, ctx)),
        };
    }
    let theta = T::pi(ctx) * T::from_ratio(2 * num, den, ctx);
    cis(&theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigReal;
    use num_traits::Zero;

    #[test]
    fn quarter_turns_exact() {
        let ctx = PrecisionContext::default();
        let z: Complex<BigReal> = root_of_unity(Ratio::new(3, 4), &ctx);
        assert!(z.re.is_zero());
        assert_eq!(z.im, -1.0);
        let w: Complex<BigReal> = root_of_unity(Ratio::new(-1, 2), &ctx);
        assert_eq!(w.re, -1.0);
    }

    #[test]
    fn exp_ln_roundtrip_f64() {
        let ctx = PrecisionContext::default();
        let z = Complex::new(0.3_f64, -1.7);
        let back = exp(&ln(&z).unwrap());
        assert!((back - z).norm() < 1e-15);
        let r = sqrt(&Complex::new(-4.0_f64, 0.0), &ctx);
        assert!((r - Complex::new(0.0, 2.0)).norm() < 1e-15);
        assert!(ln(&Complex::new(0.0_f64, 0.0)).is_err());
    }
}
