//! Rational reconstruction by continued fractions.

use num_rational::Ratio;

use crate::arith::{PrecisionContext, Real};

/// The first continued-fraction convergent `p/q` of `x` with `q ≤ max_den`
/// and `|x - p/q| < 2^{-bits/3} / q^2`.
pub fn rational_recover<T: Real>(x: &T, max_den: u64, ctx: &PrecisionContext) -> Option<Ratio<i64>> {
    if max_den == 0 || !x.is_finite() {
        return None;
    }
    let bits = T::mantissa_bits(ctx);
    let tol = T::pow2(-((bits / 3) as i32), ctx);
    let one = T::from_int(1, ctx);
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut rest = x.clone();
    for _ in 0..200 {
        let a = rest.floor();
        let ai = a.round_to_i128()?;
        let p = ai.checked_mul(p1)?.checked_add(p0)?;
        let q = ai.checked_mul(q1)?.checked_add(q0)?;
        if q > i128::from(max_den) {
            return None;
        }
        let approx = T::from_big_int(&p.into(), ctx) / T::from_big_int(&q.into(), ctx);
        let q2 = T::from_big_int(&(q * q).into(), ctx);
        if (x.clone() - approx).abs() * q2 < tol {
            return Some(Ratio::new(i64::try_from(p).ok()?, i64::try_from(q).ok()?));
        }
        let frac = rest - a;
        if frac.is_zero() {
            return None;
        }
        rest = one.clone() / frac;
        (p0, q0, p1, q1) = (p1, q1, p, q);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigReal;

    #[test]
    fn examples() {
        let ctx = PrecisionContext::new(256).unwrap();
        let half = BigReal::from_ratio(1, 2, &ctx);
        assert_eq!(rational_recover(&half, 10, &ctx), Some(Ratio::new(1, 2)));
        let neg = BigReal::from_ratio(-355, 113, &ctx);
        assert_eq!(rational_recover(&neg, 1000, &ctx), Some(Ratio::new(-355, 113)));
        let int = BigReal::from_int(7, &ctx);
        assert_eq!(rational_recover(&int, 1, &ctx), Some(Ratio::from_integer(7)));
        assert_eq!(rational_recover(&BigReal::euler_gamma(&ctx), 1_000_000, &ctx), None);
        assert_eq!(rational_recover(&BigReal::from_ratio(1, 7, &ctx), 5, &ctx), None);
    }
}
