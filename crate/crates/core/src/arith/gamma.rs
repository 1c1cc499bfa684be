//! `log Γ`, `Γ` and `ψ` for positive real arguments.
//!
//! The argument is pushed up by the recurrence `Γ(x+1) = x Γ(x)` until it
//! passes a precision-dependent threshold, where the Stirling series is
//! summed until its terms drop below the working epsilon.

use super::bernoulli::scaled_even;
use super::{PrecisionContext, Real};
use crate::error::{Error, Result};

/// Shift threshold: the Stirling remainder behaves like `e^{-2 pi x}`, so
/// `x > 0.11 * bits` suffices; leave some headroom.
fn stirling_threshold<T: Real>(ctx: &PrecisionContext) -> i64 {
    (0.15 * f64::from(T::mantissa_bits(ctx))).ceil() as i64 + 10
}

fn check_positive<T: Real>(x: &T, what: &str) -> Result<()> {
    if !(x > &T::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("{what} requires x > 0, got {x}")));
    }
    Ok(())
}

/// Number of unit steps needed to bring `x` past the threshold.
fn shift_count<T: Real>(x: &T, ctx: &PrecisionContext) -> i64 {
    let threshold = stirling_threshold::<T>(ctx);
    let xf = x.to_f64();
    if xf >= threshold as f64 {
        0
    } else {
        threshold - xf.floor() as i64
    }
}

pub fn log_gamma<T: Real>(x: &T, ctx: &PrecisionContext) -> Result<T> {
    check_positive(x, "log_gamma")?;
    let shift = shift_count(x, ctx);
    let mut prod = T::from_int(1, ctx);
    let mut y = x.clone();
    for _ in 0..shift {
        prod *= &y;
        y += T::from_int(1, ctx);
    }
    let eps = T::epsilon(ctx);
    let half = T::from_ratio(1, 2, ctx);
    let two_pi = T::pi(ctx).mul_pow2(1);
    let ln_y = y.ln();
    let mut sum = (y.clone() - &half) * &ln_y - &y + half * two_pi.ln();
    // sum_k B_{2k} / (2k (2k-1) y^{2k-1}) = sum_k (2k-2)! * [B_{2k}/(2k)!] / y^{2k-1}
    let inv_y2 = T::from_int(1, ctx) / (y.clone() * &y);
    let mut ypow = T::from_int(1, ctx) / &y;
    let mut fact = T::from_int(1, ctx); // (2k-2)!
    for k in 1..2000usize {
        if k >= 2 {
            fact *= T::from_int(((2 * k - 3) * (2 * k - 2)) as i64, ctx);
        }
        let term = T::from_big_rational(&scaled_even(k), ctx) * &fact * &ypow;
        sum += &term;
        if term.abs() < eps.clone() * sum.abs().max_of(T::from_int(1, ctx)) {
            break;
        }
        ypow *= &inv_y2;
    }
    Ok(sum - prod.ln())
}

pub fn gamma<T: Real>(x: &T, ctx: &PrecisionContext) -> Result<T> {
    Ok(log_gamma(x, ctx)?.exp())
}

pub fn digamma<T: Real>(x: &T, ctx: &PrecisionContext) -> Result<T> {
    check_positive(x, "digamma")?;
    let shift = shift_count(x, ctx);
    let mut correction = T::zero();
    let mut y = x.clone();
    for _ in 0..shift {
        correction += T::from_int(1, ctx) / &y;
        y += T::from_int(1, ctx);
    }
    let eps = T::epsilon(ctx);
    let mut sum = y.ln() - T::from_int(1, ctx) / (y.clone().mul_pow2(1));
    // - sum_k B_{2k} / (2k y^{2k}) = - sum_k (2k-1)! [B_{2k}/(2k)!] / y^{2k}
    let inv_y2 = T::from_int(1, ctx) / (y.clone() * &y);
    let mut ypow = inv_y2.clone();
    let mut fact = T::from_int(1, ctx); // (2k-1)!
    for k in 1..2000usize {
        if k >= 2 {
            fact *= T::from_int(((2 * k - 2) * (2 * k - 1)) as i64, ctx);
        }
        let term = T::from_big_rational(&scaled_even(k), ctx) * &fact * &ypow;
        sum -= &term;
        if term.abs() < eps.clone() * sum.abs().max_of(T::from_int(1, ctx)) {
            break;
        }
        ypow *= &inv_y2;
    }
    Ok(sum - correction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigReal;
    use rug::Float;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(256).unwrap()
    }

    fn rel_err(a: &BigReal, b: &BigReal) -> f64 {
        ((a.clone() - b).abs() / b.abs()).to_f64()
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let c = ctx();
        let half = BigReal::from_ratio(1, 2, &c);
        let g = gamma(&half, &c).unwrap();
        let sqrt_pi = BigReal::pi(&c).sqrt();
        assert!(rel_err(&g, &sqrt_pi) < 2f64.powi(-256));
        assert!(g.to_decimal(11).starts_with("1.7724538509"));
    }

    #[test]
    fn digamma_one_and_half() {
        let c = ctx();
        let one = BigReal::from_int(1, &c);
        let g = BigReal::euler_gamma(&c);
        let d1 = digamma(&one, &c).unwrap();
        assert!(rel_err(&d1, &(-g.clone())) < 2f64.powi(-250));
        let dh = digamma(&BigReal::from_ratio(1, 2, &c), &c).unwrap();
        let expect = -g - BigReal::from_int(2, &c).ln().mul_pow2(1);
        assert!(rel_err(&dh, &expect) < 2f64.powi(-250));
        assert!(dh.to_decimal(11).starts_with("-1.963510026"));
    }

    #[test]
    fn matches_mpfr_lngamma() {
        let c = ctx();
        for (n, d) in [(1, 7), (3, 4), (5, 2), (37, 3), (123, 1), (1, 1000)] {
            let x = BigReal::from_ratio(n, d, &c);
            let ours = log_gamma(&x, &c).unwrap();
            let reference = BigReal::from_float(x.as_float().clone().ln_gamma());
            let err = (ours - &reference).abs().to_f64();
            assert!(err < 2f64.powi(-250), "x={n}/{d} err={err:e}");
            let ours_psi = digamma(&x, &c).unwrap();
            let ref_psi = BigReal::from_float(Float::with_val(c.working_bits(), x.as_float().digamma_ref()));
            assert!((ours_psi - &ref_psi).abs().to_f64() < 2f64.powi(-250));
        }
    }

    #[test]
    fn rejects_nonpositive() {
        let c = ctx();
        assert!(log_gamma(&BigReal::from_int(0, &c), &c).is_err());
        assert!(digamma(&-1.5f64, &c).is_err());
    }

    #[test]
    fn f64_instantiation() {
        let c = ctx();
        let v = log_gamma(&0.25f64, &c).unwrap();
        assert!((v - 1.288_022_524_698_077_5).abs() < 1e-14);
        let p = digamma(&1.0f64, &c).unwrap();
        assert!((p + 0.577_215_664_901_532_9).abs() < 1e-15);
    }
}
