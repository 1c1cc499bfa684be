//! Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k + a)^{-s}` and its `s`-derivative by
//! Euler–Maclaurin summation.
//!
//! The pole at `s = 1` is split off: [`hurwitz_regular`] returns
//! `ζ(s, a) - 1/(s - 1)` (and the derivative of that), which is entire in
//! `s`. Linear combinations whose weights sum to zero, such as non-principal
//! L-series, can therefore be evaluated at `s = 1` as well.

use num_complex::Complex;

use super::bernoulli::scaled_even;
use super::complex::{abs, real, real_pow_neg, scale};
use super::{PrecisionContext, Real};
use crate::error::{Error, Result};

const MAX_CORRECTIONS: usize = 4000;

/// Regular part of `ζ(s, a)` and of its derivative in `s`.
#[derive(Debug, Clone)]
pub struct RegularPart<T> {
    pub value: Complex<T>,
    pub deriv: Complex<T>,
}

fn initial_terms<T: Real>(s: &Complex<T>, ctx: &PrecisionContext) -> usize {
    let bits = f64::from(T::mantissa_bits(ctx));
    let s_abs = s.re.to_f64().hypot(s.im.to_f64());
    ((bits * 0.35).ceil() as usize).max(s_abs.ceil() as usize + 10)
}

fn check_shift<T: Real>(a: &T, ctx: &PrecisionContext) -> Result<()> {
    if !(a > &T::zero()) || a > &T::from_int(1, ctx) {
        return Err(Error::domain(format!("Hurwitz shift must lie in (0, 1], got {a}")));
    }
    Ok(())
}

/// `(e^{-u L} - 1) / u` and its derivative in `u`, where `u = s - 1`.
fn pole_remainder<T: Real>(u: &Complex<T>, big_l: &T, ctx: &PrecisionContext) -> (Complex<T>, Complex<T>) {
    let z = scale(u, &(-big_l.clone()));
    let eps = T::epsilon(ctx);
    if abs(&z) < T::from_ratio(1, 2, ctx) {
        // (e^z - 1)/z = Σ z^k/(k+1)!,  d/du = L^2 Σ_{k≥1} k z^{k-1}/(k+1)!
        let mut val = Complex::new(T::zero(), T::zero());
        let mut der = Complex::new(T::zero(), T::zero());
        let mut zk = real(T::from_int(1, ctx)); // z^k
        let mut zk1 = real(T::zero()); // z^{k-1}
        let mut inv_fact = T::from_int(1, ctx); // 1/(k+1)!
        for k in 0..10_000i64 {
            let tv = scale(&zk, &inv_fact);
            let td = scale(&zk1, &(inv_fact.clone() * T::from_int(k, ctx)));
            val = val + tv.clone();
            der = der + td.clone();
            if k > 2 && abs(&tv) < eps && abs(&td) < eps {
                break;
            }
            zk1 = zk.clone();
            zk = zk * z.clone();
            inv_fact /= T::from_int(k + 2, ctx);
        }
        let l2 = big_l.clone() * big_l;
        (scale(&val, &(-big_l.clone())), scale(&der, &l2))
    } else {
        let e = super::complex::exp(&z);
        let one = real(T::from_int(1, ctx));
        let num = e.clone() - one;
        let value = num.clone() / u.clone();
        // d/du [(e^{-uL} - 1)/u] = (-L e^{-uL} u - (e^{-uL} - 1)) / u^2
        let deriv = (scale(&(e * u.clone()), &(-big_l.clone())) - num) / (u.clone() * u.clone());
        (value, deriv)
    }
}

/// `ζ(s, a) - 1/(s-1)` and its `s`-derivative, for `a ∈ (0, 1]`.
pub fn hurwitz_regular<T: Real>(
    s: &Complex<T>,
    a: &T,
    ctx: &PrecisionContext,
) -> Result<RegularPart<T>> {
    check_shift(a, ctx)?;
    let n_terms = initial_terms(s, ctx);
    let eps = T::epsilon(ctx);

    let mut value = Complex::new(T::zero(), T::zero());
    let mut deriv = Complex::new(T::zero(), T::zero());
    let mut x = a.clone();
    for _ in 0..n_terms {
        let lx = x.ln();
        let t = real_pow_neg(&lx, s);
        deriv = deriv - scale(&t, &lx);
        value = value + t;
        x += T::from_int(1, ctx);
    }
    // x = N + a from here on.
    let big_l = x.ln();
    let x_neg_s = real_pow_neg(&big_l, s);

    let one = real(T::from_int(1, ctx));
    let u = s.clone() - one.clone();
    let (pv, pd) = pole_remainder(&u, &big_l, ctx);
    value = value + pv;
    deriv = deriv + pd;

    let half = T::from_ratio(1, 2, ctx);
    value = value + scale(&x_neg_s, &half);
    deriv = deriv - scale(&x_neg_s, &(half * &big_l));

    // Bernoulli corrections: B_{2j}/(2j)! * P_j(s) * x^{-s-2j+1},
    // P_1 = s, P_j = P_{j-1} (s+2j-3)(s+2j-2).
    let inv_x = T::from_int(1, ctx) / &x;
    let inv_x2 = inv_x.clone() * &inv_x;
    let mut xpow = scale(&x_neg_s, &inv_x);
    let mut p = s.clone();
    let mut dp = one.clone();
    let scale_ref = T::from_int(1, ctx);
    let mut converged = false;
    for j in 1..=MAX_CORRECTIONS {
        if j >= 2 {
            let f1 = s.clone() + real(T::from_int(2 * j as i64 - 3, ctx));
            let f2 = s.clone() + real(T::from_int(2 * j as i64 - 2, ctx));
            let f12 = f1.clone() * f2.clone();
            dp = dp * f12.clone() + p.clone() * (f1 + f2);
            p = p * f12;
            xpow = scale(&xpow, &inv_x2);
        }
        let b = T::from_big_rational(&scaled_even(j), ctx);
        let tv = scale(&(p.clone() * xpow.clone()), &b);
        let td = scale(&(dp.clone() * xpow.clone()), &b) - scale(&tv, &big_l);
        let size = abs(&tv).max_of(abs(&td));
        value = value + tv;
        deriv = deriv + td;
        let bound = eps.clone() * abs(&value).max_of(scale_ref.clone());
        if size < bound {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::domain(format!(
            "Euler-Maclaurin corrections did not converge for s = {} + {}i",
            s.re, s.im
        )));
    }
    Ok(RegularPart { value, deriv })
}

fn pole_check<T: Real>(s: &Complex<T>, ctx: &PrecisionContext) -> Result<Complex<T>> {
    let u = s.clone() - real(T::from_int(1, ctx));
    if u.re.is_zero() && u.im.is_zero() {
        return Err(Error::Pole("Hurwitz zeta at s = 1".into()));
    }
    Ok(u)
}

pub fn hurwitz_zeta<T: Real>(s: &Complex<T>, a: &T, ctx: &PrecisionContext) -> Result<Complex<T>> {
    let u = pole_check(s, ctx)?;
    let reg = hurwitz_regular(s, a, ctx)?;
    Ok(reg.value + real(T::from_int(1, ctx)) / u)
}

/// `∂ζ(s, a)/∂s`.
pub fn hurwitz_zeta_ds<T: Real>(s: &Complex<T>, a: &T, ctx: &PrecisionContext) -> Result<Complex<T>> {
    let u = pole_check(s, ctx)?;
    let reg = hurwitz_regular(s, a, ctx)?;
    Ok(reg.deriv - real(T::from_int(1, ctx)) / (u.clone() * u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gamma::log_gamma, BigReal};

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(256).unwrap()
    }

    fn re(v: i64, d: i64, c: &PrecisionContext) -> Complex<BigReal> {
        real(BigReal::from_ratio(v, d, c))
    }

    #[test]
    fn value_at_zero() {
        let c = ctx();
        let s = re(0, 1, &c);
        let z = hurwitz_zeta(&s, &BigReal::from_ratio(1, 2, &c), &c).unwrap();
        assert!(z.re.abs() < BigReal::pow2(-270, &c));
        let z1 = hurwitz_zeta(&s, &BigReal::from_int(1, &c), &c).unwrap();
        assert!((z1.re + BigReal::from_ratio(1, 2, &c)).abs() < BigReal::pow2(-270, &c));
    }

    #[test]
    fn derivative_at_zero_is_log_gamma() {
        let c = ctx();
        let s = re(0, 1, &c);
        for (n, d) in [(1, 1), (1, 3), (2, 7), (5, 6)] {
            let a = BigReal::from_ratio(n, d, &c);
            let dz = hurwitz_zeta_ds(&s, &a, &c).unwrap();
            let expect = log_gamma(&a, &c).unwrap()
                - (BigReal::pi(&c).mul_pow2(1)).ln().mul_pow2(-1);
            assert!((dz.re - &expect).abs() < BigReal::pow2(-260, &c), "a={n}/{d}");
            assert!(dz.im.abs() < BigReal::pow2(-260, &c));
        }
    }

    #[test]
    fn riemann_zeta_two() {
        let c = ctx();
        let z = hurwitz_zeta(&re(2, 1, &c), &BigReal::from_int(1, &c), &c).unwrap();
        let pi = BigReal::pi(&c);
        let expect = pi.clone() * &pi / BigReal::from_int(6, &c);
        assert!((z.re - &expect).abs() < BigReal::pow2(-270, &c));
    }

    #[test]
    fn pole_and_domain() {
        let c = ctx();
        let a = BigReal::from_ratio(1, 2, &c);
        assert!(matches!(hurwitz_zeta(&re(1, 1, &c), &a, &c), Err(Error::Pole(_))));
        assert!(hurwitz_regular(&re(1, 1, &c), &a, &c).is_ok());
        assert!(hurwitz_zeta(&re(0, 1, &c), &BigReal::from_int(2, &c), &c).is_err());
    }

    #[test]
    fn regular_part_at_one_is_minus_digamma() {
        let c = ctx();
        let a = BigReal::from_ratio(1, 3, &c);
        let reg = hurwitz_regular(&re(1, 1, &c), &a, &c).unwrap();
        let psi = crate::arith::gamma::digamma(&a, &c).unwrap();
        assert!((reg.value.re + psi).abs() < BigReal::pow2(-260, &c));
    }

    #[test]
    fn complex_argument_matches_finite_difference() {
        let c = ctx();
        let s = Complex::new(BigReal::from_ratio(3, 10, &c), BigReal::from_ratio(7, 5, &c));
        let a = BigReal::from_ratio(2, 5, &c);
        let h = BigReal::pow2(-60, &c);
        let sp = s.clone() + real(h.clone());
        let sm = s.clone() - real(h.clone());
        let fd = (hurwitz_zeta(&sp, &a, &c).unwrap() - hurwitz_zeta(&sm, &a, &c).unwrap())
            / real(h.mul_pow2(1));
        let d = hurwitz_zeta_ds(&s, &a, &c).unwrap();
        assert!(abs(&(fd - d)) < BigReal::pow2(-100, &c));
    }

    #[test]
    fn f64_zeta_two() {
        let c = ctx();
        let z = hurwitz_zeta(&Complex::new(2.0f64, 0.0), &1.0, &c).unwrap();
        assert!((z.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
    }
}
