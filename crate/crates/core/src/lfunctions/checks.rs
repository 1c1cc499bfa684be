//! Two-path checks of the functional equation and the cotangent sums.

use num_complex::Complex;

use super::HurwitzTable;
use crate::arith::complex::{self, real};
use crate::arith::{gamma, PrecisionContext, Real};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

/// `Γ(x)` for real `x` off the poles, shifting negative arguments upward.
fn gamma_off_poles<T: Real>(x: &T, ctx: &PrecisionContext) -> Result<T> {
    if x <= &T::zero() && x.floor() == *x {
        return Err(Error::domain(format!("Γ has a pole at {x}")));
    }
    let mut y = x.clone();
    let mut denom = T::from_int(1, ctx);
    while y <= T::zero() {
        denom *= &y;
        y += T::from_int(1, ctx);
    }
    Ok(gamma(&y, ctx)? / denom)
}

fn require_odd(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_odd() {
        Ok(())
    } else {
        Err(Error::UnsupportedCharacter(format!(
            "character {} mod {} is even",
            chi.index(),
            chi.modulus()
        )))
    }
}

/// Relative residual `|LHS - RHS| / (1 + |RHS|)` of
///
/// `(1/2d) Σ_σ chī(σ) L^Im(σ(ζ), s) = (1/2d) n^{1-s} Γ(1 - s/2)/Γ((s+1)/2) π^{s-1/2} L(chī, 1-s)`
///
/// for odd `chi`, real `s`. The left side goes through periodic zetas at
/// `s`, the right through the L-series of `chī` at `1 - s`.
pub fn check_functional_equation<T: Real>(
    chi: &DirichletCharacter,
    s: &T,
    ctx: &PrecisionContext,
) -> Result<T> {
    require_odd(chi)?;
    let n = chi.modulus();
    let one = T::from_int(1, ctx);
    let g_num = gamma_off_poles(&(one.clone() - s.clone().mul_pow2(-1)), ctx)?;
    let g_den = gamma_off_poles(&((s.clone() + &one).mul_pow2(-1)), ctx)?;
    let group_order = chi.group().order() as i64;
    let inv_2d = T::from_ratio(1, group_order, ctx);

    let left_table = HurwitzTable::new(n, &real(s.clone()), ctx)?;
    let mut lhs = Complex::new(T::zero(), T::zero());
    for &a in chi.group().units() {
        let (lim, _) = left_table.imaginary(a, ctx)?;
        lhs = lhs + chi.value::<T>(a, ctx).conj() * lim;
    }
    lhs = complex::scale(&lhs, &inv_2d);

    let t = one.clone() - s;
    let right_table = HurwitzTable::new(n, &real(t.clone()), ctx)?;
    let (l_conj, _) = right_table.character(&chi.conj(), ctx)?;
    let log_n = T::from_int(n as i64, ctx).ln();
    let log_pi = T::pi(ctx).ln();
    let power = (t * &log_n + (s.clone() - T::from_ratio(1, 2, ctx)) * &log_pi).exp();
    let factor = inv_2d * power * g_num / g_den;
    let rhs = complex::scale(&l_conj, &factor);

    let diff = complex::abs(&(lhs - rhs.clone()));
    Ok(diff / (one + complex::abs(&rhs)))
}

/// `|Σ_a cot(pi a/n) chi(a) - (2n/pi) L(chi, 1)|` for odd `chi`.
pub fn check_cotangent_identity<T: Real>(chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<T> {
    require_odd(chi)?;
    let n = chi.modulus();
    let mut lhs = Complex::new(T::zero(), T::zero());
    for &a in chi.group().units() {
        let theta = T::pi(ctx) * T::from_ratio(a as i64, n as i64, ctx);
        let cot = theta.cos() / theta.sin();
        lhs = lhs + complex::scale(&chi.value(a, ctx), &cot);
    }
    let table = HurwitzTable::new(n, &complex::from_int(1, ctx), ctx)?;
    let (l1, _) = table.character(chi, ctx)?;
    let rhs = complex::scale(&l1, &(T::from_int(2 * n as i64, ctx) / T::pi(ctx)));
    Ok(complex::abs(&(lhs - rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigReal;
    use crate::characters::{characters, CharacterFilter};
    use num_traits::Zero;

    #[test]
    fn functional_equation_small_moduli() {
        let ctx = PrecisionContext::new(256).unwrap();
        for n in [3u64, 4, 5, 7, 8, 12] {
            for chi in characters(n, CharacterFilter::Odd).unwrap() {
                for s in ["-0.5", "0.3", "2.2", "0"] {
                    let s = BigReal::parse_decimal(s, &ctx).unwrap();
                    let r = check_functional_equation(&chi, &s, &ctx).unwrap();
                    assert!(r < 1e-70, "n={n} s={s} residual={r}");
                }
            }
        }
    }

    #[test]
    fn functional_equation_rejects_poles_and_even() {
        let ctx = PrecisionContext::new(128).unwrap();
        let chi = &characters(5, CharacterFilter::Odd).unwrap()[0];
        let two = BigReal::from_int(2, &ctx);
        assert!(matches!(check_functional_equation(chi, &two, &ctx), Err(Error::Domain(_))));
        let minus_one = BigReal::from_int(-1, &ctx);
        assert!(check_functional_equation(chi, &minus_one, &ctx).is_err());
        let even = &characters(5, CharacterFilter::Even).unwrap()[1];
        assert!(check_functional_equation(even, &BigReal::zero(), &ctx).is_err());
    }

    #[test]
    fn cotangent_identity() {
        let ctx = PrecisionContext::new(256).unwrap();
        for n in [3u64, 4, 5, 7, 8, 12, 15, 24] {
            for chi in characters(n, CharacterFilter::Odd).unwrap() {
                let r: BigReal = check_cotangent_identity(&chi, &ctx).unwrap();
                assert!(r < 1e-70, "n={n} residual={r}");
            }
        }
    }

    #[test]
    fn gamma_shift() {
        let ctx = PrecisionContext::new(128).unwrap();
        // Γ(-1/2) = -2√π
        let g = gamma_off_poles(&BigReal::from_ratio(-1, 2, &ctx), &ctx).unwrap();
        let want = -(BigReal::pi(&ctx).sqrt() * BigReal::from_int(2, &ctx));
        assert!((g - want).abs() < 1e-35);
    }
}
