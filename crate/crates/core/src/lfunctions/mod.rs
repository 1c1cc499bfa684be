//! Dirichlet L-series, the periodic zeta `L(z, s) = Σ z^k k^{-s}` at roots
//! of unity, its imaginary part `L^Im`, and the rotation derivative `R^rot`.
//!
//! Everything is a finite combination of Hurwitz zeta values at `b/n`.

mod checks;

use num_complex::Complex;
use num_rational::Ratio;
use rayon::prelude::*;

pub use checks::{check_cotangent_identity, check_functional_equation};

use crate::arith::complex::{self, real};
use crate::arith::{hurwitz_regular, log_gamma, PrecisionContext, Real, RegularPart};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

/// Regular parts of `ζ(s, b/n)` for `b = 1..=n` at a fixed `s`.
#[derive(Debug, Clone)]
pub struct HurwitzTable<T: Real> {
    n: u64,
    s: Complex<T>,
    parts: Vec<RegularPart<T>>,
}

impl<T: Real> HurwitzTable<T> {
    pub fn new(n: u64, s: &Complex<T>, ctx: &PrecisionContext) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let parts = (1..=n)
            .into_par_iter()
            .map(|b| hurwitz_regular(s, &T::from_ratio(b as i64, n as i64, ctx), ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(HurwitzTable {
            n,
            s: s.clone(),
            parts,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn s(&self) -> &Complex<T> {
        &self.s
    }

    /// `n^{-s} Σ_b w_b ζ(s, b/n)` and its `s`-derivative; `weights[b-1]` is
    /// `w_b`. At `s = 1` the weights must sum to zero.
    pub fn combine(
        &self,
        weights: &[Complex<T>],
        ctx: &PrecisionContext,
    ) -> Result<(Complex<T>, Complex<T>)> {
        assert_eq!(weights.len(), self.parts.len());
        let zero = || Complex::new(T::zero(), T::zero());
        let (mut sum, mut dsum, mut wsum) = (zero(), zero(), zero());
        let mut wmass = T::zero();
        for (w, p) in weights.iter().zip(&self.parts) {
            if w.re.is_zero() && w.im.is_zero() {
                continue;
            }
            sum = sum + w.clone() * p.value.clone();
            dsum = dsum + w.clone() * p.deriv.clone();
            wsum = wsum + w.clone();
            wmass += complex::abs(w);
        }
        let u = self.s.clone() - complex::from_int(1, ctx);
        if u.re.is_zero() && u.im.is_zero() {
            let tol = T::epsilon(ctx) * wmass * T::from_int(16, ctx);
            if complex::abs(&wsum) > tol {
                return Err(Error::Pole("weights do not cancel the pole at s = 1".into()));
            }
        } else {
            let inv_u = complex::div(&complex::from_int(1, ctx), &u)?;
            sum = sum + wsum.clone() * inv_u.clone();
            dsum = dsum - wsum * inv_u.clone() * inv_u;
        }
        let log_n = T::from_int(self.n as i64, ctx).ln();
        let pref = complex::real_pow_neg(&log_n, &self.s);
        let value = pref.clone() * sum.clone();
        let deriv = pref * (dsum - complex::scale(&sum, &log_n));
        Ok((value, deriv))
    }

    /// `L(e^{2 pi i a/n}, s)` and its derivative.
    pub fn periodic(&self, a: u64, ctx: &PrecisionContext) -> Result<(Complex<T>, Complex<T>)> {
        let n = self.n;
        if a.is_multiple_of(n) {
            return Err(Error::domain("periodic zeta at z = 1 is the Riemann zeta line"));
        }
        let weights: Vec<Complex<T>> = (1..=n)
            .map(|b| complex::root_of_unity(Ratio::new(((a % n) * b % n) as i64, n as i64), ctx))
            .collect();
        self.combine(&weights, ctx)
    }

    /// `L^Im(e^{2 pi i a/n}, s)` and its derivative. Computed as
    /// `(L(z) - L(z̄)) / 2i`, so `a ↦ n - a` flips the sign exactly.
    pub fn imaginary(&self, a: u64, ctx: &PrecisionContext) -> Result<(Complex<T>, Complex<T>)> {
        let n = self.n;
        let a = a % n;
        let (v1, d1) = self.periodic(a, ctx)?;
        let (v2, d2) = self.periodic(n - a, ctx)?;
        Ok((div_2i(&(v1 - v2)), div_2i(&(d1 - d2))))
    }

    /// `L(chi, s)` (not primitivized) and its derivative; `chi` must have
    /// modulus `n`.
    pub fn character(
        &self,
        chi: &DirichletCharacter,
        ctx: &PrecisionContext,
    ) -> Result<(Complex<T>, Complex<T>)> {
        if self.n != chi.modulus() {
            return Err(Error::GroupMismatch);
        }
        let weights: Vec<Complex<T>> = (1..=self.n).map(|b| chi.value(b, ctx)).collect();
        self.combine(&weights, ctx)
    }
}

fn div_2i<T: Real>(w: &Complex<T>) -> Complex<T> {
    Complex::new(w.im.mul_pow2(-1), -w.re.mul_pow2(-1))
}

/// `L(chi, s)` through the Hurwitz decomposition.
pub fn dirichlet_l<T: Real>(
    chi: &DirichletCharacter,
    s: &Complex<T>,
    ctx: &PrecisionContext,
) -> Result<Complex<T>> {
    dirichlet_l_with_derivative(chi, s, ctx).map(|(v, _)| v)
}

pub fn dirichlet_l_with_derivative<T: Real>(
    chi: &DirichletCharacter,
    s: &Complex<T>,
    ctx: &PrecisionContext,
) -> Result<(Complex<T>, Complex<T>)> {
    if chi.modulus() == 1 {
        // The trivial character mod 1: Riemann zeta.
        let table = HurwitzTable::new(1, s, ctx)?;
        return table.combine(&[complex::from_int(1, ctx)], ctx);
    }
    HurwitzTable::new(chi.modulus(), s, ctx)?.character(chi, ctx)
}

/// `L(chi, 0) = -(1/n) Σ_a a chi(a)`.
pub fn l_value_at_0<T: Real>(chi: &DirichletCharacter, ctx: &PrecisionContext) -> Complex<T> {
    let n = chi.modulus();
    let mut acc = Complex::new(T::zero(), T::zero());
    for a in 1..n {
        acc = acc + complex::scale(&chi.value(a, ctx), &T::from_int(a as i64, ctx));
    }
    complex::scale(&acc, &(-T::from_ratio(1, n as i64, ctx)))
}

/// `L'(chi, 0) = -log n · L(chi, 0) + Σ_a chi(a) log Γ(a/n)` for
/// non-principal `chi`.
pub fn l_derivative_at_0<T: Real>(
    chi: &DirichletCharacter,
    ctx: &PrecisionContext,
) -> Result<Complex<T>> {
    if chi.is_principal() {
        return Err(Error::UnsupportedCharacter(
            "L'(chi, 0) for the principal character".into(),
        ));
    }
    let n = chi.modulus();
    let mut acc = Complex::new(T::zero(), T::zero());
    for a in 1..n {
        if !chi.group().is_unit(a) {
            continue;
        }
        let lg = log_gamma(&T::from_ratio(a as i64, n as i64, ctx), ctx)?;
        acc = acc + complex::scale(&chi.value(a, ctx), &lg);
    }
    let log_n = T::from_int(n as i64, ctx).ln();
    Ok(acc - complex::scale(&l_value_at_0(chi, ctx), &log_n))
}

/// `L'(chi, 0) / L(chi, 0)`; for odd `chi` the denominator never vanishes.
pub fn l_ratio_at_0<T: Real>(chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Complex<T>> {
    let d = l_derivative_at_0(chi, ctx)?;
    let v = l_value_at_0(chi, ctx);
    complex::div(&d, &v).map_err(|_| {
        Error::UnsupportedCharacter(format!("L(chi, 0) = 0 for character {}", chi.index()))
    })
}

/// `L'/L(chi, 1) - L'/L(chi_prim, 1) = Σ_{p | n} (chi_prim(p)/p) / (1 - chi_prim(p)/p) · log p`.
///
/// Pass `chi.conj()` to get the correction for `chī`.
pub fn euler_factor_correction<T: Real>(
    chi: &DirichletCharacter,
    ctx: &PrecisionContext,
) -> Result<Complex<T>> {
    if chi.is_principal() {
        return Err(Error::UnsupportedCharacter(
            "Euler factor correction for the principal character".into(),
        ));
    }
    let prim = chi.primitive_part();
    let f = prim.modulus();
    let one = complex::from_int::<T>(1, ctx);
    let mut acc = Complex::new(T::zero(), T::zero());
    for p in chi.group().prime_divisors() {
        if f.is_multiple_of(p) {
            continue;
        }
        let inv_p = T::from_ratio(1, p as i64, ctx);
        let x = complex::scale(&prim.value(p % f, ctx), &inv_p);
        let term = complex::div(&x, &(one.clone() - x.clone()))?;
        acc = acc + complex::scale(&term, &T::from_int(p as i64, ctx).ln());
    }
    Ok(acc)
}

fn check_angle(a: u64, n: u64) -> Result<()> {
    if n == 0 || a.is_multiple_of(n) {
        return Err(Error::domain(format!("angle {a}/{n} is 0 mod 1")));
    }
    Ok(())
}

/// `L(e^{2 pi i a/n}, s)`.
pub fn periodic_zeta<T: Real>(a: u64, n: u64, s: &Complex<T>, ctx: &PrecisionContext) -> Result<Complex<T>> {
    check_angle(a, n)?;
    HurwitzTable::new(n, s, ctx)?.periodic(a, ctx).map(|(v, _)| v)
}

/// `∂_s L(e^{2 pi i a/n}, s)`.
pub fn periodic_zeta_ds<T: Real>(a: u64, n: u64, s: &Complex<T>, ctx: &PrecisionContext) -> Result<Complex<T>> {
    check_angle(a, n)?;
    HurwitzTable::new(n, s, ctx)?.periodic(a, ctx).map(|(_, d)| d)
}

/// `L^Im(e^{2 pi i a/n}, s) = Σ_{k≥1} sin(2 pi a k/n) k^{-s}`; real for real `s`.
pub fn l_im<T: Real>(a: u64, n: u64, s: &Complex<T>, ctx: &PrecisionContext) -> Result<Complex<T>> {
    check_angle(a, n)?;
    HurwitzTable::new(n, s, ctx)?.imaginary(a, ctx).map(|(v, _)| v)
}

/// `R^rot(2 pi a/n) = ∂_s L^Im(e^{2 pi i a/n}, s)` at `s = 0`.
pub fn r_rot<T: Real>(a: u64, n: u64, ctx: &PrecisionContext) -> Result<T> {
    check_angle(a, n)?;
    let table = HurwitzTable::new(n, &real(T::zero()), ctx)?;
    table.imaginary(a, ctx).map(|(_, d)| d.re)
}

/// `R^rot(2 pi a/n)` for `a = 0..n`, with entry 0 set to 0.
pub fn r_rot_table<T: Real>(n: u64, ctx: &PrecisionContext) -> Result<Vec<T>> {
    let table = HurwitzTable::new(n, &real(T::zero()), ctx)?;
    let mut out = vec![T::zero()];
    for a in 1..n {
        out.push(table.imaginary(a, ctx)?.1.re);
    }
    Ok(out)
}
