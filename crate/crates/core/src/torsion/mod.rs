//! Equivariant analytic torsion of line bundles on complex tori: the
//! closed form in terms of `R^rot` and ψ, the spectral `Z'(0)` oracle, and
//! the combinatorics that collapse the eigenspace sum.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::arith::complex::{self, real};
use crate::arith::{digamma, PrecisionContext, Real};
use crate::error::{Error, Result};
use crate::lfunctions::{r_rot, HurwitzTable};

/// One eigenpair: `ν_j` and the rotation angle `φ_j = 2π · angle`.
#[derive(Debug, Clone)]
pub struct Eigenpair<T> {
    pub nu: T,
    pub angle: Ratio<i64>,
}

#[derive(Debug, Clone)]
pub struct TorsionInstance<T> {
    pub pairs: Vec<Eigenpair<T>>,
    /// Trace of the automorphism on `H^0`.
    pub l_tr: Complex<T>,
}

/// Which sign the `log(2πν)` term carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `-log(2πν)/(e^{-iφ} - 1)`, as obtained by differentiating `Z(s)`.
    #[default]
    Derivative,
    /// `+log(2πν)/(e^{-iφ} - 1)`, as printed in the theorem statement.
    Theorem,
}

fn reduced_angle(angle: &Ratio<i64>) -> Result<Ratio<i64>> {
    let r = angle - angle.floor();
    if r.is_zero() {
        return Err(Error::domain(format!("angle {angle} is 0 mod 1: no isolated fixed points")));
    }
    Ok(r)
}

fn angle_parts(r: &Ratio<i64>) -> (u64, u64) {
    (*r.numer() as u64, *r.denom() as u64)
}

impl<T: Real> TorsionInstance<T> {
    pub fn new(pairs: Vec<Eigenpair<T>>, l_tr: Complex<T>) -> Result<Self> {
        for p in &pairs {
            reduced_angle(&p.angle)?;
            if !p.nu.is_finite() {
                return Err(Error::domain("ν must be finite"));
            }
        }
        Ok(TorsionInstance { pairs, l_tr })
    }

    /// All angles negated.
    pub fn conjugate(&self) -> Self {
        TorsionInstance {
            pairs: self
                .pairs
                .iter()
                .map(|p| Eigenpair {
                    nu: p.nu.clone(),
                    angle: -p.angle,
                })
                .collect(),
            l_tr: self.l_tr.conj(),
        }
    }
}

/// `Σ_j sign(ν_j) [∓log(2π|ν_j|)/(e^{-iφ_j} - 1) + i R^rot(φ_j)
///   - (1/4)(2 log 2π - 2Γ'(1) + ψ(x_j) + ψ(1 - x_j))] · L_Tr`
/// with `x_j = φ_j/2π mod 1`; pairs with `ν_j = 0` contribute nothing.
pub fn torsion_closed_form<T: Real>(
    inst: &TorsionInstance<T>,
    sign: SignConvention,
    ctx: &PrecisionContext,
) -> Result<Complex<T>> {
    let two_pi = T::pi(ctx).mul_pow2(1);
    let log_two_pi = two_pi.ln();
    let gamma_prime_1 = -T::euler_gamma(ctx);
    let one = T::from_int(1, ctx);
    let mut total = Complex::new(T::zero(), T::zero());
    for p in &inst.pairs {
        if p.nu.is_zero() {
            continue;
        }
        let x = reduced_angle(&p.angle)?;
        let (a, n) = angle_parts(&x);
        let xv = T::from_ratio(a as i64, n as i64, ctx);
        let z = complex::root_of_unity::<T>(-x, ctx);
        let l0 = complex::div(&complex::from_int(1, ctx), &(z - complex::from_int(1, ctx)))?;
        let log_term = (two_pi.clone() * p.nu.abs()).ln();
        let log_term = match sign {
            SignConvention::Derivative => -log_term,
            SignConvention::Theorem => log_term,
        };
        let rot = r_rot::<T>(a, n, ctx)?;
        let block = (log_two_pi.clone().mul_pow2(1) - gamma_prime_1.clone().mul_pow2(1)
            + digamma(&xv, ctx)?
            + digamma(&(one.clone() - &xv), ctx)?)
        .mul_pow2(-2);
        let term = complex::scale(&l0, &log_term) + Complex::new(-block, rot);
        total = if p.nu < T::zero() { total - term } else { total + term };
    }
    Ok(total * inst.l_tr.clone())
}

/// `Z'(0) = Σ_j (-log(2π ν_j) L(e^{iφ_j}, 0) + L'(e^{iφ_j}, 0)) · L_Tr`,
/// assembled from periodic zeta values only. Requires every `ν_j > 0`.
pub fn torsion_spectral_oracle<T: Real>(inst: &TorsionInstance<T>, ctx: &PrecisionContext) -> Result<Complex<T>> {
    let two_pi = T::pi(ctx).mul_pow2(1);
    let mut tables: BTreeMap<u64, HurwitzTable<T>> = BTreeMap::new();
    let mut total = Complex::new(T::zero(), T::zero());
    for p in &inst.pairs {
        if !(p.nu > T::zero()) {
            return Err(Error::domain(format!("spectral oracle needs ν > 0, got {}", p.nu)));
        }
        let x = reduced_angle(&p.angle)?;
        let (a, n) = angle_parts(&x);
        if let std::collections::btree_map::Entry::Vacant(e) = tables.entry(n) {
            e.insert(HurwitzTable::new(n, &real(T::zero()), ctx)?);
        }
        let (l0, dl0) = tables[&n].periodic(a, ctx)?;
        let log_term = (two_pi.clone() * &p.nu).ln();
        total = total + dl0 - complex::scale(&l0, &log_term);
    }
    Ok(total * inst.l_tr.clone())
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `Σ_{q=0}^{k} (-1)^{q+1} q C(k, q)`, summed exactly.
pub fn binom_alternating(k: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for q in 0..=k {
        let t = BigInt::from(q) * binomial(k, q);
        if q % 2 == 1 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// `C(#{j : n_j ≠ 0}, q) · L_Tr · Π_j e^{i n_j φ_j}`.
pub fn eigenspace_trace<T: Real>(
    multi_index: &[u64],
    q: usize,
    angles: &[Ratio<i64>],
    l_tr: &Complex<T>,
    ctx: &PrecisionContext,
) -> Result<Complex<T>> {
    if multi_index.len() != angles.len() {
        return Err(Error::domain("multi-index and angle lists differ in length"));
    }
    if q > angles.len() {
        return Err(Error::domain(format!("degree {q} exceeds dimension {}", angles.len())));
    }
    let nonzero = multi_index.iter().filter(|&&k| k != 0).count() as u64;
    let c = binomial(nonzero, q as u64);
    let mut phase = Ratio::from_integer(0i64);
    for (&k, a) in multi_index.iter().zip(angles) {
        phase += a * Ratio::from_integer(k as i64);
    }
    let z = complex::root_of_unity::<T>(phase, ctx);
    Ok(complex::scale(&(z * l_tr.clone()), &T::from_big_int(&c, ctx)))
}

/// Formal sum `Σ c_θ e^{2πiθ}` over θ ∈ Q/Z with integer coefficients.
type GroupRing = BTreeMap<Ratio<i64>, BigInt>;

fn add_term(acc: &mut GroupRing, theta: Ratio<i64>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let theta = theta - theta.floor();
    let e = acc.entry(theta).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&theta);
    }
}

/// Check, in exact group-ring arithmetic, that for every multi-index with
/// `Σ n_j ≤ K` the alternating sum `Σ_q (-1)^{q+1} q · trace(q, n)` is
/// `e^{i n_j φ_j} L_Tr` when exactly one `n_j` is nonzero and `0` otherwise.
pub fn zeta_collapse_check(d: usize, angles: &[Ratio<i64>], depth: u64) -> Result<bool> {
    if depth == 0 || d == 0 || d > 6 || angles.len() != d {
        return Err(Error::domain("zeta collapse check needs K >= 1, 1 <= d <= 6 and d angles"));
    }
    let mut idx = vec![0u64; d];
    loop {
        let nonzero = idx.iter().filter(|&&k| k != 0).count();
        let theta: Ratio<i64> = idx
            .iter()
            .zip(angles)
            .map(|(&k, a)| a * Ratio::from_integer(k as i64))
            .fold(Ratio::from_integer(0), |x, y| x + y);
        let mut lhs = GroupRing::new();
        for q in 0..=d as u64 {
            let c = binomial(nonzero as u64, q) * BigInt::from(q);
            let c = if q % 2 == 1 { c } else { -c };
            add_term(&mut lhs, theta, c);
        }
        let mut rhs = GroupRing::new();
        if nonzero == 1 {
            add_term(&mut rhs, theta, BigInt::one());
        }
        if lhs != rhs {
            return Ok(false);
        }
        // Next multi-index with total ≤ depth.
        let mut i = 0;
        loop {
            if i == d {
                return Ok(true);
            }
            idx[i] += 1;
            if idx.iter().sum::<u64>() <= depth {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// `|a - b|` for complex values.
pub fn distance<T: Real>(a: &Complex<T>, b: &Complex<T>) -> T {
    complex::abs(&(a.clone() - b.clone()))
}

#[cfg(test)]
mod tests;
