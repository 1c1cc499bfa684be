//! The linear system `M X = Y` and its two solvers.

use num_complex::Complex;

use crate::arith::{PrecisionContext, Real};
use crate::characters::{CharacterFilter, GroupFunction};
use crate::cmtypes::CmType;
use crate::error::{Error, Result};
use crate::lfunctions::r_rot_table;

/// `M_{l,k} = f(Φ_k^{-1} Φ_l)`, right-hand side `Y`.
#[derive(Debug, Clone)]
pub struct HeightSystem<T: Real> {
    phi: CmType,
    matrix: Vec<Vec<T>>,
    rhs: Vec<T>,
}

/// `Φ_k^{-1} Φ_l` as a coset index.
fn quotient_class(phi: &CmType, l: usize, k: usize) -> usize {
    let g = phi.group();
    let (cl, ck) = (phi.classes()[l], phi.classes()[k]);
    g.mul(g.inverse(ck), cl)
}

impl<T: Real> HeightSystem<T> {
    /// The system with `f(σ) = Im(σζ/(1 - σζ)) = (1/2)cot(π a/n)` and
    /// `Y_l = -4 Σ_k R^rot(Φ_k^{-1} Φ_l)`.
    pub fn build(phi: &CmType, ctx: &PrecisionContext) -> Result<Self> {
        if phi.group().is_quotient() {
            return Err(Error::GroupMismatch);
        }
        let n = phi.modulus();
        let f = cotangent_function::<T>(phi, ctx);
        let r = r_rot_table::<T>(n, ctx)?;
        let d = phi.d();
        let g = phi.group();
        let rhs = (0..d)
            .map(|l| {
                let s: T = (0..d)
                    .map(|k| r[g.representative(quotient_class(phi, l, k)) as usize].clone())
                    .sum();
                s * T::from_int(-4, ctx)
            })
            .collect();
        Self::with_function(phi, &f, rhs)
    }

    /// The system for an arbitrary real function `f` on `G` and rhs `Y`.
    pub fn with_function(phi: &CmType, f: &GroupFunction<T>, rhs: Vec<T>) -> Result<Self> {
        if **f.group() != **phi.group() || rhs.len() != phi.d() {
            return Err(Error::GroupMismatch);
        }
        let d = phi.d();
        let matrix = (0..d)
            .map(|l| {
                (0..d)
                    .map(|k| f.values()[quotient_class(phi, l, k)].re.clone())
                    .collect()
            })
            .collect();
        Ok(HeightSystem {
            phi: phi.clone(),
            matrix,
            rhs,
        })
    }

    pub fn cm_type(&self) -> &CmType {
        &self.phi
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    /// `max_l |(M X)_l - Y_l|`.
    pub fn residual(&self, x: &[T]) -> T {
        self.matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, y)| {
                let mx: T = row.iter().zip(x).map(|(a, b)| a.clone() * b).sum();
                (mx - y).abs()
            })
            .fold(T::zero(), |a, b| a.max_of(b))
    }

    /// Gaussian elimination with partial pivoting.
    pub fn solve_elimination(&self, ctx: &PrecisionContext) -> Result<Vec<T>> {
        let d = self.matrix.len();
        let mut a: Vec<Vec<T>> = self
            .matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, y)| {
                let mut r = row.clone();
                r.push(y.clone());
                r
            })
            .collect();
        let tiny = T::pow2(-((T::mantissa_bits(ctx) / 2) as i32), ctx);
        for col in 0..d {
            let piv = (col..d)
                .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).expect("finite"))
                .expect("non-empty");
            if a[piv][col].abs() < tiny {
                return Err(Error::SingularSystem {
                    column: col,
                    pivot: a[piv][col].to_decimal(6),
                });
            }
            a.swap(col, piv);
            for i in col + 1..d {
                let factor = a[i][col].clone() / &a[col][col];
                if factor.is_zero() {
                    continue;
                }
                for k in col..=d {
                    let v = factor.clone() * &a[col][k];
                    a[i][k] -= v;
                }
            }
        }
        let mut x = vec![T::zero(); d];
        for i in (0..d).rev() {
            let mut s = a[i][d].clone();
            for k in i + 1..d {
                s -= a[i][k].clone() * &x[k];
            }
            x[i] = s / &a[i][i];
        }
        Ok(x)
    }

    /// Closed form by odd characters:
    /// `X_j = Σ_{χ odd} χ(Φ_j) Σ_l χ̄(Φ_l) Y_l / (d² <f, χ>)`.
    pub fn solve_characters(&self, f: &GroupFunction<T>, ctx: &PrecisionContext) -> Result<Vec<T>> {
        let phi = &self.phi;
        if **f.group() != **phi.group() {
            return Err(Error::GroupMismatch);
        }
        let g = phi.group();
        let d = phi.d();
        let tiny = T::pow2(-((T::mantissa_bits(ctx) / 2) as i32), ctx);
        let d2 = T::from_int((d * d) as i64, ctx);
        let zero = || Complex::new(T::zero(), T::zero());
        let mut x = vec![zero(); d];
        for chi in g.characters(CharacterFilter::Odd) {
            let cf = GroupFunction::from_character(g.clone(), &chi, ctx)?;
            let pairing = f.inner(&cf)?;
            let norm2 = pairing.norm_sqr();
            if norm2.clone().sqrt() < tiny {
                return Err(Error::ZeroCharacterPairing(chi.index()));
            }
            let vals: Vec<Complex<T>> = phi.classes().iter().map(|&k| cf.values()[k].clone()).collect();
            let mut proj = zero();
            for (v, y) in vals.iter().zip(&self.rhs) {
                proj = proj + Complex::new(v.re.clone() * y, -(v.im.clone() * y));
            }
            // proj / (d^2 <f,χ>) = proj * conj(<f,χ>) / (d^2 |<f,χ>|^2)
            let denom = d2.clone() * norm2;
            let coef = proj * pairing.conj();
            let coef = Complex::new(coef.re / &denom, coef.im / &denom);
            for (xj, v) in x.iter_mut().zip(&vals) {
                *xj = xj.clone() + v.clone() * coef.clone();
            }
        }
        Ok(x.into_iter().map(|z| z.re).collect())
    }
}

/// `σ ↦ Im(σζ/(1 - σζ)) = (1/2) cot(π a/n)` on the group of Φ.
pub fn cotangent_function<T: Real>(phi: &CmType, ctx: &PrecisionContext) -> GroupFunction<T> {
    let n = phi.modulus() as i64;
    GroupFunction::from_fn(phi.group().clone(), |a| {
        let theta = T::pi(ctx) * T::from_ratio(a as i64, n, ctx);
        let v = (theta.cos() / theta.sin()).mul_pow2(-1);
        Complex::new(v, T::zero())
    })
}
