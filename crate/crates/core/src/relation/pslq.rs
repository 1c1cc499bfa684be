//! PSLQ integer relation detection (Ferguson–Bailey), with `γ = 2/√3`.

use crate::arith::{PrecisionContext, Real};
use crate::error::{Error, Result};

/// Minimum working precision accepted by [`pslq`].
pub const MIN_PSLQ_BITS: u32 = 128;

#[derive(Debug, Clone, PartialEq)]
pub enum PslqOutcome {
    /// `Σ m_i v_i ≈ 0` with the given integer vector.
    Relation(Vec<i128>),
    /// No relation with Euclidean norm below `norm_bound` exists.
    NoRelation { norm_bound: f64, iterations: usize },
}

impl PslqOutcome {
    pub fn relation(&self) -> Option<&[i128]> {
        match self {
            PslqOutcome::Relation(m) => Some(m),
            PslqOutcome::NoRelation { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
#[derive(Default)]
pub struct PslqOptions {
    /// Give up (with a certified bound) once every relation must have norm
    /// above this. Defaults to `2^{bits/8}`.
    pub max_coeff: Option<f64>,
    /// Defaults to `10 · len · bits`.
    pub max_iterations: Option<usize>,
}


fn round_i128<T: Real>(x: &T) -> Option<i128> {
    x.round_to_i128()
}

/// Integer relation for `values` at the precision of `ctx`.
pub fn pslq<T: Real>(values: &[T], ctx: &PrecisionContext, opts: &PslqOptions) -> Result<PslqOutcome> {
    let bits = T::mantissa_bits(ctx);
    if bits < MIN_PSLQ_BITS {
        return Err(Error::PrecisionTooLow(format!(
            "PSLQ needs at least {MIN_PSLQ_BITS} bits, have {bits}"
        )));
    }
    let n = values.len();
    if n < 2 {
        return Err(Error::domain("PSLQ needs at least two values"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("PSLQ input is not finite"));
    }
    let max_abs = values.iter().map(|v| v.abs()).fold(T::from_int(1, ctx), |a, b| a.max_of(b));
    let threshold = T::pow2(-((bits / 2) as i32), ctx) * &max_abs;
    if let Some(i) = values.iter().position(|v| v.abs() < threshold) {
        let mut m = vec![0i128; n];
        m[i] = 1;
        return Ok(PslqOutcome::Relation(m));
    }
    let max_coeff = opts.max_coeff.unwrap_or_else(|| 2f64.powf(f64::from(bits) / 8.0));
    let max_iter = opts.max_iterations.unwrap_or(10 * n * bits as usize);

    let zero = T::zero;
    let gamma = (T::from_int(4, ctx) / T::from_int(3, ctx)).sqrt();

    // s_k = sqrt(Σ_{j≥k} x_j^2), normalized by s_0.
    let mut s = vec![zero(); n];
    let mut acc = zero();
    for k in (0..n).rev() {
        acc += values[k].clone() * &values[k];
        s[k] = acc.clone().sqrt();
    }
    let t = s[0].clone();
    let mut y: Vec<T> = values.iter().map(|v| v.clone() / &t).collect();
    for v in &mut s {
        *v /= &t;
    }

    let mut h = vec![vec![zero(); n - 1]; n];
    for i in 0..n {
        for j in 0..(n - 1).min(i + 1) {
            h[i][j] = if i == j {
                s[j + 1].clone() / &s[j]
            } else {
                -(y[i].clone() * &y[j]) / (s[j].clone() * &s[j + 1])
            };
        }
    }
    let mut a = identity(n);
    let mut b = identity(n);

    let reduce = |i: usize,
                  j: usize,
                  h: &mut Vec<Vec<T>>,
                  y: &mut Vec<T>,
                  a: &mut Vec<Vec<i128>>,
                  b: &mut Vec<Vec<i128>>|
     -> Option<()> {
        if h[j][j].is_zero() {
            return Some(());
        }
        let q = round_i128(&(h[i][j].clone() / &h[j][j]))?;
        if q == 0 {
            return Some(());
        }
        let qt = T::from_big_int(&q.into(), ctx);
        let yi = y[i].clone();
        y[j] += qt.clone() * &yi;
        for k in 0..=j {
            let hjk = h[j][k].clone();
            h[i][k] -= qt.clone() * &hjk;
        }
        for k in 0..n {
            a[i][k] = a[i][k].checked_sub(q.checked_mul(a[j][k])?)?;
            b[k][j] = b[k][j].checked_add(q.checked_mul(b[k][i])?)?;
        }
        Some(())
    };

    let tol = T::pow2(-((bits / 2) as i32), ctx);
    let detect = |y: &[T], b: &[Vec<i128>]| -> Option<Vec<i128>> {
        (0..n).filter(|&i| y[i].abs() < tol).find_map(|i| {
            let vec: Vec<i128> = (0..n).map(|k| b[k][i]).collect();
            (vec.iter().any(|&c| c != 0) && verify(values, &vec, &threshold, ctx)).then(|| normalize_sign(vec))
        })
    };
    // A reduction step that overflows i128 ends the search, but a relation
    // already sitting in `y` is still reported.
    let overflow = |iterations: usize, h: &Vec<Vec<T>>, y: &[T], b: &[Vec<i128>]| match detect(y, b) {
        Some(rel) => Ok(PslqOutcome::Relation(rel)),
        None => Ok(PslqOutcome::NoRelation {
            norm_bound: norm_bound(h),
            iterations,
        }),
    };

    for i in 1..n {
        for j in (0..i).rev() {
            if reduce(i, j, &mut h, &mut y, &mut a, &mut b).is_none() {
                return overflow(0, &h, &y, &b);
            }
        }
    }

    if let Some(rel) = detect(&y, &b) {
        return Ok(PslqOutcome::Relation(rel));
    }

    for iter in 1..=max_iter {
        // Pick m maximizing γ^{i+1} |H_ii|.
        let mut m = 0;
        let mut best = zero();
        let mut gpow = gamma.clone();
        for i in 0..n - 1 {
            let v = gpow.clone() * h[i][i].abs();
            if v > best {
                best = v;
                m = i;
            }
            gpow *= &gamma;
        }
        y.swap(m, m + 1);
        a.swap(m, m + 1);
        h.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }
        if m + 2 < n {
            let t0 = (h[m][m].clone() * &h[m][m] + h[m][m + 1].clone() * &h[m][m + 1]).sqrt();
            if t0.is_zero() {
                break;
            }
            let t1 = h[m][m].clone() / &t0;
            let t2 = h[m][m + 1].clone() / &t0;
            for row in h.iter_mut().skip(m) {
                let (t3, t4) = (row[m].clone(), row[m + 1].clone());
                row[m] = t1.clone() * &t3 + t2.clone() * &t4;
                row[m + 1] = -(t2.clone() * &t3) + t1.clone() * &t4;
            }
        }
        for i in m + 1..n {
            let top = (i - 1).min(m + 1);
            for j in (0..=top).rev() {
                if reduce(i, j, &mut h, &mut y, &mut a, &mut b).is_none() {
                    return overflow(iter, &h, &y, &b);
                }
            }
        }

        if let Some(rel) = detect(&y, &b) {
            return Ok(PslqOutcome::Relation(rel));
        }
        let bound = norm_bound(&h);
        if bound > max_coeff {
            return Ok(PslqOutcome::NoRelation {
                norm_bound: bound,
                iterations: iter,
            });
        }
    }
    Ok(PslqOutcome::NoRelation {
        norm_bound: norm_bound(&h),
        iterations: max_iter,
    })
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// `1 / max_j |H_jj|`, a lower bound on the norm of any relation.
fn norm_bound<T: Real>(h: &[Vec<T>]) -> f64 {
    let cols = h.first().map_or(0, |r| r.len());
    let max = (0..cols).map(|j| h[j][j].abs().to_f64()).fold(0.0, f64::max);
    if max == 0.0 {
        f64::INFINITY
    } else {
        1.0 / max
    }
}

fn verify<T: Real>(values: &[T], m: &[i128], threshold: &T, ctx: &PrecisionContext) -> bool {
    let sum: T = values
        .iter()
        .zip(m)
        .map(|(v, &c)| v.clone() * T::from_big_int(&c.into(), ctx))
        .sum();
    sum.abs() < *threshold
}

/// First nonzero entry positive.
fn normalize_sign(mut m: Vec<i128>) -> Vec<i128> {
    if m.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        for c in &mut m {
            *c = -*c;
        }
    }
    m
}
