//! Membership in the span over Q of `{log p} ∪ {sin(2πj/n) log p}`.

use num_integer::Integer as _;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use super::pslq::{pslq, PslqOptions, PslqOutcome};
use crate::arith::{PrecisionContext, Real};
use crate::characters::factorize;
use crate::error::Result;

/// One generator `sin(2π j/n) · log p`, with `j = 0` standing for `log p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSpanElement {
    pub prime: u64,
    pub sine: Option<Ratio<i64>>,
}

impl LogSpanElement {
    pub fn label(&self) -> String {
        match self.sine {
            None => format!("log{}", self.prime),
            Some(r) => format!("sin(2pi*{}/{})*log{}", r.numer(), r.denom(), self.prime),
        }
    }

    pub fn value<T: Real>(&self, ctx: &PrecisionContext) -> T {
        let lp = T::from_int(self.prime as i64, ctx).ln();
        match self.sine {
            None => lp,
            Some(r) => {
                let theta = T::pi(ctx).mul_pow2(1) * T::from_ratio(*r.numer(), *r.denom(), ctx);
                theta.sin() * lp
            }
        }
    }
}

/// Integer coefficients of the `N`-th cyclotomic polynomial, lowest first.
fn cyclotomic(n: usize) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = div_exact(&poly, &cyclotomic(d));
        }
    }
    poly
}

fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len() - 1;
    let lead = den[dl];
    let mut q = vec![0i64; rem.len() - dl];
    for i in (0..q.len()).rev() {
        let c = rem[i + dl] / lead;
        q[i] = c;
        for (k, &dk) in den.iter().enumerate() {
            rem[i + k] -= c * dk;
        }
    }
    q
}

/// Coordinates of `Σ c_k ζ_N^k` in the power basis of `Q(ζ_N)`.
fn reduce_mod_cyclotomic(coeffs: &[BigRational], phi: &[i64]) -> Vec<BigRational> {
    let deg = phi.len() - 1;
    let mut v = coeffs.to_vec();
    for i in (deg..v.len()).rev() {
        let c = v[i].clone();
        if c.is_zero() {
            continue;
        }
        // x^i = x^{i-deg} · x^deg, and x^deg = -Σ_{k<deg} phi_k x^k.
        for (k, &pk) in phi.iter().enumerate().take(deg) {
            v[i - deg + k] -= c.clone() * BigRational::from_integer(pk.into());
        }
        v[i] = BigRational::zero();
    }
    v.truncate(deg);
    v
}

/// Indices of a maximal Q-independent subset, chosen greedily in order.
fn independent_subset(vectors: &[Vec<BigRational>]) -> Vec<usize> {
    let mut rows: Vec<(usize, Vec<BigRational>)> = Vec::new(); // (pivot column, row)
    let mut keep = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (col, row) in &rows {
            if !w[*col].is_zero() {
                let f = w[*col].clone() / row[*col].clone();
                for (wk, rk) in w.iter_mut().zip(row) {
                    *wk -= f.clone() * rk;
                }
            }
        }
        if let Some(col) = w.iter().position(|c| !c.is_zero()) {
            rows.push((col, w));
            keep.push(idx);
        }
    }
    keep
}

/// The sines `sin(2π j/n)`, `1 ≤ j < n/2`, that together with `1` form a
/// Q-basis of their span, as reduced fractions `j/n`. Candidates are taken
/// greedily by increasing denominator.
pub fn independent_sines(n: u64) -> Vec<Ratio<i64>> {
    let big_n = (n as usize).lcm(&4);
    let phi = cyclotomic(big_n);
    let half = BigRational::new(1.into(), 2.into());
    let mut vectors = Vec::new();
    let mut one = vec![BigRational::zero(); big_n];
    one[0] = BigRational::one();
    vectors.push(reduce_mod_cyclotomic(&one, &phi));
    // Simplest angles first, so that e.g. sin(2π/5) is kept over an
    // equivalent combination of sines mod 30.
    let mut angles: Vec<Ratio<i64>> = (1..n.div_ceil(2)).map(|j| Ratio::new(j as i64, n as i64)).collect();
    angles.sort_by_key(|r| (*r.denom(), *r.numer()));
    let quarter = 3 * big_n / 4; // 1/i = ζ_N^{3N/4}
    for r in &angles {
        // sin θ = (e^{iθ} - e^{-iθ}) / 2i
        let a = *r.numer() as usize * big_n / *r.denom() as usize;
        let mut c = vec![BigRational::zero(); big_n];
        c[(a + quarter) % big_n] += half.clone();
        c[(big_n - a + quarter) % big_n] -= half.clone();
        vectors.push(reduce_mod_cyclotomic(&c, &phi));
    }
    independent_subset(&vectors)
        .into_iter()
        .filter(|&i| i > 0)
        .map(|i| angles[i - 1])
        .collect()
}

/// Generators of the log-span for the primes dividing `n`, free over Q.
pub fn logspan_basis(n: u64) -> Vec<LogSpanElement> {
    let sines = independent_sines(n);
    let mut out = Vec::new();
    for (p, _) in factorize(n) {
        out.push(LogSpanElement { prime: p, sine: None });
        for &r in &sines {
            out.push(LogSpanElement {
                prime: p,
                sine: Some(r),
            });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub enum LogSpanOutcome {
    /// `x = Σ q_i b_i` with the listed rational coefficients.
    Member(Vec<(LogSpanElement, Ratio<i128>)>),
    /// No relation involving `x` with norm below `norm_bound`.
    NotFound { norm_bound: f64 },
}

impl LogSpanOutcome {
    pub fn coefficients(&self) -> Option<&[(LogSpanElement, Ratio<i128>)]> {
        match self {
            LogSpanOutcome::Member(c) => Some(c),
            LogSpanOutcome::NotFound { .. } => None,
        }
    }
}

/// Express `x` over [`logspan_basis`]`(n)`.
pub fn logspan_member<T: Real>(x: &T, n: u64, ctx: &PrecisionContext) -> Result<LogSpanOutcome> {
    let basis = logspan_basis(n);
    let mut values = vec![x.clone()];
    values.extend(basis.iter().map(|b| b.value::<T>(ctx)));
    match pslq(&values, ctx, &PslqOptions::default())? {
        PslqOutcome::Relation(m) if m[0] != 0 => {
            let m0 = m[0];
            let coeffs = basis
                .into_iter()
                .zip(&m[1..])
                .map(|(b, &c)| (b, Ratio::new(-c, m0)))
                .collect();
            Ok(LogSpanOutcome::Member(coeffs))
        }
        PslqOutcome::Relation(_) => Ok(LogSpanOutcome::NotFound {
            norm_bound: f64::INFINITY,
        }),
        PslqOutcome::NoRelation { norm_bound, .. } => Ok(LogSpanOutcome::NotFound { norm_bound }),
    }
}

/// Largest denominator among the coefficients.
pub fn max_denominator(coeffs: &[(LogSpanElement, Ratio<i128>)]) -> i128 {
    coeffs.iter().map(|(_, r)| r.denom().abs()).max().unwrap_or(1)
}
