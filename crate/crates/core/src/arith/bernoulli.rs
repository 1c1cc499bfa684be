//! Exact Bernoulli numbers, scaled as `B_k / k!`, computed once and cached.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn cache() -> &'static RwLock<Vec<BigRational>> {
    static CACHE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// `B_k / k!` for `k = 0..=max_index`.
///
/// Uses `sum_{k=0}^{m} b_k / (m+1-k)! = 0`, which follows from
/// `t / (e^t - 1) * (e^t - 1) / t = 1`.
fn extend_to(max_index: usize) {
    let lock = cache();
    if lock.read().expect("bernoulli cache poisoned").len() > max_index {
        return;
    }
    let mut table = lock.write().expect("bernoulli cache poisoned");
    // Inverse factorials 1/j! for j up to max_index + 1.
    let mut inv_fact = vec![BigRational::one()];
    for j in 1..=max_index + 1 {
        let prev = inv_fact[j - 1].clone();
        inv_fact.push(prev / BigRational::from_integer(BigInt::from(j)));
    }
    while table.len() <= max_index {
        let m = table.len();
        if m > 1 && m % 2 == 1 {
            table.push(BigRational::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += b * &inv_fact[m + 1 - k];
            }
        }
        table.push(-acc);
    }
}

/// `B_{2j} / (2j)!`.
pub fn scaled_even(j: usize) -> BigRational {
    extend_to(2 * j);
    cache().read().expect("bernoulli cache poisoned")[2 * j].clone()
}

/// The Bernoulli number `B_k` itself (with `B_1 = -1/2`).
pub fn bernoulli(k: usize) -> BigRational {
    extend_to(k);
    let mut fact = BigInt::one();
    for j in 2..=k {
        fact *= j;
    }
    cache().read().expect("bernoulli cache poisoned")[k].clone()
        * BigRational::from_integer(fact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert_eq!(scaled_even(1), q(1, 12));
        assert_eq!(scaled_even(2), q(-1, 720));
    }

    #[test]
    fn concurrent_init_agrees() {
        let handles: Vec<_> = (0..4)
            .map(|i| std::thread::spawn(move || bernoulli(40 + 2 * i)))
            .collect();
        let vals: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(vals[0], bernoulli(40));
        // B_40 = -261082718496449122051/13530
        assert_eq!(
            vals[0],
            BigRational::new(
                "-261082718496449122051".parse().unwrap(),
                13530.into()
            )
        );
    }
}
