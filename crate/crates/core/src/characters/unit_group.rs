//! `(Z/n)^×` as a product of cyclic groups with precomputed discrete logs.

use num_integer::Integer as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One cyclic factor of the unit group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicComponent {
    pub prime: u64,
    /// The prime power whose unit group this component belongs to.
    pub prime_power: u64,
    /// Generator as a residue mod the full modulus (CRT lift, `1` on the
    /// other prime powers).
    pub generator: u64,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    modulus: u64,
    factorization: Vec<(u64, u32)>,
    components: Vec<CyclicComponent>,
    units: Vec<u64>,
    /// `dlog[a]` is the exponent vector of the unit `a`, empty for non-units.
    dlog: Vec<Vec<u64>>,
    /// `position[a]` is the index of `a` in `units`.
    position: Vec<Option<usize>>,
}

/// Serializable form of the discrete-log tables, used as an on-disk cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGroupTable {
    pub schema_version: u32,
    pub modulus: u64,
    pub components: Vec<CyclicComponent>,
    pub dlog: Vec<(u64, Vec<u64>)>,
}

impl UnitGroupTable {
    pub const SCHEMA_VERSION: u32 = 1;
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = u128::from(base % m);
    let m128 = u128::from(m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = i128::from(a as i64).extended_gcd(&i128::from(m as i64));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(i128::from(m)) as u64)
}

/// Residue `r` mod `n` with `r ≡ g (mod q)` and `r ≡ 1 (mod n/q)`.
fn crt_lift(g: u64, q: u64, n: u64) -> u64 {
    let rest = n / q;
    if rest == 1 {
        return g % n;
    }
    // r = 1 + rest * t with rest * t ≡ g - 1 (mod q)
    let inv = inv_mod(rest % q, q).expect("coprime prime-power factors");
    let t = mul_mod((g + q - 1) % q, inv, q);
    (1 + rest * t) % n
}

fn is_primitive_root_mod_p(g: u64, p: u64) -> bool {
    let order = p - 1;
    factorize(order)
        .iter()
        .all(|&(q, _)| pow_mod(g, order / q, p) != 1)
}

/// Smallest primitive root modulo `p^k` for odd `p`.
fn primitive_root_odd(p: u64, k: u32) -> u64 {
    let g = (2..p)
        .find(|&g| is_primitive_root_mod_p(g, p))
        .expect("primitive roots exist mod odd primes");
    if k >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

impl UnitGroup {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Self::build(n))
    }

    /// Like [`UnitGroup::new`] but also accepts the trivial groups mod 1 and
    /// 2, which show up as targets of conductor reduction.
    pub(crate) fn build(n: u64) -> Self {
        assert!(n >= 1);
        let factorization = factorize(n);
        let mut components = Vec::new();
        for &(p, k) in &factorization {
            let q = p.pow(k);
            if p == 2 {
                match k {
                    1 => {}
                    2 => components.push(CyclicComponent {
                        prime: 2,
                        prime_power: 4,
                        generator: crt_lift(3, 4, n),
                        order: 2,
                    }),
                    _ => {
                        components.push(CyclicComponent {
                            prime: 2,
                            prime_power: q,
                            generator: crt_lift(q - 1, q, n),
                            order: 2,
                        });
                        components.push(CyclicComponent {
                            prime: 2,
                            prime_power: q,
                            generator: crt_lift(5, q, n),
                            order: q / 4,
                        });
                    }
                }
            } else {
                let g = primitive_root_odd(p, k);
                components.push(CyclicComponent {
                    prime: p,
                    prime_power: q,
                    generator: crt_lift(g, q, n),
                    order: q / p * (p - 1),
                });
            }
        }
        let dlog = Self::tabulate(n, &components);
        Self::assemble(n, factorization, components, dlog)
    }

    fn tabulate(n: u64, components: &[CyclicComponent]) -> Vec<Vec<u64>> {
        let mut dlog = vec![Vec::new(); n as usize];
        let mut exps = vec![0u64; components.len()];
        loop {
            let residue = components
                .iter()
                .zip(&exps)
                .fold(1 % n, |acc, (c, &e)| mul_mod(acc, pow_mod(c.generator, e, n), n));
            dlog[residue as usize] = exps.clone();
            // Mixed-radix increment, last component fastest.
            let mut i = components.len();
            loop {
                if i == 0 {
                    return dlog;
                }
                i -= 1;
                exps[i] += 1;
                if exps[i] < components[i].order {
                    break;
                }
                exps[i] = 0;
            }
        }
    }

    fn assemble(
        n: u64,
        factorization: Vec<(u64, u32)>,
        components: Vec<CyclicComponent>,
        mut dlog: Vec<Vec<u64>>,
    ) -> Self {
        if n <= 2 {
            // The trivial group: only residue 1 mod 2 (or 0 mod 1).
            let one = (1 % n) as usize;
            dlog[one] = Vec::new();
            let units = vec![1 % n];
            let mut position = vec![None; n as usize];
            position[one] = Some(0);
            return UnitGroup {
                modulus: n,
                factorization,
                components,
                units,
                dlog,
                position,
            };
        }
        let mut units = Vec::new();
        let mut position = vec![None; n as usize];
        for a in 1..n {
            if a.gcd(&n) == 1 {
                position[a as usize] = Some(units.len());
                units.push(a);
            } else {
                dlog[a as usize].clear();
            }
        }
        UnitGroup {
            modulus: n,
            factorization,
            components,
            units,
            dlog,
            position,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    pub fn prime_divisors(&self) -> Vec<u64> {
        self.factorization.iter().map(|&(p, _)| p).collect()
    }

    pub fn components(&self) -> &[CyclicComponent] {
        &self.components
    }

    /// Units in increasing order.
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn order(&self) -> u64 {
        self.units.len() as u64
    }

    pub fn is_unit(&self, a: u64) -> bool {
        self.position[(a % self.modulus) as usize].is_some()
    }

    pub fn position(&self, a: u64) -> Option<usize> {
        self.position[(a % self.modulus) as usize]
    }

    /// Exponent vector of `a` with respect to the component generators.
    pub fn dlog(&self, a: u64) -> Option<&[u64]> {
        let a = a % self.modulus;
        self.position[a as usize].map(|_| self.dlog[a as usize].as_slice())
    }

    /// Complex conjugation `c`, the residue `-1`.
    pub fn conjugation(&self) -> u64 {
        self.modulus - 1
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.modulus)
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        inv_mod(a % self.modulus, self.modulus)
    }

    pub fn to_table(&self) -> UnitGroupTable {
        UnitGroupTable {
            schema_version: UnitGroupTable::SCHEMA_VERSION,
            modulus: self.modulus,
            components: self.components.clone(),
            dlog: self
                .units
                .iter()
                .map(|&a| (a, self.dlog[a as usize].clone()))
                .collect(),
        }
    }

    /// Rebuild from a cached table. Every entry is checked against the
    /// generators, and the component structure must match a fresh
    /// construction, so a stale or corrupt cache is rejected rather than
    /// trusted.
    pub fn from_table(table: &UnitGroupTable) -> Result<Self> {
        let n = table.modulus;
        if n < 3 {
            return Err(Error::InvalidModulus(n));
        }
        let bad = |why: &str| Error::Parse(format!("unit group cache for n={n}: {why}"));
        if table.schema_version != UnitGroupTable::SCHEMA_VERSION {
            return Err(bad("schema version mismatch"));
        }
        let factorization = factorize(n);
        let expected_phi = euler_phi(n);
        let comps = &table.components;
        if comps.iter().map(|c| c.order).product::<u64>() != expected_phi
            || table.dlog.len() as u64 != expected_phi
        {
            return Err(bad("group order mismatch"));
        }
        let fresh = Self::build(n);
        if fresh.components != *comps {
            return Err(bad("component structure differs"));
        }
        let mut dlog = vec![Vec::new(); n as usize];
        for (a, exps) in &table.dlog {
            if *a >= n || exps.len() != comps.len() {
                return Err(bad("malformed entry"));
            }
            let r = comps
                .iter()
                .zip(exps)
                .fold(1 % n, |acc, (c, &e)| mul_mod(acc, pow_mod(c.generator, e, n), n));
            if r != *a {
                return Err(bad("discrete log does not reproduce its residue"));
            }
            dlog[*a as usize] = exps.clone();
        }
        Ok(Self::assemble(n, factorization, comps.clone(), dlog))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Order of `a` by brute force.
    fn order_of(a: u64, n: u64) -> u64 {
        let mut x = a % n;
        let mut k = 1;
        while x != 1 {
            x = mul_mod(x, a, n);
            k += 1;
        }
        k
    }

    #[test]
    fn small_moduli_structure() {
        let g4 = UnitGroup::new(4).unwrap();
        assert_eq!(g4.components().len(), 1);
        assert_eq!((g4.components()[0].order, g4.components()[0].generator), (2, 3));

        let g8 = UnitGroup::new(8).unwrap();
        let gens: Vec<_> = g8.components().iter().map(|c| (c.generator, c.order)).collect();
        assert_eq!(gens, vec![(7, 2), (5, 2)]);

        let g15 = UnitGroup::new(15).unwrap();
        let shape: Vec<_> = g15.components().iter().map(|c| (c.prime, c.order)).collect();
        assert_eq!(shape, vec![(3, 2), (5, 4)]);
    }

    #[test]
    fn rejects_tiny_moduli() {
        assert_eq!(UnitGroup::new(2), Err(Error::InvalidModulus(2)));
        assert_eq!(UnitGroup::new(0), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn dlogs_are_bijective_and_generators_have_stated_order() {
        for n in 3..=200u64 {
            let g = UnitGroup::new(n).unwrap();
            assert_eq!(g.order(), euler_phi(n), "n={n}");
            let prod: u64 = g.components().iter().map(|c| c.order).product();
            assert_eq!(prod, g.order());
            for c in g.components() {
                assert_eq!(order_of(c.generator, n), c.order, "n={n}");
            }
            let mut seen = std::collections::HashSet::new();
            for &a in g.units() {
                let e = g.dlog(a).unwrap().to_vec();
                assert!(seen.insert(e.clone()));
                let back = g
                    .components()
                    .iter()
                    .zip(&e)
                    .fold(1, |acc, (c, &k)| mul_mod(acc, pow_mod(c.generator, k, n), n));
                assert_eq!(back, a);
            }
            assert!(g.is_unit(g.conjugation()));
        }
    }

    #[test]
    fn table_roundtrip_and_corruption() {
        let g = UnitGroup::new(60).unwrap();
        let t = g.to_table();
        assert_eq!(UnitGroup::from_table(&t).unwrap(), g);
        let mut broken = t.clone();
        broken.dlog[3].1[0] = (broken.dlog[3].1[0] + 1) % broken.components[0].order;
        assert!(UnitGroup::from_table(&broken).is_err());
    }
}
