//! Dirichlet characters with exact rational arguments.

use std::sync::Arc;

use num_complex::Complex;
use num_integer::Integer as _;
use num_rational::Ratio;

use super::unit_group::UnitGroup;
use crate::arith::{complex, PrecisionContext, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterFilter {
    All,
    Odd,
    Even,
}

impl CharacterFilter {
    pub fn accepts(self, p: Parity) -> bool {
        match self {
            CharacterFilter::All => true,
            CharacterFilter::Odd => p == Parity::Odd,
            CharacterFilter::Even => p == Parity::Even,
        }
    }
}

/// A character of `(Z/n)^×`, given by one exponent per cyclic component:
/// the generator `g_i` maps to `e^{2 pi i e_i / d_i}`.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
    parity: Parity,
    conductor: u64,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    /// Panics if the exponent vector has the wrong length.
    pub fn from_exponents(group: Arc<UnitGroup>, mut exponents: Vec<u64>) -> Self {
        assert_eq!(exponents.len(), group.components().len());
        for (e, c) in exponents.iter_mut().zip(group.components()) {
            *e %= c.order;
        }
        let mut chi = DirichletCharacter {
            group,
            exponents,
            parity: Parity::Even,
            conductor: 1,
        };
        if chi.group.modulus() > 2 {
            let minus_one = chi.group.modulus() - 1;
            if chi.value_arg(minus_one) == Some(Ratio::new(1, 2)) {
                chi.parity = Parity::Odd;
            }
        }
        chi.conductor = chi.compute_conductor();
        chi
    }

    pub fn principal(group: Arc<UnitGroup>) -> Self {
        let k = group.components().len();
        Self::from_exponents(group, vec![0; k])
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Position in the enumeration order of [`characters`](super::characters):
    /// mixed radix over the components, last component fastest.
    pub fn index(&self) -> usize {
        self.exponents
            .iter()
            .zip(self.group.components())
            .fold(0usize, |acc, (&e, c)| acc * c.order as usize + e as usize)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    /// Order of the character as an element of the dual group.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(self.group.components())
            .fold(1, |acc, (&e, c)| acc.lcm(&(c.order / e.gcd(&c.order))))
    }

    /// `chi(a) = e^{2 pi i r}` with `r` in `[0, 1)`; `None` for non-units.
    pub fn value_arg(&self, a: u64) -> Option<Ratio<i64>> {
        let logs = self.group.dlog(a)?;
        let mut r = Ratio::from_integer(0i64);
        for ((&l, &e), c) in logs.iter().zip(&self.exponents).zip(self.group.components()) {
            let num = (u128::from(l) * u128::from(e) % u128::from(c.order)) as i64;
            r += Ratio::new(num, c.order as i64);
        }
        Some(r - r.floor())
    }

    /// `chi(a)` as a complex number, `0` on non-units.
    pub fn value<T: Real>(&self, a: u64, ctx: &PrecisionContext) -> Complex<T> {
        match self.value_arg(a) {
            Some(r) => complex::root_of_unity(r, ctx),
            None => Complex::new(T::zero(), T::zero()),
        }
    }

    pub fn conj(&self) -> Self {
        let exps = self
            .exponents
            .iter()
            .zip(self.group.components())
            .map(|(&e, c)| (c.order - e) % c.order)
            .collect();
        Self::from_exponents(self.group.clone(), exps)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus(), other.modulus());
        let exps = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .zip(self.group.components())
            .map(|((&a, &b), c)| (a + b) % c.order)
            .collect();
        Self::from_exponents(self.group.clone(), exps)
    }

    fn compute_conductor(&self) -> u64 {
        let mut f = 1u64;
        let comps = self.group.components();
        for &(p, k) in self.group.factorization() {
            let idx: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].prime == p).collect();
            let local_order = |i: usize| {
                let (e, o) = (self.exponents[i], comps[i].order);
                o / e.gcd(&o)
            };
            if p == 2 {
                match (k, idx.as_slice()) {
                    (1, _) => {}
                    (2, [i]) => {
                        if self.exponents[*i] != 0 {
                            f *= 4;
                        }
                    }
                    (_, [sign, five]) => {
                        let t = local_order(*five);
                        if t > 1 {
                            f *= 4 * t;
                        } else if self.exponents[*sign] != 0 {
                            f *= 4;
                        }
                    }
                    _ => unreachable!("2-adic component layout"),
                }
            } else {
                let o = local_order(idx[0]);
                if o == 1 {
                    continue;
                }
                let mut pp = p;
                let mut rest = o;
                while rest % p == 0 {
                    rest /= p;
                    pp *= p;
                }
                f *= pp;
            }
        }
        f
    }

    /// The primitive character mod `f_chi` inducing this one.
    pub fn primitive_part(&self) -> DirichletCharacter {
        let f = self.conductor;
        if f == self.modulus() {
            return self.clone();
        }
        let target = Arc::new(UnitGroup::build(f));
        let n = self.modulus();
        let exps = target
            .components()
            .iter()
            .map(|c| {
                // A unit mod n reducing to the generator mod f.
                let lift = (0..)
                    .map(|t| c.generator + f * t)
                    .find(|&u| u.gcd(&n) == 1)
                    .expect("lifts exist");
                let r = self.value_arg(lift).expect("lift is a unit");
                let scaled = r * Ratio::from_integer(c.order as i64);
                debug_assert!(scaled.is_integer());
                scaled.to_integer() as u64
            })
            .collect();
        DirichletCharacter::from_exponents(target, exps)
    }
}

/// All characters of `group` passing `filter`, in index order.
pub fn characters_of(group: &Arc<UnitGroup>, filter: CharacterFilter) -> Vec<DirichletCharacter> {
    let comps = group.components();
    let total: u64 = comps.iter().map(|c| c.order).product();
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut exps = vec![0u64; comps.len()];
        for (e, c) in exps.iter_mut().zip(comps).rev() {
            *e = rest % c.order;
            rest /= c.order;
        }
        let chi = DirichletCharacter::from_exponents(group.clone(), exps);
        if filter.accepts(chi.parity()) {
            out.push(chi);
        }
    }
    out
}
