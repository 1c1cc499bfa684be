//! The Galois group `G = (Z/n)^×` or a quotient `G/H`, and complex-valued
//! functions on it.

use std::sync::Arc;

use num_complex::Complex;

use super::dirichlet::{characters_of, CharacterFilter, DirichletCharacter};
use super::unit_group::UnitGroup;
use crate::arith::{complex, PrecisionContext, Real};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct GaloisGroup {
    units: Arc<UnitGroup>,
    subgroup: Vec<u64>,
    reps: Vec<u64>,
    class_of: Vec<Option<usize>>,
}

impl PartialEq for GaloisGroup {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.subgroup == other.subgroup
    }
}

impl GaloisGroup {
    pub fn full(units: Arc<UnitGroup>) -> Self {
        Self::quotient(units, &[]).expect("trivial subgroup")
    }

    /// `G/H` with `H` the subgroup generated by `generators`.
    pub fn quotient(units: Arc<UnitGroup>, generators: &[u64]) -> Result<Self> {
        let n = units.modulus();
        for &h in generators {
            if !units.is_unit(h) {
                return Err(Error::domain(format!("{h} is not a unit mod {n}")));
            }
        }
        let mut subgroup = vec![1 % n];
        let mut frontier = vec![1 % n];
        while let Some(x) = frontier.pop() {
            for &h in generators {
                let y = units.mul(x, h % n);
                if !subgroup.contains(&y) {
                    subgroup.push(y);
                    frontier.push(y);
                }
            }
        }
        subgroup.sort_unstable();
        let mut reps = Vec::new();
        let mut class_of = vec![None; n as usize];
        for &a in units.units() {
            if class_of[a as usize].is_some() {
                continue;
            }
            let k = reps.len();
            reps.push(a);
            for &h in &subgroup {
                class_of[units.mul(a, h) as usize] = Some(k);
            }
        }
        Ok(GaloisGroup {
            units,
            subgroup,
            reps,
            class_of,
        })
    }

    pub fn units(&self) -> &Arc<UnitGroup> {
        &self.units
    }

    pub fn modulus(&self) -> u64 {
        self.units.modulus()
    }

    /// Elements of `H`, sorted.
    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    pub fn is_quotient(&self) -> bool {
        self.subgroup.len() > 1
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Smallest residue in each coset, in increasing order.
    pub fn representatives(&self) -> &[u64] {
        &self.reps
    }

    pub fn representative(&self, i: usize) -> u64 {
        self.reps[i]
    }

    pub fn class_of(&self, a: u64) -> Option<usize> {
        self.class_of[(a % self.modulus()) as usize]
    }

    pub fn coset(&self, i: usize) -> Vec<u64> {
        let mut c: Vec<u64> = self
            .subgroup
            .iter()
            .map(|&h| self.units.mul(self.reps[i], h))
            .collect();
        c.sort_unstable();
        c
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.class_of(self.units.mul(self.reps[i], self.reps[j]))
            .expect("units are closed")
    }

    pub fn inverse(&self, i: usize) -> usize {
        let inv = self.units.inverse(self.reps[i]).expect("unit");
        self.class_of(inv).expect("unit")
    }

    pub fn identity(&self) -> usize {
        self.class_of(1).expect("identity")
    }

    /// Class of complex conjugation `c = -1`.
    pub fn conjugation(&self) -> usize {
        self.class_of(self.units.conjugation()).expect("-1 is a unit")
    }

    /// Whether `-1 ∈ H`, i.e. the fixed field is not CM.
    pub fn conjugation_is_trivial(&self) -> bool {
        self.conjugation() == self.identity()
    }

    /// Characters of `G` trivial on `H`, i.e. the characters of `G/H`.
    pub fn characters(&self, filter: CharacterFilter) -> Vec<DirichletCharacter> {
        characters_of(&self.units, filter)
            .into_iter()
            .filter(|chi| self.is_trivial_on_subgroup(chi))
            .collect()
    }

    pub fn is_trivial_on_subgroup(&self, chi: &DirichletCharacter) -> bool {
        self.subgroup
            .iter()
            .all(|&h| chi.value_arg(h) == Some(num_rational::Ratio::from_integer(0)))
    }
}

/// A complex-valued function on a [`GaloisGroup`], indexed by coset.
#[derive(Debug, Clone)]
pub struct GroupFunction<T: Real> {
    group: Arc<GaloisGroup>,
    values: Vec<Complex<T>>,
}

impl<T: Real> GroupFunction<T> {
    pub fn new(group: Arc<GaloisGroup>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupFunction { group, values })
    }

    /// Build from a function of the coset representative.
    pub fn from_fn(group: Arc<GaloisGroup>, mut f: impl FnMut(u64) -> Complex<T>) -> Self {
        let values = group.representatives().iter().map(|&a| f(a)).collect();
        GroupFunction { group, values }
    }

    /// Indicator of the cosets containing the given residues.
    pub fn indicator(group: Arc<GaloisGroup>, residues: &[u64], ctx: &PrecisionContext) -> Result<Self> {
        let mut values = vec![complex::from_int(0, ctx); group.order()];
        for &a in residues {
            let k = group
                .class_of(a)
                .ok_or_else(|| Error::domain(format!("{a} is not a unit mod {}", group.modulus())))?;
            values[k] = complex::from_int(1, ctx);
        }
        Ok(GroupFunction { group, values })
    }

    pub fn from_character(
        group: Arc<GaloisGroup>,
        chi: &DirichletCharacter,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        if chi.modulus() != group.modulus() {
            return Err(Error::GroupMismatch);
        }
        if !group.is_trivial_on_subgroup(chi) {
            return Err(Error::UnsupportedCharacter(format!(
                "character {} is not trivial on the subgroup",
                chi.index()
            )));
        }
        Ok(Self::from_fn(group, |a| chi.value(a, ctx)))
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Value at the coset of residue `a`.
    pub fn at(&self, a: u64) -> Option<&Complex<T>> {
        self.group.class_of(a).map(|k| &self.values[k])
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if *self.group == *other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// `(1/|G|) Σ f(σ) conj(g(σ))`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.check_same(other)?;
        let mut acc = Complex::new(T::zero(), T::zero());
        for (a, b) in self.values.iter().zip(&other.values) {
            acc = acc + a.clone() * b.conj();
        }
        let m = small_int::<T>(self.group.order() as i64);
        Ok(Complex::new(acc.re / m.clone(), acc.im / m))
    }

    /// `(f * g)(σ) = (1/d) Σ_τ f(τ) g(σ τ^{-1})` with `d = |G|/2`.
    ///
    /// With this scaling the sum of `<Φ*Φ^∨, χ>` over odd `χ` is `1/2` for
    /// every CM type, and convolution commutes with lifting along `G → G/H`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let g = &self.group;
        let m = g.order();
        let inv: Vec<usize> = (0..m).map(|t| g.inverse(t)).collect();
        let zero = Complex::new(T::zero(), T::zero());
        let mut values = vec![zero; m];
        for (s, out) in values.iter_mut().enumerate() {
            for (t, ft) in self.values.iter().enumerate() {
                if ft.re.is_zero() && ft.im.is_zero() {
                    continue;
                }
                *out = out.clone() + ft.clone() * other.values[g.mul(s, inv[t])].clone();
            }
        }
        let (two, order) = (small_int::<T>(2), small_int::<T>(m as i64));
        for v in &mut values {
            *v = Complex::new(v.re.clone() * &two / &order, v.im.clone() * &two / &order);
        }
        Ok(GroupFunction {
            group: self.group.clone(),
            values,
        })
    }

    /// `f^∨(σ) = f(σ^{-1})`.
    pub fn dual(&self) -> Self {
        let g = &self.group;
        let values = (0..g.order()).map(|s| self.values[g.inverse(s)].clone()).collect();
        GroupFunction {
            group: self.group.clone(),
            values,
        }
    }

    /// `σ ↦ f(c σ)`.
    pub fn conj_by_c(&self) -> Self {
        let g = &self.group;
        let c = g.conjugation();
        let values = (0..g.order()).map(|s| self.values[g.mul(c, s)].clone()).collect();
        GroupFunction {
            group: self.group.clone(),
            values,
        }
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        GroupFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// `f(cσ) = -f(σ)` for all σ, up to `tol`.
    pub fn is_odd(&self, tol: &T) -> bool {
        self.conj_by_c()
            .values
            .iter()
            .zip(&self.values)
            .all(|(a, b)| complex::abs(&(a.clone() + b.clone())) <= *tol)
    }

    /// Pull back along `G → G/H`: `(f∘p)(σ) = f(σH)`.
    pub fn lift(&self, full: Arc<GaloisGroup>) -> Result<Self> {
        if full.modulus() != self.group.modulus() || full.is_quotient() {
            return Err(Error::GroupMismatch);
        }
        let g = &self.group;
        Ok(Self::from_fn(full, |a| {
            self.values[g.class_of(a).expect("unit")].clone()
        }))
    }
}

/// Small integers are exact at any width, and mixed-width arithmetic keeps
/// the wider operand's precision.
fn small_int<T: Real>(k: i64) -> T {
    T::from_int(k, &PrecisionContext::new(64).expect("64 bits is valid"))
}
