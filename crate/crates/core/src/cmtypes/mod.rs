//! CM types on `G = (Z/n)^×` and on quotients `G/H`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;

use crate::arith::{PrecisionContext, Real};
use crate::characters::{CharacterFilter, DirichletCharacter, GaloisGroup, GroupFunction, UnitGroup};
use crate::error::{Error, Result};

/// The CM subfield of `Q(μ_n)` fixed by a subgroup `H` with `-1 ∉ H`.
#[derive(Debug, Clone)]
pub struct SubfieldDescriptor {
    group: Arc<GaloisGroup>,
}

impl SubfieldDescriptor {
    pub fn new(n: u64, generators: &[u64]) -> Result<Self> {
        let units = Arc::new(UnitGroup::new(n)?);
        Self::from_units(units, generators)
    }

    pub fn from_units(units: Arc<UnitGroup>, generators: &[u64]) -> Result<Self> {
        let group = GaloisGroup::quotient(units, generators)?;
        if group.conjugation_is_trivial() {
            return Err(Error::NotCmField(format!(
                "-1 lies in the subgroup {:?}",
                group.subgroup()
            )));
        }
        Ok(SubfieldDescriptor {
            group: Arc::new(group),
        })
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn subgroup(&self) -> &[u64] {
        self.group.subgroup()
    }

    /// The full group `G` over the same modulus.
    pub fn full_group(&self) -> Arc<GaloisGroup> {
        Arc::new(GaloisGroup::full(self.group.units().clone()))
    }
}

/// A set Φ of cosets containing exactly one of `σ`, `cσ` for every `σ`.
#[derive(Debug, Clone)]
pub struct CmType {
    group: Arc<GaloisGroup>,
    members: Vec<usize>,
}

impl PartialEq for CmType {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.members == other.members
    }
}

impl CmType {
    /// Validate `residues` as a CM type on `group`.
    pub fn new(group: Arc<GaloisGroup>, residues: &[u64]) -> Result<Self> {
        if group.conjugation_is_trivial() {
            return Err(Error::NotCmField("complex conjugation is trivial on the group".into()));
        }
        let n = group.modulus();
        let mut members = Vec::with_capacity(residues.len());
        for &a in residues {
            let k = group
                .class_of(a)
                .ok_or_else(|| Error::NotACmType(format!("{a} is not a unit mod {n}")))?;
            if !members.contains(&k) {
                members.push(k);
            }
        }
        members.sort_unstable();
        let c = group.conjugation();
        for k in 0..group.order() {
            let conj = group.mul(c, k);
            let hits = usize::from(members.contains(&k)) + usize::from(members.contains(&conj));
            if hits != 1 {
                let (a, b) = (group.representative(k), group.representative(conj));
                let what = if hits == 0 { "neither" } else { "both" };
                return Err(Error::NotACmType(format!(
                    "contains {what} of the conjugate pair {{{a}, {b}}}"
                )));
            }
        }
        Ok(CmType { group, members })
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    /// `d = |Φ| = |G|/2`.
    pub fn d(&self) -> usize {
        self.members.len()
    }

    /// Coset indices of Φ, increasing.
    pub fn classes(&self) -> &[usize] {
        &self.members
    }

    /// Smallest residue of each member coset, increasing.
    pub fn residues(&self) -> Vec<u64> {
        self.members.iter().map(|&k| self.group.representative(k)).collect()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.group
            .class_of(a)
            .map(|k| self.members.binary_search(&k).is_ok())
            .unwrap_or(false)
    }

    pub fn indicator<T: Real>(&self, ctx: &PrecisionContext) -> GroupFunction<T> {
        GroupFunction::indicator(self.group.clone(), &self.residues(), ctx).expect("members are units")
    }

    fn map_classes(&self, f: impl Fn(usize) -> usize) -> CmType {
        let mut members: Vec<usize> = self.members.iter().map(|&k| f(k)).collect();
        members.sort_unstable();
        CmType {
            group: self.group.clone(),
            members,
        }
    }

    /// `σ·Φ` for the residue `σ`.
    pub fn translate(&self, sigma: u64) -> Result<CmType> {
        let s = self
            .group
            .class_of(sigma)
            .ok_or_else(|| Error::domain(format!("{sigma} is not a unit")))?;
        Ok(self.map_classes(|k| self.group.mul(s, k)))
    }

    /// The conjugate type `cΦ`.
    pub fn conjugate(&self) -> CmType {
        let c = self.group.conjugation();
        self.map_classes(|k| self.group.mul(c, k))
    }

    /// `Φ^∨ = {σ^{-1} : σ ∈ Φ}`.
    pub fn dual(&self) -> CmType {
        self.map_classes(|k| self.group.inverse(k))
    }

    /// One member per conjugate pair, chosen uniformly by `rng`.
    pub fn random<R: Rng + ?Sized>(group: Arc<GaloisGroup>, rng: &mut R) -> Result<CmType> {
        if group.conjugation_is_trivial() {
            return Err(Error::NotCmField("complex conjugation is trivial on the group".into()));
        }
        let c = group.conjugation();
        let mut members = Vec::new();
        for k in 0..group.order() {
            let conj = group.mul(c, k);
            if k < conj {
                members.push(if rng.gen_bool(0.5) { k } else { conj });
            }
        }
        members.sort_unstable();
        Ok(CmType { group, members })
    }
}

/// Validate a CM type on the full group mod `n`.
pub fn validate_type(n: u64, residues: &[u64]) -> Result<CmType> {
    let units = Arc::new(UnitGroup::new(n)?);
    CmType::new(Arc::new(GaloisGroup::full(units)), residues)
}

/// `Φ * Φ^∨` as a group function.
pub fn self_convolution<T: Real>(phi: &CmType, ctx: &PrecisionContext) -> GroupFunction<T> {
    let f = phi.indicator::<T>(ctx);
    f.convolve(&f.dual()).expect("same group")
}

/// `<Φ * Φ^∨, χ>`, real and non-negative. `χ` must be trivial on the
/// subgroup of Φ's group.
pub fn pairing<T: Real>(phi: &CmType, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<Complex<T>> {
    let conv = self_convolution::<T>(phi, ctx);
    pairing_with(&conv, chi, ctx)
}

/// Pairing against a precomputed [`self_convolution`].
pub fn pairing_with<T: Real>(
    conv: &GroupFunction<T>,
    chi: &DirichletCharacter,
    ctx: &PrecisionContext,
) -> Result<Complex<T>> {
    let c = GroupFunction::from_character(conv.group().clone(), chi, ctx)?;
    conv.inner(&c)
}

/// The preimage of `Φ_E` under `G → G/H`.
pub fn lift_type(desc: &SubfieldDescriptor, phi_e: &CmType) -> Result<CmType> {
    if **phi_e.group() != **desc.group() {
        return Err(Error::GroupMismatch);
    }
    let full = desc.full_group();
    let q = desc.group();
    let residues: Vec<u64> = phi_e.classes().iter().flat_map(|&k| q.coset(k)).collect();
    CmType::new(full, &residues)
}

#[derive(Debug, Clone)]
pub struct ConductorTerm<T> {
    /// `Σ_{χ odd} <Φ*Φ^∨, χ> log f_χ`.
    pub total: T,
    /// `p ↦ Σ_{χ odd} <Φ*Φ^∨, χ> v_p(f_χ)`.
    pub per_prime: BTreeMap<u64, T>,
}

pub fn conductor_term<T: Real>(phi: &CmType, ctx: &PrecisionContext) -> Result<ConductorTerm<T>> {
    let conv = self_convolution::<T>(phi, ctx);
    let mut per_prime: BTreeMap<u64, T> = BTreeMap::new();
    for chi in phi.group().characters(CharacterFilter::Odd) {
        let w = pairing_with(&conv, &chi, ctx)?.re;
        let mut f = chi.conductor();
        for p in chi.group().prime_divisors() {
            let mut v = 0i64;
            while f % p == 0 {
                f /= p;
                v += 1;
            }
            let entry = per_prime.entry(p).or_insert_with(T::zero);
            *entry += w.clone() * T::from_int(v, ctx);
        }
    }
    let total = per_prime
        .iter()
        .map(|(&p, c)| c.clone() * T::from_int(p as i64, ctx).ln())
        .sum();
    Ok(ConductorTerm { total, per_prime })
}

#[cfg(test)]
mod tests;
