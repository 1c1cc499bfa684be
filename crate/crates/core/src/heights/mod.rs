//! The Faltings height of a CM type by two routes: the character formula
//! and the fixed-point linear system. The two agree modulo the log-span.

mod system;

use num_rational::Ratio;

pub use system::{cotangent_function, HeightSystem};

use crate::arith::{PrecisionContext, Real};
use crate::characters::{CharacterFilter, DirichletCharacter};
use crate::cmtypes::{lift_type, pairing_with, self_convolution, CmType, SubfieldDescriptor};
use crate::error::{Error, Result};
use crate::lfunctions::l_ratio_at_0;
use crate::relation::{
    logspan_basis, logspan_member, max_denominator, pslq, LogSpanElement, LogSpanOutcome, PslqOptions,
};

/// Largest admissible denominator of the calibration constant.
pub const MAX_CALIBRATION_DENOMINATOR: i64 = 16;
/// Largest admissible denominator of a residual coefficient.
pub const MAX_RESIDUAL_DENOMINATOR: i128 = 10_000;

#[derive(Debug, Clone)]
pub struct CharacterContribution<T> {
    pub character: DirichletCharacter,
    pub pairing: T,
    /// `L'(χ_prim, 0) / L(χ_prim, 0)`.
    pub l_ratio: T,
    /// `-2d · pairing · l_ratio`.
    pub contribution: T,
}

#[derive(Debug, Clone)]
pub struct CharacterRoute<T> {
    pub height: T,
    pub per_character: Vec<CharacterContribution<T>>,
}

/// `h = -d Σ_{χ odd} <Φ*Φ^∨, χ> · 2 L'(χ_prim, 0)/L(χ_prim, 0)`. Works on
/// quotient groups as well; the sum runs over odd characters of `G/H`.
pub fn height_character_route<T: Real>(phi: &CmType, ctx: &PrecisionContext) -> Result<CharacterRoute<T>> {
    let conv = self_convolution::<T>(phi, ctx);
    let scale = T::from_int(-2 * phi.d() as i64, ctx);
    let mut per_character = Vec::new();
    for chi in phi.group().characters(CharacterFilter::Odd) {
        let pairing = pairing_with(&conv, &chi, ctx)?.re;
        let l_ratio = l_ratio_at_0::<T>(&chi.primitive_part(), ctx)?.re;
        let contribution = scale.clone() * &pairing * &l_ratio;
        per_character.push(CharacterContribution {
            character: chi,
            pairing,
            l_ratio,
            contribution,
        });
    }
    let height = per_character.iter().map(|c| c.contribution.clone()).sum();
    Ok(CharacterRoute { height, per_character })
}

/// `(1/8) Σ_j X_j` for the system of Φ, solved by elimination.
pub fn height_system_route<T: Real>(phi: &CmType, ctx: &PrecisionContext) -> Result<T> {
    let system = HeightSystem::<T>::build(phi, ctx)?;
    let x = system.solve_elimination(ctx)?;
    let s: T = x.into_iter().sum();
    Ok(s.mul_pow2(-3))
}

#[derive(Debug, Clone)]
pub struct Calibration<T> {
    /// `c` with `c · h_sys - h_char` in the log-span.
    pub c: Ratio<i64>,
    /// `c · h_sys - h_char`.
    pub residual: T,
    pub coefficients: Vec<(LogSpanElement, Ratio<i128>)>,
}

/// Find a small rational `c` such that `c · h_sys - h_char` lies in the
/// span over Q of `{log p} ∪ {sin(2πj/n) log p}` for `p | n`.
///
/// A joint relation on `(h_sys, h_char, basis…)` proposes `c`; the proposal
/// is confirmed by a separate membership test. If no proposal survives, small
/// candidates `p/q` with `q ≤ 16`, `|p/q| ≤ 4` are tried in order.
pub fn compare_routes<T: Real>(h_sys: &T, h_char: &T, n: u64, ctx: &PrecisionContext) -> Result<Calibration<T>> {
    let basis = logspan_basis(n);
    let mut values = vec![h_sys.clone(), h_char.clone()];
    values.extend(basis.iter().map(|b| b.value::<T>(ctx)));
    let mut candidates: Vec<Ratio<i64>> = Vec::new();
    if let Some(m) = pslq(&values, ctx, &PslqOptions::default())?.relation() {
        if m[1] != 0 {
            if let (Ok(num), Ok(den)) = (i64::try_from(-m[0]), i64::try_from(m[1])) {
                candidates.push(Ratio::new(num, den));
            }
        }
    }
    for q in 1..=MAX_CALIBRATION_DENOMINATOR {
        for p in 1..=4 * q {
            for s in [1, -1] {
                let c = Ratio::new(s * p, q);
                if *c.denom() == q && !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        }
    }
    for c in candidates {
        if *c.denom() > MAX_CALIBRATION_DENOMINATOR {
            continue;
        }
        let cv = T::from_ratio(*c.numer(), *c.denom(), ctx);
        let residual = cv * h_sys - h_char;
        if let LogSpanOutcome::Member(coefficients) = logspan_member(&residual, n, ctx)? {
            if max_denominator(&coefficients) <= MAX_RESIDUAL_DENOMINATOR {
                return Ok(Calibration {
                    c,
                    residual,
                    coefficients,
                });
            }
        }
    }
    Err(Error::CalibrationFailed(format!(
        "no c = p/q with q <= {MAX_CALIBRATION_DENOMINATOR} puts c·h_sys - h_char in the log-span mod {n}"
    )))
}

#[derive(Debug, Clone)]
pub struct HeightReport<T> {
    pub modulus: u64,
    /// Residues of the type as given (on `G/H` when a subgroup is present).
    pub type_residues: Vec<u64>,
    pub subgroup: Vec<u64>,
    pub h_character: T,
    pub per_character: Vec<CharacterContribution<T>>,
    pub h_system: T,
    pub calibration: Calibration<T>,
    pub basis: Vec<LogSpanElement>,
}

/// Both routes plus calibration. For a quotient type the system route runs
/// on the lifted type and is divided by `|H|`.
pub fn height_report<T: Real>(phi: &CmType, ctx: &PrecisionContext) -> Result<HeightReport<T>> {
    let n = phi.modulus();
    let route = height_character_route::<T>(phi, ctx)?;
    let h_system = if phi.group().is_quotient() {
        let desc = SubfieldDescriptor::from_units(phi.group().units().clone(), phi.group().subgroup())?;
        let lifted = lift_type(&desc, phi)?;
        let h = phi.group().subgroup().len() as i64;
        height_system_route::<T>(&lifted, ctx)? / T::from_int(h, ctx)
    } else {
        height_system_route::<T>(phi, ctx)?
    };
    let calibration = compare_routes(&h_system, &route.height, n, ctx)?;
    Ok(HeightReport {
        modulus: n,
        type_residues: phi.residues(),
        subgroup: phi.group().subgroup().to_vec(),
        h_character: route.height,
        per_character: route.per_character,
        h_system,
        calibration,
        basis: logspan_basis(n),
    })
}

#[derive(Debug, Clone)]
pub struct InvarianceReport<T> {
    /// `|Σ_{χ on G/H} pairing·L'/L - Σ_{χ on G, trivial on H} pairing·L'/L|`.
    pub residual: T,
    /// Largest `|<Φ'*Φ'^∨, χ>|` over odd `χ` nontrivial on `H`.
    pub max_vanishing: T,
}

/// Compare the pairing-weighted sum of `L'/L(χ_prim, 0)` over the quotient
/// with the same sum over `G` for the lifted type.
pub fn extension_invariance_check<T: Real>(
    desc: &SubfieldDescriptor,
    phi_e: &CmType,
    ctx: &PrecisionContext,
) -> Result<InvarianceReport<T>> {
    let lifted = lift_type(desc, phi_e)?;
    let weighted = |phi: &CmType, only_trivial_on_h: bool| -> Result<(T, T)> {
        let conv = self_convolution::<T>(phi, ctx);
        let mut sum = T::zero();
        let mut vanish = T::zero();
        for chi in phi.group().characters(CharacterFilter::Odd) {
            let p = pairing_with(&conv, &chi, ctx)?;
            if only_trivial_on_h && !desc.group().is_trivial_on_subgroup(&chi) {
                vanish = vanish.max_of(p.norm_sqr().sqrt());
                continue;
            }
            if p.re.is_zero() {
                continue;
            }
            sum += p.re * l_ratio_at_0::<T>(&chi.primitive_part(), ctx)?.re;
        }
        Ok((sum, vanish))
    };
    let (small, _) = weighted(phi_e, false)?;
    let (big, max_vanishing) = weighted(&lifted, true)?;
    Ok(InvarianceReport {
        residual: (small - big).abs(),
        max_vanishing,
    })
}
