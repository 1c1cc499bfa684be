//! Bundled numerical self-checks, one suite per identity.
//!
//! Case parameters are drawn sequentially from a seeded RNG, then evaluated in
//! parallel; results come back in case order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{complex, PrecisionContext, Real};
use crate::characters::{CharacterFilter, DirichletCharacter, GaloisGroup, GroupFunction, UnitGroup};
use crate::cmtypes::{self, CmType, SubfieldDescriptor};
use crate::error::{Error, Result};
use crate::heights::{self, HeightSystem};
use crate::lfunctions;
use crate::relation::MIN_PSLQ_BITS;
use crate::torsion::{self, Eigenpair, SignConvention, TorsionInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    FunctionalEquation,
    Cotangent,
    HalfSum,
    Waslem,
    SystemVsCharacter,
    Torsion,
    Invariance,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::FunctionalEquation,
        Suite::Cotangent,
        Suite::HalfSum,
        Suite::Waslem,
        Suite::SystemVsCharacter,
        Suite::Torsion,
        Suite::Invariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FunctionalEquation => "functional-equation",
            Suite::Cotangent => "cotangent",
            Suite::HalfSum => "half-sum",
            Suite::Waslem => "waslem",
            Suite::SystemVsCharacter => "system-vs-character",
            Suite::Torsion => "torsion",
            Suite::Invariance => "invariance",
        }
    }

    /// Default moduli when none are given.
    pub fn default_moduli(self) -> Vec<u64> {
        match self {
            Suite::FunctionalEquation | Suite::Cotangent => vec![3, 4, 5, 7, 8, 12],
            Suite::HalfSum => vec![3, 4, 5, 7, 8, 12, 15, 16, 20, 24],
            Suite::Waslem => (3..=24).collect(),
            Suite::SystemVsCharacter => vec![3, 4, 5, 8, 12],
            Suite::Torsion => Vec::new(),
            Suite::Invariance => vec![12, 15, 20, 21, 24],
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::HalfSum => 20,
            Suite::Waslem => 50,
            Suite::Torsion => 100,
            Suite::Invariance => 2,
            _ => 1,
        }
    }

    /// Pass threshold as a power of two, scaled with the working precision.
    /// At 256 bits these are below `1e-60`, `1e-40` and `1e-50`.
    pub fn tolerance_exponent(self, bits: u32) -> i32 {
        let b = bits as i32;
        match self {
            Suite::Torsion => -(b * 17 / 32),
            Suite::Invariance => -(b * 11 / 16),
            Suite::SystemVsCharacter => -(b / 2),
            _ => -(b * 25 / 32),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyParams {
    pub moduli: Option<Vec<u64>>,
    pub trials: Option<usize>,
    pub seed: u64,
    /// Evaluate the torsion closed form with [`SignConvention::Theorem`].
    pub theorem_sign: bool,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            moduli: None,
            trials: None,
            seed: 1,
            theorem_sign: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseResult<T> {
    pub suite: Suite,
    pub index: usize,
    pub label: String,
    pub residual: T,
    pub tolerance: T,
    pub passed: bool,
    /// Set when the case raised an error instead of producing a residual.
    pub error: Option<String>,
}

/// Random odd real-valued function on `group`, entries in `(-1, 1)`.
pub fn random_odd_function<T: Real, R: Rng + ?Sized>(
    group: &Arc<GaloisGroup>,
    rng: &mut R,
    ctx: &PrecisionContext,
) -> GroupFunction<T> {
    let c = group.conjugation();
    let mut vals = vec![T::zero(); group.order()];
    for k in 0..group.order() {
        let ck = group.mul(c, k);
        if k < ck {
            let v = T::from_f64(rng.gen_range(-1.0..1.0), ctx);
            vals[ck] = -v.clone();
            vals[k] = v;
        }
    }
    GroupFunction::new(group.clone(), vals.into_iter().map(complex::real).collect()).expect("length matches")
}

/// Random instance with 1 to 3 eigenpairs, `ν ∈ {1/3, 1, 2, 7}`, angles
/// `a/m` with `m ≤ 24`, and `L_Tr` a Gaussian integer of norm at most 18.
pub fn random_torsion_instance<T: Real, R: Rng + ?Sized>(rng: &mut R, ctx: &PrecisionContext) -> TorsionInstance<T> {
    const NUS: [(i64, i64); 4] = [(1, 3), (1, 1), (2, 1), (7, 1)];
    let k = rng.gen_range(1..=3);
    let pairs = (0..k)
        .map(|_| {
            let (p, q) = NUS[rng.gen_range(0..NUS.len())];
            let m = rng.gen_range(2..=24i64);
            Eigenpair {
                nu: T::from_ratio(p, q, ctx),
                angle: Ratio::new(rng.gen_range(1..m), m),
            }
        })
        .collect();
    let l_tr = Complex::new(
        T::from_int(rng.gen_range(-3..=3), ctx),
        T::from_int(rng.gen_range(-3..=3), ctx),
    );
    TorsionInstance::new(pairs, l_tr).expect("angles are nonzero")
}

/// `{a : 1 ≤ a < n/2, gcd(a, n) = 1}`.
pub fn standard_type(n: u64) -> Result<CmType> {
    let units = UnitGroup::new(n)?;
    let residues: Vec<u64> = units.units().iter().copied().filter(|&a| 2 * a < n).collect();
    cmtypes::validate_type(n, &residues)
}

enum Case<T: Real> {
    Fe(DirichletCharacter, Ratio<i64>),
    Cot(DirichletCharacter),
    Half(CmType),
    Duel(CmType, GroupFunction<T>, Vec<T>),
    Calib(CmType),
    Torsion(TorsionInstance<T>),
    Inv(SubfieldDescriptor, CmType),
}

fn label<T: Real>(case: &Case<T>) -> String {
    let ty = |phi: &CmType| {
        let r: Vec<String> = phi.residues().iter().map(u64::to_string).collect();
        format!("n={} type={{{}}}", phi.modulus(), r.join(","))
    };
    match case {
        Case::Fe(chi, s) => format!("n={} chi={} s={}", chi.modulus(), chi.index(), s),
        Case::Cot(chi) => format!("n={} chi={}", chi.modulus(), chi.index()),
        Case::Half(phi) | Case::Duel(phi, ..) | Case::Calib(phi) => ty(phi),
        Case::Torsion(inst) => {
            let p: Vec<String> = inst
                .pairs
                .iter()
                .map(|p| format!("({}, {})", p.nu.to_decimal(4), p.angle))
                .collect();
            format!(
                "pairs={} ltr=({}, {})",
                p.join(""),
                inst.l_tr.re.to_decimal(4),
                inst.l_tr.im.to_decimal(4)
            )
        }
        Case::Inv(desc, phi) => format!("{} H={:?}", ty(phi), desc.subgroup()),
    }
}

fn odd_characters(n: u64) -> Result<Vec<DirichletCharacter>> {
    crate::characters::characters(n, CharacterFilter::Odd)
}

fn build_cases<T: Real>(suite: Suite, params: &VerifyParams, ctx: &PrecisionContext) -> Result<Vec<Case<T>>> {
    let moduli = params.moduli.clone().unwrap_or_else(|| suite.default_moduli());
    let trials = params.trials.unwrap_or_else(|| suite.default_trials());
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut cases = Vec::new();
    match suite {
        Suite::FunctionalEquation => {
            let points = [Ratio::new(-1, 2), Ratio::new(3, 10), Ratio::new(11, 5)];
            for &n in &moduli {
                for chi in odd_characters(n)? {
                    cases.extend(points.iter().map(|&s| Case::Fe(chi.clone(), s)));
                }
            }
        }
        Suite::Cotangent => {
            for &n in &moduli {
                cases.extend(odd_characters(n)?.into_iter().map(Case::Cot));
            }
        }
        Suite::HalfSum | Suite::Waslem => {
            for &n in &moduli {
                let g = Arc::new(GaloisGroup::full(Arc::new(UnitGroup::new(n)?)));
                for _ in 0..trials {
                    let phi = CmType::random(g.clone(), &mut rng)?;
                    if suite == Suite::HalfSum {
                        cases.push(Case::Half(phi));
                    } else {
                        let f = random_odd_function(&g, &mut rng, ctx);
                        let y = (0..phi.d()).map(|_| T::from_f64(rng.gen_range(-1.0..1.0), ctx)).collect();
                        cases.push(Case::Duel(phi, f, y));
                    }
                }
            }
        }
        Suite::SystemVsCharacter => {
            for &n in &moduli {
                cases.push(Case::Calib(standard_type(n)?));
                if trials > 1 {
                    let g = Arc::new(GaloisGroup::full(Arc::new(UnitGroup::new(n)?)));
                    for _ in 1..trials {
                        cases.push(Case::Calib(CmType::random(g.clone(), &mut rng)?));
                    }
                }
            }
        }
        Suite::Torsion => {
            if params.theorem_sign {
                let one = Complex::new(T::from_int(1, ctx), T::zero());
                let half_turn = Eigenpair {
                    nu: T::from_int(1, ctx),
                    angle: Ratio::new(1, 2),
                };
                cases.push(Case::Torsion(TorsionInstance::new(vec![half_turn], one)?));
            }
            for _ in 0..trials {
                cases.push(Case::Torsion(random_torsion_instance(&mut rng, ctx)));
            }
        }
        Suite::Invariance => {
            for &n in &moduli {
                let units = Arc::new(UnitGroup::new(n)?);
                let n_minus = n - 1;
                // Every element of order two other than -1 generates a CM subfield.
                for h in units.units().iter().copied().filter(|&h| h != 1 && h != n_minus) {
                    if units.mul(h, h) != 1 {
                        continue;
                    }
                    let desc = SubfieldDescriptor::from_units(units.clone(), &[h])?;
                    for _ in 0..trials {
                        let phi = CmType::random(desc.group().clone(), &mut rng)?;
                        cases.push(Case::Inv(desc.clone(), phi));
                    }
                }
            }
        }
    }
    Ok(cases)
}

fn evaluate<T: Real>(case: &Case<T>, sign: SignConvention, ctx: &PrecisionContext) -> Result<T> {
    match case {
        Case::Fe(chi, s) => lfunctions::check_functional_equation(chi, &T::from_ratio(*s.numer(), *s.denom(), ctx), ctx),
        Case::Cot(chi) => lfunctions::check_cotangent_identity(chi, ctx),
        Case::Half(phi) => {
            let conv = cmtypes::self_convolution::<T>(phi, ctx);
            let mut sum = T::zero();
            for chi in phi.group().characters(CharacterFilter::Odd) {
                sum += cmtypes::pairing_with(&conv, &chi, ctx)?.re;
            }
            Ok((sum - T::from_ratio(1, 2, ctx)).abs())
        }
        Case::Duel(phi, f, y) => {
            let sys = HeightSystem::with_function(phi, f, y.clone())?;
            let xe = sys.solve_elimination(ctx)?;
            let xc = sys.solve_characters(f, ctx)?;
            Ok(xe.iter().zip(&xc).fold(T::zero(), |m, (a, b)| m.max_of((a.clone() - b).abs())))
        }
        Case::Calib(phi) => {
            let report = heights::height_report::<T>(phi, ctx)?;
            let cal = &report.calibration;
            let mut rebuilt = T::zero();
            for (b, c) in &cal.coefficients {
                let (p, q) = (*c.numer(), *c.denom());
                let c = T::from_big_rational(&num_rational::BigRational::new(p.into(), q.into()), ctx);
                rebuilt += c * b.value::<T>(ctx);
            }
            if cal.c != Ratio::from_integer(2) {
                return Err(Error::CalibrationFailed(format!("calibration constant {} differs from 2", cal.c)));
            }
            Ok((cal.residual.clone() - rebuilt).abs())
        }
        Case::Torsion(inst) => {
            let a = torsion::torsion_closed_form(inst, sign, ctx)?;
            let b = torsion::torsion_spectral_oracle(inst, ctx)?;
            Ok(torsion::distance(&a, &b))
        }
        Case::Inv(desc, phi) => {
            let r = heights::extension_invariance_check::<T>(desc, phi, ctx)?;
            Ok(r.residual.max_of(r.max_vanishing))
        }
    }
}

/// Run one suite. Precision below 128 bits is rejected.
pub fn run_suite<T: Real>(suite: Suite, params: &VerifyParams, ctx: &PrecisionContext) -> Result<Vec<CaseResult<T>>> {
    if ctx.bits() < MIN_PSLQ_BITS {
        return Err(Error::PrecisionTooLow(format!(
            "verify needs at least {MIN_PSLQ_BITS} bits, got {}",
            ctx.bits()
        )));
    }
    let cases = build_cases::<T>(suite, params, ctx)?;
    let tolerance = T::pow2(suite.tolerance_exponent(T::mantissa_bits(ctx)), ctx);
    let sign = if params.theorem_sign {
        SignConvention::Theorem
    } else {
        SignConvention::Derivative
    };
    Ok(cases
        .par_iter()
        .enumerate()
        .map(|(index, case)| {
            let label = label(case);
            match evaluate(case, sign, ctx) {
                Ok(residual) => CaseResult {
                    suite,
                    index,
                    label,
                    passed: residual < tolerance,
                    residual,
                    tolerance: tolerance.clone(),
                    error: None,
                },
                Err(e) => CaseResult {
                    suite,
                    index,
                    label,
                    residual: T::zero(),
                    tolerance: tolerance.clone(),
                    passed: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect())
}

/// Every suite in order, with the same parameters.
pub fn run_all<T: Real>(params: &VerifyParams, ctx: &PrecisionContext) -> Result<Vec<CaseResult<T>>> {
    let mut out = Vec::new();
    for suite in Suite::ALL {
        out.extend(run_suite::<T>(suite, params, ctx)?);
    }
    Ok(out)
}
