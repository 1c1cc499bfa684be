use std::sync::Arc;

use cmheight::characters::{characters_of, CharacterFilter, DirichletCharacter, GaloisGroup, Parity};
use cmheight::cmtypes::{CmType, SubfieldDescriptor};
use cmheight::heights::height_report;
use cmheight::lfunctions::dirichlet_l_with_derivative;
use cmheight::relation::expr::{evaluate, split_list};
use cmheight::relation::{logspan_member, pslq, LogSpanElement, LogSpanOutcome, PslqOptions, PslqOutcome};
use cmheight::torsion::{distance, torsion_closed_form, torsion_spectral_oracle, Eigenpair, SignConvention, TorsionInstance};
use cmheight::verify::{run_all, run_suite, Suite, VerifyParams};
use cmheight::{BigComplex, BigReal, Complex, Error, PrecisionContext, Real, Result};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::cache::GroupCache;
use crate::cli::{CharactersArgs, HeightArgs, LfunArgs, RelationArgs, TorsionArgs, VerifyArgs};
use crate::output::Report;

pub struct Env {
    pub ctx: PrecisionContext,
    pub seed: u64,
    pub cache: GroupCache,
}

impl Env {
    fn dec(&self, x: &BigReal) -> String {
        x.to_decimal(self.ctx.decimal_digits())
    }

    fn complex(&self, z: &BigComplex) -> Value {
        json!({ "re": self.dec(&z.re), "im": self.dec(&z.im) })
    }

    fn real(&self, src: &str) -> Result<BigReal> {
        evaluate::<BigReal>(src, &self.ctx)
    }
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn characters(env: &Env, args: &CharactersArgs) -> Result<Report> {
    let filter = if args.odd {
        CharacterFilter::Odd
    } else if args.even {
        CharacterFilter::Even
    } else {
        CharacterFilter::All
    };
    let g = env.cache.unit_group(args.modulus)?;
    let chars = characters_of(&g, filter);
    let mut r = Report::new("characters");
    r.columns = vec!["index", "order", "parity", "conductor", "primitive", "exponents"];
    let mut list = Vec::new();
    for chi in &chars {
        r.rows.push(vec![
            chi.index().to_string(),
            chi.order().to_string(),
            parity_name(chi.parity()).into(),
            chi.conductor().to_string(),
            chi.is_primitive().to_string(),
            join(chi.exponents(), " "),
        ]);
        list.push(json!({
            "index": chi.index(),
            "order": chi.order(),
            "parity": parity_name(chi.parity()),
            "conductor": chi.conductor(),
            "primitive": chi.is_primitive(),
            "exponents": chi.exponents(),
        }));
    }
    let components: Vec<Value> = g
        .components()
        .iter()
        .map(|c| json!({ "prime_power": c.prime_power, "generator": c.generator, "order": c.order }))
        .collect();
    r.field("modulus", args.modulus)
        .field("group_order", g.order())
        .field("components", components)
        .field("count", chars.len())
        .field("characters", list);
    Ok(r)
}

fn character(env: &Env, n: u64, index: usize) -> Result<DirichletCharacter> {
    let g = env.cache.unit_group(n)?;
    characters_of(&g, CharacterFilter::All)
        .into_iter()
        .find(|c| c.index() == index)
        .ok_or_else(|| Error::Domain(format!("no character with index {index} mod {n}")))
}

pub fn lfun(env: &Env, args: &LfunArgs) -> Result<Report> {
    let chi = character(env, args.modulus, args.character)?;
    let s = Complex::new(env.real(&args.s)?, env.real(&args.s_im)?);
    let (value, deriv) = dirichlet_l_with_derivative(&chi, &s, &env.ctx)?;
    let (quantity, z) = if args.derivative {
        ("derivative", deriv)
    } else {
        ("value", value)
    };
    let mut r = Report::new("lfun");
    r.field("modulus", args.modulus)
        .field("character_index", chi.index())
        .field("conductor", chi.conductor())
        .field("parity", parity_name(chi.parity()))
        .field("s", env.complex(&s))
        .field("quantity", quantity)
        .field("re", env.dec(&z.re))
        .field("im", env.dec(&z.im));
    r.text_table = false;
    r.columns = vec!["modulus", "character_index", "s_re", "s_im", "quantity", "re", "im"];
    r.rows.push(vec![
        args.modulus.to_string(),
        chi.index().to_string(),
        env.dec(&s.re),
        env.dec(&s.im),
        quantity.into(),
        env.dec(&z.re),
        env.dec(&z.im),
    ]);
    Ok(r)
}

pub fn height(env: &Env, args: &HeightArgs) -> Result<Report> {
    let units = env.cache.unit_group(args.modulus)?;
    let group = if args.subgroup.is_empty() {
        Arc::new(GaloisGroup::full(units))
    } else {
        SubfieldDescriptor::from_units(units, &args.subgroup)?.group().clone()
    };
    let phi = CmType::new(group, &args.residues)?;
    let rep = height_report::<BigReal>(&phi, &env.ctx)?;
    let coeff_json = |coeffs: &[(LogSpanElement, Ratio<i128>)]| -> Vec<Value> {
        coeffs
            .iter()
            .map(|(b, c)| json!({ "basis": b.label(), "coefficient": c.to_string() }))
            .collect()
    };
    let per_character: Vec<Value> = rep
        .per_character
        .iter()
        .map(|c| {
            json!({
                "character_index": c.character.index(),
                "conductor": c.character.conductor(),
                "pairing": env.dec(&c.pairing),
                "l_ratio": env.dec(&c.l_ratio),
                "contribution": env.dec(&c.contribution),
            })
        })
        .collect();
    let mut r = Report::new("height");
    r.field("modulus", rep.modulus)
        .field("type", rep.type_residues.clone())
        .field("subgroup", rep.subgroup.clone())
        .field("h_character", env.dec(&rep.h_character))
        .field("h_system", env.dec(&rep.h_system))
        .field("calibration_c", rep.calibration.c.to_string())
        .field("calibration_residual", env.dec(&rep.calibration.residual))
        .field("residual_coefficients", coeff_json(&rep.calibration.coefficients))
        .field("per_character", per_character);
    r.columns = vec![
        "modulus",
        "type",
        "h_character",
        "h_system",
        "calibration_c",
        "character_index",
        "conductor",
        "pairing",
        "l_ratio",
        "contribution",
    ];
    for c in &rep.per_character {
        r.rows.push(vec![
            rep.modulus.to_string(),
            join(&rep.type_residues, " "),
            env.dec(&rep.h_character),
            env.dec(&rep.h_system),
            rep.calibration.c.to_string(),
            c.character.index().to_string(),
            c.character.conductor().to_string(),
            env.dec(&c.pairing),
            env.dec(&c.l_ratio),
            env.dec(&c.contribution),
        ]);
    }
    let residual: Vec<String> = rep
        .calibration
        .coefficients
        .iter()
        .filter(|(_, c)| *c.numer() != 0)
        .map(|(b, c)| format!("({c})*{}", b.label()))
        .collect();
    r.text_notes.push(format!(
        "c*h_system - h_character = {}",
        if residual.is_empty() { "0".to_string() } else { residual.join(" + ") }
    ));
    Ok(r)
}

/// Parse `a`, `bi`, `a+bi` or `a-bi` with rational or expression parts.
pub fn parse_gaussian(src: &str, ctx: &PrecisionContext) -> Result<BigComplex> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let zero = || BigReal::from_int(0, ctx);
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(evaluate(&s, ctx)?, zero()));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E' | b'(' | b'*' | b'/'));
    let (re_src, im_src) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_src {
        "" | "+" => BigReal::from_int(1, ctx),
        "-" => BigReal::from_int(-1, ctx),
        other => evaluate(other.strip_prefix('+').unwrap_or(other), ctx)?,
    };
    let re = if re_src.is_empty() { zero() } else { evaluate(re_src, ctx)? };
    Ok(Complex::new(re, im))
}

pub fn torsion(env: &Env, args: &TorsionArgs) -> Result<Report> {
    if args.nu.len() != args.angle.len() {
        return Err(Error::Domain(format!(
            "{} values of nu but {} angles",
            args.nu.len(),
            args.angle.len()
        )));
    }
    let mut pairs = Vec::new();
    for (nu, angle) in args.nu.iter().zip(&args.angle) {
        let angle: Ratio<i64> = angle
            .parse()
            .map_err(|_| Error::Parse(format!("angle {angle:?} is not a fraction a/b")))?;
        pairs.push(Eigenpair {
            nu: env.real(nu)?,
            angle,
        });
    }
    let l_tr = parse_gaussian(&args.ltr, &env.ctx)?;
    let inst = TorsionInstance::new(pairs, l_tr)?;
    let sign = if args.theorem_sign {
        SignConvention::Theorem
    } else {
        SignConvention::Derivative
    };
    let closed = torsion_closed_form(&inst, sign, &env.ctx)?;
    let positive = inst.pairs.iter().all(|p| p.nu > BigReal::from_int(0, &env.ctx));
    let oracle = if positive {
        Some(torsion_spectral_oracle(&inst, &env.ctx)?)
    } else {
        None
    };
    let mut r = Report::new("torsion");
    r.field(
        "sign_convention",
        if args.theorem_sign { "theorem" } else { "derivative" },
    )
    .field("l_tr", env.complex(&inst.l_tr))
    .field(
        "pairs",
        inst.pairs
            .iter()
            .map(|p| json!({ "nu": env.dec(&p.nu), "angle": p.angle.to_string() }))
            .collect::<Vec<_>>(),
    )
    .field("closed_form_re", env.dec(&closed.re))
    .field("closed_form_im", env.dec(&closed.im));
    match &oracle {
        Some(o) => {
            r.field("oracle_re", env.dec(&o.re))
                .field("oracle_im", env.dec(&o.im))
                .field("difference", env.dec(&distance(&closed, o)));
        }
        None => {
            r.field("oracle_re", Value::Null)
                .field("oracle_im", Value::Null)
                .field("difference", Value::Null);
        }
    }
    r.text_table = false;
    r.columns = vec!["closed_form_re", "closed_form_im", "oracle_re", "oracle_im", "difference"];
    let opt = |f: &dyn Fn(&BigComplex) -> String| oracle.as_ref().map(f).unwrap_or_default();
    r.rows.push(vec![
        env.dec(&closed.re),
        env.dec(&closed.im),
        opt(&|o| env.dec(&o.re)),
        opt(&|o| env.dec(&o.im)),
        opt(&|o| env.dec(&distance(&closed, o))),
    ]);
    Ok(r)
}

fn coefficient_rows(r: &mut Report, coeffs: &[(String, Ratio<i128>)]) {
    r.columns = vec!["basis", "coefficient"];
    for (b, c) in coeffs {
        r.rows.push(vec![b.clone(), c.to_string()]);
    }
    let list: Vec<Value> = coeffs
        .iter()
        .map(|(b, c)| json!({ "basis": b, "coefficient": c.to_string() }))
        .collect();
    r.field("coefficients", list);
}

pub fn relation(env: &Env, args: &RelationArgs) -> Result<Report> {
    let target = env.real(&args.target)?;
    let mut r = Report::new("relation");
    r.field("target", args.target.clone()).field("target_value", env.dec(&target));
    let opts = PslqOptions {
        max_coeff: args.max_coeff,
        max_iterations: None,
    };
    if let Some(n) = args.modulus {
        let outcome = logspan_member(&target, n, &env.ctx)?;
        r.field("modulus", n);
        match outcome {
            LogSpanOutcome::Member(coeffs) => {
                let coeffs: Vec<(String, Ratio<i128>)> = coeffs.into_iter().map(|(b, c)| (b.label(), c)).collect();
                r.field("found", true);
                coefficient_rows(&mut r, &coeffs);
            }
            LogSpanOutcome::NotFound { norm_bound } => {
                r.field("found", false).field("norm_bound", format!("{norm_bound:e}"));
            }
        }
        return Ok(r);
    }
    let labels = split_list(args.basis.as_deref().unwrap_or_default());
    let mut values = vec![target];
    for l in &labels {
        values.push(env.real(l)?);
    }
    match pslq(&values, &env.ctx, &opts)? {
        PslqOutcome::Relation(m) if m[0] != 0 => {
            let coeffs: Vec<(String, Ratio<i128>)> = labels
                .iter()
                .zip(&m[1..])
                .map(|(l, &c)| (l.clone(), Ratio::new(-c, m[0])))
                .collect();
            r.field("found", true).field("relation", m.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            coefficient_rows(&mut r, &coeffs);
        }
        PslqOutcome::Relation(m) => {
            r.field("found", false)
                .field("basis_relation", m.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            r.text_notes.push("the basis itself is linearly dependent; the target does not enter".into());
        }
        PslqOutcome::NoRelation { norm_bound, iterations } => {
            r.field("found", false)
                .field("norm_bound", format!("{norm_bound:e}"))
                .field("iterations", iterations);
        }
    }
    Ok(r)
}

pub fn verify(env: &Env, args: &VerifyArgs) -> Result<(Report, bool)> {
    let params = VerifyParams {
        moduli: (!args.moduli.is_empty()).then(|| args.moduli.clone()),
        trials: args.trials,
        seed: env.seed,
        theorem_sign: args.theorem_sign,
    };
    let results = if args.suite == "all" {
        run_all::<BigReal>(&params, &env.ctx)?
    } else {
        run_suite::<BigReal>(args.suite.parse::<Suite>()?, &params, &env.ctx)?
    };
    let failed = results.iter().filter(|c| !c.passed).count();
    let mut r = Report::new("verify");
    r.columns = vec!["suite", "index", "status", "residual", "tolerance", "label", "error"];
    let mut cases = Vec::new();
    for c in &results {
        let status = if c.passed { "PASS" } else { "FAIL" };
        r.rows.push(vec![
            c.suite.to_string(),
            c.index.to_string(),
            status.into(),
            env.dec(&c.residual),
            env.dec(&c.tolerance),
            c.label.clone(),
            c.error.clone().unwrap_or_default(),
        ]);
        r.text_rows.push(vec![
            c.suite.to_string(),
            c.index.to_string(),
            status.into(),
            c.residual.to_decimal(3),
            c.tolerance.to_decimal(3),
            c.label.clone(),
            c.error.clone().unwrap_or_default(),
        ]);
        cases.push(json!({
            "suite": c.suite.name(),
            "index": c.index,
            "label": c.label,
            "status": status,
            "residual": env.dec(&c.residual),
            "tolerance": env.dec(&c.tolerance),
            "error": c.error,
        }));
    }
    r.field("suite", args.suite.clone())
        .field("status", if failed == 0 { "PASS" } else { "FAIL" })
        .field("passed", results.len() - failed)
        .field("failed", failed)
        .field("cases", cases);
    Ok((r, failed == 0))
}
