use super::*;
use crate::arith::BigReal;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(256).unwrap()
}

fn instance(pairs: &[(i64, i64, i64, i64)], ltr: (i64, i64)) -> TorsionInstance<BigReal> {
    let ctx = ctx();
    let pairs = pairs
        .iter()
        .map(|&(nn, nd, a, n)| Eigenpair {
            nu: BigReal::from_ratio(nn, nd, &ctx),
            angle: Ratio::new(a, n),
        })
        .collect();
    let l_tr = Complex::new(BigReal::from_int(ltr.0, &ctx), BigReal::from_int(ltr.1, &ctx));
    TorsionInstance::new(pairs, l_tr).unwrap()
}

#[test]
fn half_turn_is_log_two() {
    let ctx = ctx();
    let inst = instance(&[(1, 1, 1, 2)], (1, 0));
    let log2 = BigReal::from_int(2, &ctx).ln();
    let v = torsion_closed_form(&inst, SignConvention::Derivative, &ctx).unwrap();
    assert!(distance(&v, &real(log2.clone())) < 1e-70);
    let o = torsion_spectral_oracle(&inst, &ctx).unwrap();
    assert!(distance(&o, &real(log2.clone())) < 1e-70);
    let t = torsion_closed_form(&inst, SignConvention::Theorem, &ctx).unwrap();
    let log_2pi = (BigReal::pi(&ctx) * BigReal::from_int(2, &ctx)).ln();
    assert!(distance(&(v - t), &real(log_2pi)) < 1e-70);
    let zero = instance(&[(1, 1, 1, 2)], (0, 0));
    let z = torsion_closed_form(&zero, SignConvention::Derivative, &ctx).unwrap();
    assert!(z.re.is_zero() && z.im.is_zero());
}

#[test]
fn zero_nu_vanishes() {
    let ctx = ctx();
    let inst = instance(&[(0, 1, 1, 3), (0, 1, 2, 5)], (3, 1));
    let v = torsion_closed_form(&inst, SignConvention::Derivative, &ctx).unwrap();
    assert!(v.re.is_zero() && v.im.is_zero());
}

#[test]
fn quarter_turn_polylog_value() {
    let ctx = ctx();
    let inst = instance(&[(1, 1, 1, 4)], (1, 0));
    let o = torsion_spectral_oracle(&inst, &ctx).unwrap();
    let log2 = BigReal::from_int(2, &ctx).ln();
    let re = (o.re.clone() - log2 * BigReal::from_ratio(3, 2, &ctx)).abs();
    assert!(re < BigReal::pow2(-240, &ctx));
    assert!((o.im.to_f64() + 0.527_344_140_497_836).abs() < 1e-15);
    // Im = R^rot(π/2) - (1/2) log 2π.
    let r = crate::lfunctions::r_rot::<BigReal>(1, 4, &ctx).unwrap();
    let log_2pi = (BigReal::pi(&ctx) * BigReal::from_int(2, &ctx)).ln();
    assert!((o.im.clone() - r + log_2pi.mul_pow2(-1)).abs() < BigReal::pow2(-240, &ctx));
    let v = torsion_closed_form(&inst, SignConvention::Derivative, &ctx).unwrap();
    assert!(distance(&v, &o) < 1e-60);
}

#[test]
fn closed_form_matches_oracle() {
    let ctx = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let nus = [(1, 3), (1, 1), (2, 1), (7, 1)];
    for _ in 0..25 {
        let k = rng.gen_range(1..=3);
        let pairs: Vec<(i64, i64, i64, i64)> = (0..k)
            .map(|_| {
                let (nn, nd) = nus[rng.gen_range(0..nus.len())];
                let n = rng.gen_range(2..=24);
                (nn, nd, rng.gen_range(1..n), n)
            })
            .collect();
        let inst = instance(&pairs, (rng.gen_range(-3..=3), rng.gen_range(-3..=3)));
        let a = torsion_closed_form(&inst, SignConvention::Derivative, &ctx).unwrap();
        let b = torsion_spectral_oracle(&inst, &ctx).unwrap();
        assert!(distance(&a, &b) < 1e-50);
    }
}

#[test]
fn conjugation_and_additivity() {
    let ctx = ctx();
    let a = instance(&[(2, 1, 1, 7), (1, 3, 5, 12)], (2, -1));
    let b = instance(&[(-1, 1, 3, 8)], (2, -1));
    let va = torsion_closed_form(&a, SignConvention::Derivative, &ctx).unwrap();
    let vc = torsion_closed_form(&a.conjugate(), SignConvention::Derivative, &ctx).unwrap();
    assert!(distance(&vc, &va.conj()) < 1e-60);
    let vb = torsion_closed_form(&b, SignConvention::Derivative, &ctx).unwrap();
    let mut pairs = a.pairs.clone();
    pairs.extend(b.pairs.clone());
    let joint = TorsionInstance::new(pairs, a.l_tr.clone()).unwrap();
    let vj = torsion_closed_form(&joint, SignConvention::Derivative, &ctx).unwrap();
    assert!(distance(&vj, &(va + vb)) < 1e-60);
}

#[test]
fn negative_nu_flips_sign_and_oracle_rejects() {
    let ctx = ctx();
    let pos = instance(&[(3, 1, 1, 3)], (1, 0));
    let neg = instance(&[(-3, 1, 1, 3)], (1, 0));
    let p = torsion_closed_form(&pos, SignConvention::Derivative, &ctx).unwrap();
    let n = torsion_closed_form(&neg, SignConvention::Derivative, &ctx).unwrap();
    assert!(distance(&p, &-n) < 1e-70);
    assert!(torsion_spectral_oracle(&neg, &ctx).is_err());
}

#[test]
fn rejects_trivial_angle() {
    let ctx = ctx();
    let pairs = vec![Eigenpair {
        nu: BigReal::from_int(1, &ctx),
        angle: Ratio::new(3, 3),
    }];
    assert!(TorsionInstance::new(pairs, complex::from_int(1, &ctx)).is_err());
}

#[test]
fn binomial_identity() {
    for k in 0..=30u64 {
        let direct: i128 = (0..=k)
            .map(|q| {
                let c = (0..q).fold(1i128, |acc, i| acc * (k - i) as i128 / (i + 1) as i128);
                if q % 2 == 1 { q as i128 * c } else { -(q as i128) * c }
            })
            .sum();
        assert_eq!(binom_alternating(k), BigInt::from(direct));
        assert_eq!(binom_alternating(k), BigInt::from(i32::from(k == 1)));
    }
}

#[test]
fn eigenspace_trace_examples() {
    let ctx = ctx();
    let angles = [Ratio::new(1, 5), Ratio::new(2, 7)];
    let ltr = complex::from_int::<BigReal>(1, &ctx);
    let v = eigenspace_trace(&[1, 0], 0, &angles, &ltr, &ctx).unwrap();
    let want = complex::root_of_unity::<BigReal>(Ratio::new(1, 5), &ctx);
    assert!(distance(&v, &want) < 1e-70);
    let v = eigenspace_trace(&[2, 3], 1, &angles, &ltr, &ctx).unwrap();
    let want = complex::scale(
        &complex::root_of_unity::<BigReal>(Ratio::new(2, 5) + Ratio::new(6, 7), &ctx),
        &BigReal::from_int(2, &ctx),
    );
    assert!(distance(&v, &want) < 1e-70);
    assert!(eigenspace_trace(&[1, 0], 3, &angles, &ltr, &ctx).is_err());
}

#[test]
fn collapse() {
    let angles = [Ratio::new(1, 3), Ratio::new(1, 4), Ratio::new(2, 5)];
    assert!(zeta_collapse_check(1, &angles[..1], 7).unwrap());
    assert!(zeta_collapse_check(2, &angles[..2], 4).unwrap());
    assert!(zeta_collapse_check(3, &angles, 3).unwrap());
    assert!(zeta_collapse_check(3, &angles, 4).unwrap());
    assert!(zeta_collapse_check(2, &angles[..2], 1).unwrap());
    assert!(zeta_collapse_check(2, &angles[..2], 0).is_err());
    assert!(zeta_collapse_check(2, &angles, 3).is_err());
}
