use super::*;
use crate::arith::BigReal;
use crate::arith::complex;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(256).unwrap()
}

fn full(n: u64) -> Arc<GaloisGroup> {
    Arc::new(GaloisGroup::full(Arc::new(UnitGroup::new(n).unwrap())))
}

#[test]
fn validation_examples() {
    assert_eq!(validate_type(4, &[1]).unwrap().d(), 1);
    assert_eq!(validate_type(5, &[1, 2]).unwrap().d(), 2);
    assert!(matches!(validate_type(5, &[1, 4]), Err(Error::NotACmType(_))));
    assert!(matches!(validate_type(5, &[1]), Err(Error::NotACmType(_))));
    assert!(matches!(validate_type(6, &[2]), Err(Error::NotACmType(_))));
    assert_eq!(validate_type(2, &[1]), Err(Error::InvalidModulus(2)));
}

#[test]
fn n4_pairings() {
    let ctx = ctx();
    let phi = validate_type(4, &[1]).unwrap();
    let chars = phi.group().characters(CharacterFilter::All);
    let p0: Complex<BigReal> = pairing(&phi, &chars[0], &ctx).unwrap();
    let p1: Complex<BigReal> = pairing(&phi, &chars[1], &ctx).unwrap();
    assert_eq!(p0.re, 0.5);
    assert_eq!(p1.re, 0.5);
}

#[test]
fn principal_pairing_is_d_squared_over_g() {
    let ctx = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [5u64, 7, 12, 15] {
        let g = full(n);
        let phi = CmType::random(g.clone(), &mut rng).unwrap();
        let principal = &g.characters(CharacterFilter::All)[0];
        let p: Complex<BigReal> = pairing(&phi, principal, &ctx).unwrap();
        // 2 |<Φ, 1>|^2 = 2 (d/|G|)^2 = 1/2
        assert!((p.re - BigReal::from_ratio(1, 2, &ctx)).abs() < 1e-70);
    }
}

#[test]
fn n5_pairings_sum_to_half() {
    let ctx = ctx();
    let phi = validate_type(5, &[1, 2]).unwrap();
    let odd = phi.group().characters(CharacterFilter::Odd);
    let total: BigReal = odd.iter().map(|c| pairing::<BigReal>(&phi, c, &ctx).unwrap().re).sum();
    assert!((total - BigReal::from_ratio(1, 2, &ctx)).abs() < 1e-70);
}

#[test]
fn half_sum_random_types() {
    let ctx = ctx();
    for n in [3u64, 4, 5, 7, 8, 12, 15, 16, 20, 24] {
        let g = full(n);
        let odd = g.characters(CharacterFilter::Odd);
        let mut rng = ChaCha8Rng::seed_from_u64(n);
        for _ in 0..20 {
            let phi = CmType::random(g.clone(), &mut rng).unwrap();
            let conv = self_convolution::<BigReal>(&phi, &ctx);
            let mut total = BigReal::zero();
            for chi in &odd {
                let p = pairing_with(&conv, chi, &ctx).unwrap();
                assert!(p.im.abs() < 1e-70);
                assert!(p.re > -1e-70);
                total += p.re;
            }
            assert!((total - BigReal::from_ratio(1, 2, &ctx)).abs() < 1e-70, "n={n}");
        }
    }
}

#[test]
fn lift_examples() {
    let desc = SubfieldDescriptor::new(12, &[7]).unwrap();
    let phi_e = CmType::new(desc.group().clone(), &[1]).unwrap();
    let lifted = lift_type(&desc, &phi_e).unwrap();
    assert_eq!(lifted.residues(), vec![1, 7]);
    let desc5 = SubfieldDescriptor::new(12, &[5]).unwrap();
    for r in [1u64, 7] {
        let phi_e = CmType::new(desc5.group().clone(), &[r]).unwrap();
        assert_eq!(lift_type(&desc5, &phi_e).unwrap().d(), 2);
    }
    let trivial = SubfieldDescriptor::new(13, &[]).unwrap();
    let phi = CmType::new(trivial.group().clone(), &[1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(lift_type(&trivial, &phi).unwrap().residues(), phi.residues());
    assert!(matches!(SubfieldDescriptor::new(12, &[11]), Err(Error::NotCmField(_))));
    assert!(matches!(
        lift_type(&desc5, &validate_type(12, &[1, 5]).unwrap()),
        Err(Error::GroupMismatch)
    ));
}

#[test]
fn lifted_pairings_match_quotient() {
    let ctx = ctx();
    for h in [5u64, 7] {
        let desc = SubfieldDescriptor::new(12, &[h]).unwrap();
        let phi_e = CmType::new(desc.group().clone(), &[1]).unwrap();
        let lifted = lift_type(&desc, &phi_e).unwrap();
        for chi in lifted.group().characters(CharacterFilter::All) {
            let big: Complex<BigReal> = pairing(&lifted, &chi, &ctx).unwrap();
            if desc.group().is_trivial_on_subgroup(&chi) {
                let small: Complex<BigReal> = pairing(&phi_e, &chi, &ctx).unwrap();
                assert!(complex::abs(&(big - small)) < 1e-70);
            } else {
                assert!(complex::abs(&big) < 1e-70);
            }
        }
    }
}

#[test]
fn conductor_term_examples() {
    let ctx = ctx();
    let t = conductor_term::<BigReal>(&validate_type(4, &[1]).unwrap(), &ctx).unwrap();
    assert!((t.per_prime[&2].clone() - BigReal::from_int(1, &ctx)).abs() < 1e-70);
    assert!((t.total - BigReal::from_int(2, &ctx).ln()).abs() < 1e-70);
    let t = conductor_term::<BigReal>(&validate_type(3, &[1]).unwrap(), &ctx).unwrap();
    assert!((t.per_prime[&3].clone() - BigReal::from_ratio(1, 2, &ctx)).abs() < 1e-70);
    let t = conductor_term::<BigReal>(&validate_type(7, &[1, 2, 4]).unwrap(), &ctx).unwrap();
    assert_eq!(t.per_prime.keys().copied().collect::<Vec<_>>(), vec![7]);
}

#[test]
fn conductor_coefficients_are_rational() {
    let ctx = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in [8u64, 12, 15, 20, 24] {
        let g = full(n);
        let phi = CmType::random(g.clone(), &mut rng).unwrap();
        let t = conductor_term::<BigReal>(&phi, &ctx).unwrap();
        let den = 2 * g.order() as i64 * g.order() as i64;
        for c in t.per_prime.values() {
            let scaled = c.clone() * BigReal::from_int(den, &ctx);
            let r = BigReal::from_int(scaled.round_to_i128().unwrap() as i64, &ctx);
            assert!((scaled - r).abs() < 1e-40, "n={n}");
        }
    }
}

#[test]
fn translation_conjugation_and_dual() {
    let ctx = ctx();
    let phi = validate_type(13, &[1, 2, 3, 4, 5, 6]).unwrap();
    let conj = phi.conjugate();
    assert_eq!(conj.residues(), vec![7, 8, 9, 10, 11, 12]);
    for chi in phi.group().characters(CharacterFilter::All) {
        let a: Complex<BigReal> = pairing(&phi, &chi, &ctx).unwrap();
        let b: Complex<BigReal> = pairing(&phi.translate(2).unwrap(), &chi, &ctx).unwrap();
        let c: Complex<BigReal> = pairing(&conj, &chi.conj(), &ctx).unwrap();
        assert!(complex::abs(&(a.clone() - b)) < 1e-70);
        assert!(complex::abs(&(a - c)) < 1e-70);
    }
    assert!(phi.dual().d() == 6);
    assert!(phi.contains(14) && !phi.contains(7));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_types_are_valid(n in 3u64..40, seed in any::<u64>()) {
        let g = full(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = CmType::random(g.clone(), &mut rng).unwrap();
        prop_assert_eq!(2 * phi.d(), g.order());
        let again = CmType::new(g, &phi.residues()).unwrap();
        prop_assert_eq!(again, phi.clone());
        prop_assert!(CmType::new(phi.group().clone(), &phi.dual().residues()).is_ok());
    }

    #[test]
    fn half_sum_f64(n in 3u64..40, seed in any::<u64>()) {
        let ctx = PrecisionContext::default();
        let g = full(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = CmType::random(g.clone(), &mut rng).unwrap();
        let conv = self_convolution::<f64>(&phi, &ctx);
        let total: f64 = g
            .characters(CharacterFilter::Odd)
            .iter()
            .map(|c| pairing_with(&conv, c, &ctx).unwrap().re)
            .sum();
        prop_assert!((total - 0.5).abs() < 1e-12);
    }
}
