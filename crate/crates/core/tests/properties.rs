use std::sync::Arc;

use cmheight::arith::{hurwitz_zeta, log_gamma};
use cmheight::characters::{characters, CharacterFilter, GaloisGroup, UnitGroup, UnitGroupTable};
use cmheight::cmtypes::{pairing, self_convolution, CmType};
use cmheight::relation::{pslq, rational_recover, PslqOptions};
use cmheight::torsion::{distance, torsion_closed_form, torsion_spectral_oracle, SignConvention};
use cmheight::verify::random_torsion_instance;
use cmheight::{BigReal, Complex, PrecisionContext, Real};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(160).unwrap()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn hurwitz_multiplication(p in 1i64..12, q in 2i64..12, m in 2i64..5, s10 in -15i64..40) {
        prop_assume!(p <= q && s10 != 10);
        let c = ctx();
        let s = Complex::new(BigReal::from_ratio(s10, 10, &c), BigReal::from_int(0, &c));
        let a = BigReal::from_ratio(p, q, &c);
        // Σ_k ζ(s, (a + k)/m) = m^s ζ(s, a)
        let mut lhs = BigReal::from_int(0, &c);
        for k in 0..m {
            let shift = (a.clone() + BigReal::from_int(k, &c)) / BigReal::from_int(m, &c);
            lhs += hurwitz_zeta(&s, &shift, &c).unwrap().re;
        }
        let ms = (BigReal::from_int(m, &c).ln() * &s.re).exp();
        let rhs = ms * hurwitz_zeta(&s, &a, &c).unwrap().re;
        let scale = rhs.abs().max_of(BigReal::from_int(1, &c));
        prop_assert!((lhs - rhs).abs() / scale < 1e-40);
    }

    #[test]
    fn log_gamma_recurrence(p in 1i64..400, q in 1i64..40) {
        let c = ctx();
        let x = BigReal::from_ratio(p, q, &c);
        let next = log_gamma(&(x.clone() + BigReal::from_int(1, &c)), &c).unwrap();
        let here = log_gamma(&x, &c).unwrap() + x.ln();
        prop_assert!((next - here).abs() < 1e-40);
    }

    #[test]
    fn characters_are_multiplicative(n in 3u64..80, a in 1u64..80, b in 1u64..80) {
        let c = ctx();
        for chi in characters(n, CharacterFilter::All).unwrap() {
            let lhs = chi.value::<BigReal>(a * b % n, &c);
            let rhs = chi.value::<BigReal>(a % n, &c) * chi.value::<BigReal>(b % n, &c);
            prop_assert!(distance(&lhs, &rhs) < 1e-40);
            prop_assert_eq!(n % chi.conductor(), 0);
        }
    }

    #[test]
    fn pairings_are_nonnegative_and_sum_to_half(n in 3u64..40, seed in any::<u64>()) {
        let c = ctx();
        let g = Arc::new(GaloisGroup::full(Arc::new(UnitGroup::new(n).unwrap())));
        let phi = CmType::random(g, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let conv = self_convolution::<BigReal>(&phi, &c);
        prop_assert!(conv.values().iter().all(|v| v.im.abs() < 1e-40));
        let mut total = BigReal::from_int(0, &c);
        for chi in characters(n, CharacterFilter::Odd).unwrap() {
            let p = pairing::<BigReal>(&phi, &chi, &c).unwrap();
            prop_assert!(p.re > -1e-40 && p.im.abs() < 1e-40);
            total += p.re;
        }
        prop_assert!((total - BigReal::from_ratio(1, 2, &c)).abs() < 1e-40);
    }

    #[test]
    fn torsion_routes_agree(seed in any::<u64>()) {
        let c = ctx();
        let inst = random_torsion_instance::<BigReal, _>(&mut ChaCha8Rng::seed_from_u64(seed), &c);
        let a = torsion_closed_form(&inst, SignConvention::Derivative, &c).unwrap();
        let b = torsion_spectral_oracle(&inst, &c).unwrap();
        prop_assert!(distance(&a, &b) < 1e-35);
    }

    #[test]
    fn rational_round_trip(p in -10_000i64..10_000, q in 1i64..500) {
        let c = ctx();
        let x = BigReal::from_ratio(p, q, &c);
        prop_assert_eq!(rational_recover(&x, 500, &c), Some(Ratio::new(p, q)));
    }

    #[test]
    fn planted_pair_relations(m in -60i64..60, k in 0usize..6) {
        prop_assume!(m != 0);
        let c = ctx();
        let primes = [2i64, 3, 5, 7, 11, 13];
        let b = BigReal::from_int(primes[k], &c).ln();
        let x = b.clone() * BigReal::from_int(m, &c);
        let out = pslq(&[x, b], &c, &PslqOptions::default()).unwrap();
        let r = out.relation().unwrap().to_vec();
        prop_assert_eq!(r[1], -i128::from(m) * r[0]);
    }

    #[test]
    fn unit_group_table_round_trip(n in 3u64..200) {
        let g = UnitGroup::new(n).unwrap();
        let json = serde_json::to_string(&g.to_table()).unwrap();
        let back: UnitGroupTable = serde_json::from_str(&json).unwrap();
        let h = UnitGroup::from_table(&back).unwrap();
        prop_assert_eq!(h.units(), g.units());
        for &a in g.units() {
            prop_assert_eq!(h.dlog(a), g.dlog(a));
        }
    }
}
