//! Constant terms: the rank-one closed form, presentation independence,
//! linearity and certification.

use eisen::arith::rat;
use eisen::eisenstein::{certify_rational, constant_term, rank_one_constant_term, TorusData};
use eisen::field::NumberField;
use eisen::schwartz::{random_s0, FractionalSchwartz, TwistedSchwartz};
use eisen::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// δ_{(1,0)} − δ_{(0,1)} at level 2.  Its constant term reduces to
/// Σ_n (n + 1/2)^{-2} = π²/2 and equals 1/8.
fn example() -> TwistedSchwartz {
    let q = NumberField::rationals();
    TwistedSchwartz::untwisted(FractionalSchwartz::from_points(
        &q,
        2,
        &[(((1, 0), (0, 0)), 1), (((0, 0), (1, 0)), -1)],
    ))
}

fn re(phi: &TwistedSchwartz, m: u32, bound: f64, bits: u32) -> f64 {
    constant_term(phi, m, &TorusData::default(), bound, bits)
        .unwrap()
        .value
        .re
        .to_f64()
}

#[test]
fn one_eighth() {
    assert_eq!(rank_one_constant_term(&example(), 0).unwrap().as_rational(), Some(rat(1, 8)));
    assert!((re(&example(), 0, 1e5, 128) - 0.125).abs() < 1e-12);
    let t = TorusData::default();
    let a = constant_term(&example(), 0, &t, 1e5, 128).unwrap();
    let b = constant_term(&example(), 0, &t, 2e5, 136).unwrap();
    let c = certify_rational(&a, &b, &[2], 12).unwrap();
    assert_eq!(c.value(), rat(1, 8));
    assert_eq!(c.denominator, vec![(2, 3)]);
}

#[test]
fn rejects_functions_outside_s0() {
    let q = NumberField::rationals();
    let f = TwistedSchwartz::untwisted(FractionalSchwartz::from_points(&q, 2, &[(((1, 0), (0, 0)), 1)]));
    let r = constant_term(&f, 0, &TorusData::default(), 1e3, 64);
    assert!(matches!(r, Err(Error::Precondition(_))));
}

#[test]
fn presentation_independence_over_q_sqrt5() {
    let f = NumberField::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let phi = random_s0(&f, 2, &mut rng).unwrap();
    let wide = TwistedSchwartz::untwisted(phi.base.with_modulus(4).unwrap());
    for m in [0u32, 1] {
        let a = re(&phi, m, 1e4, 128);
        let b = re(&wide, m, 1e4, 128);
        assert!((a - b).abs() < 1e-8, "m={} {} {}", m, a, b);
    }
}

#[test]
fn certified_values_over_q_sqrt2() {
    let f = NumberField::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let phi = random_s0(&f, 3, &mut rng).unwrap();
    let t = TorusData::default();
    let a = constant_term(&phi, 1, &t, 1e4, 96).unwrap();
    let b = constant_term(&phi, 1, &t, 2e4, 104).unwrap();
    let c = certify_rational(&a, &b, &[2, 3], 12).unwrap();
    assert!(c.denominator.iter().all(|(p, _)| [2, 3].contains(p)));
    assert!(a.value.im.to_f64().abs() < 1e-20);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rank_one_matches_oracle_at_every_presentation(seed in 0u64..10_000, n in 2u64..6, m in 0u32..3, k in 2u64..4) {
        let q = NumberField::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_s0(&q, n, &mut rng).unwrap();
        let exact = rank_one_constant_term(&phi, m).unwrap();
        prop_assert!(exact.as_rational().is_some());
        let wide = TwistedSchwartz::untwisted(phi.base.with_modulus(n * k).unwrap());
        prop_assert_eq!(rank_one_constant_term(&wide, m).unwrap(), exact.clone());
        let x = exact.to_cdd().re.to_f64();
        let a = re(&phi, m, 1e5, 128);
        let b = re(&wide, m, 1e5, 128);
        prop_assert!((a - x).abs() < 1e-12 * x.abs().max(1.0), "{} vs {}", a, x);
        prop_assert!((b - x).abs() < 1e-12 * x.abs().max(1.0), "{} vs {}", b, x);
    }

    #[test]
    fn constant_term_is_linear(s1 in 0u64..10_000, s2 in 0u64..10_000, c in -4i64..5, m in 0u32..2) {
        let q = NumberField::rationals();
        let f1 = random_s0(&q, 4, &mut ChaCha8Rng::seed_from_u64(s1)).unwrap();
        let f2 = random_s0(&q, 6, &mut ChaCha8Rng::seed_from_u64(s2)).unwrap();
        let sum = TwistedSchwartz::untwisted(f1.base.combine(&rat(1, 1), &f2.base, &rat(c, 1)).unwrap());
        let lhs = re(&sum, m, 1e5, 128);
        let rhs = re(&f1, m, 1e5, 128) + c as f64 * re(&f2, m, 1e5, 128);
        prop_assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
    }
}
