//! Frozen zeta values and ray class group orders.
//!
//! The ζ_F tables come from ζ_F(1−k) = (B_k/k)·(B_{k,χ}/k) with the
//! generalized Bernoulli numbers B_{k,χ} = d^{k−1} Σ_a χ(a) B_k(a/d) of the
//! Kronecker character of d_F, computed independently in plain rational
//! arithmetic.

use eisen::arith::{euler_phi, rat};
use eisen::classfield::oracle::ray_class_order_brute;
use eisen::classfield::RayClassGroup;
use eisen::field::NumberField;
use eisen::zeta::{
    bernoulli, bernoulli_poly, dedekind_zeta_shintani, quadratic_zeta_bernoulli, ray_class_zeta_sum,
    siegel_sigma1, twisted_zeta_rank1,
};
use num_rational::BigRational;
use proptest::prelude::*;

const ZETA_M1: [(i64, i64, i64); 18] = [
    (2, 1, 12),
    (3, 1, 6),
    (5, 1, 30),
    (6, 1, 2),
    (7, 2, 3),
    (10, 7, 6),
    (11, 7, 6),
    (13, 1, 6),
    (14, 5, 3),
    (15, 2, 1),
    (17, 1, 3),
    (19, 19, 6),
    (21, 1, 3),
    (22, 23, 6),
    (23, 10, 3),
    (26, 25, 6),
    (29, 1, 2),
    (30, 17, 3),
];

const ZETA_M3: [(i64, i64, i64); 8] = [
    (2, 11, 120),
    (3, 23, 60),
    (5, 1, 60),
    (6, 87, 20),
    (7, 113, 15),
    (13, 29, 60),
    (17, 41, 30),
    (29, 157, 20),
];

#[test]
fn bernoulli_numbers() {
    let want = [(0, 1, 1), (2, 1, 6), (4, -1, 30), (6, 1, 42), (8, -1, 30), (10, 5, 66), (12, -691, 2730)];
    for (k, p, q) in want {
        assert_eq!(bernoulli(k), rat(p, q), "B_{}", k);
    }
    for k in [3, 5, 7, 9] {
        assert_eq!(bernoulli(k), rat(0, 1));
    }
}

#[test]
fn zeta_at_minus_one() {
    for (d, p, q) in ZETA_M1 {
        let f = NumberField::new(d).unwrap();
        assert_eq!(siegel_sigma1(&f), rat(p, q), "D = {}", d);
        assert_eq!(quadratic_zeta_bernoulli(&f, 1), rat(p, q), "D = {}", d);
        assert_eq!(dedekind_zeta_shintani(&f, 1).unwrap(), rat(p, q), "D = {}", d);
    }
}

#[test]
fn zeta_at_minus_three() {
    for (d, p, q) in ZETA_M3 {
        let f = NumberField::new(d).unwrap();
        assert_eq!(quadratic_zeta_bernoulli(&f, 3), rat(p, q), "D = {}", d);
        assert_eq!(dedekind_zeta_shintani(&f, 3).unwrap(), rat(p, q), "D = {}", d);
    }
}

#[test]
fn ray_class_sums_pick_up_euler_factors() {
    // Q(√5), N = 2 (inert, norm 4) and N = 5 (ramified, norm 5)
    let f = NumberField::new(5).unwrap();
    assert_eq!(ray_class_zeta_sum(&f, 2, 1).unwrap(), rat(1, 30) * rat(1 - 4, 1));
    assert_eq!(ray_class_zeta_sum(&f, 5, 1).unwrap(), rat(1, 30) * rat(1 - 5, 1));
}

#[test]
fn ray_class_orders() {
    let q = NumberField::rationals();
    for n in 1..=30u64 {
        assert_eq!(RayClassGroup::new(&q, n).unwrap().order() as u64, euler_phi(n).max(1), "N = {}", n);
    }
    for d in [2i64, 5, 13] {
        let f = NumberField::new(d).unwrap();
        for n in 2..=7u64 {
            let ours = RayClassGroup::new(&f, n).unwrap().order();
            assert_eq!(ours, ray_class_order_brute(&f, n, 40), "D = {} N = {}", d, n);
        }
    }
}

proptest! {
    #[test]
    fn bernoulli_polynomial_reflection(k in 1usize..10, p in 0i64..50, q in 1i64..50) {
        let x = rat(p, q);
        let one = BigRational::from_integer(1.into());
        let lhs = bernoulli_poly(k, &(&one - &x));
        let rhs = bernoulli_poly(k, &x) * rat(if k % 2 == 0 { 1 } else { -1 }, 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bernoulli_polynomial_difference(k in 1usize..10, p in -20i64..20, q in 1i64..20) {
        // B_k(x+1) − B_k(x) = k·x^{k−1}
        let x = rat(p, q);
        let one = BigRational::from_integer(1.into());
        let d = bernoulli_poly(k, &(&x + &one)) - bernoulli_poly(k, &x);
        prop_assert_eq!(d, num_traits::pow(x, k - 1) * rat(k as i64, 1));
    }

    #[test]
    fn twisted_zeta_is_periodic(k in 2usize..8, p in 0i64..30, q in 1i64..30) {
        let x = rat(p, q);
        prop_assert_eq!(twisted_zeta_rank1(&x, k), twisted_zeta_rank1(&(x.clone() + rat(1, 1)), k));
    }
}
