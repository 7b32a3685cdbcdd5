//! Arithmetic in Q(√D): ring laws, norms, exact division, and frozen unit
//! and narrow class number tables.

use eisen::arith::{is_squarefree, rat};
use eisen::classfield::narrow_class_group;
use eisen::field::{FieldElement, NumberField, OInt, Residue};
use num_rational::BigRational;
use proptest::prelude::*;

const RADICANDS: [i64; 6] = [1, 2, 3, 5, 13, 21];

fn element() -> impl Strategy<Value = FieldElement> {
    (-40i64..40, 1i64..6, -40i64..40, 1i64..6).prop_map(|(a, da, b, db)| FieldElement::new(rat(a, da), rat(b, db)))
}

fn field() -> impl Strategy<Value = NumberField> {
    prop::sample::select(RADICANDS.to_vec()).prop_map(|d| NumberField::new(d).unwrap())
}

/// For a rational field only the first coordinate is meaningful.
fn project(f: &NumberField, x: FieldElement) -> FieldElement {
    if f.is_rational() {
        FieldElement::from_rational(x.a)
    } else {
        x
    }
}

proptest! {
    #[test]
    fn ring_laws(f in field(), x in element(), y in element(), z in element()) {
        let (x, y, z) = (project(&f, x), project(&f, y), project(&f, z));
        prop_assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
        prop_assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
        prop_assert_eq!(f.mul(&x, &y.add(&z)), f.mul(&x, &y).add(&f.mul(&x, &z)));
    }

    #[test]
    fn norm_trace_and_inverse(f in field(), x in element(), y in element()) {
        let (x, y) = (project(&f, x), project(&f, y));
        prop_assert_eq!(f.norm(&f.mul(&x, &y)), f.norm(&x) * f.norm(&y));
        if !f.is_rational() {
            prop_assert_eq!(f.conj(&f.conj(&x)), x.clone());
            prop_assert_eq!(FieldElement::from_rational(f.trace(&x)), x.add(&f.conj(&x)));
            prop_assert_eq!(FieldElement::from_rational(f.norm(&x)), f.mul(&x, &f.conj(&x)));
        }
        if !x.is_zero() {
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), FieldElement::one());
        }
    }

    #[test]
    fn exact_division(f in field(), a in -30i128..30, b in -30i128..30, c in -9i128..9, d in -9i128..9) {
        let x: OInt = (a, if f.is_rational() { 0 } else { b });
        let k: OInt = (c, if f.is_rational() { 0 } else { d });
        prop_assume!(f.norm_int(k) != 0);
        prop_assert_eq!(f.div_int(f.mul_int(x, k), k), Some(x));
        let e = f.least_integer(k);
        prop_assert!(f.div_int((e as i128, 0), k).is_some());
        for p in [2u128, 3, 5, 7, 11, 13] {
            if e % p == 0 {
                prop_assert!(f.div_int(((e / p) as i128, 0), k).is_none());
            }
        }
    }

    #[test]
    fn residue_ring(d in prop::sample::select(RADICANDS.to_vec()), n in 2u64..9, a in -50i128..50, b in -50i128..50) {
        let f = NumberField::new(d).unwrap();
        let r = Residue::new(&f, n);
        let x = r.reduce((a, if f.is_rational() { 0 } else { b }));
        prop_assert_eq!(r.reduce(x), x);
        if r.is_unit(x) {
            let y = r.inv(x).unwrap();
            prop_assert_eq!(r.mul(x, y), r.reduce((1, 0)));
        }
    }
}

/// ε = x/2 + (y/2)·√d_F with x² − d_F y² = ±4, smallest y > 0; computed by
/// a brute-force Pell search.
const UNITS: [(i64, i64, i64, i32); 18] = [
    (2, 2, 1, -1),
    (3, 4, 1, 1),
    (5, 1, 1, -1),
    (6, 10, 2, 1),
    (7, 16, 3, 1),
    (10, 6, 1, -1),
    (11, 20, 3, 1),
    (13, 3, 1, -1),
    (14, 30, 4, 1),
    (15, 8, 1, 1),
    (17, 8, 2, -1),
    (19, 340, 39, 1),
    (21, 5, 1, 1),
    (22, 394, 42, 1),
    (23, 48, 5, 1),
    (26, 10, 1, -1),
    (29, 5, 1, -1),
    (30, 22, 2, 1),
];

/// Narrow class numbers from cycles of reduced indefinite forms.
const NARROW: [(i64, usize); 18] = [
    (2, 1),
    (3, 2),
    (5, 1),
    (6, 2),
    (7, 2),
    (10, 2),
    (11, 2),
    (13, 1),
    (14, 2),
    (15, 4),
    (17, 1),
    (19, 2),
    (21, 2),
    (22, 2),
    (23, 2),
    (26, 2),
    (29, 1),
    (30, 4),
];

#[test]
fn fundamental_units_match_pell_search() {
    assert_eq!(UNITS.len(), (2..=30u64).filter(|&d| is_squarefree(d)).count());
    for (d, x, y, norm) in UNITS {
        let f = NumberField::new(d).unwrap();
        let u = f.unit_data().unwrap();
        let eps = FieldElement::from_ints(u.eps.0, u.eps.1);
        // x/2 + (y/2)√d_F = x/2 + y·(√d_F/2)
        let half_sqrt_disc = if f.t == 1 {
            FieldElement::from_ints(-1, 2).scale(&rat(1, 2))
        } else {
            FieldElement::from_ints(0, 1)
        };
        let want = FieldElement::from_rational(rat(x, 2)).add(&half_sqrt_disc.scale(&BigRational::from_integer(y.into())));
        assert_eq!(eps, want, "D = {}", d);
        assert_eq!(u.eps_norm, norm, "D = {}", d);
        assert_eq!(f.norm_int(u.eps_plus), 1);
        assert_eq!(u.plus_exp, if norm == -1 { 2 } else { 1 });
    }
}

#[test]
fn narrow_class_numbers_match_forms() {
    for (d, h) in NARROW {
        let f = NumberField::new(d).unwrap();
        assert_eq!(narrow_class_group(&f).unwrap().order(), h, "D = {}", d);
    }
}

#[test]
fn rejects_bad_radicands() {
    for d in [0, -1, 4, 8, 12, 18] {
        assert!(NumberField::new(d).is_err(), "D = {}", d);
    }
}
