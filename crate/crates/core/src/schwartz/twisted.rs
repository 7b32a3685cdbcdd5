//! The trace pairing, the S⁰ condition and twisted Schwartz data.

use super::cyclo::CyclotomicValue;
use super::table::{FractionalSchwartz, VPoint};
use crate::classfield::HeckeCharacter;
use crate::error::{Error, Result};
use crate::field::{NumberField, Residue};
use crate::arith::frac;
use num_rational::BigRational;
use rand::Rng;

/// ⟨x,y⟩ = Tr(x₁y₂ - x₂y₁) with its class in Q/Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingValue {
    pub value: BigRational,
    pub class: BigRational,
}

impl PairingValue {
    /// ψ̄₀⟨x,y⟩ = e(-⟨x,y⟩) as an exact root of unity.
    pub fn psi_bar(&self) -> CyclotomicValue {
        let den: u64 = self.class.denom().try_into().expect("small denominator");
        let num: i64 = self.class.numer().try_into().expect("small numerator");
        CyclotomicValue::root(-num, den)
    }
}

pub fn trace_pairing(field: &NumberField, x: &VPoint, y: &VPoint) -> PairingValue {
    let det = field.mul(&x.0, &y.1).sub(&field.mul(&x.1, &y.0));
    let value = field.trace(&det);
    PairingValue {
        class: frac(&value),
        value,
    }
}

/// φ(v, g) = f(v)·η(det g)·(‖det g‖_f·sgn N(det g))^n.
#[derive(Clone, Debug)]
pub struct TwistedSchwartz {
    pub base: FractionalSchwartz,
    pub eta: Option<HeckeCharacter>,
    pub n: i64,
}

impl TwistedSchwartz {
    pub fn untwisted(base: FractionalSchwartz) -> Self {
        TwistedSchwartz {
            base,
            eta: None,
            n: 0,
        }
    }
}

/// f(0) = 0 and ∫ f = 0.
pub fn is_s0(phi: &TwistedSchwartz) -> bool {
    let f = &phi.base;
    f.value_at_zero().is_zero() && f.table_sum().is_zero()
}

/// A random untwisted φ ∈ S⁰ at level N, scale 1: integer entries in
/// [-3, 3], zero at 0, with entry 1 adjusted so the table sums to zero.
pub fn random_s0<R: Rng>(field: &NumberField, modulus: u64, rng: &mut R) -> Result<TwistedSchwartz> {
    let size = Residue::new(field, modulus).size().pow(2);
    if size < 2 {
        return Err(Error::InvalidInput("S⁰ is zero at level 1".into()));
    }
    let mut vals: Vec<i64> = (0..size).map(|_| rng.gen_range(-3..=3)).collect();
    vals[0] = 0;
    let s: i64 = vals.iter().sum();
    vals[1] -= s;
    Ok(TwistedSchwartz::untwisted(FractionalSchwartz::from_ints(field, modulus, &vals)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::field::FieldElement;

    #[test]
    fn pairing_examples() {
        let f = NumberField::new(5).unwrap();
        let e1 = (FieldElement::one(), FieldElement::zero());
        let e2 = (FieldElement::zero(), FieldElement::one());
        assert_eq!(trace_pairing(&f, &e1, &e2).value, rat(2, 1));
        assert_eq!(trace_pairing(&f, &e1, &e1).value, rat(0, 1));
        let x = (f.omega(), FieldElement::zero());
        assert_eq!(trace_pairing(&f, &x, &e2).value, rat(1, 1));
        assert_eq!(trace_pairing(&f, &e2, &x).value, rat(-1, 1));
    }

    #[test]
    fn s0_examples() {
        let q = NumberField::rationals();
        let d = |pts: &[(((i128, i128), (i128, i128)), i64)]| {
            TwistedSchwartz::untwisted(FractionalSchwartz::from_points(&q, 3, pts))
        };
        assert!(is_s0(&d(&[(((1, 0), (0, 0)), 1), (((0, 0), (2, 0)), -1)])));
        assert!(!is_s0(&d(&[(((0, 0), (0, 0)), 1)])));
        let all: Vec<(((i128, i128), (i128, i128)), i64)> = vec![(((0, 0), (0, 0)), 1)];
        let ind = TwistedSchwartz::untwisted(FractionalSchwartz::from_points(&q, 1, &all));
        assert!(!is_s0(&ind));
    }
}
