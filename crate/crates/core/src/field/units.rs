//! Fundamental units by continued fractions and the congruence subgroups
//! of totally positive units.

use super::{FieldElement, NumberField, OInt};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGroupData {
    /// Fundamental unit with σ₁(ε) > 1.
    pub eps: OInt,
    pub eps_norm: i32,
    /// Totally positive generator ε₊ (ε or ε²).
    pub eps_plus: OInt,
    /// ε₊ = ε^plus_exp.
    pub plus_exp: u32,
}

impl NumberField {
    /// Fundamental unit and its norm, from the continued fraction of ω.
    pub fn fundamental_unit(&self) -> Result<(OInt, i32)> {
        if self.is_rational() {
            return Err(Error::Degenerate("the unit group of Q is finite".into()));
        }
        // x = (P + √d)/Q starting from ω = (t + √d_F)/2
        let d = BigInt::from(self.disc);
        let sd = d.sqrt();
        let mut p = BigInt::from(self.t);
        let mut q = BigInt::from(2);
        let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
        let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
        for _ in 0..100_000 {
            let a = (&p + &sd) / &q;
            let h_new = &a * &h + &h_prev;
            let k_new = &a * &k + &k_prev;
            h_prev = std::mem::replace(&mut h, h_new);
            k_prev = std::mem::replace(&mut k, k_new);
            // N(h - kω) = h² - t·h·k - n·k²
            let nrm = &h * &h - BigInt::from(self.t) * &h * &k - BigInt::from(self.n) * &k * &k;
            if nrm.abs().is_one() {
                // ε = h - k·ω̄ = (h - k·t) + k·ω
                let a0 = &h - &k * BigInt::from(self.t);
                let e = (
                    a0.to_i128().ok_or_else(|| overflow("fundamental unit"))?,
                    k.to_i128().ok_or_else(|| overflow("fundamental unit"))?,
                );
                let sign = if nrm.is_positive() { 1 } else { -1 };
                return Ok((e, sign));
            }
            let p_new = &a * &q - &p;
            let q_new = (&d - &p_new * &p_new) / &q;
            p = p_new;
            q = q_new;
        }
        Err(Error::Internal("continued fraction did not close".into()))
    }

    pub fn unit_data(&self) -> Result<UnitGroupData> {
        let (eps, eps_norm) = self.fundamental_unit()?;
        let (eps_plus, plus_exp) = if eps_norm == 1 {
            (eps, 1)
        } else {
            (
                self.checked_mul_int(eps, eps)
                    .ok_or_else(|| overflow("ε²"))?,
                2,
            )
        };
        Ok(UnitGroupData {
            eps,
            eps_norm,
            eps_plus,
            plus_exp,
        })
    }

    /// Generator ε_N of the totally positive units ≡ 1 mod N, and k with
    /// ε_N = ε₊^k.  For Q the group is trivial and (1, 1) is returned.
    pub fn unit_subgroup_generator(&self, modulus: u64) -> Result<(OInt, u32)> {
        if modulus == 0 {
            return Err(Error::InvalidInput("N must be positive".into()));
        }
        if self.is_rational() {
            return Ok(((1, 0), 1));
        }
        let ud = self.unit_data()?;
        let m = modulus as i128;
        let reduce = |x: OInt| (x.0.rem_euclid(m), x.1.rem_euclid(m));
        let base = reduce(ud.eps_plus);
        let mut acc = base;
        let mut k = 1u32;
        while acc != reduce((1, 0)) {
            acc = reduce(self.mul_int(acc, base));
            k += 1;
            if k > 10_000_000 {
                return Err(Error::Internal("unit order search diverged".into()));
            }
        }
        let mut e = (1i128, 0i128);
        for _ in 0..k {
            e = self
                .checked_mul_int(e, ud.eps_plus)
                .ok_or_else(|| overflow("ε_N"))?;
        }
        Ok((e, k))
    }

    /// Index [O^× : O^×(N)⁺] = 2·(exponent of ε_N over ε).
    pub fn unit_index(&self, modulus: u64) -> Result<u64> {
        if self.is_rational() {
            return Ok(2);
        }
        let ud = self.unit_data()?;
        let (_, k) = self.unit_subgroup_generator(modulus)?;
        Ok(2 * (k as u64) * ud.plus_exp as u64)
    }

    pub fn unit_element(&self, u: OInt) -> FieldElement {
        FieldElement::from_ints(u.0, u.1)
    }
}

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("{} does not fit in 128-bit coordinates", what))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_units() {
        let f = NumberField::new(2).unwrap();
        assert_eq!(f.fundamental_unit().unwrap(), ((1, 1), -1));
        let f = NumberField::new(5).unwrap();
        assert_eq!(f.fundamental_unit().unwrap(), ((0, 1), -1));
        let f = NumberField::new(3).unwrap();
        assert_eq!(f.fundamental_unit().unwrap(), ((2, 1), 1));
        let f = NumberField::new(94).unwrap();
        let (e, _) = f.fundamental_unit().unwrap();
        assert_eq!(e, (2143295, 221064));
        assert!(NumberField::rationals().fundamental_unit().is_err());
    }

    #[test]
    fn congruence_units() {
        let f = NumberField::new(5).unwrap();
        let (e1, k1) = f.unit_subgroup_generator(1).unwrap();
        assert_eq!((e1, k1), ((1, 1), 1)); // ω² = 1 + ω
        let (e3, k3) = f.unit_subgroup_generator(3).unwrap();
        assert_eq!(k3, 4); // ε₊ = ω², ω has order 8 mod 3
        assert_eq!(e3, f.to_oint_pow((0, 1), 8));
        assert_eq!(f.unit_index(3).unwrap(), 16);
    }

    impl NumberField {
        fn to_oint_pow(&self, x: OInt, e: u32) -> OInt {
            (0..e).fold((1, 0), |acc, _| self.mul_int(acc, x))
        }
    }
}
