//! One representative per O^×(N)⁺-orbit on F^×.

use crate::error::{Error, Result};
use crate::field::{enumerate_orbit_reps, in_domain, FieldElement, FractionalIdeal, NumberField, OInt};

/// The half-open slab 0 <= log|σ₁l/σ₂l| < 2·log σ₁(ε_N).  Trivial over Q.
#[derive(Clone, Debug)]
pub struct UnitFundamentalDomain {
    pub field: NumberField,
    pub level: u64,
    /// ε_N with σ₁(ε_N) > 1.
    pub eps: OInt,
    /// ε_N = ε₊^exponent.
    pub exponent: u32,
}

impl UnitFundamentalDomain {
    pub fn new(field: &NumberField, level: u64) -> Result<Self> {
        let (mut eps, exponent) = field.unit_subgroup_generator(level)?;
        if !field.is_rational() && field.embed_int_f64(eps, 0) < 1.0 {
            eps = field.conj_int(eps);
        }
        Ok(UnitFundamentalDomain {
            field: field.clone(),
            level,
            eps,
            exponent,
        })
    }

    pub fn log_eps(&self) -> f64 {
        if self.field.is_rational() {
            0.0
        } else {
            self.field.embed_int_f64(self.eps, 0).ln()
        }
    }

    pub fn contains(&self, y: OInt) -> bool {
        if y == (0, 0) {
            return false;
        }
        self.field.is_rational() || in_domain(&self.field, y, self.field.conj_int(self.eps))
    }

    /// The unique ε_N^j·y in the slab.
    pub fn reduce(&self, y: OInt) -> Result<OInt> {
        if y == (0, 0) {
            return Err(Error::InvalidInput("zero has no orbit representative".into()));
        }
        if self.field.is_rational() {
            return Ok(y);
        }
        let f = &self.field;
        let eps_bar = f.conj_int(self.eps);
        let ratio = (f.embed_int_f64(y, 0) / f.embed_int_f64(y, 1)).abs().ln();
        let j = (ratio / (2.0 * self.log_eps())).floor() as i64;
        let step = if j > 0 { eps_bar } else { self.eps };
        let mut z = y;
        for _ in 0..j.unsigned_abs() {
            z = f
                .checked_mul_int(z, step)
                .ok_or_else(|| Error::Overflow("orbit reduction".into()))?;
        }
        // the float guess is off by at most one step near the walls
        for _ in 0..4 {
            if in_domain(f, z, eps_bar) {
                return Ok(z);
            }
            let r = (f.embed_int_f64(z, 0) / f.embed_int_f64(z, 1)).abs();
            let s = if r < 1.0 { self.eps } else { eps_bar };
            z = f
                .checked_mul_int(z, s)
                .ok_or_else(|| Error::Overflow("orbit reduction".into()))?;
        }
        Err(Error::Internal("orbit reduction did not settle".into()))
    }

    /// Orbit representatives of the nonzero elements of `ideal` with
    /// |N| <= bound.
    pub fn representatives(&self, ideal: &FractionalIdeal, bound: f64) -> Result<Vec<FieldElement>> {
        if bound <= 0.0 {
            return Err(Error::InvalidInput("bound must be positive".into()));
        }
        enumerate_orbit_reps(&self.field, ideal, self.level, bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_lands_in_slab() {
        for (d, n) in [(5i64, 1u64), (5, 3), (2, 4), (3, 2)] {
            let f = NumberField::new(d).unwrap();
            let dom = UnitFundamentalDomain::new(&f, n).unwrap();
            for p in -7..8i128 {
                for q in -7..8i128 {
                    if (p, q) == (0, 0) {
                        continue;
                    }
                    let z = dom.reduce((p, q)).unwrap();
                    assert!(dom.contains(z));
                    assert_eq!(f.norm_int(z), f.norm_int((p, q)));
                    let ze = f.mul_int(z, dom.eps);
                    assert!(!dom.contains(ze));
                }
            }
        }
    }

    #[test]
    fn rational_reps() {
        let q = NumberField::rationals();
        let dom = UnitFundamentalDomain::new(&q, 1).unwrap();
        let r = dom.representatives(&FractionalIdeal::unit(&q), 3.0).unwrap();
        let got: Vec<i64> = r.iter().map(|x| crate::arith::rat_to_i64(&x.a).unwrap()).collect();
        assert_eq!(got, vec![-3, -2, -1, 1, 2, 3]);
    }
}
