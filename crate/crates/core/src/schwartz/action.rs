//! Right action (f·g)(v) = f(gv) of GL₂(F) on Schwartz functions.

use super::table::FractionalSchwartz;
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField, OInt, Residue};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

/// 2×2 matrix over F, rows first.
pub type Mat2 = [[FieldElement; 2]; 2];

pub fn mat_det(field: &NumberField, g: &Mat2) -> FieldElement {
    field
        .mul(&g[0][0], &g[1][1])
        .sub(&field.mul(&g[0][1], &g[1][0]))
}

pub fn mat_scale(field: &NumberField, g: &Mat2, x: &FieldElement) -> Mat2 {
    [
        [field.mul(&g[0][0], x), field.mul(&g[0][1], x)],
        [field.mul(&g[1][0], x), field.mul(&g[1][1], x)],
    ]
}

pub fn mat_from_ints(m: [[i64; 2]; 2]) -> Mat2 {
    [
        [FieldElement::from_int(m[0][0]), FieldElement::from_int(m[0][1])],
        [FieldElement::from_int(m[1][0]), FieldElement::from_int(m[1][1])],
    ]
}

impl FractionalSchwartz {
    /// f·g for invertible g.  With g = h/d (h integral) and Δ = det h the
    /// result has scale d·s/Δ, modulus C·e with e the least integer in ΔO,
    /// and table
    /// T'(w) = T(hw/Δ mod C) when hw ∈ Δ·O², else 0.
    pub fn act_group(&self, g: &Mat2) -> Result<Self> {
        let fld = &self.field;
        let det = mat_det(fld, g);
        if det.is_zero() {
            return Err(Error::InvalidInput("matrix is singular".into()));
        }
        let d = g
            .iter()
            .flatten()
            .fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, &x.denominator()));
        let dq = BigRational::from_integer(d.clone());
        let h: Vec<OInt> = g
            .iter()
            .flatten()
            .map(|x| {
                x.scale(&dq)
                    .to_oint()
                    .ok_or_else(|| Error::Overflow("matrix entry".into()))
            })
            .collect::<Result<_>>()?;
        let delta = fld
            .checked_mul_int(h[0], h[3])
            .zip(fld.checked_mul_int(h[1], h[2]))
            .map(|(a, b)| (a.0 - b.0, a.1 - b.1))
            .ok_or_else(|| Error::Overflow("determinant".into()))?;
        let c2 = (self.modulus as u128)
            .checked_mul(fld.least_integer(delta))
            .and_then(|x| u64::try_from(x).ok())
            .ok_or_else(|| Error::Overflow("modulus after action".into()))?;
        let r2 = Residue::new(fld, c2);
        let n2 = r2.size().pow(2);
        let m = self.order as usize;
        let div = |x: OInt| fld.div_int(x, delta);
        let mut data = vec![0i128; n2 * m];
        for i in 0..n2 {
            let w = (r2.from_index(i / r2.size()), r2.from_index(i % r2.size()));
            let hw0 = fld.mul_int(h[0], w.0);
            let hw0b = fld.mul_int(h[1], w.1);
            let hw1 = fld.mul_int(h[2], w.0);
            let hw1b = fld.mul_int(h[3], w.1);
            let a = (hw0.0 + hw0b.0, hw0.1 + hw0b.1);
            let b = (hw1.0 + hw1b.0, hw1.1 + hw1b.1);
            if let (Some(a), Some(b)) = (div(a), div(b)) {
                let j = self.index_of((a, b));
                data[i * m..(i + 1) * m].copy_from_slice(self.entry(j));
            }
        }
        let dfe = FieldElement::from_rational(dq);
        let df = FieldElement::from_ints(delta.0, delta.1);
        let scale = fld.div(&fld.mul(&dfe, &self.scale), &df)?;
        Ok(FractionalSchwartz {
            field: fld.clone(),
            scale,
            modulus: c2,
            order: self.order,
            factor: self.factor.clone(),
            data,
        })
    }

    /// v ↦ f(αv): same table, scale s/α.
    pub fn act_scalar(&self, alpha: &FieldElement) -> Result<Self> {
        let scale = self.field.div(&self.scale, alpha)?;
        Ok(FractionalSchwartz {
            scale,
            ..self.clone()
        })
    }

    /// Table permutation w ↦ T(ρw) for a unit ρ mod C, i.e. v ↦ f(ρ̃v) for
    /// any lift ρ̃ ∈ O of ρ that is a unit at the primes dividing C.
    pub fn act_residue(&self, rho: OInt) -> Result<Self> {
        let r = self.residue();
        if !r.is_unit(rho) {
            return Err(Error::InvalidInput("residue is not a unit mod C".into()));
        }
        let m = self.order as usize;
        let mut out = self.clone();
        for i in 0..self.len() {
            let w = self.point_of(i);
            let j = self.index_of((r.mul(rho, w.0), r.mul(rho, w.1)));
            out.data[i * m..(i + 1) * m].copy_from_slice(self.entry(j));
        }
        Ok(out)
    }

    /// |N det g| as a rational, the inverse of ‖det g‖_f.
    pub fn det_norm(field: &NumberField, g: &Mat2) -> BigRational {
        field.norm(&mat_det(field, g)).abs()
    }

    /// Number of entries after acting by g, for budget checks.
    pub fn acted_size(&self, g: &Mat2) -> Option<u64> {
        let fld = &self.field;
        let d = g
            .iter()
            .flatten()
            .fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, &x.denominator()));
        let det = mat_det(fld, g).scale(&BigRational::from_integer(d.clone() * d)).to_oint()?;
        let e = u64::try_from(fld.least_integer(det)).ok()?;
        let c2 = self.modulus.checked_mul(e)?;
        c2.checked_pow(2 * fld.degree as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn identity_and_permutation() {
        let q = NumberField::rationals();
        let vals: Vec<i64> = (0..25).map(|i| (i * i) % 7).collect();
        let f = FractionalSchwartz::from_ints(&q, 5, &vals).unwrap();
        assert!(f.act_group(&mat_from_ints([[1, 0], [0, 1]])).unwrap().equals(&f).unwrap());
        let g = f.act_group(&mat_from_ints([[1, 1], [0, 1]])).unwrap();
        assert_eq!(g.modulus, 5);
        let mut a: Vec<_> = f.rational_values().unwrap();
        let mut b: Vec<_> = g.rational_values().unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(f.act_group(&mat_from_ints([[1, 2], [2, 4]])).is_err());
    }

    #[test]
    fn pointwise_action() {
        let fld = NumberField::new(5).unwrap();
        let f = FractionalSchwartz::from_points(&fld, 3, &[(((1, 0), (0, 1)), 2), (((0, 2), (1, 1)), -1)]);
        let g = [
            [FieldElement::from_int(1), FieldElement::from_ints(0, 1)],
            [FieldElement::from_rational(rat(1, 2)), FieldElement::from_int(1)],
        ];
        let fg = f.act_group(&g).unwrap();
        for a in -3..4i128 {
            for b in -2..3i128 {
                let v = (
                    FieldElement::from_ints(a, b),
                    FieldElement::from_ints(2 * b, a - b),
                );
                let gv = (
                    fld.mul(&g[0][0], &v.0).add(&fld.mul(&g[0][1], &v.1)),
                    fld.mul(&g[1][0], &v.0).add(&fld.mul(&g[1][1], &v.1)),
                );
                assert_eq!(fg.eval(&v), f.eval(&gv));
            }
        }
    }

    #[test]
    fn equivariance_weyl() {
        let fld = NumberField::new(5).unwrap();
        let n = crate::field::Residue::new(&fld, 3).size().pow(2);
        let vals: Vec<i64> = (0..n as i64).map(|i| (i * 13 + 5) % 7 - 3).collect();
        let f = FractionalSchwartz::from_ints(&fld, 3, &vals).unwrap();
        let w = mat_from_ints([[0, 1], [-1, 0]]);
        let lhs = f.act_group(&w).unwrap().fourier_transform().unwrap();
        let det = mat_det(&fld, &w);
        let ginv = mat_scale(&fld, &w, &fld.inv(&det).unwrap());
        let rhs = f
            .fourier_transform()
            .unwrap()
            .act_group(&ginv)
            .unwrap()
            .scale_values(&FractionalSchwartz::det_norm(&fld, &w));
        assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn non_unit_determinant_over_q() {
        let q = NumberField::rationals();
        let f = FractionalSchwartz::from_points(&q, 2, &[(((1, 0), (0, 0)), 1)]);
        let g = mat_from_ints([[3, 0], [0, 3]]);
        let h = f.act_group(&g).unwrap();
        // v ↦ f(3v) has 9 times the integral of f
        assert_eq!(h.integral(), f.integral().scale(&crate::arith::rat(9, 1)));
        let lhs = h.fourier_transform().unwrap();
        let ginv = mat_scale(&q, &g, &q.inv(&mat_det(&q, &g)).unwrap());
        let rhs = f
            .fourier_transform()
            .unwrap()
            .act_group(&ginv)
            .unwrap()
            .scale_values(&FractionalSchwartz::det_norm(&q, &g));
        assert!(lhs.equals(&rhs).unwrap());
    }
}
