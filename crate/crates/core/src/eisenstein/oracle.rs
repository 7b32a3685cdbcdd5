//! Exact constant terms over Q from Bernoulli polynomials.
//!
//! For ξ = 1 the orbit sum is Σ_{λ≠0} T(λ mod C, 0)·(s'λ)^{-k}.  Expanding
//! the residue condition in additive characters and using
//! Σ_{n≠0} e(nj/C) n^{-k} = -(2πi)^k B_k(j/C)/k! collapses the prefactor,
//! leaving
//!
//!   CT = ((-1)^k / k)·s'^{-k}·C⁻¹·Σ_j B_k(j/C)·Σ_a T(a,0) e(-ja/C).

use crate::error::{Error, Result};
use crate::schwartz::{CyclotomicValue, TwistedSchwartz};
use crate::zeta::twisted_zeta_rank1;
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn rank_one_constant_term(phi: &TwistedSchwartz, m: u32) -> Result<CyclotomicValue> {
    let base = &phi.base;
    if !base.field.is_rational() {
        return Err(Error::InvalidInput("the Bernoulli oracle is for F = Q".into()));
    }
    let k = m + 2;
    let fh = base.fourier_transform()?;
    let c = fh.modulus;
    let mut total = CyclotomicValue::zero(1);
    for j in 0..c {
        let mut inner = CyclotomicValue::zero(1);
        for a in 0..c {
            let t = fh.value(fh.index_of(((a as i128, 0), (0, 0))));
            if t.is_zero() {
                continue;
            }
            inner = inner.add(&t.mul(&CyclotomicValue::root(-((j * a % c) as i64), c)));
        }
        let b = twisted_zeta_rank1(&BigRational::new(BigInt::from(j), BigInt::from(c)), k as usize);
        total = total.add(&inner.scale(&b));
    }
    let s = fh.scale.a.clone();
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let factor = BigRational::new(BigInt::from(sign), BigInt::from(k as u64 * c))
        * num_traits::pow(s.recip(), k as usize);
    Ok(total.scale(&factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::field::NumberField;
    use crate::schwartz::FractionalSchwartz;

    #[test]
    fn example_is_one_eighth() {
        let q = NumberField::rationals();
        let f = FractionalSchwartz::from_points(&q, 2, &[(((1, 0), (0, 0)), 1), (((0, 0), (1, 0)), -1)]);
        let v = rank_one_constant_term(&TwistedSchwartz::untwisted(f), 0).unwrap();
        assert_eq!(v.as_rational(), Some(rat(1, 8)));
    }
}
