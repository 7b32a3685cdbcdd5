//! The finite adelic Fourier transform for the pairing ⟨x,y⟩ = Tr det(x,y).
//!
//! For f with scale s and modulus C, f̂ has scale s' = (sCδ)⁻¹, the same
//! modulus, and table
//!
//!   T̂(y) = K · Σ_w T(w) e(-ℓ(det(y,w))/C),   K = 1/(d_F |N(sC)|²),
//!
//! where ℓ(z) = Tr(z/δ) is the ω-coordinate of z.  Writing ℓ(ab) = aᵀAb
//! with A = [[0,1],[1,t]] turns the sum into a plain DFT on (Z/C)^{2ξ}
//! evaluated at u = (-A y₂, A y₁).

use super::table::FractionalSchwartz;
use crate::error::Result;
use crate::field::{FieldElement, OInt};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

impl FractionalSchwartz {
    pub fn fourier_transform(&self) -> Result<Self> {
        let fld = &self.field;
        let c = self.modulus as usize;
        let m2 = self.order.lcm(&self.modulus);
        let mut work = self.lift_order(m2);
        let mlen = m2 as usize;
        let step = (m2 / self.modulus) as usize;
        let axes = 2 * fld.degree as usize;
        let n = work.len();

        // separable DFT, one axis at a time; axis 0 is the slowest index
        let mut buf = vec![0i128; n * mlen];
        for axis in 0..axes {
            let stride = c.pow((axes - 1 - axis) as u32);
            buf.iter_mut().for_each(|x| *x = 0);
            for i in 0..n {
                let wi = (i / stride) % c;
                let base = i - wi * stride;
                let src = &work.data[i * mlen..(i + 1) * mlen];
                if src.iter().all(|&x| x == 0) {
                    continue;
                }
                for u in 0..c {
                    let o = base + u * stride;
                    // ζ_C^{-u·w} = ζ_M^{-u·w·step}
                    let rot = ((c - (u * wi) % c) % c) * step;
                    let dst = &mut buf[o * mlen..(o + 1) * mlen];
                    for (j, &x) in src.iter().enumerate() {
                        if x != 0 {
                            dst[(j + rot) % mlen] += x;
                        }
                    }
                }
            }
            std::mem::swap(&mut work.data, &mut buf);
        }

        // permutation y ↦ u = (-A y₂, A y₁)
        let res = self.residue();
        let t = fld.t as i128;
        let a_map = |y: OInt| -> OInt {
            if fld.is_rational() {
                y
            } else {
                (y.1, y.0 + t * y.1)
            }
        };
        let mut out = vec![0i128; n * mlen];
        for yi in 0..n {
            let (y1, y2) = self.point_of(yi);
            let u = (res.neg(a_map(y2)), res.reduce(a_map(y1)));
            let ui = self.index_of(u);
            out[yi * mlen..(yi + 1) * mlen].copy_from_slice(&work.data[ui * mlen..(ui + 1) * mlen]);
        }

        let cf = FieldElement::from_int(self.modulus as i64);
        let sc = fld.mul(&self.scale, &cf);
        let nsc = fld.norm(&sc).abs();
        let k = (nsc.clone() * nsc * BigRational::from_integer(BigInt::from(fld.disc))).recip();
        let new_scale = fld.inv(&fld.mul(&sc, &fld.delta()))?;
        let mut f = FractionalSchwartz {
            field: fld.clone(),
            scale: new_scale,
            modulus: self.modulus,
            order: m2,
            factor: &self.factor * k,
            data: out,
        };
        f.normalize();
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::field::NumberField;
    use crate::schwartz::cyclo::CyclotomicValue;

    #[test]
    fn indicator_of_level_lattice() {
        // ξ=1: the indicator of N·V(Ẑ) transforms to N⁻²·1_{N⁻¹V(Ẑ)}
        let q = NumberField::rationals();
        let n = 4u64;
        let f = FractionalSchwartz::from_points(&q, n, &[(((0, 0), (0, 0)), 1)]);
        let g = f.fourier_transform().unwrap();
        assert_eq!(g.scale, FieldElement::from_rational(rat(1, 4)));
        for i in 0..g.len() {
            assert_eq!(g.value(i).as_rational(), Some(rat(1, 16)));
        }
    }

    #[test]
    fn half_integer_example() {
        // f = δ_(1,0) - δ_(0,1) mod 2 has f̂((l,0)) = 1/2 on odd multiples of 1/2
        let q = NumberField::rationals();
        let f = FractionalSchwartz::from_points(&q, 2, &[(((1, 0), (0, 0)), 1), (((0, 0), (1, 0)), -1)]);
        let g = f.fourier_transform().unwrap();
        let at = |a: i64| {
            g.eval(&(FieldElement::from_rational(rat(a, 2)), FieldElement::zero()))
                .as_rational()
                .unwrap()
        };
        assert_eq!(at(1), rat(1, 2));
        assert_eq!(at(3), rat(1, 2));
        assert_eq!(at(2), rat(0, 1));
    }

    #[test]
    fn double_transform_is_identity() {
        for d in [1i64, 5, 2] {
            let fld = NumberField::new(d).unwrap();
            let n = crate::field::Residue::new(&fld, 3).size().pow(2);
            let vals: Vec<i64> = (0..n as i64).map(|i| (i * 7 + 3) % 5 - 2).collect();
            let f = FractionalSchwartz::from_ints(&fld, 3, &vals).unwrap();
            let ff = f.fourier_transform().unwrap().fourier_transform().unwrap();
            assert_eq!(ff.scale, f.scale);
            assert!(ff.equals(&f).unwrap());
        }
    }

    #[test]
    fn translation_gives_phase() {
        let fld = NumberField::new(5).unwrap();
        let f = FractionalSchwartz::from_points(&fld, 2, &[(((1, 0), (0, 1)), 1), (((1, 1), (0, 0)), 3)]);
        let u0 = (FieldElement::from_ints(0, 1), FieldElement::from_int(1));
        let g = f.translate(&u0).unwrap().fourier_transform().unwrap();
        let fh = f.fourier_transform().unwrap();
        for i in 0..fh.len() {
            let y = fh.point_of(i);
            let x = (
                fld.mul(&fh.scale, &FieldElement::from_ints(y.0 .0, y.0 .1)),
                fld.mul(&fh.scale, &FieldElement::from_ints(y.1 .0, y.1 .1)),
            );
            let p = crate::schwartz::trace_pairing(&fld, &x, &u0).value;
            let num: i64 = (p.numer() % p.denom()).try_into().unwrap();
            let den: i64 = p.denom().try_into().unwrap();
            let phase = CyclotomicValue::root(-num, den as u64);
            assert_eq!(g.value(i), fh.value(i).mul(&phase));
        }
    }
}
