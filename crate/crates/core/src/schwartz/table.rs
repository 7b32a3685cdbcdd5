//! Schwartz-Bruhat functions on V(A_f) = A_f,F² at finite level.
//!
//! f(v) = T((v/s) mod C) for v ∈ s·V(Ẑ) and 0 otherwise, with T a table on
//! (O/C)².  Table entries lie in Z[ζ_M] and share one rational factor.

use super::cyclo::{content, reduce_int, CyclotomicValue};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FractionalIdeal, NumberField, OInt, Residue};
use crate::numeric::CDd;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A point of V(Q) = F².
pub type VPoint = (FieldElement, FieldElement);
/// A point of (O/C)² or of O².
pub type VInt = (OInt, OInt);

#[derive(Clone, Debug)]
pub struct FractionalSchwartz {
    pub field: NumberField,
    pub scale: FieldElement,
    pub modulus: u64,
    pub(crate) order: u64,
    pub(crate) factor: BigRational,
    /// Entry i occupies data[i·M .. (i+1)·M].
    pub(crate) data: Vec<i128>,
}

impl FractionalSchwartz {
    pub fn residue(&self) -> Residue {
        Residue::new(&self.field, self.modulus)
    }

    /// Number of table entries, |(O/C)²|.
    pub fn len(&self) -> usize {
        let r = self.residue().size();
        r * r
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn index_of(&self, w: VInt) -> usize {
        let r = self.residue();
        r.index(w.0) * r.size() + r.index(w.1)
    }

    pub fn point_of(&self, i: usize) -> VInt {
        let r = self.residue();
        (r.from_index(i / r.size()), r.from_index(i % r.size()))
    }

    pub(crate) fn entry(&self, i: usize) -> &[i128] {
        let m = self.order as usize;
        &self.data[i * m..(i + 1) * m]
    }

    pub fn zero(field: &NumberField, scale: FieldElement, modulus: u64) -> Self {
        let n = Residue::new(field, modulus).size().pow(2);
        FractionalSchwartz {
            field: field.clone(),
            scale,
            modulus,
            order: 1,
            factor: BigRational::one(),
            data: vec![0; n],
        }
    }

    /// Table with rational entries, indexed as in `point_of`.
    pub fn from_rationals(
        field: &NumberField,
        scale: FieldElement,
        modulus: u64,
        values: &[BigRational],
    ) -> Result<Self> {
        let vals: Vec<CyclotomicValue> = values
            .iter()
            .map(|q| CyclotomicValue::rational(q.clone()))
            .collect();
        Self::from_values(field, scale, modulus, &vals)
    }

    pub fn from_ints(field: &NumberField, modulus: u64, values: &[i64]) -> Result<Self> {
        let q: Vec<BigRational> = values
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        Self::from_rationals(field, FieldElement::one(), modulus, &q)
    }

    /// Σ c_i δ_{v_i}: the function c_i on v_i + C·V(Ẑ), scale 1.
    pub fn from_points(field: &NumberField, modulus: u64, pts: &[(VInt, i64)]) -> Self {
        let mut f = Self::zero(field, FieldElement::one(), modulus);
        for &(v, c) in pts {
            let i = f.index_of(v);
            f.data[i] += c as i128;
        }
        f
    }

    pub fn from_values(
        field: &NumberField,
        scale: FieldElement,
        modulus: u64,
        values: &[CyclotomicValue],
    ) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidInput("scale must be nonzero".into()));
        }
        let n = Residue::new(field, modulus).size().pow(2);
        if values.len() != n {
            return Err(Error::InvalidInput(format!(
                "table needs {} entries, got {}",
                n,
                values.len()
            )));
        }
        let m = values.iter().fold(1u64, |m, v| m.lcm(&v.m));
        let lifted: Vec<CyclotomicValue> = values.iter().map(|v| v.lift(m)).collect();
        let den = lifted
            .iter()
            .flat_map(|v| v.coeffs.iter())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let dq = BigRational::from_integer(den.clone());
        let mut data = Vec::with_capacity(n * m as usize);
        for v in &lifted {
            for c in &v.coeffs {
                let x = (c * &dq)
                    .to_integer()
                    .to_i128()
                    .ok_or_else(|| Error::Overflow("table entry".into()))?;
                data.push(x);
            }
        }
        let mut f = FractionalSchwartz {
            field: field.clone(),
            scale,
            modulus,
            order: m,
            factor: BigRational::new(BigInt::one(), den),
            data,
        };
        f.normalize();
        Ok(f)
    }

    /// Entry at table index i.
    pub fn value(&self, i: usize) -> CyclotomicValue {
        CyclotomicValue::from_ints(self.entry(i), self.order, &self.factor)
    }

    pub fn values(&self) -> Vec<CyclotomicValue> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    pub fn value_cdd(&self, i: usize) -> CDd {
        let e = self.entry(i);
        if e.iter().all(|&x| x == 0) {
            return CDd::ZERO;
        }
        self.value(i).to_cdd()
    }

    /// Rational entries, if every entry is rational.
    pub fn rational_values(&self) -> Option<Vec<BigRational>> {
        self.values().iter().map(|v| v.as_rational()).collect()
    }

    /// f(v) for v ∈ V(Q).
    pub fn eval(&self, v: &VPoint) -> CyclotomicValue {
        match self.reduce_point(v) {
            Some(w) => self.value(self.index_of(w)),
            None => CyclotomicValue::zero(1),
        }
    }

    /// (v/s) mod C if v ∈ s·V(Ẑ).
    pub fn reduce_point(&self, v: &VPoint) -> Option<VInt> {
        let f = &self.field;
        let si = f.inv(&self.scale).ok()?;
        let a = f.mul(&v.0, &si);
        let b = f.mul(&v.1, &si);
        // membership in V(Ẑ) is local at every prime, i.e. global integrality
        let (a, b) = (a.to_oint()?, b.to_oint()?);
        let r = self.residue();
        Some((r.reduce(a), r.reduce(b)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0) || self.factor.is_zero()
    }

    /// Divides out the content of the data and reduces modulo Φ_M.
    pub(crate) fn normalize(&mut self) {
        let m = self.order as usize;
        if m > 1 {
            let n = self.data.len() / m;
            for i in 0..n {
                let r = reduce_int(&self.data[i * m..(i + 1) * m], self.order);
                let slot = &mut self.data[i * m..(i + 1) * m];
                slot[..r.len()].copy_from_slice(&r);
                for x in slot[r.len()..].iter_mut() {
                    *x = 0;
                }
            }
        }
        let g = content(&self.data);
        if g == 0 {
            self.factor = BigRational::one();
            return;
        }
        if g != 1 {
            for x in self.data.iter_mut() {
                *x /= g;
            }
            self.factor *= BigRational::from_integer(BigInt::from(g));
        }
        if self.factor.is_negative() {
            self.factor = -self.factor.clone();
            for x in self.data.iter_mut() {
                *x = -*x;
            }
        }
    }

    /// Same function with values viewed in Q(ζ_m), M | m.
    pub(crate) fn lift_order(&self, m: u64) -> Self {
        if m == self.order {
            return self.clone();
        }
        assert_eq!(m % self.order, 0);
        let step = (m / self.order) as usize;
        let n = self.len();
        let mut data = vec![0i128; n * m as usize];
        for i in 0..n {
            for (j, &c) in self.entry(i).iter().enumerate() {
                data[i * m as usize + j * step] = c;
            }
        }
        FractionalSchwartz {
            order: m,
            data,
            ..self.clone()
        }
    }

    /// Same function presented with modulus C' (a multiple of C).
    pub fn with_modulus(&self, c2: u64) -> Result<Self> {
        if c2 % self.modulus != 0 {
            return Err(Error::InvalidInput("new modulus must be a multiple".into()));
        }
        if c2 == self.modulus {
            return Ok(self.clone());
        }
        let r2 = Residue::new(&self.field, c2);
        let n2 = r2.size().pow(2);
        let m = self.order as usize;
        let mut data = Vec::with_capacity(n2 * m);
        for i in 0..n2 {
            let w = (r2.from_index(i / r2.size()), r2.from_index(i % r2.size()));
            let j = self.index_of(w);
            data.extend_from_slice(self.entry(j));
        }
        Ok(FractionalSchwartz {
            modulus: c2,
            data,
            ..self.clone()
        })
    }

    /// Same function presented with scale s/κ, κ ∈ O nonzero.
    pub fn refine(&self, kappa: OInt) -> Result<Self> {
        let f = &self.field;
        let nk = f.least_integer(kappa);
        if nk == 0 {
            return Err(Error::InvalidInput("refinement by zero".into()));
        }
        if kappa == (1, 0) {
            return Ok(self.clone());
        }
        let c0 = self.modulus as u128 * nk;
        let c0 = u64::try_from(c0).map_err(|_| Error::Overflow("refined modulus".into()))?;
        let r0 = Residue::new(f, c0);
        let n0 = r0.size().pow(2);
        let m = self.order as usize;
        let div = |x: OInt| f.div_int(x, kappa);
        let mut data = vec![0i128; n0 * m];
        for i in 0..n0 {
            let w = (r0.from_index(i / r0.size()), r0.from_index(i % r0.size()));
            if let (Some(a), Some(b)) = (div(w.0), div(w.1)) {
                let j = self.index_of((a, b));
                data[i * m..(i + 1) * m].copy_from_slice(self.entry(j));
            }
        }
        let kf = FieldElement::from_ints(kappa.0, kappa.1);
        Ok(FractionalSchwartz {
            scale: f.div(&self.scale, &kf)?,
            modulus: c0,
            data,
            ..self.clone()
        })
    }

    /// Presents f and g over a common scale and modulus.
    pub fn common_refinement(f: &Self, g: &Self) -> Result<(Self, Self)> {
        if f.field != g.field {
            return Err(Error::InvalidInput("functions live over different fields".into()));
        }
        let fld = &f.field;
        let (f1, g1) = if f.scale == g.scale {
            (f.clone(), g.clone())
        } else {
            let s0 = common_scale(fld, &f.scale, &g.scale)?;
            let k1 = fld.div(&f.scale, &s0)?.to_oint().ok_or_else(|| {
                Error::Internal("common scale does not divide".into())
            })?;
            let k2 = fld.div(&g.scale, &s0)?.to_oint().ok_or_else(|| {
                Error::Internal("common scale does not divide".into())
            })?;
            (f.refine(k1)?, g.refine(k2)?)
        };
        let c = f1.modulus.lcm(&g1.modulus);
        let m = f1.order.lcm(&g1.order);
        Ok((
            f1.with_modulus(c)?.lift_order(m),
            g1.with_modulus(c)?.lift_order(m),
        ))
    }

    /// Equality as functions on V(A_f).
    pub fn equals(&self, o: &Self) -> Result<bool> {
        let (a, b) = Self::common_refinement(self, o)?;
        Ok(a.same_table(&b))
    }

    /// Table equality for identical (s, C, M).
    fn same_table(&self, o: &Self) -> bool {
        let p = self.factor.numer() * o.factor.denom();
        let q = o.factor.numer() * self.factor.denom();
        (0..self.len()).all(|i| {
            let x = reduce_int(self.entry(i), self.order);
            let y = reduce_int(o.entry(i), o.order);
            x.iter()
                .zip(&y)
                .all(|(&a, &b)| BigInt::from(a) * &p == BigInt::from(b) * &q)
        })
    }

    /// a·f + b·g.
    pub fn combine(&self, a: &BigRational, o: &Self, b: &BigRational) -> Result<Self> {
        let (x, y) = Self::common_refinement(self, o)?;
        let fa = &x.factor * a;
        let fb = &y.factor * b;
        let g = rational_gcd(&fa, &fb);
        if g.is_zero() {
            return Ok(FractionalSchwartz {
                factor: BigRational::one(),
                data: vec![0; x.data.len()],
                ..x
            });
        }
        let ma = to_i128(&(&fa / &g))?;
        let mb = to_i128(&(&fb / &g))?;
        let data = x
            .data
            .iter()
            .zip(&y.data)
            .map(|(&u, &v)| ma * u + mb * v)
            .collect();
        let mut out = FractionalSchwartz {
            factor: g,
            data,
            ..x
        };
        out.normalize();
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.combine(&BigRational::one(), o, &BigRational::one())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.combine(&BigRational::one(), o, &-BigRational::one())
    }

    pub fn scale_values(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        out.factor *= q;
        if q.is_zero() {
            out.data.iter_mut().for_each(|x| *x = 0);
            out.factor = BigRational::one();
        }
        out.normalize();
        out
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut out = self.clone();
        for i in 0..self.len() {
            let e = self.entry(i);
            for j in 0..m {
                out.data[i * m + (m - j) % m] = e[j];
            }
        }
        out
    }

    /// v ↦ f(v - u0) for u0 ∈ s·O².
    pub fn translate(&self, u0: &VPoint) -> Result<Self> {
        let w0 = self
            .reduce_point(u0)
            .ok_or_else(|| Error::InvalidInput("shift is not in the support lattice".into()))?;
        let r = self.residue();
        let m = self.order as usize;
        let mut out = self.clone();
        for i in 0..self.len() {
            let w = self.point_of(i);
            let src = (r.sub(w.0, w0.0), r.sub(w.1, w0.1));
            let j = self.index_of(src);
            out.data[i * m..(i + 1) * m].copy_from_slice(self.entry(j));
        }
        Ok(out)
    }

    /// f(0).
    pub fn value_at_zero(&self) -> CyclotomicValue {
        self.value(0)
    }

    /// Σ_w T(w), proportional to ∫ f.
    pub fn table_sum(&self) -> CyclotomicValue {
        let m = self.order as usize;
        let mut acc = vec![0i128; m];
        for i in 0..self.len() {
            for (a, &x) in acc.iter_mut().zip(self.entry(i)) {
                *a += x;
            }
        }
        CyclotomicValue::from_ints(&acc, self.order, &self.factor)
    }

    /// ∫ f over V(A_f) for the self-dual measure: vol(s·C·V(Ẑ))·Σ T.
    pub fn integral(&self) -> CyclotomicValue {
        self.table_sum().scale(&self.cell_volume())
    }

    /// vol(s·C·V(Ẑ)) = |N(sC)|⁻² / d_F.
    pub fn cell_volume(&self) -> BigRational {
        let f = &self.field;
        let c = FieldElement::from_int(self.modulus as i64);
        let nsc = f.norm(&f.mul(&self.scale, &c)).abs();
        (nsc.clone() * nsc * BigRational::from_integer(BigInt::from(f.disc))).recip()
    }
}

fn to_i128(q: &BigRational) -> Result<i128> {
    if !q.is_integer() {
        return Err(Error::Internal("expected an integer multiplier".into()));
    }
    q.to_integer()
        .to_i128()
        .ok_or_else(|| Error::Overflow("table multiplier".into()))
}

fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    BigRational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// s₀ with s₁, s₂ ∈ s₀·O: a generator of s₁O + s₂O when principal, else 1/K.
pub fn common_scale(
    field: &NumberField,
    s1: &FieldElement,
    s2: &FieldElement,
) -> Result<FieldElement> {
    let id = FractionalIdeal::from_generators(field, &[s1.clone(), s2.clone()])?;
    if let Some(g) = id.principal_generator(field)? {
        return Ok(g);
    }
    let k = num_integer::Integer::lcm(&s1.denominator(), &s2.denominator());
    Ok(FieldElement::from_rational(BigRational::new(BigInt::one(), k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn refinement_preserves_values() {
        let f = NumberField::new(5).unwrap();
        let g = FractionalSchwartz::from_points(&f, 3, &[(((1, 0), (0, 0)), 1), (((2, 1), (0, 2)), -2)]);
        let r = g.refine((1, 1)).unwrap();
        assert_eq!(r.modulus, 3);
        let r2 = g.refine((2, 0)).unwrap();
        assert_eq!(r2.modulus, 6);
        for v in [
            (FieldElement::from_int(1), FieldElement::from_int(0)),
            (FieldElement::from_int(4), FieldElement::from_int(3)),
            (FieldElement::from_ints(2, 1), FieldElement::from_ints(0, 2)),
            (FieldElement::from_ints(5, 4), FieldElement::from_ints(3, -1)),
            (FieldElement::from_rational(rat(1, 2)), FieldElement::zero()),
        ] {
            assert_eq!(g.eval(&v), r.eval(&v));
            assert_eq!(g.eval(&v), r2.eval(&v));
        }
        assert!(g.equals(&r2).unwrap());
        assert!(!g.equals(&g.scale_values(&rat(2, 1))).unwrap());
    }

    #[test]
    fn refinement_over_q() {
        let q = NumberField::rationals();
        let g = FractionalSchwartz::from_points(&q, 2, &[(((1, 0), (0, 0)), 1), (((1, 0), (1, 0)), -3)]);
        let r = g.refine((3, 0)).unwrap();
        assert_eq!(r.modulus, 6);
        for (a, b) in [(1, 0), (1, 1), (3, 0), (0, 1), (5, 2)] {
            for den in [1, 3] {
                let v = (FieldElement::from_rational(rat(a, den)), FieldElement::from_rational(rat(b, den)));
                assert_eq!(g.eval(&v), r.eval(&v));
            }
        }
        assert!(g.equals(&r).unwrap());
    }

    #[test]
    fn linear_combinations() {
        let q = NumberField::rationals();
        let a = FractionalSchwartz::from_points(&q, 2, &[(((1, 0), (0, 0)), 1)]);
        let b = FractionalSchwartz::from_points(&q, 3, &[(((0, 0), (1, 0)), 1)]);
        let c = a.add(&b).unwrap().sub(&b).unwrap();
        assert!(c.equals(&a).unwrap());
        assert!(a.sub(&a).unwrap().is_zero());
    }
}
