//! Exact arithmetic in Q(√D) and in the degenerate field Q.
//!
//! Elements are a + bω with ω² = tω + n, where (t, n) = (1, (D-1)/4) for
//! D ≡ 1 mod 4 and (0, D) otherwise.  The different is generated by
//! δ = 2ω - t, whose square is the discriminant.

mod ideal;
mod lattice;
mod residue;
mod units;

pub use ideal::{FractionalIdeal, PrimeSplitting, SplitType};
pub use lattice::{enumerate_orbit_reps, enumerate_slab, SlabPoint};
pub(crate) use lattice::in_domain;
pub use residue::Residue;
pub use units::UnitGroupData;

use crate::arith::{is_squarefree, rat_int, rat_to_f64};
use crate::error::{invalid, Error, Result};
use crate::numeric::{rational_to_dd, Dd};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Integral element a + bω with machine coordinates.
pub type OInt = (i128, i128);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumberField {
    /// Squarefree radicand; 1 marks the rational field.
    pub d: i64,
    pub degree: u8,
    /// Discriminant d_F.
    pub disc: i64,
    /// ω² = t·ω + n.
    pub t: i64,
    pub n: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub a: BigRational,
    pub b: BigRational,
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*w", self.a, self.b)
        }
    }
}

impl FieldElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        FieldElement { a, b }
    }
    pub fn from_int(a: i64) -> Self {
        FieldElement::new(rat_int(a), BigRational::zero())
    }
    pub fn from_ints(a: i128, b: i128) -> Self {
        FieldElement::new(
            BigRational::from_integer(BigInt::from(a)),
            BigRational::from_integer(BigInt::from(b)),
        )
    }
    pub fn from_rational(a: BigRational) -> Self {
        FieldElement::new(a, BigRational::zero())
    }
    pub fn zero() -> Self {
        FieldElement::from_int(0)
    }
    pub fn one() -> Self {
        FieldElement::from_int(1)
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
    pub fn neg(&self) -> Self {
        FieldElement::new(-&self.a, -&self.b)
    }
    pub fn add(&self, o: &Self) -> Self {
        FieldElement::new(&self.a + &o.a, &self.b + &o.b)
    }
    pub fn sub(&self, o: &Self) -> Self {
        FieldElement::new(&self.a - &o.a, &self.b - &o.b)
    }
    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement::new(&self.a * q, &self.b * q)
    }
    /// Integer coordinates, if the element is integral and fits.
    pub fn to_oint(&self) -> Option<OInt> {
        if !self.is_integral() {
            return None;
        }
        Some((self.a.numer().to_i128()?, self.b.numer().to_i128()?))
    }
    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        num_integer::Integer::lcm(self.a.denom(), self.b.denom())
    }
}

impl NumberField {
    /// The field Q(√D); D = 1 gives Q.
    pub fn new(d: i64) -> Result<Self> {
        if d == 1 {
            return Ok(NumberField::rationals());
        }
        if d < 2 {
            return invalid(format!("D must be at least 2 (got {})", d));
        }
        if !is_squarefree(d as u64) {
            return invalid(format!("D = {} is not squarefree", d));
        }
        let (t, n, disc) = if d % 4 == 1 {
            (1, (d - 1) / 4, d)
        } else {
            (0, d, 4 * d)
        };
        Ok(NumberField {
            d,
            degree: 2,
            disc,
            t,
            n,
        })
    }

    pub fn rationals() -> Self {
        NumberField {
            d: 1,
            degree: 1,
            disc: 1,
            t: 0,
            n: 0,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    pub fn omega(&self) -> FieldElement {
        // for Q the ω-coordinate is unused and always zero
        FieldElement::from_ints(0, if self.is_rational() { 0 } else { 1 })
    }

    /// Generator of the different: 2ω - t, or 1 for Q.
    pub fn delta(&self) -> FieldElement {
        if self.is_rational() {
            return FieldElement::one();
        }
        FieldElement::from_ints(-(self.t as i128), 2)
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let n = rat_int(self.n);
        let t = rat_int(self.t);
        let bb = &x.b * &y.b;
        FieldElement::new(
            &x.a * &y.a + &n * &bb,
            &x.a * &y.b + &x.b * &y.a + &t * &bb,
        )
    }

    pub fn conj(&self, x: &FieldElement) -> FieldElement {
        if self.is_rational() {
            return x.clone();
        }
        FieldElement::new(&x.a + &x.b * rat_int(self.t), -&x.b)
    }

    pub fn norm(&self, x: &FieldElement) -> BigRational {
        if self.is_rational() {
            return x.a.clone();
        }
        &x.a * &x.a + rat_int(self.t) * &x.a * &x.b - rat_int(self.n) * &x.b * &x.b
    }

    pub fn trace(&self, x: &FieldElement) -> BigRational {
        if self.is_rational() {
            return x.a.clone();
        }
        rat_int(2) * &x.a + rat_int(self.t) * &x.b
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        if self.is_rational() {
            return Ok(FieldElement::from_rational(x.a.recip()));
        }
        let nx = self.norm(x);
        Ok(self.conj(x).scale(&nx.recip()))
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FieldElement, e: u32) -> FieldElement {
        let mut acc = FieldElement::one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }


    /// σ_i(ω) for i = 0, 1 as double-doubles.
    fn omega_embeddings(&self) -> (Dd, Dd) {
        let s = Dd::new(self.disc as f64).sqrt();
        let t = Dd::new(self.t as f64);
        let half = Dd::new(0.5);
        ((t + s) * half, (t - s) * half)
    }

    /// σ_i(x) with an absolute error bound, for i ∈ {0, 1}.
    ///
    /// The arithmetic is double-double regardless of `prec_bits`; the
    /// returned bound reflects the precision actually delivered.
    pub fn embed(&self, x: &FieldElement, i: usize, _prec_bits: u32) -> (Dd, f64) {
        let a = rational_to_dd(&x.a);
        if self.is_rational() {
            let v = a + rational_to_dd(&x.b);
            return (v, v.to_f64().abs() * 1e-31 + 1e-300);
        }
        let (w1, w2) = self.omega_embeddings();
        let b = rational_to_dd(&x.b);
        let w = if i == 0 { w1 } else { w2 };
        let v = a + b * w;
        let err = (a.to_f64().abs() + (b * w).to_f64().abs()) * 4e-32 + 1e-300;
        (v, err)
    }

    pub fn embed_f64(&self, x: &FieldElement, i: usize) -> f64 {
        self.embed(x, i, 106).0.to_f64()
    }

    /// Sign of σ_i(x), decided exactly.
    pub fn sign(&self, x: &FieldElement, i: usize) -> i32 {
        if self.is_rational() {
            return sgn_rat(&x.a);
        }
        // σ(x) = (Tr(x) ± b·√d_F)/2
        let tr = self.trace(x);
        let b = if i == 0 { x.b.clone() } else { -x.b.clone() };
        sign_of_sum_sqrt(&tr, &b, self.disc)
    }

    pub fn sign_vector(&self, x: &FieldElement) -> Vec<i32> {
        (0..self.degree as usize).map(|i| self.sign(x, i)).collect()
    }

    pub fn is_totally_positive(&self, x: &FieldElement) -> bool {
        self.sign_vector(x).iter().all(|&s| s > 0)
    }

    // ---- machine-integer helpers for elements of O ----

    pub fn mul_int(&self, x: OInt, y: OInt) -> OInt {
        let bb = x.1 * y.1;
        (
            x.0 * y.0 + self.n as i128 * bb,
            x.0 * y.1 + x.1 * y.0 + self.t as i128 * bb,
        )
    }

    pub fn checked_mul_int(&self, x: OInt, y: OInt) -> Option<OInt> {
        let bb = x.1.checked_mul(y.1)?;
        let a = x.0.checked_mul(y.0)?.checked_add((self.n as i128).checked_mul(bb)?)?;
        let b = x
            .0
            .checked_mul(y.1)?
            .checked_add(x.1.checked_mul(y.0)?)?
            .checked_add((self.t as i128).checked_mul(bb)?)?;
        Some((a, b))
    }

    pub fn norm_int(&self, x: OInt) -> i128 {
        if self.is_rational() {
            return x.0;
        }
        x.0 * x.0 + self.t as i128 * x.0 * x.1 - self.n as i128 * x.1 * x.1
    }

    pub fn trace_int(&self, x: OInt) -> i128 {
        2 * x.0 + self.t as i128 * x.1
    }

    /// The least positive rational integer in kO, i.e. |N k|/content(k).
    pub fn least_integer(&self, k: OInt) -> u128 {
        if self.is_rational() {
            return k.0.unsigned_abs();
        }
        let g = crate::arith::gcd128(k.0, k.1).unsigned_abs();
        if g == 0 {
            return 0;
        }
        self.norm_int(k).unsigned_abs() / g
    }

    /// x/k when it lies in O.
    pub fn div_int(&self, x: OInt, k: OInt) -> Option<OInt> {
        let nk = self.norm_int(k);
        if nk == 0 {
            return None;
        }
        if self.is_rational() {
            return (x.0 % k.0 == 0).then(|| (x.0 / k.0, 0));
        }
        let y = self.checked_mul_int(x, self.conj_int(k))?;
        (y.0 % nk == 0 && y.1 % nk == 0).then(|| (y.0 / nk, y.1 / nk))
    }

    pub fn conj_int(&self, x: OInt) -> OInt {
        (x.0 + self.t as i128 * x.1, -x.1)
    }

    /// The linear form z ↦ Tr(z/δ) on O, which is the ω-coordinate.
    pub fn trace_over_delta_int(&self, z: OInt) -> i128 {
        if self.is_rational() {
            z.0
        } else {
            z.1
        }
    }

    pub fn trace_over_delta(&self, z: &FieldElement) -> BigRational {
        let q = self.div(z, &self.delta()).expect("delta is nonzero");
        self.trace(&q)
    }

    pub fn embed_int_f64(&self, x: OInt, i: usize) -> f64 {
        if self.is_rational() {
            return x.0 as f64;
        }
        let s = (self.disc as f64).sqrt();
        let w = if i == 0 {
            (self.t as f64 + s) / 2.0
        } else {
            (self.t as f64 - s) / 2.0
        };
        x.0 as f64 + x.1 as f64 * w
    }

    /// Exact signs of both embeddings of an integral element.
    pub fn sign_int(&self, x: OInt, i: usize) -> i32 {
        if self.is_rational() {
            return x.0.signum() as i32;
        }
        let tr = self.trace_int(x);
        let b = if i == 0 { x.1 } else { -x.1 };
        // sign of tr + b√d
        sign_sum_sqrt_int(tr, b, self.disc as i128)
    }

    pub fn canonical_tuple(&self) -> (i64, u8, i64) {
        (self.d, self.degree, self.disc)
    }

    pub fn name(&self) -> String {
        if self.is_rational() {
            "Q".to_string()
        } else {
            format!("Q(sqrt({}))", self.d)
        }
    }

    pub fn element_f64(&self, x: &FieldElement) -> (f64, f64) {
        if self.is_rational() {
            let v = rat_to_f64(&x.a);
            (v, v)
        } else {
            (self.embed_f64(x, 0), self.embed_f64(x, 1))
        }
    }
}

pub(crate) fn sgn_rat(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of p + q√d for rationals p, q and positive non-square d.
fn sign_of_sum_sqrt(p: &BigRational, q: &BigRational, d: i64) -> i32 {
    let sp = sgn_rat(p);
    let sq = sgn_rat(q);
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    // opposite signs: compare p² with q²d
    let lhs = p * p;
    let rhs = q * q * rat_int(d);
    if lhs > rhs {
        sp
    } else {
        sq
    }
}

pub(crate) fn sign_sum_sqrt_int(p: i128, q: i128, d: i128) -> i32 {
    let sp = p.signum() as i32;
    let sq = q.signum() as i32;
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    if p * p > q * q * d {
        sp
    } else {
        sq
    }
}
