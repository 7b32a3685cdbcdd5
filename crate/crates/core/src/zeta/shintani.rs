//! Partial zeta values of real quadratic fields at non-positive integers
//! via a single Shintani cone.
//!
//! For a lattice L, shift c and level N the partial zeta function is
//!
//!   Z(s) = Σ_{l ∈ c + NL, l ≫ 0, mod ε} N(l)^{-s}
//!
//! where ε is a totally positive unit stabilizing c + NL.  The cone
//! {λ₁v₁ + λ₂v₂ : λ₁ > 0, λ₂ ≥ 0} with v₂ = εv₁ is a fundamental domain for
//! ε acting on the totally positive quadrant.  Splitting the Mellin integral
//! along t₂ ≤ t₁ and t₁ ≤ t₂ gives
//!
//!   Z(1-m) = ((m-1)!)²/2 · Σ_x Σ_{l₁+l₂=2m} B_{l₁}(x₁)B_{l₂}(x₂)/(l₁!l₂!) · Tr C_{l₁},
//!   C_{l₁} = [u^{m-1}] (v₁ + u v̄₁)^{l₁-1} (v₂ + u v̄₂)^{l₂-1},
//!
//! with x running over the cone coordinates of the lattice points in the
//! half-open fundamental parallelogram.

use super::bernoulli::BernoulliCache;
use crate::arith::factorial;
use crate::classfield::{narrow_class_group, RayClassGroup};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FractionalIdeal, NumberField, OInt, Residue};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Half-open cone {λ₁v₁ + λ₂v₂ : λ₁ > 0, λ₂ ≥ 0} with its lattice points.
#[derive(Clone, Debug)]
pub struct ShintaniCone {
    pub v1: FieldElement,
    pub v2: FieldElement,
    pub unit: FieldElement,
    pub modulus: u64,
    pub lattice: FractionalIdeal,
    pub shift: FieldElement,
    /// Cone coordinates (x₁, x₂) ∈ (0,1] × [0,1) of c + NL modulo Zv₁ + Zv₂.
    pub points: Vec<(BigRational, BigRational)>,
}

impl ShintaniCone {
    /// The cone for c + NL spanned by v₁ ∈ NL ∩ Q and v₂ = unit·v₁.
    pub fn new(
        field: &NumberField,
        lattice: &FractionalIdeal,
        shift: &FieldElement,
        modulus: u64,
        unit: &FieldElement,
    ) -> Result<Self> {
        if field.is_rational() {
            return Err(Error::Degenerate("Shintani cones need a real quadratic field".into()));
        }
        if modulus == 0 {
            return Err(Error::InvalidInput("N must be positive".into()));
        }
        if !field.is_totally_positive(unit) || unit.b.is_zero() {
            return Err(Error::Internal("cone unit must be totally positive and irrational".into()));
        }
        let nl = lattice.scale(field, &FieldElement::from_int(modulus as i64))?;
        let moved = field.mul(unit, shift).sub(shift);
        if !nl.contains(field, &moved) {
            return Err(Error::Precondition("unit does not stabilize the shifted lattice".into()));
        }
        let [e1, e2] = nl.basis();
        let v1 = e1;
        let v2 = field.mul(unit, &v1);
        // [NL : Zv₁ + Zv₂] is the ω-index of v₂ over e₂
        let k = (&v2.b / &e2.b).abs();
        if !k.is_integer() {
            return Err(Error::Internal("cone lattice is not a sublattice".into()));
        }
        let k = k.to_integer().to_u64().ok_or_else(|| Error::Resource("cone index".into()))?;
        let mut points = Vec::with_capacity(k as usize);
        for j in 0..k {
            let p = shift.add(&e2.scale(&BigRational::from_integer(BigInt::from(j))));
            points.push(half_open(&coords(&v1, &v2, &p)));
        }
        Ok(ShintaniCone {
            v1,
            v2,
            unit: unit.clone(),
            modulus,
            lattice: lattice.clone(),
            shift: shift.clone(),
            points,
        })
    }

    /// Cone coordinates of x.
    pub fn coordinates(&self, x: &FieldElement) -> (BigRational, BigRational) {
        coords(&self.v1, &self.v2, x)
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let (t1, t2) = self.coordinates(x);
        t1.is_positive() && !t2.is_negative()
    }

    /// Z(-n) as an exact rational.
    pub fn partial_zeta(&self, field: &NumberField, n: u32) -> BigRational {
        let m = n as usize + 1;
        let traces: Vec<BigRational> = (0..=2 * m)
            .map(|l1| field.trace(&self.u_coefficient(field, l1 as i64 - 1, (2 * m - l1) as i64 - 1, m - 1)))
            .collect();
        let mut bern = BernoulliCache::new();
        let fact: Vec<BigRational> = (0..=2 * m)
            .map(|k| BigRational::from_integer(factorial(k as u64)))
            .collect();
        let mut total = BigRational::zero();
        for (x1, x2) in &self.points {
            let b1: Vec<BigRational> = (0..=2 * m).map(|k| bern.poly(k, x1) / &fact[k]).collect();
            let b2: Vec<BigRational> = (0..=2 * m).map(|k| bern.poly(k, x2) / &fact[k]).collect();
            for l1 in 0..=2 * m {
                if !traces[l1].is_zero() {
                    total += &b1[l1] * &b2[2 * m - l1] * &traces[l1];
                }
            }
        }
        let mf = BigRational::from_integer(factorial(m as u64 - 1));
        total * &mf * &mf / BigRational::from_integer(BigInt::from(2))
    }

    /// [u^deg] (v₁ + u v̄₁)^{e1} (v₂ + u v̄₂)^{e2} for e1, e2 >= -1.
    fn u_coefficient(&self, field: &NumberField, e1: i64, e2: i64, deg: usize) -> FieldElement {
        let s1 = binomial_series(field, &self.v1, e1, deg);
        let s2 = binomial_series(field, &self.v2, e2, deg);
        let mut acc = FieldElement::zero();
        for i in 0..=deg {
            acc = acc.add(&field.mul(&s1[i], &s2[deg - i]));
        }
        acc
    }
}

/// Coefficients of (v + u v̄)^e up to u^deg.
fn binomial_series(field: &NumberField, v: &FieldElement, e: i64, deg: usize) -> Vec<FieldElement> {
    let vb = field.conj(v);
    if e < 0 {
        // (v + u v̄)^{-1} = v⁻¹ Σ (-v̄/v)^i u^i
        let vi = field.inv(v).expect("nonzero generator");
        let r = field.mul(&vb, &vi).neg();
        let mut out = Vec::with_capacity(deg + 1);
        let mut cur = vi;
        for _ in 0..=deg {
            out.push(cur.clone());
            cur = field.mul(&cur, &r);
        }
        return out;
    }
    let e = e as u64;
    (0..=deg as u64)
        .map(|i| {
            if i > e {
                return FieldElement::zero();
            }
            let b = BigRational::from_integer(crate::arith::binomial(e, i));
            field
                .mul(&field.pow(v, (e - i) as u32), &field.pow(&vb, i as u32))
                .scale(&b)
        })
        .collect()
}

fn coords(v1: &FieldElement, v2: &FieldElement, p: &FieldElement) -> (BigRational, BigRational) {
    // v₁ is rational
    let t2 = &p.b / &v2.b;
    let t1 = (&p.a - &t2 * &v2.a) / &v1.a;
    (t1, t2)
}

fn half_open(t: &(BigRational, BigRational)) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let t1 = &t.0 - t.0.ceil() + &one;
    let t2 = &t.1 - t.1.floor();
    (t1, t2)
}

/// Smallest power of ε₊ fixing c + NL.
pub fn stabilizing_unit(
    field: &NumberField,
    lattice: &FractionalIdeal,
    shift: &FieldElement,
    modulus: u64,
) -> Result<(FieldElement, u32)> {
    let ud = field.unit_data()?;
    let eps = field.unit_element(ud.eps_plus);
    let nl = lattice.scale(field, &FieldElement::from_int(modulus as i64))?;
    let mut u = eps.clone();
    for k in 1..=10_000u32 {
        if nl.contains(field, &field.mul(&u, shift).sub(shift)) {
            return Ok((u, k));
        }
        u = field.mul(&u, &eps);
    }
    Err(Error::Resource("no stabilizing unit among the first 10^4 powers".into()))
}

/// Z(-n) for l ∈ c + NL, l ≫ 0, modulo the stabilizer of c + NL in ⟨ε₊⟩.
pub fn shintani_partial_zeta(
    field: &NumberField,
    lattice: &FractionalIdeal,
    shift: &FieldElement,
    modulus: u64,
    n: u32,
) -> Result<BigRational> {
    let (u, _) = stabilizing_unit(field, lattice, shift, modulus)?;
    Ok(ShintaniCone::new(field, lattice, shift, modulus, &u)?.partial_zeta(field, n))
}

/// Integral ideals coprime to N, one in each narrow ideal class.
pub fn narrow_reps_coprime(field: &NumberField, modulus: u64) -> Result<Vec<FractionalIdeal>> {
    let g = narrow_class_group(field)?;
    let h = g.order();
    let mut reps: Vec<Option<FractionalIdeal>> = vec![None; h];
    let one = FractionalIdeal::unit(field);
    let c0 = g.class_of_ideal(&one)?;
    reps[c0] = Some(one);
    let mut found = 1;
    let mut bound = 50u64;
    while found < h {
        let primes = field.primes_up_to(bound);
        let mut pool: Vec<FractionalIdeal> = primes
            .iter()
            .filter(|(p, _)| p.coprime_to(modulus))
            .map(|(p, _)| p.clone())
            .collect();
        // products of two primes reach classes outside the prime image
        let singles = pool.clone();
        for a in &singles {
            for b in &singles {
                pool.push(a.mul(field, b));
            }
        }
        for p in pool {
            let c = g.class_of_ideal(&p)?;
            if reps[c].is_none() {
                reps[c] = Some(p);
                found += 1;
            }
        }
        bound *= 4;
        if bound > 1 << 20 {
            return Err(Error::Internal("narrow class representatives not found".into()));
        }
    }
    Ok(reps.into_iter().map(|r| r.expect("all classes found")).collect())
}

/// Partial zeta values Σ_{𝔞 ∈ C} N𝔞^n at s = -n for every narrow ray class
/// C mod N, indexed like the elements of `group`.
pub fn ray_class_zetas(group: &RayClassGroup, n: u32) -> Result<Vec<BigRational>> {
    let field = &group.field;
    let nmod = group.modulus;
    let res = Residue::new(field, nmod);
    let mut out = vec![BigRational::zero(); group.order()];
    for b in narrow_reps_coprime(field, nmod)? {
        let nb = b.norm(field);
        let weight = nb.pow(-(n as i32));
        // residue r ↦ an element of 𝔟 congruent to r mod N
        let [e1, e2] = b.basis();
        let mut lift: Vec<Option<FieldElement>> = vec![None; res.size()];
        for i in 0..nmod as i64 {
            for j in 0..nmod as i64 {
                let x = e1.scale(&BigRational::from_integer(i.into())).add(&e2.scale(&BigRational::from_integer(j.into())));
                let xi = x.to_oint().expect("integral ideal");
                let idx = res.index(res.reduce(xi));
                if lift[idx].is_none() {
                    lift[idx] = Some(x);
                }
            }
        }
        let binv = b.inverse(field);
        for r in res.units() {
            let c = lift[res.index(r)].clone().expect("𝔟 is coprime to N");
            let val = shintani_partial_zeta(field, &b, &c, nmod, n)?;
            let (_, k) = stabilizing_unit(field, &b, &c, nmod)?;
            // a totally positive element of c + N𝔟 fixes the ray class
            let pos = totally_positive_in_coset(field, &b, &c, nmod)?;
            let cls = group.class_of_ideal(&FractionalIdeal::principal(field, &pos)?.mul(field, &binv))?;
            out[cls] += val * &weight / BigRational::from_integer(BigInt::from(k));
        }
    }
    Ok(out)
}

fn totally_positive_in_coset(
    field: &NumberField,
    lattice: &FractionalIdeal,
    c: &FieldElement,
    modulus: u64,
) -> Result<FieldElement> {
    let nl = lattice.scale(field, &FieldElement::from_int(modulus as i64))?;
    let step = nl.basis()[0].clone();
    let mut x = c.clone();
    for _ in 0..64 {
        if field.is_totally_positive(&x) {
            return Ok(x);
        }
        let mag = field.embed_f64(&x, 0).abs() + field.embed_f64(&x, 1).abs();
        let k = (mag / crate::arith::rat_to_f64(&step.a)).ceil() as i64 + 1;
        x = x.add(&step.scale(&BigRational::from_integer(k.into())));
    }
    Err(Error::Internal("no totally positive coset element".into()))
}

/// ζ_F(-n) as the sum of the narrow class partial zetas (N = 1).
pub fn dedekind_zeta_shintani(field: &NumberField, n: u32) -> Result<BigRational> {
    let g = narrow_class_group(field)?;
    Ok(ray_class_zetas(&g, n)?.into_iter().sum())
}

/// Σ over ray classes mod N of the partial zetas at s = -n.
pub fn ray_class_zeta_sum(field: &NumberField, modulus: u64, n: u32) -> Result<BigRational> {
    let g = RayClassGroup::new(field, modulus)?;
    Ok(ray_class_zetas(&g, n)?.into_iter().sum())
}

/// Lift of an integral residue to an element of O, for callers building shifts.
pub fn oint_element(x: OInt) -> FieldElement {
    FieldElement::from_ints(x.0, x.1)
}

/// Euler factor Π_{𝔭 | N} (1 - N𝔭^n) removing primes above N from ζ_F(-n).
pub fn euler_factor_at_level(field: &NumberField, modulus: u64, n: u32) -> Result<BigRational> {
    let mut acc = BigRational::one();
    for (p, _) in crate::arith::factorize(modulus) {
        for q in field.split_prime(p)?.norms {
            acc *= BigRational::one() - BigRational::from_integer(BigInt::from(q).pow(n));
        }
    }
    Ok(acc)
}
