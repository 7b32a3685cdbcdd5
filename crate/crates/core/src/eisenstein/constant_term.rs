//! The constant term
//!
//!   (-1)^ξ √d_F Γ(k)^ξ / ((-2πi)^{ξk} sgn^k ‖t₂‖_f^k) · Σ_{l ∈ F^×/O^×(N)⁺} f̂(t₂·l·e¹) / N(l)^k
//!
//! with k = m + 2.  Writing l = s'λ for the scale s' of f̂ reduces the sum to
//! the bucketed orbit sums of [`OrbitSums`].  The level N is the modulus of
//! the table of φ; units ≡ 1 mod N fix φ.

use super::buckets::{norm_sign, OrbitSums};
use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::numeric::{dd_to_decimal, effective_bits, CDd, Dd};
use crate::schwartz::{is_s0, FractionalSchwartz, TwistedSchwartz};
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

/// Torus part t₂ of g = diag(1, t₂) and the archimedean sign of N(t₂).
#[derive(Clone, Debug, PartialEq)]
pub struct TorusData {
    pub t2: FieldElement,
    pub sign: i32,
}

impl Default for TorusData {
    fn default() -> Self {
        TorusData {
            t2: FieldElement::one(),
            sign: 1,
        }
    }
}

impl TorusData {
    pub fn new(field: &NumberField, t2: FieldElement) -> Result<Self> {
        if t2.is_zero() {
            return Err(Error::InvalidInput("t₂ must be nonzero".into()));
        }
        let sign = if field.norm(&t2).is_negative() { -1 } else { 1 };
        Ok(TorusData { t2, sign })
    }

    pub fn is_identity(&self) -> bool {
        self.t2 == FieldElement::one() && self.sign == 1
    }

    /// ‖t₂‖_f = |N t₂|⁻¹.
    pub fn finite_norm(&self, field: &NumberField) -> Dd {
        Dd::from_rational(&field.norm(&self.t2).abs()).recip()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSumResult {
    pub value: CDd,
    pub bound: f64,
    pub tail_estimate: f64,
    pub terms: u64,
    pub precision_bits: u32,
}

/// JSON form with decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSumRecord {
    pub value_re: String,
    pub value_im: String,
    pub bound: f64,
    pub tail_estimate: f64,
    pub terms: u64,
    pub precision_bits: u32,
}

impl LatticeSumResult {
    pub fn digits(&self) -> usize {
        ((effective_bits(self.precision_bits) as f64) * std::f64::consts::LOG10_2).ceil() as usize + 1
    }

    pub fn record(&self) -> LatticeSumRecord {
        LatticeSumRecord {
            value_re: dd_to_decimal(self.value.re, self.digits()),
            value_im: dd_to_decimal(self.value.im, self.digits()),
            bound: self.bound,
            tail_estimate: self.tail_estimate,
            terms: self.terms,
            precision_bits: self.precision_bits,
        }
    }
}

impl Serialize for LatticeSumResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(s)
    }
}

/// Γ(k)^ξ / (-2πi)^{ξk}.
pub fn gamma_factor(field: &NumberField, k: u32) -> CDd {
    let xi = field.degree as u32;
    let g = Dd::from_bigint(&factorial(k as u64 - 1)).powi(xi);
    let two_pi = Dd::PI * Dd::new(2.0);
    let mag = g / two_pi.powi(xi * k);
    // 1/(-i)^j = i^j
    match (xi * k) % 4 {
        0 => CDd::real(mag),
        1 => CDd::new(Dd::ZERO, mag),
        2 => CDd::real(-mag),
        _ => CDd::new(Dd::ZERO, -mag),
    }
}

/// (-1)^ξ √d_F Γ(k)^ξ / (-2πi)^{ξk}.
pub fn gamma_prefactor(field: &NumberField, k: u32) -> CDd {
    let r = Dd::new(field.disc as f64).sqrt();
    let r = if field.degree % 2 == 1 { -r } else { r };
    gamma_factor(field, k).scale(r)
}

/// Number of ε_N-orbits in one ε_M-orbit, M a multiple of N.
pub(crate) fn unit_ratio(field: &NumberField, level: u64, unit_level: u64) -> Result<u64> {
    if field.is_rational() {
        return Ok(1);
    }
    let (_, a) = field.unit_subgroup_generator(level)?;
    let (_, b) = field.unit_subgroup_generator(unit_level)?;
    Ok((b / a) as u64)
}

/// Norm bound on λ = l/s' for a bound B on |N l|.
pub(crate) fn lattice_bound(field: &NumberField, scale: &FieldElement, bound: f64) -> f64 {
    let ns = crate::arith::rat_to_f64(&field.norm(scale).abs());
    bound / ns
}

fn check_bound(bound: f64) -> Result<()> {
    if !(bound > 0.0) || !bound.is_finite() {
        return Err(Error::InvalidInput("truncation bound must be positive".into()));
    }
    Ok(())
}

/// Σ_{a,σ} T(a,0)·sgn(Nσ)^k·S_k(a,σ) together with Σ|T(a,0)|.
fn weighted_bucket_sum(fh: &FractionalSchwartz, sums: &OrbitSums, k: u32) -> (CDd, f64) {
    let mut total = CDd::ZERO;
    let mut l1 = 0.0;
    let res = fh.residue();
    for a in res.elements() {
        let t = fh.value_cdd(fh.index_of((a, (0, 0))));
        if t == CDd::ZERO {
            continue;
        }
        l1 += t.abs();
        for s in 0..sums.sign_patterns() {
            let mut v = sums.sum(a, s);
            if k % 2 == 1 && norm_sign(s) < 0 {
                v = -v;
            }
            total = total + t.scale(v);
        }
    }
    (total, l1)
}

pub fn constant_term(
    phi: &TwistedSchwartz,
    m: u32,
    torus: &TorusData,
    bound: f64,
    bits: u32,
) -> Result<LatticeSumResult> {
    if !is_s0(phi) {
        return Err(Error::Precondition(
            "φ must vanish at 0 and have total integral 0".into(),
        ));
    }
    check_bound(bound)?;
    if phi.eta.is_some() && !torus.is_identity() {
        return Err(Error::InvalidInput(
            "a twisted φ is only evaluated at the identity torus point".into(),
        ));
    }
    let k = m + 2;
    let base = &phi.base;
    let fld = &base.field;
    let fh = base.fourier_transform()?.act_scalar(&torus.t2)?;
    let c = fh.modulus;
    let level = base.modulus;
    let unit_level = level.lcm(&c);
    let x = lattice_bound(fld, &fh.scale, bound);
    let sums = OrbitSums::get(fld, c, unit_level, k, x, bits)?;
    let (total, l1) = weighted_bucket_sum(&fh, &sums, k);

    let ratio = unit_ratio(fld, level, unit_level)? as f64;
    let ns = Dd::from_rational(&fld.norm(&fh.scale));
    let ns_k = ns.powi(k).recip();
    // 1/(sgn^k ‖t₂‖^k) times the twist (‖t₂‖·sgn)^n
    let tn = torus.finite_norm(fld);
    let sgn = Dd::new(torus.sign as f64);
    let mut tor = (sgn * tn).powi(k).recip();
    if phi.n != 0 {
        let tw = (sgn * tn).powi(phi.n.unsigned_abs() as u32);
        tor = if phi.n > 0 { tor * tw } else { tor / tw };
    }
    let pref = gamma_prefactor(fld, k);
    let scale = ns_k * tor / Dd::new(ratio);
    let value = (pref * total).scale(scale);
    let tail_estimate = pref.abs()
        * scale.abs().to_f64()
        * l1
        * sums.sign_patterns() as f64
        * sums.tail_model();
    Ok(LatticeSumResult {
        value,
        bound,
        tail_estimate,
        terms: sums.terms,
        precision_bits: bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn example(sign: i64) -> TwistedSchwartz {
        let q = NumberField::rationals();
        TwistedSchwartz::untwisted(FractionalSchwartz::from_points(
            &q,
            2,
            &[(((1, 0), (0, 0)), sign), (((0, 0), (1, 0)), -sign)],
        ))
    }

    #[test]
    fn one_eighth() {
        let r = constant_term(&example(1), 0, &TorusData::default(), 1e5, 128).unwrap();
        assert!((r.value.re.to_f64() - 0.125).abs() < 1e-20, "{:?}", r.value);
        assert!(r.value.im.to_f64().abs() < 1e-25);
        let s = constant_term(&example(-1), 0, &TorusData::default(), 1e5, 128).unwrap();
        assert!((s.value.re.to_f64() + 0.125).abs() < 1e-20);
    }

    #[test]
    fn prefactor_matches_hand_value() {
        let q = NumberField::rationals();
        let p = gamma_prefactor(&q, 2);
        let want = Dd::ONE / (Dd::new(4.0) * Dd::PI * Dd::PI);
        assert!((p.re - want).to_f64().abs() < 1e-30);
    }

    #[test]
    fn rejects_non_s0() {
        let q = NumberField::rationals();
        let f = FractionalSchwartz::from_points(&q, 2, &[(((1, 0), (0, 0)), 1)]);
        let e = constant_term(&TwistedSchwartz::untwisted(f), 0, &TorusData::default(), 100.0, 64);
        assert!(matches!(e, Err(Error::Precondition(_))));
    }

    #[test]
    fn torus_scaling_over_q() {
        // t₂ = 2 moves f̂ to f̂(2·), and the prefactor carries |N t₂|^k
        let q = NumberField::rationals();
        let t = TorusData::new(&q, FieldElement::from_rational(rat(2, 1))).unwrap();
        let r = constant_term(&example(1), 0, &t, 1e5, 128).unwrap();
        // f̂(2l) at l ∈ ½Z is 1/2 exactly when 2l is an odd multiple of ½,
        // i.e. l odd multiple of ¼: Σ = (1/2)·16·Σ_{odd} n^{-2}·2, times 4 from |N t₂|²
        let direct = 0.5 * 16.0 * std::f64::consts::PI.powi(2) / 4.0 * 4.0 / (4.0 * std::f64::consts::PI.powi(2));
        assert!((r.value.re.to_f64() - direct).abs() < 1e-12, "{:?} {}", r.value, direct);
    }
}
