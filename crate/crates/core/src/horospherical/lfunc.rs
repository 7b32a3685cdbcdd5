//! Partial Hecke L-values and the constants Λ_N.
//!
//! hecke_l_partial is the truncated Euler product
//! d_F^{-1/2}·∏_{N𝔭 ≤ P, 𝔭∤N} (1 − χ(𝔭)N𝔭^{-s})⁻¹.  The same value is also
//! available as a lattice sum over the orbit sums of the eisenstein module,
//! which converges much faster and is what the preimage construction uses.

use super::ind::LevelData;
use crate::classfield::HeckeCharacter;
use crate::eisenstein::{gamma_factor, OrbitSums};
use crate::error::{Error, Result};
use crate::numeric::{CDd, Dd};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum LMethod {
    /// Euler product over prime ideals of norm ≤ P.
    Euler { prime_bound: u64 },
    /// Orbit sum over λ ∈ O with |N λ| up to the bound.
    Lattice { bound: f64, bits: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LValue {
    pub value: CDd,
    /// Bound on |value − limit|.
    pub tail_bound: f64,
    pub method: LMethod,
}

fn sqrt_disc(level: &LevelData) -> Dd {
    Dd::new(level.field.disc as f64).sqrt()
}

/// d_F^{-1/2}·∏_{N𝔭 ≤ P, 𝔭∤N} (1 − χ(𝔭)N𝔭^{-s})⁻¹ with a rigorous tail bound.
pub fn hecke_l_partial(level: &LevelData, chi: &HeckeCharacter, s: f64, prime_bound: u64) -> Result<LValue> {
    if !(s > 1.0) {
        return Err(Error::Precondition("the Euler product needs s > 1".into()));
    }
    if prime_bound < 2 {
        return Err(Error::InvalidInput("prime bound must be at least 2".into()));
    }
    let field = &level.field;
    let integral = s.fract() == 0.0 && s < 64.0;
    let mut prod = CDd::real(Dd::ONE);
    for (p, norm) in field.primes_up_to(prime_bound) {
        if !p.coprime_to(level.modulus) {
            continue;
        }
        let c = level.group.chi_ideal(chi, &p)?;
        let q = if integral {
            Dd::from_i128(norm as i128).powi(s as u32).recip()
        } else {
            Dd::new((norm as f64).powf(-s))
        };
        // (1 − c q)⁻¹
        let den = CDd::real(Dd::ONE) - c.scale(q);
        let d2 = den.re * den.re + den.im * den.im;
        let inv = CDd::new(den.re / d2, -den.im / d2);
        prod = prod * inv;
    }
    let value = prod.scale(sqrt_disc(level).recip());
    // log of the tail ≤ Σ_{N𝔭 > P} −log(1 − N𝔭^{-s}) ≤ ξ·P^{1-s}/((s − 1)(1 − P^{-s}))
    let pb = prime_bound as f64;
    let xi = field.degree as f64;
    let e = xi * pb.powf(1.0 - s) / ((s - 1.0) * (1.0 - pb.powf(-s)));
    let tail_bound = value.abs() * e.exp_m1() * (1.0 + 1e-12) + 1e-30;
    Ok(LValue {
        value,
        tail_bound,
        method: LMethod::Euler { prime_bound },
    })
}

/// The same partial L-value at an integer k ≥ 2 from the orbit sums:
/// d_F^{-1/2}·[O^× : O^×(N)⁺]⁻¹·Σ_{a ∈ (O/N)^×, σ} χ(1, a⁻¹, σ)·S_k(a, σ).
pub fn hecke_l_lattice(level: &LevelData, chi: &HeckeCharacter, k: u32, bound: f64, bits: u32) -> Result<LValue> {
    if k < 2 {
        return Err(Error::Precondition("the lattice sum needs k ≥ 2".into()));
    }
    let field = &level.field;
    let n = level.modulus;
    let sums = OrbitSums::get(field, n, n, k, bound, bits)?;
    let res = &level.gl2.residue;
    let idx = field.unit_index(n)? as f64;
    let mut acc = CDd::ZERO;
    let mut l1 = 0.0;
    for a in res.units() {
        let ai = res.inv(a).expect("unit");
        for sg in 0..sums.sign_patterns() {
            let c = level.group.element(0, ai, sg)?;
            let v = sums.sum(a, sg);
            acc = acc + chi.value(c).scale(v);
            l1 += 1.0;
        }
    }
    let scale = (sqrt_disc(level) * Dd::new(idx)).recip();
    let value = acc.scale(scale);
    let tail_bound = l1 * sums.tail_model() * scale.to_f64();
    Ok(LValue {
        value,
        tail_bound,
        method: LMethod::Lattice { bound, bits },
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaValue {
    pub value: CDd,
    pub tail_bound: f64,
    pub l_value: LValue,
    pub class_number: usize,
}

/// Λ_N(χ, m+2) = |Cl^{(N)}|·Γ(m+2)^ξ/(−2πi)^{ξ(m+2)}·L^{(N)}(χ, m+2).
pub fn lambda_n(level: &LevelData, chi: &HeckeCharacter, m: u32, method: LMethod) -> Result<LambdaValue> {
    let k = m + 2;
    let l_value = match method {
        LMethod::Euler { prime_bound } => hecke_l_partial(level, chi, k as f64, prime_bound)?,
        LMethod::Lattice { bound, bits } => hecke_l_lattice(level, chi, k, bound, bits)?,
    };
    let h = level.group.order();
    let g = gamma_factor(&level.field, k).scale(Dd::new(h as f64));
    let value = g * l_value.value;
    let tail_bound = g.abs() * l_value.tail_bound;
    Ok(LambdaValue {
        value,
        tail_bound,
        l_value,
        class_number: h,
    })
}
