//! An explicit preimage of an induced function under ρ_m.
//!
//! For ψ of type (η, χ′, m) let g(w) = ψ(x_w) with x_w ∈ SL₂(O/N) any lift
//! of the primitive vector w, and
//!
//!   F₀(w) = Σ_{r ∈ Cl(N)} χ′(r)·g(r·w)   (w primitive),   F₀(w) = 0 otherwise,
//!
//! with r running over unit representatives of the ray classes.  Taking φ₀
//! with f̂₀ = F₀ at scale 1 gives ρ_m(φ₀) = Λ_N(χ′, m+2)·ψ in the χ′ summand
//! and zero in every other summand.  The table F₀ is exact; only the scalar
//! Λ_N⁻¹ is numerical.

use super::ind::IndFunction;
use super::lfunc::{lambda_n, LMethod, LambdaValue};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::numeric::CDd;
use crate::schwartz::{CyclotomicValue, FractionalSchwartz, TwistedSchwartz};

#[derive(Clone, Debug)]
pub struct Preimage {
    /// φ₀, exact.
    pub phi: TwistedSchwartz,
    /// The table F₀ = f̂₀ at scale 1.
    pub table: FractionalSchwartz,
    pub lambda: LambdaValue,
    /// Λ_N⁻¹: ρ_m(φ₀)·scale recovers ψ.
    pub scale: CDd,
}

/// The table F₀ on (O/N)², exact.
pub fn preimage_table(psi: &IndFunction) -> Result<Vec<CyclotomicValue>> {
    let level = &psi.level;
    level.require_narrow_class_number_one()?;
    let exact = psi
        .exact
        .as_ref()
        .ok_or_else(|| Error::Precondition("the preimage needs an exact table of ψ".into()))?;
    let g = &level.gl2;
    let res = &g.residue;
    let reps = level.unit_representatives()?;
    let chi = &psi.data.chi;
    let els = res.elements();
    let mut out = Vec::with_capacity(els.len() * els.len());
    for &a in &els {
        for &c in &els {
            let w = (a, c);
            if !g.is_primitive(w) {
                out.push(CyclotomicValue::zero(1));
                continue;
            }
            let mut acc = CyclotomicValue::zero(1);
            for &r in &reps {
                let rw = (res.mul(r, w.0), res.mul(r, w.1));
                let x = g.section(rw).expect("unit multiples of primitive vectors are primitive");
                acc = acc.add(&level.exact_value(chi, r).mul(&exact[x]));
            }
            out.push(acc);
        }
    }
    Ok(out)
}

/// φ₀ with ρ_m(φ₀) = Λ_N·ψ, together with Λ_N computed by `method`.
pub fn preimage(psi: &IndFunction, method: LMethod) -> Result<Preimage> {
    let level = &psi.level;
    let values = preimage_table(psi)?;
    let table = FractionalSchwartz::from_values(&level.field, FieldElement::one(), level.modulus, &values)?;
    let base = table.fourier_transform()?;
    let phi = TwistedSchwartz {
        base,
        eta: Some(psi.data.eta.clone()),
        n: psi.data.n,
    };
    let lambda = lambda_n(level, &psi.data.chi, psi.data.m, method)?;
    let v = lambda.value;
    let d2 = v.re * v.re + v.im * v.im;
    if d2.to_f64() == 0.0 {
        return Err(Error::Precondition("Λ_N vanishes".into()));
    }
    let scale = CDd::new(v.re / d2, -v.im / d2);
    Ok(Preimage {
        phi,
        table,
        lambda,
        scale,
    })
}
