//! The horospherical map
//!
//!   ρ_m(φ)(x) = Σ_{χ ∈ Ĉl(m)} Γ(m+2)^ξ/(−2πi)^{ξ(m+2)}·η(det x)·χ(det x)
//!               ·∫_{A_f^×} f̂(t·x·e¹)·χ(t)‖t‖^{m+2} d^×t
//!
//! for x ∈ GL₂(O/N).  With h = 1 the idele group is F^×·Ô^×, and writing
//! t = s′λu (s′ the scale of f̂, λ ∈ O, u ∈ Ô^×) the Tate integral becomes
//!
//!   vol(U_N)/[O^× : O^×(N)⁺]·|N s′|^{-k}·Σ_{a ∈ O/N, σ} S_k(a, σ)
//!       ·Σ_{u ∈ (O/N)^×} T̂(a·u·w)·χ(1, u, sgn(s′)σ),      w = x·e¹,
//!
//! with vol(U_N) = d_F^{-1/2}/|(O/N)^×| and S_k the orbit sums of the
//! eisenstein module.  Each χ gives one induced function of type (η, χ).

use super::ind::{HeckeData, IndFunction, LevelData};
use crate::classfield::sign_bits;
use crate::eisenstein::{gamma_factor, OrbitSums};
use crate::error::{Error, Result};
use crate::numeric::{CDd, Dd};
use crate::schwartz::{is_s0, TwistedSchwartz};
use std::sync::Arc;

/// ρ_m(φ) as one induced function per character χ ∈ Ĉl(m).
#[derive(Clone, Debug)]
pub struct Rho {
    pub level: Arc<LevelData>,
    pub components: Vec<IndFunction>,
    pub bound: f64,
    pub bits: u32,
}

impl Rho {
    /// Σ_χ ρ_χ at the table index i.
    pub fn total(&self, i: usize) -> CDd {
        self.components
            .iter()
            .fold(CDd::ZERO, |acc, c| acc + c.values[i])
    }

    /// Multiplies every component by c.
    pub fn scaled(mut self, c: CDd) -> Self {
        for comp in &mut self.components {
            comp.values.iter_mut().for_each(|v| *v = *v * c);
            comp.exact = None;
        }
        self
    }
}

/// ρ_m of an arbitrary φ at the level given by its table modulus.
pub fn rho_m(level: &Arc<LevelData>, phi: &TwistedSchwartz, m: u32, bound: f64, bits: u32) -> Result<Rho> {
    let base = &phi.base;
    let field = &level.field;
    if base.field != *field || base.modulus != level.modulus {
        return Err(Error::InvalidInput(format!(
            "φ lives at level {} but the tables are for level {}",
            base.modulus, level.modulus
        )));
    }
    level.require_narrow_class_number_one()?;
    let h = level.group.order();
    let eta = match &phi.eta {
        Some(e) if e.values.len() != h => {
            return Err(Error::InvalidInput("η is not a character of Cl(N)".into()))
        }
        Some(e) => e.clone(),
        None => level.group.characters()[0].clone(),
    };
    let k = m + 2;
    let n = level.modulus;
    let fh = base.fourier_transform()?;
    let x_bound = crate::eisenstein::lattice_bound(field, &fh.scale, bound);
    let sums = OrbitSums::get(field, n, n, k, x_bound, bits)?;
    let res = &level.gl2.residue;
    let units = res.units();
    let elems = res.elements();
    let s_sign = sign_bits(field, &fh.scale);
    let table: Vec<CDd> = (0..fh.len()).map(|i| fh.value_cdd(i)).collect();

    let vol = Dd::new(field.disc as f64).sqrt().recip() / Dd::new(units.len() as f64);
    let idx = Dd::new(field.unit_index(n)? as f64);
    let ns = Dd::from_rational(&field.norm(&fh.scale)).abs();
    let pre = vol / idx / ns.powi(k);
    let gamma = gamma_factor(field, k);

    let g = &level.gl2;
    let prims = g.primitive_vectors();
    let mut components = Vec::new();
    for chi in level.group.characters_with_sign(m) {
        let chi_u: Vec<Vec<CDd>> = units
            .iter()
            .map(|&u| {
                (0..sums.sign_patterns())
                    .map(|sg| chi.value(level.class_of_residue(u, sg ^ s_sign)))
                    .collect()
            })
            .collect();
        // I_χ(w) for every primitive w
        let mut integral = vec![CDd::ZERO; res.size() * res.size()];
        for &w in &prims {
            let mut acc = CDd::ZERO;
            for &a in &elems {
                for (ui, &u) in units.iter().enumerate() {
                    let au = res.mul(a, u);
                    let t = table[fh.index_of((res.mul(au, w.0), res.mul(au, w.1)))];
                    if t == CDd::ZERO {
                        continue;
                    }
                    for sg in 0..sums.sign_patterns() {
                        acc = acc + (t * chi_u[ui][sg as usize]).scale(sums.sum(a, sg));
                    }
                }
            }
            integral[res.index(w.0) * res.size() + res.index(w.1)] = acc.scale(pre);
        }
        let data = HeckeData::new(level, eta.clone(), chi.clone(), m, phi.n)?;
        let values = g
            .elements
            .iter()
            .map(|x| {
                let w = g.first_column(x);
                let d = g.det(x);
                let c = chi.value(level.class_of_residue(d, 0)) * level.value(&eta, d);
                gamma * c * integral[res.index(w.0) * res.size() + res.index(w.1)]
            })
            .collect();
        components.push(IndFunction::from_values(level.clone(), data, values)?);
    }
    Ok(Rho {
        level: level.clone(),
        components,
        bound,
        bits,
    })
}

/// ρ⁰_{m,n}: ρ_m restricted to φ ∈ S⁰.  At x ∈ GL₂(O/N) the twist by
/// (‖det x‖_f·sgn)^n is trivial.
pub fn rho0(level: &Arc<LevelData>, phi: &TwistedSchwartz, m: u32, bound: f64, bits: u32) -> Result<Rho> {
    if !is_s0(phi) {
        return Err(Error::Precondition(
            "φ must vanish at 0 and have total integral 0".into(),
        ));
    }
    rho_m(level, phi, m, bound, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::rank_one_constant_term;
    use crate::field::NumberField;
    use crate::horospherical::psi_project;
    use crate::schwartz::FractionalSchwartz;

    fn example() -> TwistedSchwartz {
        let q = NumberField::rationals();
        TwistedSchwartz::untwisted(FractionalSchwartz::from_points(
            &q,
            2,
            &[(((1, 0), (0, 0)), 1), (((0, 0), (1, 0)), -1)],
        ))
    }

    #[test]
    fn identity_value_is_half_the_constant_term() {
        let q = NumberField::rationals();
        let lv = LevelData::new(&q, 2).unwrap();
        let phi = example();
        let r = rho0(&lv, &phi, 0, 1e4, 128).unwrap();
        let one = lv.gl2.index_of(&[(1, 0), (0, 0), (0, 0), (1, 0)]).unwrap();
        let ct = rank_one_constant_term(&phi, 0).unwrap().to_cdd();
        let v = r.total(one);
        assert!((v + ct.scale(Dd::new(0.5))).abs() < 1e-20, "{:?} {:?}", v, ct);
    }

    #[test]
    fn kernel_membership_small() {
        let q = NumberField::rationals();
        let lv = LevelData::new(&q, 2).unwrap();
        let r = rho0(&lv, &example(), 0, 1e4, 128).unwrap();
        for c in &r.components {
            assert!(c.law_residual() < 1e-25);
            assert!(psi_project(c).average.abs() < 1e-25);
        }
    }
}
