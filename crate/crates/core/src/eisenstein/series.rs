//! The holomorphic Eisenstein sum
//!
//!   E(τ) = P_k · Σ_{l ∈ (V∖0)/O^×(N)⁺} f̂(l) · ∏_i (r·(σ_i l₁ + σ_i l₂ τ_i))^{-k} · |…|^{-2s}
//!
//! with the constant-term prefactor P_k, its x-average over the period
//! torus, and a Richardson extrapolation to s = 0 for the non-convergent
//! corner ξ = 2, k = 2.

use super::constant_term::{gamma_prefactor, LatticeSumResult};
use crate::error::{Error, Result};
use crate::field::{enumerate_slab, NumberField, OInt};
use crate::numeric::{hurwitz_zeta, lipschitz_sum, Acc, CDd, Dd, C64};
use crate::schwartz::{FractionalSchwartz, TwistedSchwartz};

/// τ in the product of upper (or lower) half-planes and the scale r > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct EisensteinPoint {
    pub tau: Vec<C64>,
    pub r: f64,
}

impl EisensteinPoint {
    pub fn new(tau: Vec<C64>, r: f64) -> Self {
        EisensteinPoint { tau, r }
    }

    pub fn conj(&self) -> Self {
        EisensteinPoint {
            tau: self.tau.iter().map(|t| t.conj()).collect(),
            r: self.r,
        }
    }
}

fn check(field: &NumberField, m: u32, s: f64, pt: &EisensteinPoint) -> Result<()> {
    let xi = field.degree as usize;
    if pt.tau.len() != xi {
        return Err(Error::InvalidInput(format!("expected {} coordinates of τ", xi)));
    }
    if pt.tau.iter().any(|t| t.im == 0.0 || !t.im.is_finite()) || !(pt.r > 0.0) {
        return Err(Error::InvalidInput("τ must be off the real axis and r > 0".into()));
    }
    if !(s >= 0.0) {
        return Err(Error::InvalidInput("s must be non-negative".into()));
    }
    if (m as f64 + 2.0 + s) <= xi as f64 {
        return Err(Error::Precondition(
            "the lattice sum needs 2(m+2+s) > 2ξ to converge".into(),
        ));
    }
    Ok(())
}

/// Values of f̂ on the residues (a, b) ∈ (O/C)², row-major in the residue
/// index.
fn dual_table(fh: &FractionalSchwartz) -> Vec<C64> {
    (0..fh.len()).map(|i| fh.value_cdd(i).to_c64()).collect()
}

fn cpow(z: C64, k: u32, s: f64) -> C64 {
    let t = z.powi(-(k as i32));
    if s == 0.0 {
        t
    } else {
        t.scale(z.abs().powf(-2.0 * s))
    }
}

/// E(τ) by the closed-form row sums (ξ = 1, s = 0): the l₂ = 0 row through
/// Hurwitz zeta values, the other rows through Σ_j (j + w)^{-k}.
pub fn eisenstein_value(
    phi: &TwistedSchwartz,
    m: u32,
    s: f64,
    pt: &EisensteinPoint,
    bound: f64,
    bits: u32,
) -> Result<LatticeSumResult> {
    let fld = &phi.base.field;
    check(fld, m, s, pt)?;
    if !fld.is_rational() || s != 0.0 {
        return eisenstein_value_direct(phi, m, s, pt, bound, bits);
    }
    let k = m + 2;
    let fh = phi.base.fourier_transform()?;
    let c = fh.modulus as i128;
    let tab = dual_table(&fh);
    let at = |a: i128, b: i128| tab[fh.index_of(((a.rem_euclid(c), 0), (b.rem_euclid(c), 0)))];
    let sp = crate::arith::rat_to_f64(&fh.scale.a);
    let tau = pt.tau[0];
    let mut acc = Acc::new(bits);
    let mut l1 = 0.0f64;

    // l₂ = 0: Σ_{n ≡ a, n ≠ 0} n^{-k} = C^{-k}(ζ(k, a⁺/C) + (-1)^k ζ(k, a⁻/C))
    let ck = Dd::from_i128(c).powi(k).recip();
    for a in 0..c {
        let t = fh.value_cdd(fh.index_of(((a, 0), (0, 0))));
        if t == CDd::ZERO {
            continue;
        }
        let ap = if a == 0 { c } else { a };
        let am = if a == 0 { c } else { c - a };
        let hp = hurwitz_zeta(k, Dd::from_i128(ap) / Dd::from_i128(c));
        let hm = hurwitz_zeta(k, Dd::from_i128(am) / Dd::from_i128(c));
        let h = if k % 2 == 0 { hp + hm } else { hp - hm };
        acc.add(t.scale(ck * h));
        l1 += t.abs();
    }
    // rows decay like exp(-2π|n₂|y/C)
    let y = tau.im.abs();
    let decay = 2.0 * std::f64::consts::PI * y / c as f64;
    let rows = (44.0 / decay).ceil() as i128 + 1;
    let mut terms = 0u64;
    for n2 in (-rows..=rows).filter(|&n| n != 0) {
        let mut row = C64::ZERO;
        for a in 0..c {
            let t = at(a, n2);
            if t == C64::ZERO {
                continue;
            }
            let w = (C64::new(a as f64, 0.0) + tau.scale(n2 as f64)).scale(1.0 / c as f64);
            row = row + t * lipschitz_sum(k, w);
            terms += 1;
        }
        acc.add(CDd::new(Dd::new(row.re), Dd::new(row.im)).scale(ck));
    }
    let pref = gamma_prefactor(fld, k);
    let rs = Dd::new(pt.r) * Dd::new(sp);
    let value = (pref * acc.value()).scale(rs.powi(k).recip());
    let tmax = tab.iter().map(|t| t.abs()).fold(l1, f64::max);
    let tail = pref.abs() * rs.to_f64().abs().powi(-(k as i32)) * tmax * (-decay * rows as f64).exp() * 4.0;
    Ok(LatticeSumResult {
        value,
        bound,
        tail_estimate: tail,
        terms,
        precision_bits: bits,
    })
}

/// E(τ) as a plain truncated lattice sum.  Over Q: all n ≠ 0 with
/// |n₁ + n₂τ|² <= B, l = s'n.  Over a quadratic field: the l₂ = 0 row over
/// orbit representatives with |N λ₁| <= B, and for each orbit
/// representative λ₂ ≠ 0 all λ₁ with |σ_i(λ₁ + λ₂τ_i)| <= B^{1/4}.
pub fn eisenstein_value_direct(
    phi: &TwistedSchwartz,
    m: u32,
    s: f64,
    pt: &EisensteinPoint,
    bound: f64,
    bits: u32,
) -> Result<LatticeSumResult> {
    let fld = &phi.base.field;
    check(fld, m, s, pt)?;
    if !(bound >= 1.0) || !bound.is_finite() {
        return Err(Error::InvalidInput("truncation bound must be at least 1".into()));
    }
    let k = m + 2;
    let fh = phi.base.fourier_transform()?;
    let tab = dual_table(&fh);
    let res = fh.residue();
    let at = |a: OInt, b: OInt| tab[fh.index_of((res.reduce(a), res.reduce(b)))];
    let tmax = tab.iter().map(|t| t.abs()).fold(0.0, f64::max);
    let mut acc = Acc::new(bits);
    let mut terms = 0u64;
    let r = pt.r;
    let ke = k as f64 + s;
    let tail;
    if fld.is_rational() {
        let sp = crate::arith::rat_to_f64(&fh.scale.a);
        let tau = pt.tau[0];
        let y = tau.im.abs();
        let rad = bound.sqrt();
        let n2max = (rad / y).floor() as i128;
        for n2 in -n2max..=n2max {
            let rem = bound - (n2 as f64 * y).powi(2);
            if rem < 0.0 {
                continue;
            }
            let cx = -(n2 as f64) * tau.re;
            let w = rem.sqrt();
            for n1 in (cx - w).ceil() as i128..=(cx + w).floor() as i128 {
                if n1 == 0 && n2 == 0 {
                    continue;
                }
                let t = at((n1, 0), (n2, 0));
                if t == C64::ZERO {
                    continue;
                }
                let z = (C64::new(n1 as f64, 0.0) + tau.scale(n2 as f64)).scale(r * sp);
                let v = t * cpow(z, k, s);
                acc.add(CDd::new(Dd::new(v.re), Dd::new(v.im)));
                terms += 1;
            }
        }
        tail = tmax * 2.0 * std::f64::consts::PI / (y * (2.0 * ke - 2.0))
            * (r * sp).abs().powf(-ke)
            * rad.powf(2.0 - 2.0 * ke);
    } else {
        let eps = {
            let (e, _) = fld.unit_subgroup_generator(fh.modulus)?;
            if fld.embed_int_f64(e, 0) < 1.0 {
                fld.conj_int(e)
            } else {
                e
            }
        };
        let sv = [fld.embed_f64(&fh.scale, 0), fld.embed_f64(&fh.scale, 1)];
        let om = [fld.embed_int_f64((0, 1), 0), fld.embed_int_f64((0, 1), 1)];
        let term = |z: [C64; 2]| -> C64 {
            cpow(z[0].scale(r * sv[0]), k, s) * cpow(z[1].scale(r * sv[1]), k, s)
        };
        // λ₂ = 0
        enumerate_slab(fld, (1, 0, 1), eps, bound, |p| {
            let t = at(p.x, (0, 0));
            if t != C64::ZERO {
                let z = [
                    C64::new(fld.embed_int_f64(p.x, 0), 0.0),
                    C64::new(fld.embed_int_f64(p.x, 1), 0.0),
                ];
                let v = t * term(z);
                acc.add(CDd::new(Dd::new(v.re), Dd::new(v.im)));
                terms += 1;
            }
        });
        let rad = bound.powf(0.25);
        let (y1, y2) = (pt.tau[0].im.abs(), pt.tau[1].im.abs());
        let mut reps = Vec::new();
        enumerate_slab(fld, (1, 0, 1), eps, rad * rad / (y1 * y2), |p| {
            let e = [fld.embed_int_f64(p.x, 0), fld.embed_int_f64(p.x, 1)];
            if e[0].abs() * y1 <= rad && e[1].abs() * y2 <= rad {
                reps.push((p.x, e));
            }
        });
        let sd = om[0] - om[1];
        for (l2, e) in reps {
            let cshift = [-e[0] * pt.tau[0].re, -e[1] * pt.tau[1].re];
            let blo = ((cshift[0] - cshift[1] - 2.0 * rad) / sd).floor() as i128;
            let bhi = ((cshift[0] - cshift[1] + 2.0 * rad) / sd).ceil() as i128;
            for b in blo..=bhi {
                let lo = (cshift[0] - rad - b as f64 * om[0]).max(cshift[1] - rad - b as f64 * om[1]);
                let hi = (cshift[0] + rad - b as f64 * om[0]).min(cshift[1] + rad - b as f64 * om[1]);
                if lo > hi {
                    continue;
                }
                for a in lo.ceil() as i128..=hi.floor() as i128 {
                    let l1 = (a, b);
                    let t = at(l1, l2);
                    if t == C64::ZERO {
                        continue;
                    }
                    let z = [
                        C64::new(fld.embed_int_f64(l1, 0), 0.0) + pt.tau[0].scale(e[0]),
                        C64::new(fld.embed_int_f64(l1, 1), 0.0) + pt.tau[1].scale(e[1]),
                    ];
                    let v = t * term(z);
                    acc.add(CDd::new(Dd::new(v.re), Dd::new(v.im)));
                    terms += 1;
                }
            }
        }
        let ns = (sv[0] * sv[1]).abs() * r * r;
        tail = tmax * ns.powf(-ke) * (bound.powf(1.0 - ke) + rad.powf(4.0 - 4.0 * ke)) * 8.0;
    }
    let pref = gamma_prefactor(fld, k);
    let value = pref * acc.value();
    Ok(LatticeSumResult {
        value,
        bound,
        tail_estimate: pref.abs() * tail,
        terms,
        precision_bits: bits,
    })
}

/// Trapezoidal average of E(x + iy) over the period torus: x ∈ [0, C) over
/// Q, and x ∈ C·O embedded in R² for a quadratic field, with `q` points
/// per axis.
pub fn constant_term_quadrature(
    phi: &TwistedSchwartz,
    m: u32,
    y: &[f64],
    r: f64,
    q: usize,
    bound: f64,
    bits: u32,
) -> Result<CDd> {
    let fld = &phi.base.field;
    if q == 0 {
        return Err(Error::InvalidInput("need at least one quadrature point".into()));
    }
    let c = phi.base.modulus as f64;
    let mut acc = Acc::new(bits);
    let xi = fld.degree as usize;
    if y.len() != xi {
        return Err(Error::InvalidInput(format!("expected {} imaginary parts", xi)));
    }
    if xi == 1 {
        for j in 0..q {
            let x = c * j as f64 / q as f64;
            let pt = EisensteinPoint::new(vec![C64::new(x, y[0])], r);
            acc.add(eisenstein_value(phi, m, 0.0, &pt, bound, bits)?.value);
        }
        let n = Dd::new(q as f64);
        let v = acc.value();
        return Ok(CDd::new(v.re / n, v.im / n));
    }
    let om = [fld.embed_int_f64((0, 1), 0), fld.embed_int_f64((0, 1), 1)];
    for j1 in 0..q {
        for j2 in 0..q {
            let (u1, u2) = (j1 as f64 / q as f64, j2 as f64 / q as f64);
            let x = [c * (u1 + u2 * om[0]), c * (u1 + u2 * om[1])];
            let pt = EisensteinPoint::new(vec![C64::new(x[0], y[0]), C64::new(x[1], y[1])], r);
            acc.add(eisenstein_value(phi, m, 0.0, &pt, bound, bits)?.value);
        }
    }
    let n = Dd::new((q * q) as f64);
    let v = acc.value();
    Ok(CDd::new(v.re / n, v.im / n))
}

/// Values at s = 0.1, 0.05, 0.025 and their second-order Richardson
/// extrapolation (8v₃ - 6v₂ + v₁)/3 to s = 0.  A diagnostic only.
pub fn richardson_at_zero(
    phi: &TwistedSchwartz,
    m: u32,
    pt: &EisensteinPoint,
    bound: f64,
    bits: u32,
) -> Result<(CDd, [CDd; 3])> {
    let mut v = [CDd::ZERO; 3];
    for (i, s) in [0.1, 0.05, 0.025].into_iter().enumerate() {
        v[i] = eisenstein_value_direct(phi, m, s, pt, bound, bits)?.value;
    }
    let ext = v[2].scale(Dd::new(8.0 / 3.0)) - v[1].scale(Dd::new(2.0)) + v[0].scale(Dd::new(1.0 / 3.0));
    Ok((ext, v))
}
