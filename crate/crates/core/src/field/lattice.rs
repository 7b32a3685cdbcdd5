//! Enumeration of lattice points modulo a group of totally positive units.
//!
//! For a totally positive unit ε with σ₁(ε) > 1, every ε^Z orbit of nonzero
//! y meets the region 1 <= |σ₁y/σ₂y| < σ₁(ε)² exactly once.  In terms of
//! s = Tr(y) and β = σ₁y - σ₂y this is a pair of wedges, and the norm bound
//! |s² - β²| <= 4X cuts them down to finitely many points.  Floating point
//! only proposes candidates; membership is decided with exact integers.

use super::{FieldElement, FractionalIdeal, NumberField, OInt};
use crate::error::Result;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlabPoint {
    pub x: OInt,
    pub norm: i128,
}

/// Exact fundamental-domain test: Tr(y)·b(y) >= 0 and Tr(z)·b(z) < 0 for
/// z = y·ε̄.
pub(crate) fn in_domain(field: &NumberField, y: OInt, eps_bar: OInt) -> bool {
    let s1 = field.trace_int(y).signum() * y.1.signum();
    if s1 < 0 {
        return false;
    }
    let z = field.mul_int(y, eps_bar);
    field.trace_int(z).signum() * z.1.signum() < 0
}

/// Calls `visit` once per ε-orbit of nonzero y in the lattice
/// {(a,0),(b,c)} with |N(y)| <= x_bound.  `eps` must be totally positive.
pub fn enumerate_slab<F: FnMut(SlabPoint)>(
    field: &NumberField,
    lattice: (i128, i128, i128),
    eps: OInt,
    x_bound: f64,
    mut visit: F,
) {
    let (a, b, c) = lattice;
    if field.is_rational() {
        let m = (x_bound / a as f64).floor() as i128 + 1;
        for u in -m..=m {
            let p = u * a;
            if p != 0 && (p.abs() as f64) <= x_bound {
                visit(SlabPoint { x: (p, 0), norm: p });
            }
        }
        return;
    }
    assert_eq!(field.norm_int(eps), 1, "unit must be totally positive");
    let e1 = field.embed_int_f64(eps, 0);
    let eps = if e1 < 1.0 { field.conj_int(eps) } else { eps };
    let e1 = field.embed_int_f64(eps, 0).max(1.0 / e1);
    assert!(e1 > 1.0 && field.sign_int(eps, 0) > 0);
    let eps_bar = field.conj_int(eps);
    let l = e1.ln();
    let (th, cth) = (l.tanh(), 1.0 / l.tanh());
    let sd = (field.disc as f64).sqrt();
    let t = field.t as i128;
    let xb = x_bound;

    let check = |y: OInt, visit: &mut F| {
        let nm = field.norm_int(y);
        if (nm.abs() as f64) <= xb && in_domain(field, y, eps_bar) {
            visit(SlabPoint { x: y, norm: nm });
        }
    };

    // q = 0: rational multiples p of gcd, all signs
    {
        let r = xb.sqrt();
        let m = (r / a as f64).floor() as i128 + 1;
        for u in -m..=m {
            let p = u * a;
            if p != 0 {
                check((p, 0), &mut visit);
            }
        }
    }

    let beta_max = xb.sqrt() * (e1 + 1.0);
    let vmax = (beta_max / (c as f64 * sd)).ceil() as i128 + 1;
    for v in -vmax..=vmax {
        if v == 0 {
            continue;
        }
        let q = v * c;
        let beta = (q as f64).abs() * sd;
        let lo1 = (beta * beta - 4.0 * xb).max(0.0).sqrt();
        let hi1 = beta * th;
        let lo2 = beta * cth;
        let hi2 = (beta * beta + 4.0 * xb).sqrt();
        let mut ranges: Vec<(i128, i128)> = Vec::with_capacity(2);
        for (lo, hi) in [(lo1, hi1), (lo2, hi2)] {
            if lo > hi + 1.0 {
                continue;
            }
            // s has the sign of β
            let (slo, shi) = if q > 0 { (lo, hi) } else { (-hi, -lo) };
            // s = 2p + t q, p = u a + v b
            let margin = 1e-9 * (beta + hi2) + 1.0;
            let plo = ((slo - margin) - (t * q) as f64) / 2.0;
            let phi = ((shi + margin) - (t * q) as f64) / 2.0;
            let ulo = ((plo - (v * b) as f64) / a as f64).floor() as i128 - 1;
            let uhi = ((phi - (v * b) as f64) / a as f64).ceil() as i128 + 1;
            match ranges.last_mut() {
                Some(r) if ulo <= r.1 + 1 && uhi >= r.0 - 1 => {
                    r.0 = r.0.min(ulo);
                    r.1 = r.1.max(uhi);
                }
                _ => ranges.push((ulo, uhi)),
            }
        }
        for (ulo, uhi) in ranges {
            for u in ulo..=uhi {
                check((u * a + v * b, q), &mut visit);
            }
        }
    }
}

/// Representatives of the nonzero elements of the ideal with |N| <= bound,
/// modulo the totally positive units congruent to 1 mod `modulus`, sorted.
pub fn enumerate_orbit_reps(
    field: &NumberField,
    ideal: &FractionalIdeal,
    modulus: u64,
    bound: f64,
) -> Result<Vec<FieldElement>> {
    let (eps, _) = field.unit_subgroup_generator(modulus)?;
    let den = ideal.den;
    let scale = BigRational::new(BigInt::from(1), BigInt::from(den));
    let xb = if field.is_rational() {
        bound * den as f64
    } else {
        bound * (den * den) as f64
    };
    let mut out = Vec::new();
    enumerate_slab(field, (ideal.a, ideal.b, ideal.c), eps, xb, |pt| {
        out.push(FieldElement::from_ints(pt.x.0, pt.x.1).scale(&scale));
    });
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Brute force over a box, reducing each point to the domain by
    /// repeated multiplication with ε or ε̄.
    fn brute(field: &NumberField, eps: OInt, x: i128, r: i128) -> HashSet<OInt> {
        let eps_bar = field.conj_int(eps);
        let mut out = HashSet::new();
        for p in -r..=r {
            for q in -r..=r {
                let y = (p, q);
                if y == (0, 0) || field.norm_int(y).abs() > x {
                    continue;
                }
                let mut z = y;
                for _ in 0..200 {
                    if in_domain(field, z, eps_bar) {
                        break;
                    }
                    let r1 = field.embed_int_f64(z, 0).abs() / field.embed_int_f64(z, 1).abs();
                    z = if r1 < 1.0 {
                        field.mul_int(z, eps)
                    } else {
                        field.mul_int(z, eps_bar)
                    };
                }
                assert!(in_domain(field, z, eps_bar));
                out.insert(z);
            }
        }
        out
    }

    #[test]
    fn matches_brute_force() {
        for d in [2i64, 5, 13, 3] {
            let f = NumberField::new(d).unwrap();
            let eps = f.unit_data().unwrap().eps_plus;
            let mut got = HashSet::new();
            enumerate_slab(&f, (1, 0, 1), eps, 40.0, |pt| {
                assert!(got.insert(pt.x));
            });
            let want = brute(&f, eps, 40, 60);
            assert_eq!(got, want, "D = {}", d);
        }
    }

    #[test]
    fn sublattice() {
        let f = NumberField::new(5).unwrap();
        let eps = f.unit_subgroup_generator(1).unwrap().0;
        let mut n = 0;
        enumerate_slab(&f, (3, 0, 3), eps, 90.0, |pt| {
            assert!(pt.x.0 % 3 == 0 && pt.x.1 % 3 == 0);
            n += 1;
        });
        let mut m = 0;
        enumerate_slab(&f, (1, 0, 1), eps, 10.0, |_| m += 1);
        assert_eq!(n, m);
    }
}
