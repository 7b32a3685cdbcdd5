//! Orbit sums S_k(a, σ) = Σ |N λ|^{-k} over λ ∈ O∖{0} modulo ε_M, split by
//! the residue a = λ mod C and the sign pattern σ of λ.
//!
//! Over Q the partial sum up to X is completed by an exact Hurwitz tail.
//! For real quadratic F the sum is cut off smoothly: terms with |N λ| <= X/2
//! count fully, terms in (X/2, X] are damped by a C^∞ weight, and the
//! missing mass is restored as ρ·X^{1-k}·h_k with ρ the orbit density of
//! one bucket.  Because each bucket is a partial zeta function with a
//! single pole at s = 1, the error of the smoothed completion decays
//! faster than any power of X.

use crate::error::{Error, Result};
use crate::field::{enumerate_slab, NumberField, OInt, Residue};
use crate::numeric::{hurwitz_zeta, Dd};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Debug)]
pub struct OrbitSums {
    pub field: NumberField,
    pub modulus: u64,
    pub unit_level: u64,
    pub weight: u32,
    pub x_bound: f64,
    pub bits: u32,
    pub terms: u64,
    /// Expected number of orbit representatives per bucket and unit of norm.
    pub density: f64,
    residue: Residue,
    sums: Vec<Dd>,
}

/// Smooth step: 1 on [0, 1/2], 0 on [1, ∞).
pub fn cutoff(t: f64) -> f64 {
    if t <= 0.5 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let u = 2.0 * t - 1.0;
    let g = |x: f64| (-1.0 / x).exp();
    let (a, b) = (g(u), g(1.0 - u));
    b / (a + b)
}

/// h_k = ∫_0^∞ (1 - cutoff(t)) t^{-k} dt, by composite Simpson on [1/2, 1].
fn cutoff_mass(k: u32) -> f64 {
    let n = 20_000;
    let h = 0.5 / n as f64;
    let f = |t: f64| (1.0 - cutoff(t)) * t.powi(-(k as i32));
    let mut s = f(0.5) + f(1.0);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(0.5 + i as f64 * h);
    }
    s * h / 3.0 + 1.0 / (k as f64 - 1.0)
}

struct RealAcc {
    sum: Dd,
    wide: bool,
}

impl RealAcc {
    fn add(&mut self, t: Dd) {
        self.sum = self.sum + t;
        if !self.wide {
            self.sum = self.sum.round_f64();
        }
    }
}

fn inv_pow(n: i128, k: u32, wide: bool) -> Dd {
    if wide {
        Dd::from_i128(n).powi(k).recip()
    } else {
        Dd::new((n as f64).powi(-(k as i32)))
    }
}

type CacheKey = (i64, u64, u64, u32, u64, bool);

fn cache() -> &'static Mutex<Vec<(CacheKey, Arc<OrbitSums>)>> {
    static CACHE: OnceLock<Mutex<Vec<(CacheKey, Arc<OrbitSums>)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

impl OrbitSums {
    /// Cached [`OrbitSums::compute`].
    pub fn get(
        field: &NumberField,
        modulus: u64,
        unit_level: u64,
        weight: u32,
        x_bound: f64,
        bits: u32,
    ) -> Result<Arc<OrbitSums>> {
        let key = (field.d, modulus, unit_level, weight, x_bound.to_bits(), bits > 53);
        if let Some((_, v)) = cache().lock().unwrap().iter().find(|(k, _)| *k == key) {
            return Ok(v.clone());
        }
        let v = Arc::new(Self::compute(field, modulus, unit_level, weight, x_bound, bits)?);
        let mut c = cache().lock().unwrap();
        if c.len() >= 24 {
            c.remove(0);
        }
        c.push((key, v.clone()));
        Ok(v)
    }

    pub fn compute(
        field: &NumberField,
        modulus: u64,
        unit_level: u64,
        weight: u32,
        x_bound: f64,
        bits: u32,
    ) -> Result<OrbitSums> {
        if weight < 2 {
            return Err(Error::Precondition("orbit sums need weight >= 2".into()));
        }
        if modulus == 0 || unit_level % modulus != 0 {
            return Err(Error::InvalidInput("unit level must be a multiple of the modulus".into()));
        }
        if !(x_bound >= 1.0) || x_bound > 1e12 {
            return Err(Error::InvalidInput(format!("norm bound {} out of range", x_bound)));
        }
        let wide = bits > 53;
        let residue = Residue::new(field, modulus);
        let nsign = if field.is_rational() { 2 } else { 4 };
        let nb = residue.size() * nsign;
        let mut acc: Vec<RealAcc> = (0..nb).map(|_| RealAcc { sum: Dd::ZERO, wide }).collect();
        let k = weight;
        let mut terms = 0u64;
        let density;
        if field.is_rational() {
            let c = modulus as i128;
            let xmax = x_bound.floor() as i128;
            let mut per_res: Vec<RealAcc> = (0..c).map(|_| RealAcc { sum: Dd::ZERO, wide }).collect();
            for n in 1..=xmax {
                per_res[(n % c) as usize].add(inv_pow(n, k, wide));
            }
            terms = 2 * xmax as u64;
            // exact tails Σ_{n > X, n ≡ r} n^{-k} = C^{-k} ζ(k, n₀/C)
            let ck = Dd::from_i128(c).powi(k).recip();
            for r in 0..c {
                let n0 = xmax + 1 + (r - (xmax + 1)).rem_euclid(c);
                let tail = ck * hurwitz_zeta(k, Dd::from_i128(n0) / Dd::from_i128(c));
                per_res[r as usize].add(tail);
            }
            for a in 0..c {
                let ia = residue.index((a, 0));
                acc[ia * 2].sum = per_res[a as usize].sum;
                acc[ia * 2 + 1].sum = per_res[((c - a) % c) as usize].sum;
            }
            density = 1.0 / c as f64;
        } else {
            let (mut eps, _) = field.unit_subgroup_generator(unit_level)?;
            if field.embed_int_f64(eps, 0) < 1.0 {
                eps = field.conj_int(eps);
            }
            let log_eps = field.embed_int_f64(eps, 0).ln();
            let c = modulus as f64;
            density = log_eps / (c * c * (field.disc as f64).sqrt());
            let half = x_bound / 2.0;
            enumerate_slab(field, (1, 0, 1), eps, x_bound, |pt| {
                let n = pt.norm.abs();
                let mut t = inv_pow(n, k, wide);
                if n as f64 > half {
                    t = t * Dd::new(cutoff(n as f64 / x_bound));
                }
                let mut s = 0usize;
                for i in 0..2 {
                    if field.sign_int(pt.x, i) < 0 {
                        s |= 1 << i;
                    }
                }
                let b = residue.index(residue.reduce(pt.x)) * 4 + s;
                acc[b].add(t);
                terms += 1;
            });
            let tail = Dd::new(density * x_bound.powi(1 - k as i32) * cutoff_mass(k));
            for a in acc.iter_mut() {
                a.add(tail);
            }
        }
        Ok(OrbitSums {
            field: field.clone(),
            modulus,
            unit_level,
            weight,
            x_bound,
            bits,
            terms,
            density,
            residue,
            sums: acc.into_iter().map(|a| a.sum).collect(),
        })
    }

    pub fn sign_patterns(&self) -> u8 {
        if self.field.is_rational() {
            2
        } else {
            4
        }
    }

    /// S_k(a, σ) for a ∈ O/C and sign bits σ (bit i: σ_i(λ) < 0).
    pub fn sum(&self, a: OInt, signs: u8) -> Dd {
        let ia = self.residue.index(self.residue.reduce(a));
        self.sums[ia * self.sign_patterns() as usize + signs as usize]
    }

    /// Conservative size of the part of one bucket beyond the bound,
    /// ρ·X^{1-k}/(k-1) doubled.  Decreasing in X.
    pub fn tail_model(&self) -> f64 {
        2.0 * self.density * self.x_bound.powi(1 - self.weight as i32) / (self.weight as f64 - 1.0)
    }
}

/// sgn N(λ) for sign bits σ.
pub fn norm_sign(signs: u8) -> i32 {
    if signs.count_ones() % 2 == 1 {
        -1
    } else {
        1
    }
}
