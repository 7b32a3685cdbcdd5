//! Narrow ray class groups Cl(N·∞₁∞₂) and their characters.
//!
//! An element is stored as a triple (j, r, σ) standing for the class of
//! 𝔟_j·(μ)⁻¹ with μ ≡ r mod N and sgn μ = σ, where 𝔟_j runs over fixed
//! integral representatives of the wide class group, each coprime to N.
//! The triple is only defined modulo the image of the global units, so a
//! canonical representative is picked in each coset.  Sign vectors are bit
//! masks: bit i set means the i-th embedding is negative.

use super::abelian::AbelianGroup;
use crate::arith::{gcd128, modinv};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FractionalIdeal, NumberField, OInt, Residue};
use crate::numeric::{cos_sin_2pi_frac, CDd};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayElem {
    pub class: usize,
    pub r: OInt,
    pub signs: u8,
}

#[derive(Clone, Debug)]
pub struct RayClassGroup {
    pub field: NumberField,
    pub modulus: u64,
    pub residue: Residue,
    /// Integral representatives of the wide class group, coprime to N.
    pub class_reps: Vec<FractionalIdeal>,
    /// 𝔟_i𝔟_j = γ·𝔟_k stored as (k, γ⁻¹ mod N, sgn γ).
    class_mult: Vec<Vec<(usize, OInt, u8)>>,
    /// Canonical (r, σ) for every pair, keyed by residue index and signs.
    canon: Vec<(usize, u8)>,
    pub elements: Vec<RayElem>,
    index: HashMap<RayElem, usize>,
    pub group: AbelianGroup,
    coords: Vec<Vec<u64>>,
}

/// A character of a ray class group, as values e(v/denom) per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeckeCharacter {
    pub values: Vec<u64>,
    pub denom: u64,
}

impl HeckeCharacter {
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn order(&self) -> u64 {
        let g = self
            .values
            .iter()
            .fold(self.denom as i128, |g, &v| gcd128(g, v as i128));
        self.denom / g as u64
    }

    pub fn conj(&self) -> Self {
        HeckeCharacter {
            values: self
                .values
                .iter()
                .map(|&v| (self.denom - v) % self.denom)
                .collect(),
            denom: self.denom,
        }
    }

    pub fn value(&self, elem: usize) -> CDd {
        let (c, s) = cos_sin_2pi_frac(self.values[elem] as i128, self.denom as i128);
        CDd::new(c, s)
    }

    /// Value as a fraction of a full turn.
    pub fn angle(&self, elem: usize) -> (u64, u64) {
        (self.values[elem], self.denom)
    }
}

/// Bit mask of negative embeddings.
pub fn sign_bits(field: &NumberField, x: &FieldElement) -> u8 {
    let mut s = 0u8;
    for i in 0..field.degree as usize {
        if field.sign(x, i) < 0 {
            s |= 1 << i;
        }
    }
    s
}

/// x mod N for x ∈ F whose ideal is coprime to N.
pub fn residue_of(field: &NumberField, x: &FieldElement, modulus: u64) -> Option<OInt> {
    if modulus == 1 {
        return Some((0, 0));
    }
    let n = modulus as i128;
    let m = x.denominator().to_i128()?;
    let y = x.scale(&BigRational::from_integer(BigInt::from(m))).to_oint()?;
    // split m = g·m' with g supported on primes dividing N
    let mut g = 1i128;
    loop {
        let h = gcd128(m / g, n);
        if h == 1 {
            break;
        }
        g *= h;
    }
    if y.0 % g != 0 || y.1 % g != 0 {
        return None;
    }
    let mi = modinv(((m / g) % n) as i64, n as i64)? as i128;
    let res = Residue::new(field, modulus);
    let r = res.reduce((y.0 / g * mi, y.1 / g * mi));
    res.is_unit(r).then_some(r)
}

/// An element with the prescribed signs: ±1, ±ε when N(ε) = -1, else ±ω.
pub fn sign_representative(field: &NumberField, bits: u8) -> FieldElement {
    let all = (1u8 << field.degree) - 1;
    if bits == 0 {
        return FieldElement::one();
    }
    if bits == all {
        return FieldElement::from_int(-1);
    }
    let base = match field.unit_data() {
        Ok(ud) if ud.eps_norm == -1 => FieldElement::from_ints(ud.eps.0, ud.eps.1),
        _ => field.omega(),
    };
    // base has signs (+,-)
    if bits == 2 {
        base
    } else {
        base.neg()
    }
}

/// Wide class group: finds 𝔞 = γ·𝔟_j among the given representatives.
fn classify(
    field: &NumberField,
    reps: &[FractionalIdeal],
    a: &FractionalIdeal,
) -> Result<Option<(usize, FieldElement)>> {
    let den = BigRational::new(BigInt::from(1), BigInt::from(a.den));
    let a_int = FractionalIdeal {
        den: 1,
        ..a.clone()
    };
    for (j, b) in reps.iter().enumerate() {
        let prod = a_int.mul(field, &b.conj(field));
        if let Some(alpha) = prod.principal_generator(field)? {
            let nb = b.norm(field);
            let gamma = alpha.scale(&(den.clone() / nb));
            return Ok(Some((j, gamma)));
        }
    }
    Ok(None)
}

fn wide_class_reps(field: &NumberField, modulus: u64) -> Result<Vec<FractionalIdeal>> {
    let unit = FractionalIdeal::unit(field);
    if field.is_rational() {
        return Ok(vec![unit]);
    }
    let mink = ((field.disc as f64).sqrt() / 2.0).floor() as u64;
    let gens: Vec<FractionalIdeal> = field
        .primes_up_to(mink.max(1))
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let mut classes = vec![unit.clone()];
    let mut i = 0;
    while i < classes.len() {
        for g in &gens {
            let x = classes[i].mul(field, g);
            if classify(field, &classes, &x)?.is_none() {
                classes.push(x);
            }
        }
        i += 1;
    }
    let h = classes.len();
    let mut reps: Vec<Option<FractionalIdeal>> = vec![None; h];
    reps[0] = Some(unit);
    let mut bound = 64u64;
    while reps.iter().any(|r| r.is_none()) {
        for (p, _) in field.primes_up_to(bound) {
            if !p.coprime_to(modulus) {
                continue;
            }
            if let Some((j, _)) = classify(field, &classes, &p)? {
                if reps[j].is_none() {
                    reps[j] = Some(p);
                }
            }
        }
        bound *= 4;
        if bound > 1 << 24 {
            return Err(Error::Internal("no prime found in some ideal class".into()));
        }
    }
    Ok(reps.into_iter().map(|r| r.unwrap()).collect())
}

impl RayClassGroup {
    pub fn new(field: &NumberField, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        let residue = Residue::new(field, modulus);
        let class_reps = wide_class_reps(field, modulus)?;
        let h = class_reps.len();
        let ndeg = field.degree as usize;
        let nsig = 1usize << ndeg;

        let mut class_mult = vec![vec![(0, (0, 0), 0u8); h]; h];
        for i in 0..h {
            for j in 0..h {
                let prod = class_reps[i].mul(field, &class_reps[j]);
                let (k, gamma) = classify(field, &class_reps, &prod)?
                    .ok_or_else(|| Error::Internal("class product not found".into()))?;
                let ginv = field.inv(&gamma)?;
                let r = residue_of(field, &ginv, modulus)
                    .ok_or_else(|| Error::Internal("class product not coprime to N".into()))?;
                class_mult[i][j] = (k, r, sign_bits(field, &gamma));
            }
        }

        // image of the global units: (u, sgn u)
        let mut unit_gens: Vec<(OInt, u8)> = vec![(residue.reduce((-1, 0)), (nsig - 1) as u8)];
        if !field.is_rational() {
            let ud = field.unit_data()?;
            let e = FieldElement::from_ints(ud.eps.0, ud.eps.1);
            unit_gens.push((residue.reduce(ud.eps), sign_bits(field, &e)));
        }
        let mut hsub: Vec<(OInt, u8)> = vec![(residue.reduce((1, 0)), 0)];
        let mut k = 0;
        while k < hsub.len() {
            for &(u, s) in &unit_gens {
                let x = (residue.mul(hsub[k].0, u), hsub[k].1 ^ s);
                if !hsub.contains(&x) {
                    hsub.push(x);
                }
            }
            k += 1;
        }

        let size = residue.size();
        let mut canon = vec![(usize::MAX, 0u8); size * nsig];
        for ri in 0..size {
            let r = residue.from_index(ri);
            if !residue.is_unit(r) {
                continue;
            }
            for s in 0..nsig as u8 {
                let best = hsub
                    .iter()
                    .map(|&(u, t)| (s ^ t, residue.index(residue.mul(r, u))))
                    .min()
                    .unwrap();
                canon[ri * nsig + s as usize] = (best.1, best.0);
            }
        }

        let mut g = RayClassGroup {
            field: field.clone(),
            modulus,
            residue,
            class_reps,
            class_mult,
            canon,
            elements: Vec::new(),
            index: HashMap::new(),
            group: AbelianGroup::from_relations(0, &[]),
            coords: Vec::new(),
        };
        g.build_structure();
        Ok(g)
    }

    fn canonical(&self, class: usize, r: OInt, signs: u8) -> RayElem {
        let nsig = 1usize << self.field.degree;
        let (ri, s) = self.canon[self.residue.index(r) * nsig + signs as usize];
        RayElem {
            class,
            r: self.residue.from_index(ri),
            signs: s,
        }
    }

    fn mul_elem(&self, x: &RayElem, y: &RayElem) -> RayElem {
        let (k, gi, gs) = self.class_mult[x.class][y.class];
        let r = self.residue.mul(self.residue.mul(x.r, y.r), gi);
        self.canonical(k, r, x.signs ^ y.signs ^ gs)
    }

    fn build_structure(&mut self) {
        let res = &self.residue;
        let one = res.reduce((1, 0));
        // small generating set of (O/N)^×
        let mut rgens: Vec<OInt> = Vec::new();
        let mut span: Vec<OInt> = vec![one];
        for u in res.units() {
            if span.contains(&u) {
                continue;
            }
            rgens.push(u);
            let mut i = 0;
            while i < span.len() {
                for &g in &rgens {
                    let x = res.mul(span[i], g);
                    if !span.contains(&x) {
                        span.push(x);
                    }
                }
                i += 1;
            }
        }
        let mut gens: Vec<RayElem> = rgens
            .iter()
            .map(|&r| self.canonical(0, r, 0))
            .collect();
        for i in 0..self.field.degree {
            gens.push(self.canonical(0, one, 1 << i));
        }
        for j in 1..self.class_reps.len() {
            gens.push(self.canonical(j, one, 0));
        }
        let k = gens.len();
        let id = self.canonical(0, one, 0);
        let mut elements = vec![id];
        let mut exps: Vec<Vec<i128>> = vec![vec![0; k]];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut relations: Vec<Vec<i128>> = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let y = self.mul_elem(&elements[i], g);
                let mut e = exps[i].clone();
                e[gi] += 1;
                match index.get(&y) {
                    Some(&yi) => {
                        let rel: Vec<i128> = e.iter().zip(&exps[yi]).map(|(a, b)| a - b).collect();
                        if rel.iter().any(|&v| v != 0) && !relations.contains(&rel) {
                            relations.push(rel);
                        }
                    }
                    None => {
                        index.insert(y, elements.len());
                        elements.push(y);
                        exps.push(e);
                    }
                }
            }
            i += 1;
        }
        let group = AbelianGroup::from_relations(k, &relations);
        assert_eq!(group.order() as usize, elements.len());
        self.coords = exps.iter().map(|e| group.coordinates(e)).collect();
        self.group = group;
        self.elements = elements;
        self.index = index;
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn invariants(&self) -> &[u64] {
        &self.group.invariants
    }

    pub fn class_number(&self) -> usize {
        self.class_reps.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.index[&self.mul_elem(&self.elements[x], &self.elements[y])]
    }

    /// Index of the class of (j, r, σ).
    pub fn element(&self, class: usize, r: OInt, signs: u8) -> Result<usize> {
        if class >= self.class_reps.len() || !self.residue.is_unit(r) {
            return Err(Error::InvalidInput("not an element of the ray class group".into()));
        }
        Ok(self.index[&self.canonical(class, self.residue.reduce(r), signs)])
    }

    /// Class of a fractional ideal coprime to N.
    pub fn class_of_ideal(&self, a: &FractionalIdeal) -> Result<usize> {
        if !a.coprime_to(self.modulus) {
            return Err(Error::InvalidInput("ideal is not coprime to the modulus".into()));
        }
        let (j, gamma) = classify(&self.field, &self.class_reps, a)?
            .ok_or_else(|| Error::Internal("ideal class not found".into()))?;
        let ginv = self.field.inv(&gamma)?;
        let r = residue_of(&self.field, &ginv, self.modulus)
            .ok_or_else(|| Error::Internal("generator not coprime to N".into()))?;
        self.element(j, r, sign_bits(&self.field, &gamma))
    }

    /// Class of the principal ideal (α): the triple (0, α⁻¹, sgn α).
    pub fn class_of_principal(&self, alpha: &FieldElement) -> Result<usize> {
        let ai = self.field.inv(alpha)?;
        let r = residue_of(&self.field, &ai, self.modulus)
            .ok_or_else(|| Error::InvalidInput("element is not coprime to the modulus".into()))?;
        self.element(0, r, sign_bits(&self.field, alpha))
    }

    pub fn characters(&self) -> Vec<HeckeCharacter> {
        let e = self.group.exponent();
        self.group
            .all_characters()
            .into_iter()
            .map(|c| HeckeCharacter {
                values: self.coords.iter().map(|x| self.group.pair(&c, x)).collect(),
                denom: e,
            })
            .collect()
    }

    /// Characters with χ(1, 1, σ) = (∏σ)^m for every sign vector σ.
    pub fn characters_with_sign(&self, m: u32) -> Vec<HeckeCharacter> {
        let one = self.residue.reduce((1, 0));
        let nsig = 1u8 << self.field.degree;
        let sign_elems: Vec<(usize, bool)> = (0..nsig)
            .map(|s| {
                let odd = m % 2 == 1 && s.count_ones() % 2 == 1;
                (self.element(0, one, s).unwrap(), odd)
            })
            .collect();
        self.characters()
            .into_iter()
            .filter(|chi| {
                sign_elems.iter().all(|&(e, odd)| {
                    let want = if odd { chi.denom / 2 } else { 0 };
                    (!odd || chi.denom % 2 == 0) && chi.values[e] == want
                })
            })
            .collect()
    }

    /// χ(1, r, +).
    pub fn chi_residue(&self, chi: &HeckeCharacter, r: OInt) -> Result<CDd> {
        Ok(chi.value(self.element(0, r, 0)?))
    }

    pub fn chi_ideal(&self, chi: &HeckeCharacter, a: &FractionalIdeal) -> Result<CDd> {
        Ok(chi.value(self.class_of_ideal(a)?))
    }

    /// One integral ideal per element, for the narrow class group (N = 1):
    /// 𝔟_j·(l_σ) with l_σ of sign σ.
    pub fn narrow_representatives(&self) -> Result<Vec<FractionalIdeal>> {
        if self.modulus != 1 {
            return Err(Error::Precondition("representatives are only built for N = 1".into()));
        }
        self.elements
            .iter()
            .map(|e| {
                let l = sign_representative(&self.field, e.signs);
                self.class_reps[e.class].scale(&self.field, &l)
            })
            .collect()
    }
}

/// The narrow class group Cl⁺(F) = Cl(1·∞₁∞₂).
pub fn narrow_class_group(field: &NumberField) -> Result<RayClassGroup> {
    RayClassGroup::new(field, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn known_orders() {
        let f5 = NumberField::new(5).unwrap();
        assert_eq!(RayClassGroup::new(&f5, 1).unwrap().order(), 1);
        assert_eq!(RayClassGroup::new(&f5, 3).unwrap().order(), 2);
        assert_eq!(RayClassGroup::new(&f5, 4).unwrap().order(), 4);
        let q = NumberField::rationals();
        for n in [1u64, 3, 4, 5, 12] {
            let g = RayClassGroup::new(&q, n).unwrap();
            assert_eq!(g.order() as u64, crate::arith::euler_phi(n));
        }
        assert_eq!(narrow_class_group(&NumberField::new(15).unwrap()).unwrap().order(), 4);
        assert_eq!(narrow_class_group(&NumberField::new(30).unwrap()).unwrap().order(), 4);
        assert_eq!(narrow_class_group(&NumberField::new(3).unwrap()).unwrap().order(), 2);
    }

    #[test]
    fn principal_classes() {
        let f = NumberField::new(5).unwrap();
        let g = RayClassGroup::new(&f, 4).unwrap();
        // totally positive and ≡ 1 mod 4 is trivial
        let a = FieldElement::from_ints(5, 4);
        assert!(f.is_totally_positive(&a));
        assert_eq!(g.class_of_principal(&a).unwrap(), g.identity());
        let id = FractionalIdeal::principal(&f, &FieldElement::from_int(7)).unwrap();
        assert_eq!(g.class_of_ideal(&id).unwrap(), g.class_of_principal(&FieldElement::from_int(7)).unwrap());
        assert!(g.class_of_principal(&FieldElement::from_int(2)).is_err());
    }

    #[test]
    fn residues_of_fractions() {
        let f = NumberField::new(5).unwrap();
        // 1/7 mod 3 = 1
        let x = FieldElement::from_rational(rat(1, 7));
        assert_eq!(residue_of(&f, &x, 3), Some((1, 0)));
        // (3ω)/3 = ω
        let y = FieldElement::new(rat(0, 1), rat(3, 3));
        assert_eq!(residue_of(&f, &y, 3), Some((0, 1)));
    }

    #[test]
    fn narrow_reps_map_back() {
        for d in [3i64, 15, 10] {
            let f = NumberField::new(d).unwrap();
            let g = narrow_class_group(&f).unwrap();
            let reps = g.narrow_representatives().unwrap();
            for (i, r) in reps.iter().enumerate() {
                assert_eq!(g.class_of_ideal(r).unwrap(), i);
            }
        }
    }

    #[test]
    fn character_counts() {
        let f = NumberField::new(5).unwrap();
        let g = RayClassGroup::new(&f, 4).unwrap();
        let chars = g.characters();
        assert_eq!(chars.len(), 4);
        let even = g.characters_with_sign(0);
        assert!(even.iter().any(|c| c.is_trivial()));
        assert!(g.characters_with_sign(1).iter().all(|c| !c.is_trivial()));
    }
}
