//! Induced functions on GL₂(O/N), the spherical function S(φ) and the
//! projector Ψ_φ.
//!
//! A Hecke character φ of the torus is written φ(t₁,t₂) = η(t₁t₂)χ′(t₂)‖t₂‖^{m+2}
//! with η, χ′ characters of the narrow ray class group Cl(N).  An induced
//! function at level N is a table ψ on GL₂(O/N) with
//! ψ(x·b) = ψ(x)·η(t₁t₂)·χ′(t₂) for upper triangular b = [[t₁, *], [0, t₂]].
//! Units t mod N enter the characters through the class of (1, t, +).

use super::group::{Gl2Level, ResMat};
use crate::classfield::{narrow_class_group, HeckeCharacter, RayClassGroup};
use crate::error::{Error, Result};
use crate::field::{FractionalIdeal, NumberField, OInt};
use crate::numeric::{CDd, Dd};
use crate::schwartz::CyclotomicValue;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use std::collections::HashSet;
use std::sync::Arc;

/// GL₂(O/N) together with the ray class group of conductor N·∞.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub field: NumberField,
    pub modulus: u64,
    pub gl2: Gl2Level,
    pub group: RayClassGroup,
}

impl LevelData {
    pub fn new(field: &NumberField, modulus: u64) -> Result<Arc<Self>> {
        let gl2 = Gl2Level::new(field, modulus)?;
        let group = RayClassGroup::new(field, modulus)?;
        Ok(Arc::new(LevelData {
            field: field.clone(),
            modulus,
            gl2,
            group,
        }))
    }

    /// Every ray class is the class of (1, r, +) for a unit r mod N exactly
    /// when the narrow class number is one.
    pub fn require_narrow_class_number_one(&self) -> Result<()> {
        if narrow_class_group(&self.field)?.order() != 1 {
            return Err(Error::Precondition(format!(
                "{} has narrow class number > 1; only h⁺ = 1 is supported here",
                self.field.name()
            )));
        }
        Ok(())
    }

    /// Group element of (1, r, σ).
    pub fn class_of_residue(&self, r: OInt, signs: u8) -> usize {
        self.group
            .element(0, r, signs)
            .expect("unit residues give ray classes")
    }

    /// χ(1, r, +) as a fraction of a turn.
    pub fn angle(&self, chi: &HeckeCharacter, r: OInt) -> (u64, u64) {
        chi.angle(self.class_of_residue(r, 0))
    }

    pub fn value(&self, chi: &HeckeCharacter, r: OInt) -> CDd {
        chi.value(self.class_of_residue(r, 0))
    }

    pub fn exact_value(&self, chi: &HeckeCharacter, r: OInt) -> CyclotomicValue {
        let (v, d) = self.angle(chi, r);
        CyclotomicValue::root(v as i64, d)
    }

    /// One unit residue per ray class, in group order.
    pub fn unit_representatives(&self) -> Result<Vec<OInt>> {
        let mut reps: Vec<Option<OInt>> = vec![None; self.group.order()];
        for u in self.gl2.residue.units() {
            let e = self.class_of_residue(u, 0);
            reps[e].get_or_insert(u);
        }
        reps.into_iter()
            .map(|r| r.ok_or_else(|| Error::Precondition("a ray class has no unit representative".into())))
            .collect()
    }
}

/// The pair (η, χ′) with the weight data m, n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeData {
    pub eta: HeckeCharacter,
    pub chi: HeckeCharacter,
    pub m: u32,
    pub n: i64,
}

/// A finite idele in restricted form: the unit r at the primes dividing N
/// and the ideal 𝔞 (coprime to N) elsewhere.
#[derive(Clone, Debug)]
pub struct FiniteIdele {
    pub residue: OInt,
    pub ideal: FractionalIdeal,
}

impl FiniteIdele {
    pub fn unit(field: &NumberField, r: OInt) -> Self {
        FiniteIdele {
            residue: r,
            ideal: FractionalIdeal::unit(field),
        }
    }

    /// ‖t‖_f = N(𝔞)⁻¹.
    pub fn norm(&self, field: &NumberField) -> Dd {
        Dd::from_rational(&self.ideal.norm(field)).recip()
    }

    fn character(&self, level: &LevelData, chi: &HeckeCharacter) -> Result<CDd> {
        let a = level.group.chi_ideal(chi, &self.ideal)?;
        Ok(a * level.value(chi, self.residue))
    }
}

impl HeckeData {
    pub fn new(level: &LevelData, eta: HeckeCharacter, chi: HeckeCharacter, m: u32, n: i64) -> Result<Self> {
        let h = level.group.order();
        if eta.values.len() != h || chi.values.len() != h {
            return Err(Error::InvalidInput("characters belong to a different ray class group".into()));
        }
        if !level.group.characters_with_sign(m).contains(&chi) {
            return Err(Error::InvalidInput(format!("χ′ does not have sign type {}", m)));
        }
        Ok(HeckeData { eta, chi, m, n })
    }

    /// φ̃ restricted to the torus of B(O/N): η(t₁t₂)χ′(t₂).
    pub fn torus_angle(&self, level: &LevelData, t1: OInt, t2: OInt) -> (u64, u64) {
        let r = &level.gl2.residue;
        let (a, da) = level.angle(&self.eta, r.mul(t1, t2));
        let (b, db) = level.angle(&self.chi, t2);
        debug_assert_eq!(da, db);
        ((a + b) % da, da)
    }

    pub fn torus_value(&self, level: &LevelData, t1: OInt, t2: OInt) -> CDd {
        let (v, d) = self.torus_angle(level, t1, t2);
        let (c, s) = crate::numeric::cos_sin_2pi_frac(v as i128, d as i128);
        CDd::new(c, s)
    }

    /// φ restricted to T¹ is ‖·‖²: χ′ trivial and m = 0.
    pub fn is_spherical(&self) -> bool {
        self.m == 0 && self.chi.is_trivial()
    }

    /// χ′(1, u, +) = 1 for every unit u mod N.
    pub fn chi_unramified(&self, level: &LevelData) -> bool {
        level
            .gl2
            .residue
            .units()
            .into_iter()
            .all(|u| level.angle(&self.chi, u).0 == 0)
    }

    /// φ̃_f(t₁, t₂) = η(t₁t₂)χ′(t₂)‖t₂‖_f^{m+2} on finite ideles.
    pub fn phi_tilde(&self, level: &LevelData, t1: &FiniteIdele, t2: &FiniteIdele) -> Result<CDd> {
        let e = t1.character(level, &self.eta)? * t2.character(level, &self.eta)?;
        let c = t2.character(level, &self.chi)?;
        Ok((e * c).scale(t2.norm(&level.field).powi(self.m + 2)))
    }
}

#[derive(Clone, Debug)]
pub struct IndFunction {
    pub level: Arc<LevelData>,
    pub data: HeckeData,
    /// Values indexed like `level.gl2.elements`.
    pub values: Vec<CDd>,
    /// Exact values when the table was built from cyclotomic data.
    pub exact: Option<Vec<CyclotomicValue>>,
}

impl IndFunction {
    pub fn from_values(level: Arc<LevelData>, data: HeckeData, values: Vec<CDd>) -> Result<Self> {
        if values.len() != level.gl2.order() {
            return Err(Error::InvalidInput("table size differs from |GL2(O/N)|".into()));
        }
        Ok(IndFunction {
            level,
            data,
            values,
            exact: None,
        })
    }

    pub fn from_exact(level: Arc<LevelData>, data: HeckeData, exact: Vec<CyclotomicValue>) -> Result<Self> {
        let values = exact.iter().map(|v| v.to_cdd()).collect();
        let mut f = Self::from_values(level, data, values)?;
        f.exact = Some(exact);
        Ok(f)
    }

    pub fn value(&self, x: &ResMat) -> Result<CDd> {
        let i = self
            .level
            .gl2
            .index_of(x)
            .ok_or_else(|| Error::InvalidInput("matrix is not invertible mod N".into()))?;
        Ok(self.values[i])
    }

    /// max |ψ(xb) − ψ(x)·η(t₁t₂)χ′(t₂)| over x ∈ GL₂ and upper triangular b.
    pub fn law_residual(&self) -> f64 {
        let g = &self.level.gl2;
        let factors: Vec<(usize, CDd)> = g
            .borel
            .iter()
            .map(|&b| {
                let (t1, t2) = g.torus_part(&g.elements[b]);
                (b, self.data.torus_value(&self.level, t1, t2))
            })
            .collect();
        let mut worst = 0.0f64;
        for (i, x) in g.elements.iter().enumerate() {
            for &(b, f) in &factors {
                let j = g.index_of(&g.mul(x, &g.elements[b])).expect("closed");
                let r = (self.values[j] - self.values[i] * f).abs();
                worst = worst.max(r);
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// max |ψ − φ| over the table.
    pub fn distance(&self, o: &Self) -> f64 {
        self.values
            .iter()
            .zip(&o.values)
            .map(|(a, b)| (*a - *b).abs())
            .fold(0.0, f64::max)
    }
}

/// The spherical function S(φ): φ̃_f(t₁,t₂) at g = k·b with k ∈ SL₂(Ô).
#[derive(Clone, Debug)]
pub struct SphericalData {
    pub data: HeckeData,
}

impl SphericalData {
    pub fn new(data: HeckeData) -> Result<Self> {
        if !data.is_spherical() {
            return Err(Error::Precondition(
                "S(φ) needs φ|T¹ = ‖·‖², i.e. m = 0 and χ′ trivial".into(),
            ));
        }
        Ok(SphericalData { data })
    }

    /// S(φ)(k·b); the SL₂ part does not enter.
    pub fn value(&self, level: &LevelData, t1: &FiniteIdele, t2: &FiniteIdele) -> Result<CDd> {
        self.data.phi_tilde(level, t1, t2)
    }

    /// The table of S(φ) on GL₂(O/N): x = s·diag(1, det x).
    pub fn table(&self, level: &Arc<LevelData>) -> Result<IndFunction> {
        let g = &level.gl2;
        let one = g.residue.reduce((1, 0));
        let exact = g
            .elements
            .iter()
            .map(|x| {
                let (v, d) = self.data.torus_angle(level, one, g.det(x));
                CyclotomicValue::root(v as i64, d)
            })
            .collect();
        IndFunction::from_exact(level.clone(), self.data.clone(), exact)
    }
}

/// Ψ_φ(ψ) = (average of ψ over SL₂(O/N))·S(φ).
#[derive(Clone, Debug)]
pub struct Projection {
    /// The coefficient of S(φ); zero on non-spherical summands.
    pub coefficient: CDd,
    /// The raw SL₂ average, reported for every summand.
    pub average: CDd,
    pub exact_average: Option<CyclotomicValue>,
    pub spherical: Option<SphericalData>,
    pub sl2_order: usize,
}

pub fn psi_project(psi: &IndFunction) -> Projection {
    let g = &psi.level.gl2;
    let n = g.sl2_order();
    let mut acc = CDd::ZERO;
    for &i in &g.sl2 {
        acc = acc + psi.values[i];
    }
    let average = acc.scale(Dd::new(n as f64).recip());
    let exact_average = psi.exact.as_ref().map(|ex| {
        let mut s = CyclotomicValue::zero(1);
        for &i in &g.sl2 {
            s = s.add(&ex[i]);
        }
        s.scale(&BigRational::new(BigInt::from(1), BigInt::from(n)))
    });
    let spherical = SphericalData::new(psi.data.clone()).ok();
    let coefficient = if spherical.is_some() { average } else { CDd::ZERO };
    Projection {
        coefficient,
        average,
        exact_average,
        spherical,
        sl2_order: n,
    }
}

/// All spherical (η, χ′) of type γ_{0,n} at level N, one per distinct φ̃.
pub fn spherical_families(level: &LevelData) -> Vec<HeckeData> {
    let grp = &level.group;
    let h = grp.order();
    let sign_ok = grp.characters_with_sign(0);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for eta in grp.characters() {
        for chi in &sign_ok {
            // φ(t, t⁻¹) = χ′(t)⁻¹ must be trivial on the whole class group
            if (0..h).any(|e| chi.angle(e).0 != 0) {
                continue;
            }
            // canonical form: the table of φ̃ on Cl × Cl as reduced fractions
            let key: Vec<(u64, u64)> = (0..h)
                .flat_map(|a| (0..h).map(move |b| (a, b)))
                .map(|(a, b)| {
                    let (v, d) = eta.angle(grp.mul(a, b));
                    let (w, _) = chi.angle(b);
                    let x = (v + w) % d;
                    let g = num_integer::gcd(x.max(1), d);
                    if x == 0 {
                        (0, 1)
                    } else {
                        (x / g, d / g)
                    }
                })
                .collect();
            if seen.insert(key) {
                out.push(HeckeData {
                    eta: eta.clone(),
                    chi: chi.clone(),
                    m: 0,
                    n: 0,
                });
            }
        }
    }
    out
}

/// A random ψ with the transformation law of `data`:
/// ψ(x) = g(x·e¹)·η(det x)·χ′(det x) with g(r·w) = χ′(r)⁻¹g(w).
pub fn random_ind_function<R: Rng>(level: &Arc<LevelData>, data: &HeckeData, rng: &mut R) -> Result<IndFunction> {
    let g = &level.gl2;
    let res = &g.residue;
    let units = res.units();
    let s = res.size();
    let mut gval: Vec<Option<CyclotomicValue>> = vec![None; s * s];
    let key = |w: (OInt, OInt)| res.index(w.0) * s + res.index(w.1);
    for w in g.primitive_vectors() {
        if gval[key(w)].is_some() {
            continue;
        }
        // a Gaussian integer on the orbit representative
        let mut c = CyclotomicValue::zero(4);
        c.coeffs[0] = BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)));
        c.coeffs[1] = BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)));
        for &r in &units {
            let rw = (res.mul(r, w.0), res.mul(r, w.1));
            let (v, d) = level.angle(&data.chi, r);
            gval[key(rw)] = Some(c.mul(&CyclotomicValue::root(-(v as i64), d)));
        }
    }
    let one = res.reduce((1, 0));
    let exact = g
        .elements
        .iter()
        .map(|x| {
            let w = g.first_column(x);
            let (v, d) = data.torus_angle(level, one, g.det(x));
            gval[key(w)]
                .as_ref()
                .expect("first columns are primitive")
                .mul(&CyclotomicValue::root(v as i64, d))
        })
        .collect();
    IndFunction::from_exact(level.clone(), data.clone(), exact)
}

/// A random element of ker Ψ_φ: a random ψ minus its projection.
pub fn random_kernel_function<R: Rng>(
    level: &Arc<LevelData>,
    data: &HeckeData,
    rng: &mut R,
) -> Result<IndFunction> {
    let psi = random_ind_function(level, data, rng)?;
    let p = psi_project(&psi);
    let (Some(sph), Some(avg)) = (p.spherical, p.exact_average) else {
        return Ok(psi);
    };
    let s = sph.table(level)?;
    let ex: Vec<CyclotomicValue> = psi
        .exact
        .as_ref()
        .expect("random tables are exact")
        .iter()
        .zip(s.exact.as_ref().expect("spherical tables are exact"))
        .map(|(a, b)| a.sub(&b.mul(&avg)))
        .collect();
    IndFunction::from_exact(level.clone(), data.clone(), ex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn data_for(level: &LevelData, eta: usize, chi: usize, m: u32) -> HeckeData {
        let etas = level.group.characters();
        let chis = level.group.characters_with_sign(m);
        HeckeData::new(level, etas[eta].clone(), chis[chi].clone(), m, 0).unwrap()
    }

    #[test]
    fn spherical_identity_and_norm() {
        let q = NumberField::rationals();
        let lv = LevelData::new(&q, 1).unwrap();
        let d = data_for(&lv, 0, 0, 0);
        let s = SphericalData::new(d).unwrap();
        let one = FiniteIdele::unit(&q, (1, 0));
        assert!((s.value(&lv, &one, &one).unwrap().re.to_f64() - 1.0).abs() < 1e-30);
        // ‖t₂‖_f = 2: the ideal (1/2)
        let half = FractionalIdeal::principal(&q, &crate::field::FieldElement::from_rational(rat(1, 2))).unwrap();
        let t2 = FiniteIdele { residue: (1, 0), ideal: half };
        let v = s.value(&lv, &one, &t2).unwrap();
        assert!((v.re.to_f64() - 4.0).abs() < 1e-28, "{:?}", v);
    }

    #[test]
    fn spherical_table_is_left_sl2_invariant_and_projects_to_one() {
        let f5 = NumberField::new(5).unwrap();
        let lv = LevelData::new(&f5, 3).unwrap();
        for eta in 0..lv.group.order() {
            let d = data_for(&lv, eta, 0, 0);
            let s = SphericalData::new(d).unwrap().table(&lv).unwrap();
            assert!(s.law_residual() < 1e-25);
            let g = &lv.gl2;
            for &k in g.sl2.iter().step_by(37) {
                for x in (0..g.order()).step_by(101) {
                    let kx = g.mul_index(k, x);
                    assert!((s.values[kx] - s.values[x]).abs() < 1e-25);
                }
            }
            let p = psi_project(&s);
            assert_eq!(p.exact_average.unwrap().as_rational(), Some(rat(1, 1)));
        }
    }

    #[test]
    fn constant_and_coset_tables() {
        let f5 = NumberField::new(5).unwrap();
        let lv = LevelData::new(&f5, 3).unwrap();
        let d = data_for(&lv, 0, 0, 0);
        let c = vec![CyclotomicValue::rational(rat(5, 3)); lv.gl2.order()];
        let f = IndFunction::from_exact(lv.clone(), d.clone(), c).unwrap();
        assert_eq!(psi_project(&f).exact_average.unwrap().as_rational(), Some(rat(5, 3)));
        // 9 on the Borel coset (c = 0) and −1 elsewhere: 72·9 − 648 = 0
        let g = &lv.gl2;
        let vals: Vec<CyclotomicValue> = g
            .elements
            .iter()
            .map(|x| {
                let v = if g.residue.index(x[2]) == 0 { 9 } else { -1 };
                CyclotomicValue::rational(rat(v, 1))
            })
            .collect();
        let h = IndFunction::from_exact(lv.clone(), d, vals).unwrap();
        assert_eq!(psi_project(&h).exact_average.unwrap().as_rational(), Some(rat(0, 1)));
        assert_eq!(psi_project(&h).sl2_order, 720);
    }

    #[test]
    fn random_functions_respect_the_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (d, n) in [(1i64, 5u64), (1, 4), (5, 3)] {
            let f = NumberField::new(d).unwrap();
            let lv = LevelData::new(&f, n).unwrap();
            for eta in 0..lv.group.order().min(2) {
                for chi in 0..lv.group.characters_with_sign(0).len() {
                    let data = data_for(&lv, eta, chi, 0);
                    let psi = random_kernel_function(&lv, &data, &mut rng).unwrap();
                    assert!(psi.law_residual() < 1e-25);
                    let p = psi_project(&psi);
                    assert!(p.exact_average.unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn family_count_over_q() {
        let q = NumberField::rationals();
        for n in 3..=12u64 {
            let lv = LevelData::new(&q, n).unwrap();
            assert_eq!(spherical_families(&lv).len() as u64, crate::arith::euler_phi(n));
        }
    }
}
