//! GL₂(O/N) and SL₂(O/N) by enumeration.

use crate::error::{Error, Result};
use crate::field::{NumberField, OInt, Residue};

/// [[a, b], [c, d]] over O/N, stored as (a, b, c, d).
pub type ResMat = [OInt; 4];

/// Largest |O/N|⁴ we are willing to scan.
pub const ENUMERATION_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct Gl2Level {
    pub field: NumberField,
    pub modulus: u64,
    pub residue: Residue,
    pub elements: Vec<ResMat>,
    /// Indices of det = 1 elements.
    pub sl2: Vec<usize>,
    /// Indices of upper triangular elements.
    pub borel: Vec<usize>,
    lookup: Vec<u32>,
    /// For each residue pair index: an SL₂ element with that first column.
    section: Vec<u32>,
}

/// Predicted |SL₂(O/N)| = ∏_{𝔭^e ∥ N} q^{3e}(1 − q⁻²), q = N𝔭.
pub fn sl2_order_formula(field: &NumberField, modulus: u64) -> Result<u128> {
    let mut total: u128 = 1;
    for (p, e) in crate::arith::factorize(modulus) {
        let sp = field.split_prime(p)?;
        let parts: Vec<(u128, u32)> = match sp.kind {
            crate::field::SplitType::Ramified => vec![(p as u128, 2 * e)],
            _ => sp.norms.iter().map(|&q| (q as u128, e)).collect(),
        };
        for (q, ee) in parts {
            total *= q.pow(3 * ee - 2) * (q * q - 1);
        }
    }
    Ok(total)
}

impl Gl2Level {
    pub fn new(field: &NumberField, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("N must be positive".into()));
        }
        let residue = Residue::new(field, modulus);
        let s = residue.size();
        let cand = (s as u64).checked_pow(4).unwrap_or(u64::MAX);
        if cand > ENUMERATION_BUDGET {
            let order = sl2_order_formula(field, modulus)?;
            return Err(Error::Resource(format!(
                "enumerating GL2(O/{}) needs {} candidates; |SL2| = {}",
                modulus, cand, order
            )));
        }
        let elems = residue.elements();
        let one = residue.reduce((1, 0));
        let mut elements = Vec::new();
        let mut sl2 = Vec::new();
        let mut borel = Vec::new();
        let mut lookup = vec![u32::MAX; s.pow(4)];
        let mut section = vec![u32::MAX; s * s];
        for (ia, &a) in elems.iter().enumerate() {
            for (ib, &b) in elems.iter().enumerate() {
                for (ic, &c) in elems.iter().enumerate() {
                    for (id, &d) in elems.iter().enumerate() {
                        let det = residue.sub(residue.mul(a, d), residue.mul(b, c));
                        if !residue.is_unit(det) {
                            continue;
                        }
                        let i = elements.len();
                        elements.push([a, b, c, d]);
                        lookup[((ia * s + ib) * s + ic) * s + id] = i as u32;
                        if det == one {
                            sl2.push(i);
                            let k = ia * s + ic;
                            if section[k] == u32::MAX {
                                section[k] = i as u32;
                            }
                        }
                        if residue.index(c) == 0 {
                            borel.push(i);
                        }
                    }
                }
            }
        }
        Ok(Gl2Level {
            field: field.clone(),
            modulus,
            residue,
            elements,
            sl2,
            borel,
            lookup,
            section,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn sl2_order(&self) -> usize {
        self.sl2.len()
    }

    pub fn index_of(&self, x: &ResMat) -> Option<usize> {
        let s = self.residue.size();
        let r = &self.residue;
        let k = ((r.index(x[0]) * s + r.index(x[1])) * s + r.index(x[2])) * s + r.index(x[3]);
        let i = self.lookup[k];
        (i != u32::MAX).then_some(i as usize)
    }

    pub fn det(&self, x: &ResMat) -> OInt {
        let r = &self.residue;
        r.sub(r.mul(x[0], x[3]), r.mul(x[1], x[2]))
    }

    pub fn mul(&self, x: &ResMat, y: &ResMat) -> ResMat {
        let r = &self.residue;
        let dot = |p: OInt, q: OInt, u: OInt, v: OInt| r.add(r.mul(p, q), r.mul(u, v));
        [
            dot(x[0], y[0], x[1], y[2]),
            dot(x[0], y[1], x[1], y[3]),
            dot(x[2], y[0], x[3], y[2]),
            dot(x[2], y[1], x[3], y[3]),
        ]
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        let p = self.mul(&self.elements[i], &self.elements[j]);
        self.index_of(&p).expect("GL2 is closed under products")
    }

    /// x·e¹, the first column.
    pub fn first_column(&self, x: &ResMat) -> (OInt, OInt) {
        (x[0], x[2])
    }

    fn pair_index(&self, w: (OInt, OInt)) -> usize {
        self.residue.index(w.0) * self.residue.size() + self.residue.index(w.1)
    }

    /// w generates the unit ideal mod N, i.e. w = x·e¹ for some x ∈ SL₂.
    pub fn is_primitive(&self, w: (OInt, OInt)) -> bool {
        self.section[self.pair_index(w)] != u32::MAX
    }

    /// An element of SL₂(O/N) with first column w.
    pub fn section(&self, w: (OInt, OInt)) -> Option<usize> {
        let i = self.section[self.pair_index(w)];
        (i != u32::MAX).then_some(i as usize)
    }

    /// All primitive vectors mod N.
    pub fn primitive_vectors(&self) -> Vec<(OInt, OInt)> {
        let els = self.residue.elements();
        let mut out = Vec::new();
        for &a in &els {
            for &c in &els {
                if self.is_primitive((a, c)) {
                    out.push((a, c));
                }
            }
        }
        out
    }

    /// diag(t₁, t₂) and the unipotent part u of an upper triangular b.
    pub fn torus_part(&self, b: &ResMat) -> (OInt, OInt) {
        (b[0], b[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let q = NumberField::rationals();
        for n in [2u64, 3, 4, 5, 6] {
            let g = Gl2Level::new(&q, n).unwrap();
            assert_eq!(g.sl2_order() as u128, sl2_order_formula(&q, n).unwrap());
            assert_eq!(g.order(), g.sl2_order() * crate::arith::euler_phi(n) as usize);
        }
        let f5 = NumberField::new(5).unwrap();
        let g = Gl2Level::new(&f5, 3).unwrap();
        assert_eq!(g.sl2_order(), 720);
        assert_eq!(g.order(), 720 * 8);
        assert_eq!(sl2_order_formula(&f5, 3).unwrap(), 720);
        assert_eq!(g.primitive_vectors().len(), 80);
    }

    #[test]
    fn closure_and_section() {
        let q = NumberField::rationals();
        let g = Gl2Level::new(&q, 6).unwrap();
        for &i in g.sl2.iter().take(50) {
            for &j in g.sl2.iter().skip(7).take(20) {
                let k = g.mul_index(i, j);
                assert_eq!(g.det(&g.elements[k]), (1, 0));
            }
        }
        for w in g.primitive_vectors() {
            let x = g.section(w).unwrap();
            assert_eq!(g.first_column(&g.elements[x]), w);
        }
        assert!(!g.is_primitive(((2, 0), (4, 0))));
    }

    #[test]
    fn budget() {
        let f5 = NumberField::new(5).unwrap();
        let e = Gl2Level::new(&f5, 7).unwrap_err();
        assert!(matches!(e, Error::Resource(_)));
    }
}
