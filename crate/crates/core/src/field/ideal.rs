//! Fractional ideals in Hermite normal form and prime splitting.
//!
//! An ideal is (1/den)·Λ where Λ ⊂ O has Z-basis {a, b + c·ω} with
//! a, c > 0 and 0 <= b < a.  Content shared with den is divided out, so the
//! tuple (a, b, c, den) is canonical.

use super::{FieldElement, NumberField};
use crate::arith::{gcd128, is_prime, xgcd};
use crate::error::{invalid, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FractionalIdeal {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub den: i128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSplitting {
    pub p: u64,
    pub kind: SplitType,
    pub primes: Vec<FractionalIdeal>,
    pub norms: Vec<u64>,
}

/// HNF basis {(a,0), (b,c)} of the Z-span of integer vectors (x, y).
pub(crate) fn lattice_hnf(vecs: &[(i128, i128)]) -> Option<(i128, i128, i128)> {
    let (mut a, mut b, mut c) = (0i128, 0i128, 0i128);
    for &(x, y) in vecs {
        if y == 0 && c == 0 {
            a = gcd128(a, x);
            continue;
        }
        let (g, u, v) = xgcd(c, y);
        let nb = u * b + v * x;
        // the combination killing the ω-coordinate
        let rest = (y / g) * b - (c / g) * x;
        a = gcd128(a, rest);
        b = nb;
        c = g;
        if a != 0 {
            b = b.rem_euclid(a);
        }
    }
    if a == 0 || c == 0 {
        return None;
    }
    Some((a, b.rem_euclid(a), c))
}

impl FractionalIdeal {
    fn normalize(a: i128, b: i128, c: i128, den: i128) -> Self {
        let g = gcd128(gcd128(gcd128(a, b), c), den);
        let mut r = FractionalIdeal {
            a: a / g,
            b: b / g,
            c: c / g,
            den: den / g,
        };
        if r.den < 0 {
            r.den = -r.den;
        }
        r
    }

    /// Ideal generated over O by the given field elements.
    pub fn from_generators(field: &NumberField, gens: &[FieldElement]) -> Result<Self> {
        let den = gens
            .iter()
            .fold(BigInt::from(1), |acc, g| num_integer::Integer::lcm(&acc, &g.denominator()));
        let den = den
            .to_i128()
            .ok_or_else(|| Error::Overflow("ideal denominator".into()))?;
        let dq = BigRational::from_integer(BigInt::from(den));
        let mut vecs = Vec::new();
        for g in gens {
            let x = g.scale(&dq).to_oint().ok_or_else(|| Error::Overflow("ideal generator".into()))?;
            if field.is_rational() {
                vecs.push((x.0, 0));
                continue;
            }
            vecs.push(x);
            vecs.push(field.mul_int(x, (0, 1)));
        }
        if field.is_rational() {
            let a = vecs.iter().fold(0, |g, v| gcd128(g, v.0));
            if a == 0 {
                return invalid("zero ideal");
            }
            return Ok(Self::normalize(a, 0, 1, den));
        }
        let (a, b, c) = lattice_hnf(&vecs).ok_or_else(|| Error::InvalidInput("zero ideal".into()))?;
        Ok(Self::normalize(a, b, c, den))
    }

    pub fn principal(field: &NumberField, x: &FieldElement) -> Result<Self> {
        Self::from_generators(field, &[x.clone()])
    }

    pub fn unit(field: &NumberField) -> Self {
        Self::principal(field, &FieldElement::one()).expect("unit ideal")
    }

    /// Z-basis as field elements.
    pub fn basis(&self) -> [FieldElement; 2] {
        let d = BigRational::from_integer(BigInt::from(self.den));
        [
            FieldElement::from_ints(self.a, 0).scale(&d.recip()),
            FieldElement::from_ints(self.b, self.c).scale(&d.recip()),
        ]
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn norm(&self, field: &NumberField) -> BigRational {
        let den = BigInt::from(self.den).pow(field.degree as u32);
        BigRational::new(BigInt::from(self.a) * BigInt::from(self.c), den)
    }

    pub fn contains(&self, field: &NumberField, x: &FieldElement) -> bool {
        let y = x.scale(&BigRational::from_integer(BigInt::from(self.den)));
        let Some((p, q)) = y.to_oint() else {
            return false;
        };
        if field.is_rational() {
            return p % self.a == 0;
        }
        if q % self.c != 0 {
            return false;
        }
        let k = q / self.c;
        (p - k * self.b) % self.a == 0
    }

    pub fn mul(&self, field: &NumberField, o: &Self) -> Self {
        if field.is_rational() {
            return Self::normalize(self.a * o.a, 0, 1, self.den * o.den);
        }
        let g1 = [(self.a, 0), (self.b, self.c)];
        let g2 = [(o.a, 0), (o.b, o.c)];
        let mut vecs = Vec::new();
        for x in g1 {
            for y in g2 {
                vecs.push(field.mul_int(x, y));
            }
        }
        let (a, b, c) = lattice_hnf(&vecs).expect("product of nonzero ideals");
        Self::normalize(a, b, c, self.den * o.den)
    }

    pub fn conj(&self, field: &NumberField) -> Self {
        if field.is_rational() {
            return self.clone();
        }
        let vecs = [
            field.conj_int((self.a, 0)),
            field.conj_int((self.b, self.c)),
        ];
        let (a, b, c) = lattice_hnf(&vecs).expect("nonzero ideal");
        Self::normalize(a, b, c, self.den)
    }

    pub fn inverse(&self, field: &NumberField) -> Self {
        if field.is_rational() {
            return Self::normalize(self.den, 0, 1, self.a);
        }
        // 𝔞⁻¹ = 𝔞̄ / N(𝔞)
        let nrm = self.norm(field);
        let c = self.conj(field);
        let gens: Vec<FieldElement> = c
            .basis()
            .iter()
            .map(|g| g.scale(&nrm.recip()))
            .collect();
        Self::from_generators(field, &gens).expect("nonzero ideal")
    }

    pub fn scale(&self, field: &NumberField, x: &FieldElement) -> Result<Self> {
        let gens: Vec<FieldElement> = self.basis().iter().map(|g| field.mul(g, x)).collect();
        Self::from_generators(field, &gens)
    }

    /// True if the integral ideal is coprime to the rational integer m.
    pub fn coprime_to(&self, m: u64) -> bool {
        // same prime support as the norm in either degree
        let nrm = BigRational::new(
            BigInt::from(self.a) * BigInt::from(self.c),
            BigInt::from(self.den),
        );
        if !nrm.is_integer() {
            // fractional: test numerator and denominator parts
            let n = nrm.numer().abs().to_i128().unwrap_or(0);
            let d = nrm.denom().to_i128().unwrap_or(0);
            return gcd128(n, m as i128) == 1 && gcd128(d, m as i128) == 1;
        }
        gcd128(nrm.numer().to_i128().unwrap_or(0), m as i128) == 1
    }

    /// A generator of the ideal, if it is principal.
    pub fn principal_generator(&self, field: &NumberField) -> Result<Option<FieldElement>> {
        if field.is_rational() {
            let q = BigRational::new(BigInt::from(self.a), BigInt::from(self.den));
            return Ok(Some(FieldElement::from_rational(q)));
        }
        let ud = field.unit_data()?;
        let target = self.a * self.c;
        let mut found = None;
        super::lattice::enumerate_slab(
            field,
            (self.a, self.b, self.c),
            ud.eps_plus,
            target as f64 + 0.5,
            |pt| {
                if found.is_none() && pt.norm.abs() == target {
                    found = Some(pt.x);
                }
            },
        );
        Ok(found.map(|x| {
            FieldElement::from_ints(x.0, x.1)
                .scale(&BigRational::new(BigInt::from(1), BigInt::from(self.den)))
        }))
    }
}

impl NumberField {
    pub fn split_prime(&self, p: u64) -> Result<PrimeSplitting> {
        if !is_prime(p) {
            return invalid(format!("{} is not prime", p));
        }
        if self.is_rational() {
            let id = FractionalIdeal::principal(self, &FieldElement::from_int(p as i64))?;
            return Ok(PrimeSplitting {
                p,
                kind: SplitType::Split,
                primes: vec![id],
                norms: vec![p],
            });
        }
        let k = crate::arith::kronecker(self.disc, p);
        let pi = p as i128;
        // roots of x² - t x - n mod p
        let roots: Vec<i128> = (0..pi)
            .filter(|&r| (r * r - self.t as i128 * r - self.n as i128).rem_euclid(pi) == 0)
            .collect();
        let prime_over = |r: i128| -> Result<FractionalIdeal> {
            FractionalIdeal::from_generators(
                self,
                &[
                    FieldElement::from_int(p as i64),
                    FieldElement::from_ints(-r, 1),
                ],
            )
        };
        match k {
            1 => {
                let primes = vec![prime_over(roots[0])?, prime_over(roots[1])?];
                Ok(PrimeSplitting {
                    p,
                    kind: SplitType::Split,
                    primes,
                    norms: vec![p, p],
                })
            }
            -1 => Ok(PrimeSplitting {
                p,
                kind: SplitType::Inert,
                primes: vec![FractionalIdeal::principal(self, &FieldElement::from_int(p as i64))?],
                norms: vec![p * p],
            }),
            _ => Ok(PrimeSplitting {
                p,
                kind: SplitType::Ramified,
                primes: vec![prime_over(roots[0])?],
                norms: vec![p],
            }),
        }
    }

    pub fn ideal_norm(&self, ideal: &FractionalIdeal) -> BigRational {
        ideal.norm(self)
    }

    /// Prime ideals of norm at most `bound`, ordered by norm.
    pub fn primes_up_to(&self, bound: u64) -> Vec<(FractionalIdeal, u64)> {
        let mut out = Vec::new();
        for p in crate::arith::primes_up_to(bound as usize) {
            let sp = self.split_prime(p).expect("prime");
            for (id, nm) in sp.primes.into_iter().zip(sp.norms) {
                if nm <= bound {
                    out.push((id, nm));
                }
            }
        }
        out.sort_by_key(|(_, n)| *n);
        out
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn norms_and_membership() {
        let f = NumberField::new(5).unwrap();
        let one = FractionalIdeal::unit(&f);
        assert_eq!(one.norm(&f), rat(1, 1));
        let d = FractionalIdeal::principal(&f, &f.delta()).unwrap();
        assert_eq!(d.norm(&f), rat(5, 1));
        assert!(d.contains(&f, &f.delta()));
        assert!(!d.contains(&f, &FieldElement::one()));
        let inv = d.inverse(&f);
        assert_eq!(inv.mul(&f, &d), one);
    }

    #[test]
    fn splitting() {
        let f = NumberField::new(5).unwrap();
        let s3 = f.split_prime(3).unwrap();
        assert_eq!(s3.kind, SplitType::Inert);
        assert_eq!(s3.primes[0].norm(&f), rat(9, 1));
        assert_eq!(f.split_prime(5).unwrap().kind, SplitType::Ramified);
        let s11 = f.split_prime(11).unwrap();
        assert_eq!(s11.kind, SplitType::Split);
        assert!(s11.primes.iter().all(|p| p.norm(&f) == rat(11, 1)));
        assert_ne!(s11.primes[0], s11.primes[1]);
        assert!(f.split_prime(9).is_err());
        let q = NumberField::rationals();
        let h = FractionalIdeal::principal(&q, &FieldElement::from_rational(rat(3, 2))).unwrap();
        assert_eq!(h.norm(&q), rat(3, 2));
    }

    #[test]
    fn principal_generators() {
        let f = NumberField::new(10).unwrap();
        // the prime over 2 in Q(√10) is not principal
        let p2 = &f.split_prime(2).unwrap().primes[0];
        assert!(p2.principal_generator(&f).unwrap().is_none());
        let sq = p2.mul(&f, p2);
        let g = sq.principal_generator(&f).unwrap().unwrap();
        assert_eq!(FractionalIdeal::principal(&f, &g).unwrap(), sq);
    }
}
