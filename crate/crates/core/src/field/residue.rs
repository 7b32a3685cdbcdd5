//! The finite rings O/NO.

use super::{NumberField, OInt};
use crate::arith::{gcd128, modinv};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub modulus: i128,
    t: i128,
    n: i128,
    degree: u8,
}

impl Residue {
    pub fn new(field: &NumberField, modulus: u64) -> Self {
        assert!(modulus >= 1);
        Residue {
            modulus: modulus as i128,
            t: field.t as i128,
            n: field.n as i128,
            degree: field.degree,
        }
    }

    pub fn size(&self) -> usize {
        (self.modulus as usize).pow(self.degree as u32)
    }

    pub fn reduce(&self, x: OInt) -> OInt {
        let m = self.modulus;
        if self.degree == 1 {
            (x.0.rem_euclid(m), 0)
        } else {
            (x.0.rem_euclid(m), x.1.rem_euclid(m))
        }
    }

    pub fn add(&self, x: OInt, y: OInt) -> OInt {
        self.reduce((x.0 + y.0, x.1 + y.1))
    }

    pub fn sub(&self, x: OInt, y: OInt) -> OInt {
        self.reduce((x.0 - y.0, x.1 - y.1))
    }

    pub fn neg(&self, x: OInt) -> OInt {
        self.reduce((-x.0, -x.1))
    }

    pub fn mul(&self, x: OInt, y: OInt) -> OInt {
        let x = self.reduce(x);
        let y = self.reduce(y);
        let bb = x.1 * y.1;
        self.reduce((x.0 * y.0 + self.n * bb, x.0 * y.1 + x.1 * y.0 + self.t * bb))
    }

    pub fn pow(&self, x: OInt, mut e: u64) -> OInt {
        let mut base = self.reduce(x);
        let mut acc = self.reduce((1, 0));
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn norm(&self, x: OInt) -> i128 {
        let x = self.reduce(x);
        if self.degree == 1 {
            return x.0;
        }
        (x.0 * x.0 + self.t * x.0 * x.1 - self.n * x.1 * x.1).rem_euclid(self.modulus)
    }

    pub fn conj(&self, x: OInt) -> OInt {
        if self.degree == 1 {
            return self.reduce(x);
        }
        self.reduce((x.0 + self.t * x.1, -x.1))
    }

    pub fn is_unit(&self, x: OInt) -> bool {
        self.modulus == 1 || gcd128(self.norm(x), self.modulus) == 1
    }

    pub fn inv(&self, x: OInt) -> Option<OInt> {
        if self.modulus == 1 {
            return Some((0, 0));
        }
        if self.degree == 1 {
            let v = modinv(self.reduce(x).0 as i64, self.modulus as i64)? as i128;
            return Some(self.reduce((v, 0)));
        }
        let nx = self.norm(x);
        let ni = modinv(nx as i64, self.modulus as i64)? as i128;
        let c = self.conj(x);
        Some(self.reduce((c.0 * ni, c.1 * ni)))
    }

    pub fn index(&self, x: OInt) -> usize {
        let x = self.reduce(x);
        if self.degree == 1 {
            x.0 as usize
        } else {
            (x.0 * self.modulus + x.1) as usize
        }
    }

    pub fn from_index(&self, i: usize) -> OInt {
        let i = i as i128;
        if self.degree == 1 {
            (i, 0)
        } else {
            (i / self.modulus, i % self.modulus)
        }
    }

    pub fn elements(&self) -> Vec<OInt> {
        (0..self.size()).map(|i| self.from_index(i)).collect()
    }

    pub fn units(&self) -> Vec<OInt> {
        self.elements().into_iter().filter(|&x| self.is_unit(x)).collect()
    }

    pub fn is_one(&self, x: OInt) -> bool {
        self.reduce(x) == self.reduce((1, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_units() {
        let f = NumberField::new(5).unwrap();
        let r = Residue::new(&f, 3);
        assert_eq!(r.units().len(), 8);
        for u in r.units() {
            let v = r.inv(u).unwrap();
            assert!(r.is_one(r.mul(u, v)));
        }
        // ω has order 8
        let mut x = (0, 1);
        let mut k = 1;
        while !r.is_one(x) {
            x = r.mul(x, (0, 1));
            k += 1;
        }
        assert_eq!(k, 8);
    }

    #[test]
    fn rational_units() {
        let r = Residue::new(&NumberField::rationals(), 12);
        assert_eq!(r.units().len(), 4);
        for u in r.units() {
            assert!(r.is_one(r.mul(u, r.inv(u).unwrap())));
        }
        assert_eq!(Residue::new(&NumberField::rationals(), 3).inv((2, 0)), Some((2, 0)));
        assert_eq!(r.inv((2, 0)), None);
    }
}
