//! Exact arithmetic in cyclotomic fields Q(ζ_M).
//!
//! Values are kept as coefficient vectors of length M over the spanning set
//! 1, ζ, ..., ζ^{M-1}; this is redundant but makes multiplication by roots
//! of unity a rotation.  Canonical forms reduce modulo Φ_M.

use crate::arith::gcd128;
use crate::numeric::{cos_sin_2pi_frac, CDd, Dd};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Coefficients of Φ_m, lowest degree first.
pub fn cyclotomic_poly(m: u64) -> Vec<i128> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i128>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i128; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

fn poly_div_exact(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = a.len() - 1 - db;
    let mut q = vec![0i128; dq + 1];
    for i in (0..=dq).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Reduces an integer vector over powers of ζ_m modulo Φ_m.
pub fn reduce_int(v: &[i128], m: u64) -> Vec<i128> {
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    let mut r = v.to_vec();
    for i in (deg..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for (j, &pj) in phi.iter().enumerate() {
            r[i - deg + j] -= c * pj;
        }
    }
    r.truncate(deg);
    r.resize(deg, 0);
    r
}

/// Σ c_j ζ_m^j with rational coefficients.
#[derive(Clone, Debug)]
pub struct CyclotomicValue {
    pub m: u64,
    pub coeffs: Vec<BigRational>,
}

impl CyclotomicValue {
    pub fn zero(m: u64) -> Self {
        CyclotomicValue {
            m,
            coeffs: vec![BigRational::zero(); m as usize],
        }
    }

    pub fn rational(q: BigRational) -> Self {
        CyclotomicValue {
            m: 1,
            coeffs: vec![q],
        }
    }

    /// ζ_m^k.
    pub fn root(k: i64, m: u64) -> Self {
        let mut v = Self::zero(m);
        v.coeffs[k.rem_euclid(m as i64) as usize] = BigRational::one();
        v
    }

    pub fn from_ints(v: &[i128], m: u64, factor: &BigRational) -> Self {
        CyclotomicValue {
            m,
            coeffs: v
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)) * factor)
                .collect(),
        }
    }

    pub fn lift(&self, m2: u64) -> Self {
        assert_eq!(m2 % self.m, 0);
        let step = (m2 / self.m) as usize;
        let mut out = Self::zero(m2);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j * step] = c.clone();
        }
        out
    }

    fn common(&self, o: &Self) -> (Self, Self) {
        let m = self.m.lcm(&o.m);
        (self.lift(m), o.lift(m))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        CyclotomicValue {
            m: a.m,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicValue {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        let m = a.m as usize;
        let mut out = Self::zero(a.m);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out.coeffs[(i + j) % m] += x * y;
                }
            }
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicValue {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        let m = self.m as usize;
        let mut out = Self::zero(self.m);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(m - j) % m] = c.clone();
        }
        out
    }

    /// Coordinates in the power basis 1, ζ, ..., ζ^{φ(m)-1}.
    pub fn canonical(&self) -> Vec<BigRational> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let phi = cyclotomic_poly(self.m);
        let deg = phi.len() - 1;
        let mut r = ints;
        for i in (deg..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate() {
                r[i - deg + j] -= &c * BigInt::from(pj);
            }
        }
        r.truncate(deg);
        r.into_iter()
            .map(|x| BigRational::new(x, den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(|c| c.is_zero())
    }

    /// The value if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        let c = self.canonical();
        c[1..].iter().all(|x| x.is_zero()).then(|| c[0].clone())
    }

    pub fn to_cdd(&self) -> CDd {
        let mut re = Dd::ZERO;
        let mut im = Dd::ZERO;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (cs, sn) = cos_sin_2pi_frac(j as i128, self.m as i128);
            let q = crate::numeric::rational_to_dd(c);
            re = re + cs * q;
            im = im + sn * q;
        }
        CDd::new(re, im)
    }

    /// Σ |c_q|, the bound used for evaluation error.
    pub fn l1(&self) -> BigRational {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

impl PartialEq for CyclotomicValue {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

/// Content of an integer vector.
pub(crate) fn content(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| gcd128(g, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(15).len(), 9);
    }

    #[test]
    fn roots_sum_to_zero() {
        let mut s = CyclotomicValue::zero(5);
        for k in 0..5 {
            s = s.add(&CyclotomicValue::root(k, 5));
        }
        assert!(s.is_zero());
        // ζ_3 + ζ_3² = -1
        let x = CyclotomicValue::root(1, 3).add(&CyclotomicValue::root(2, 3));
        assert_eq!(x.as_rational(), Some(rat(-1, 1)));
        // ζ_4² = -1 across levels
        let i = CyclotomicValue::root(1, 4);
        assert_eq!(i.mul(&i), CyclotomicValue::rational(rat(-1, 1)));
        assert_eq!(CyclotomicValue::root(2, 6), CyclotomicValue::root(1, 3));
    }

    #[test]
    fn evaluation() {
        let z = CyclotomicValue::root(1, 8).add(&CyclotomicValue::root(7, 8));
        let v = z.to_cdd();
        assert!((v.re.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert!(v.im.to_f64().abs() < 1e-30);
        assert_eq!(z.conj(), z);
    }
}
