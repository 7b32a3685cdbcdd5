//! Bernoulli numbers and polynomials with the B₁ = -1/2 convention.

use crate::arith::{binomial, factorial, frac};
use crate::numeric::{cos_sin_2pi_frac, rational_to_dd, Dd, C64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::{Mutex, OnceLock};

/// Memoized Bernoulli numbers.
#[derive(Clone, Debug, Default)]
pub struct BernoulliCache {
    numbers: Vec<BigRational>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            numbers: vec![BigRational::one()],
        }
    }

    fn extend_to(&mut self, k: usize) {
        // Σ_{j=0}^{n} C(n+1, j) B_j = 0
        while self.numbers.len() <= k {
            let n = self.numbers.len();
            let mut s = BigRational::zero();
            for (j, b) in self.numbers.iter().enumerate() {
                s += BigRational::from_integer(binomial(n as u64 + 1, j as u64)) * b;
            }
            let bn = -s / BigRational::from_integer(BigInt::from(n + 1));
            self.numbers.push(bn);
        }
    }

    pub fn number(&mut self, k: usize) -> BigRational {
        self.extend_to(k);
        self.numbers[k].clone()
    }

    /// Coefficients c_j of B_k(x) = Σ c_j x^j.
    pub fn poly_coefficients(&mut self, k: usize) -> Vec<BigRational> {
        self.extend_to(k);
        (0..=k)
            .map(|j| {
                BigRational::from_integer(binomial(k as u64, j as u64)) * &self.numbers[k - j]
            })
            .collect()
    }

    pub fn poly(&mut self, k: usize, x: &BigRational) -> BigRational {
        let c = self.poly_coefficients(k);
        let mut acc = BigRational::zero();
        for cj in c.iter().rev() {
            acc = acc * x + cj;
        }
        acc
    }

    /// Checks the defining recurrence on every cached entry.
    pub fn recurrence_holds(&self) -> bool {
        (1..self.numbers.len()).all(|n| {
            let s: BigRational = (0..=n)
                .map(|j| BigRational::from_integer(binomial(n as u64 + 1, j as u64)) * &self.numbers[j])
                .sum();
            s.is_zero()
        })
    }
}

fn global() -> &'static Mutex<BernoulliCache> {
    static CACHE: OnceLock<Mutex<BernoulliCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BernoulliCache::new()))
}

pub fn bernoulli(k: usize) -> BigRational {
    global().lock().unwrap().number(k)
}

pub fn bernoulli_poly(k: usize, x: &BigRational) -> BigRational {
    global().lock().unwrap().poly(k, x)
}

/// B_{2i}/(2i)! for i = 1..=n, as double-doubles.
pub fn even_bernoulli_over_factorial(n: usize) -> Vec<Dd> {
    static TABLE: OnceLock<Vec<Dd>> = OnceLock::new();
    let t = TABLE.get_or_init(|| {
        (1..=20)
            .map(|i| {
                let q = bernoulli(2 * i) / BigRational::from_integer(factorial(2 * i as u64));
                rational_to_dd(&q)
            })
            .collect()
    });
    t[..n.min(t.len())].to_vec()
}

/// B_k({a}) for a in Q/Z and k >= 2.
///
/// Σ_{n≠0} e(na)/n^k = -(2πi)^k B_k({a}) / k!.
pub fn twisted_zeta_rank1(a: &BigRational, k: usize) -> BigRational {
    assert!(k >= 2);
    bernoulli_poly(k, &frac(a))
}

/// Truncated Σ_{0<|n|<=terms} e(na)/n^k, the numeric side of the identity above.
pub fn twisted_zeta_truncated(a: &BigRational, k: u32, terms: u64) -> C64 {
    let f = frac(a);
    let num: i128 = f.numer().try_into().unwrap_or(0);
    let den: i128 = f.denom().try_into().unwrap_or(1);
    let mut re = Dd::ZERO;
    let mut im = Dd::ZERO;
    // sum from the small tail upward for accuracy
    for n in (1..=terms).rev() {
        let (c, s) = cos_sin_2pi_frac(num * n as i128 % den, den);
        let inv = Dd::new(n as f64).powi(k).recip();
        // e(na) + (-1)^k e(-na)
        if k % 2 == 0 {
            re = re + c * inv * Dd::new(2.0);
        } else {
            im = im + s * inv * Dd::new(2.0);
        }
    }
    C64::new(re.to_f64(), im.to_f64())
}

/// Closed-form value -(2πi)^k B_k({a}) / k! as a complex double.
pub fn twisted_zeta_closed(a: &BigRational, k: u32) -> C64 {
    let b = rational_to_dd(&twisted_zeta_rank1(a, k as usize)).to_f64();
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut fact = 1.0;
    for i in 1..=k {
        fact *= i as f64;
    }
    let ik = C64::new(0.0, two_pi).powi(k as i32);
    ik.scale(-b / fact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn small_numbers() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for j in 1..10 {
            assert!(bernoulli(2 * j + 1).is_zero());
        }
    }

    #[test]
    fn polynomial_values() {
        assert_eq!(bernoulli_poly(2, &rat(1, 2)), rat(-1, 12));
        assert_eq!(bernoulli_poly(2, &rat(1, 4)), rat(-1, 48));
        assert_eq!(bernoulli_poly(4, &rat(0, 1)), rat(-1, 30));
    }

    #[test]
    fn rank_one_identity() {
        for (a, k) in [(rat(1, 2), 2u32), (rat(0, 1), 2), (rat(1, 4), 2), (rat(1, 3), 3)] {
            let lhs = twisted_zeta_truncated(&a, k, 1_000_000);
            let rhs = twisted_zeta_closed(&a, k);
            assert!((lhs - rhs).abs() < 1e-5, "{} {}", a, k);
        }
    }
}
