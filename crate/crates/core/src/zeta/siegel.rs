//! Closed forms for ζ_F at negative integers, used to check the cone sums.

use super::bernoulli::{bernoulli, bernoulli_poly};
use crate::arith::{kronecker, rat, rat_int};
use crate::field::NumberField;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn sigma1(n: i64) -> i64 {
    (1..=n).filter(|d| n % d == 0).sum()
}

/// ζ_F(-1) = (1/60) Σ_{t² < d_F, t ≡ d_F mod 2} σ₁((d_F - t²)/4).
pub fn siegel_sigma1(field: &NumberField) -> BigRational {
    assert!(!field.is_rational(), "the divisor-sum formula is for real quadratic fields");
    let d = field.disc;
    let mut s = 0i64;
    let r = (d as f64).sqrt() as i64 + 1;
    for t in -r..=r {
        if t * t < d && (d - t * t) % 4 == 0 {
            s += sigma1((d - t * t) / 4);
        }
    }
    rat(s, 60)
}

/// ζ_F(-n) = ζ(-n)·L(-n, χ_{d_F}) through generalized Bernoulli numbers.
pub fn quadratic_zeta_bernoulli(field: &NumberField, n: u32) -> BigRational {
    let m = n as usize + 1;
    let f = field.disc;
    let zeta_q = if m == 1 {
        rat(-1, 2)
    } else {
        -bernoulli(m) / rat_int(m as i64)
    };
    let mut bchi = BigRational::zero();
    for a in 1..=f {
        let chi = kronecker(f, a as u64);
        if chi != 0 {
            bchi += rat_int(chi as i64) * bernoulli_poly(m, &rat(a, f));
        }
    }
    bchi *= BigRational::from_integer(BigInt::from(f).pow(m as u32 - 1));
    let l = -bchi / rat_int(m as i64);
    zeta_q * l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn siegel_examples() {
        for (d, v) in [(5, rat(1, 30)), (2, rat(1, 12)), (3, rat(1, 6)), (13, rat(1, 6))] {
            assert_eq!(siegel_sigma1(&NumberField::new(d).unwrap()), v);
        }
    }

    #[test]
    fn siegel_matches_bernoulli() {
        for d in 2..=30i64 {
            if let Ok(f) = NumberField::new(d) {
                if !f.is_rational() {
                    assert_eq!(siegel_sigma1(&f), quadratic_zeta_bernoulli(&f, 1), "D = {}", d);
                }
            }
        }
        let f = NumberField::new(5).unwrap();
        assert_eq!(quadratic_zeta_bernoulli(&f, 3), rat(1, 60));
        assert!(quadratic_zeta_bernoulli(&f, 0).is_zero());
    }
}
