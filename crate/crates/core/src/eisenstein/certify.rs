//! Rational reconstruction of lattice-sum values and the integrality check.

use super::constant_term::LatticeSumResult;
use crate::arith::factorize;
use crate::numeric::{dd_to_decimal, Dd};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub bound: f64,
    pub precision_bits: u32,
    pub value_re: String,
    pub value_im: String,
    pub tail_estimate: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalCertificate {
    /// "p/q"
    pub rational: String,
    /// Primes and exponents of the denominator.
    pub denominator: Vec<(u64, u32)>,
    pub runs: [RunSummary; 2],
}

impl RationalCertificate {
    pub fn value(&self) -> BigRational {
        self.rational.parse().expect("certificate rational")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyFailure {
    pub reason: String,
    /// Best candidate of each run within its tolerance, if any.
    pub candidates: Vec<Option<String>>,
    pub runs: Vec<RunSummary>,
}

impl fmt::Display for CertifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "certification failed: {}", self.reason)
    }
}

impl std::error::Error for CertifyFailure {}

/// Exact rational value of a double-double.
pub fn dd_to_rational(x: Dd) -> BigRational {
    let a = BigRational::from_float(x.hi).unwrap_or_else(BigRational::zero);
    let b = BigRational::from_float(x.lo).unwrap_or_else(BigRational::zero);
    a + b
}

/// Residual tolerance 10^{-bits/8} attached to a precision request.
pub fn tolerance(bits: u32) -> f64 {
    10f64.powf(-(bits as f64) / 8.0)
}

/// First continued-fraction convergent p/q of x with q <= qmax and
/// |x - p/q| <= tol.
pub fn reconstruct(x: &BigRational, tol: f64, qmax: &BigInt) -> Option<BigRational> {
    let tolq = BigRational::from_float(tol)?;
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    for _ in 0..200 {
        let a = r.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > qmax {
            return None;
        }
        let c = BigRational::new(h2.clone(), k2.clone());
        if (x - &c).abs() <= tolq {
            return Some(c);
        }
        let f = &r - BigRational::from_integer(a);
        if f.is_zero() {
            return None;
        }
        r = f.recip();
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
    }
    None
}

fn summary(r: &LatticeSumResult, residual: f64) -> RunSummary {
    RunSummary {
        bound: r.bound,
        precision_bits: r.precision_bits,
        value_re: dd_to_decimal(r.value.re, r.digits()),
        value_im: dd_to_decimal(r.value.im, r.digits()),
        tail_estimate: r.tail_estimate,
        residual,
    }
}

/// Reconstructs the same rational from two runs with denominator dividing
/// ∏ p^e over `primes`.
pub fn certify_rational(
    run1: &LatticeSumResult,
    run2: &LatticeSumResult,
    primes: &[u64],
    max_exp: u32,
) -> Result<RationalCertificate, CertifyFailure> {
    let runs = [run1, run2];
    let fail = |reason: String, cands: Vec<Option<String>>, res: [f64; 2]| CertifyFailure {
        reason,
        candidates: cands,
        runs: vec![summary(run1, res[0]), summary(run2, res[1])],
    };
    if run1.bound == run2.bound && run1.precision_bits == run2.precision_bits {
        return Err(fail(
            "the two runs use the same (B, precision)".into(),
            vec![],
            [f64::NAN; 2],
        ));
    }
    let mut qmax = BigInt::one();
    for &p in primes {
        qmax *= num_traits::pow(BigInt::from(p), max_exp as usize);
    }
    let mut found: Vec<Option<BigRational>> = Vec::new();
    let mut residuals = [f64::NAN; 2];
    for (i, r) in runs.iter().enumerate() {
        let tol = tolerance(r.precision_bits);
        if r.value.im.to_f64().abs() > tol {
            return Err(fail(
                format!("run {} has imaginary part {:e}", i + 1, r.value.im.to_f64()),
                vec![],
                residuals,
            ));
        }
        let x = dd_to_rational(r.value.re);
        let c = reconstruct(&x, tol, &qmax);
        if let Some(c) = &c {
            residuals[i] = (Dd::from_rational(&(x - c).abs())).to_f64();
        }
        found.push(c);
    }
    let cands: Vec<Option<String>> = found.iter().map(|c| c.as_ref().map(|c| c.to_string())).collect();
    let (a, b) = match (&found[0], &found[1]) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(fail(
                "no convergent within tolerance and denominator bound".into(),
                cands,
                residuals,
            ))
        }
    };
    if a != b {
        return Err(fail("the runs reconstruct different rationals".into(), cands, residuals));
    }
    if !(qmax.clone() % a.denom()).is_zero() {
        return Err(fail("denominator not supported on the given primes".into(), cands, residuals));
    }
    let den = a.denom().to_u64().unwrap_or(0);
    let denominator = if den > 0 { factorize(den) } else { vec![] };
    debug_assert!(denominator.iter().all(|(p, _)| primes.contains(p)));
    Ok(RationalCertificate {
        rational: format!("{}/{}", a.numer(), a.denom()),
        denominator,
        runs: [summary(run1, residuals[0]), summary(run2, residuals[1])],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::CDd;

    fn run(v: f64, bound: f64, bits: u32) -> LatticeSumResult {
        LatticeSumResult {
            value: CDd::real(Dd::new(v)),
            bound,
            tail_estimate: 0.0,
            terms: 0,
            precision_bits: bits,
        }
    }

    #[test]
    fn dyadic() {
        let c = certify_rational(&run(0.125 + 1e-12, 1e4, 64), &run(0.125 - 1e-12, 2e4, 72), &[2], 8).unwrap();
        assert_eq!(c.rational, "1/8");
        assert_eq!(c.denominator, vec![(2, 3)]);
    }

    #[test]
    fn one_thirtieth() {
        let x = 1.0 / 30.0;
        let c = certify_rational(&run(x, 1e4, 128), &run(x, 2e4, 128), &[2, 3, 5], 1).unwrap();
        assert_eq!(c.rational, "1/30");
    }

    #[test]
    fn pi_fails() {
        let p = std::f64::consts::PI;
        for e in 1..=6 {
            // ∏ p^e over {2,5} stays below 10^6 for e <= 6
            let r = certify_rational(&run(p, 1e4, 128), &run(p, 2e4, 128), &[2, 5], e);
            assert!(r.is_err());
        }
        let r = certify_rational(&run(p, 1e4, 64), &run(p, 2e4, 64), &[2, 3, 5, 7], 2);
        assert!(r.is_err());
    }

    #[test]
    fn disagreement_is_reported() {
        let r = certify_rational(&run(0.5, 1e4, 64), &run(0.25, 2e4, 64), &[2], 4).unwrap_err();
        assert!(r.reason.contains("different"));
        assert_eq!(r.candidates.len(), 2);
    }

    #[test]
    fn unsupported_denominator() {
        let r = certify_rational(&run(1.0 / 3.0, 1e4, 64), &run(1.0 / 3.0, 2e4, 64), &[2, 3], 2);
        assert!(r.is_ok());
        let r = certify_rational(&run(1.0 / 7.0, 1e4, 64), &run(1.0 / 7.0, 2e4, 64), &[2, 3], 2);
        assert!(r.is_err());
    }
}
