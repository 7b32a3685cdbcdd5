//! Double-double reals, compensated accumulation and the few special
//! functions the lattice sums need.
//!
//! A `Dd` carries roughly 106 bits of significand.  Working precision
//! requests above that are clamped; requests at or below 53 bits use plain
//! `f64` accumulation so the precision knob changes the arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Largest significand width the double-double layer can deliver.
pub const MAX_BITS: u32 = 106;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i128(n: i128) -> Dd {
        let hi = n as f64;
        let rest = n - hi as i128;
        Dd { hi, lo: 0.0 } + Dd::new(rest as f64)
    }

    pub fn from_bigint(n: &BigInt) -> Dd {
        if let Some(v) = n.to_i128() {
            return Dd::from_i128(v);
        }
        let hi = n.to_f64().unwrap_or(f64::INFINITY);
        if !hi.is_finite() {
            return Dd::new(hi);
        }
        // hi is an integral double, so the remainder is exact
        let rest = n - big_of_f64(hi);
        Dd::new(hi) + Dd::new(rest.to_f64().unwrap_or(0.0))
    }

    pub fn from_rational(q: &BigRational) -> Dd {
        Dd::from_bigint(q.numer()) / Dd::from_bigint(q.denom())
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn powi(self, mut e: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = Dd::new(self.hi.sqrt());
        // one Newton step doubles the correct bits
        x + (self - x * x) / (x + x)
    }

    /// Round to plain double precision (used for low-precision runs).
    pub fn round_f64(self) -> Dd {
        Dd::new(self.to_f64())
    }
}

fn big_of_f64(x: f64) -> BigInt {
    // exact conversion of an integral double
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mant = if exp == 0 {
        (bits & ((1 << 52) - 1)) << 1
    } else {
        (bits & ((1 << 52) - 1)) | (1 << 52)
    };
    let shift = exp - 1075;
    let m = BigInt::from(mant);
    let v = if shift >= 0 {
        m << shift as usize
    } else {
        m >> (-shift) as usize
    };
    v * sign
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

impl std::iter::Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

/// Complex number over double-double parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub fn new(re: Dd, im: Dd) -> CDd {
        CDd { re, im }
    }
    pub fn real(re: Dd) -> CDd {
        CDd { re, im: Dd::ZERO }
    }
    pub fn scale(self, k: Dd) -> CDd {
        CDd {
            re: self.re * k,
            im: self.im * k,
        }
    }
    pub fn conj(self) -> CDd {
        CDd {
            re: self.re,
            im: -self.im,
        }
    }
    pub fn abs(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
    pub fn to_c64(self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }
    pub fn round_f64(self) -> CDd {
        CDd {
            re: self.re.round_f64(),
            im: self.im.round_f64(),
        }
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, o: CDd) -> CDd {
        CDd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for CDd {
    type Output = CDd;
    fn sub(self, o: CDd) -> CDd {
        CDd {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Neg for CDd {
    type Output = CDd;
    fn neg(self) -> CDd {
        CDd {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Plain double complex numbers for the quadrature path.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    pub fn new(re: f64, im: f64) -> C64 {
        C64 { re, im }
    }
    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
    pub fn conj(self) -> C64 {
        C64::new(self.re, -self.im)
    }
    pub fn scale(self, k: f64) -> C64 {
        C64::new(self.re * k, self.im * k)
    }
    pub fn powi(self, e: i32) -> C64 {
        if e < 0 {
            return C64::new(1.0, 0.0) / self.powi(-e);
        }
        let mut acc = C64::new(1.0, 0.0);
        let mut base = self;
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
    pub fn exp(self) -> C64 {
        let r = self.re.exp();
        C64::new(r * self.im.cos(), r * self.im.sin())
    }
}

impl Add for C64 {
    type Output = C64;
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
}
impl Sub for C64 {
    type Output = C64;
    fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
}
impl Mul for C64 {
    type Output = C64;
    fn mul(self, o: C64) -> C64 {
        C64::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}
impl Div for C64 {
    type Output = C64;
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
}
impl Neg for C64 {
    type Output = C64;
    fn neg(self) -> C64 {
        C64::new(-self.re, -self.im)
    }
}

/// Accumulator whose arithmetic follows the requested working precision.
#[derive(Clone, Copy, Debug)]
pub struct Acc {
    sum: CDd,
    wide: bool,
}

impl Acc {
    pub fn new(bits: u32) -> Acc {
        Acc {
            sum: CDd::ZERO,
            wide: bits > 53,
        }
    }
    pub fn add(&mut self, t: CDd) {
        if self.wide {
            self.sum = self.sum + t;
        } else {
            self.sum = (self.sum.round_f64() + t.round_f64()).round_f64();
        }
    }
    pub fn value(&self) -> CDd {
        self.sum
    }
}

/// Effective significand bits for a precision request.
pub fn effective_bits(requested: u32) -> u32 {
    if requested <= 53 {
        requested.max(1)
    } else {
        requested.min(MAX_BITS)
    }
}

/// (cos 2πq, sin 2πq) for a rational q, to double-double accuracy.
pub fn cos_sin_2pi(q: &BigRational) -> (Dd, Dd) {
    let num = q.numer().to_i128();
    let den = q.denom().to_i128();
    match (num, den) {
        (Some(n), Some(d)) => cos_sin_2pi_frac(n, d),
        _ => {
            let f = crate::arith::frac(q);
            let n = (f.numer() * BigInt::from(1i64 << 40) / f.denom())
                .to_i128()
                .unwrap_or(0);
            cos_sin_2pi_frac(n, 1i128 << 40)
        }
    }
}

/// (cos 2πn/d, sin 2πn/d) with exact octant reduction.
pub fn cos_sin_2pi_frac(n: i128, d: i128) -> (Dd, Dd) {
    let d = d.abs().max(1);
    let n = n.rem_euclid(d);
    // angle = (oct + r/d)·π/4 with 0 <= r < d
    let t = 8 * n;
    let oct = (t / d) as i32;
    let r = t - oct as i128 * d;
    let eighth = |num: i128| Dd::PI * Dd::from_i128(num) / (Dd::from_i128(d) * Dd::new(4.0));
    if oct % 2 == 0 {
        let (c, s) = taylor_cos_sin(eighth(r));
        rotate_quarter(oct / 2, c, s)
    } else {
        // angle = q·π/2 - θ with θ = (d - r)/d · π/4
        let (c, s) = taylor_cos_sin(eighth(d - r));
        rotate_quarter((oct + 1) / 2, c, -s)
    }
}

fn rotate_quarter(q: i32, c: Dd, s: Dd) -> (Dd, Dd) {
    match q.rem_euclid(4) {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

fn taylor_cos_sin(x: Dd) -> (Dd, Dd) {
    // |x| <= π/4; 20 terms give well below 1e-32
    let x2 = x * x;
    let mut term = Dd::ONE;
    let mut c = Dd::ONE;
    let mut k = 0.0;
    for _ in 0..20 {
        term = -(term * x2) / Dd::new((k + 1.0) * (k + 2.0));
        c = c + term;
        k += 2.0;
    }
    let mut term = x;
    let mut s = x;
    let mut k = 1.0;
    for _ in 0..20 {
        term = -(term * x2) / Dd::new((k + 1.0) * (k + 2.0));
        s = s + term;
        k += 2.0;
    }
    (c, s)
}

/// Hurwitz zeta ζ(k, q) for integer k >= 2 and q > 0.
pub fn hurwitz_zeta(k: u32, q: Dd) -> Dd {
    assert!(k >= 2 && q.hi > 0.0);
    let mut acc = Dd::ZERO;
    let mut qq = q;
    while qq.hi < 40.0 {
        acc = acc + qq.powi(k).recip();
        qq = qq + Dd::ONE;
    }
    acc + hurwitz_tail(k, qq)
}

/// Euler-Maclaurin expansion of Σ_{j>=0} (q+j)^{-k} for large q.
pub fn hurwitz_tail(k: u32, q: Dd) -> Dd {
    let inv = q.recip();
    let qk = q.powi(k - 1);
    let mut s = Dd::ONE / (qk * Dd::new((k - 1) as f64)) + (qk * q).recip() * Dd::new(0.5);
    // B_{2i}/(2i)! * k(k+1)...(k+2i-2) * q^{-k-2i+1}
    let mut poch = Dd::new(k as f64); // rising product
    let mut pw = (qk * q * q).recip(); // q^{-(k+1)}
    for (i, b) in crate::zeta::bernoulli::even_bernoulli_over_factorial(14)
        .iter()
        .enumerate()
    {
        let t = *b * poch * pw;
        s = s + t;
        let i = i as f64 + 1.0;
        poch = poch * Dd::new(k as f64 + 2.0 * i - 1.0) * Dd::new(k as f64 + 2.0 * i);
        pw = pw * inv * inv;
    }
    s
}

/// Σ_{j∈Z} (j + w)^{-k} for Im w ≠ 0 and k >= 2, via the q-expansion.
pub fn lipschitz_sum(k: u32, w: C64) -> C64 {
    if w.im < 0.0 {
        let v = lipschitz_sum(k, -w);
        return if k % 2 == 0 { v } else { -v };
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let q = (C64::new(0.0, two_pi) * w).exp();
    let mut sum = C64::ZERO;
    let mut qr = q;
    let mut r = 1.0f64;
    loop {
        let t = qr.scale(r.powi(k as i32 - 1));
        sum = sum + t;
        if t.abs() < 1e-18 * sum.abs().max(1e-300) || r > 10_000.0 {
            break;
        }
        qr = qr * q;
        r += 1.0;
    }
    let mut fact = 1.0;
    for i in 1..k {
        fact *= i as f64;
    }
    C64::new(0.0, -two_pi).powi(k as i32).scale(1.0 / fact) * sum
}

/// Decimal rendering with enough digits for the carried precision.
pub fn dd_to_decimal(x: Dd, digits: usize) -> String {
    if x.hi == 0.0 {
        return "0".to_string();
    }
    if !x.hi.is_finite() {
        return format!("{}", x.hi);
    }
    let neg = x.hi < 0.0;
    let mut v = x.abs();
    let mut e10 = v.hi.log10().floor() as i32;
    // normalise to [1, 10)
    let ten = Dd::new(10.0);
    if e10 >= 0 {
        v = v / ten.powi(e10 as u32);
    } else {
        v = v * ten.powi((-e10) as u32);
    }
    while v.hi >= 10.0 {
        v = v / ten;
        e10 += 1;
    }
    while v.hi < 1.0 {
        v = v * ten;
        e10 -= 1;
    }
    let mut ds = Vec::with_capacity(digits + 1);
    for _ in 0..=digits {
        let d = v.hi.floor().clamp(0.0, 9.0);
        ds.push(d as u8);
        v = (v - Dd::new(d)) * ten;
    }
    // round half up on the extra digit
    if ds[digits] >= 5 {
        let mut i = digits;
        loop {
            if i == 0 {
                ds.insert(0, 1);
                e10 += 1;
                break;
            }
            i -= 1;
            if ds[i] == 9 {
                ds[i] = 0;
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    ds.truncate(digits);
    let mant: String = ds.iter().map(|d| (b'0' + d) as char).collect();
    let body = format!("{}.{}e{}", &mant[..1], &mant[1..], e10);
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

/// Parse a decimal string back to a double-double (used by round-trip tests).
pub fn decimal_to_dd(s: &str) -> Option<Dd> {
    let s = s.trim();
    let (neg, s) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (ip, fp) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    let digits = format!("{}{}", ip, fp);
    let n: BigInt = digits.parse().ok()?;
    let e = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let q = if e >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-e) as usize))
    };
    let v = Dd::from_rational(&q);
    Some(if neg { -v } else { v })
}

pub fn rational_to_dd(q: &BigRational) -> Dd {
    if q.is_zero() {
        Dd::ZERO
    } else if q.is_negative() {
        -Dd::from_rational(&-q)
    } else {
        Dd::from_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_pi_digits() {
        let s = dd_to_decimal(Dd::PI, 30);
        assert!(s.starts_with("3.14159265358979323846264338"), "{}", s);
    }

    #[test]
    fn trig_accuracy() {
        for d in 1..=24i128 {
            for n in 0..d {
                let (c, s) = cos_sin_2pi_frac(n, d);
                let one = c * c + s * s - Dd::ONE;
                assert!(one.to_f64().abs() < 1e-30, "{} {}", n, d);
                let a = 2.0 * std::f64::consts::PI * n as f64 / d as f64;
                assert!((c.to_f64() - a.cos()).abs() < 1e-14);
                assert!((s.to_f64() - a.sin()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn zeta_two() {
        let z = hurwitz_zeta(2, Dd::ONE);
        let exact = Dd::PI * Dd::PI / Dd::new(6.0);
        assert!((z - exact).to_f64().abs() < 1e-30);
    }

    #[test]
    fn lipschitz_matches_direct() {
        let w = C64::new(0.3, 0.7);
        let mut direct = C64::ZERO;
        for j in -200000..=200000 {
            direct = direct + (C64::new(j as f64, 0.0) + w).powi(-3);
        }
        let l = lipschitz_sum(3, w);
        assert!((l - direct).abs() < 1e-9);
        let wn = C64::new(0.3, -0.7);
        let mut direct = C64::ZERO;
        for j in -200000..=200000 {
            direct = direct + (C64::new(j as f64, 0.0) + wn).powi(-4);
        }
        assert!((lipschitz_sum(4, wn) - direct).abs() < 1e-12);
    }

    #[test]
    fn decimal_round_trip() {
        let x = Dd::PI / Dd::new(7.0);
        let s = dd_to_decimal(x, 32);
        let y = decimal_to_dd(&s).unwrap();
        assert!((x - y).to_f64().abs() < 1e-30);
    }
}
