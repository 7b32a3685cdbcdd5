//! Independent checks for class group computations: reduced indefinite
//! binary quadratic forms, and a unit search in a box for ray class orders.

use crate::field::{NumberField, OInt, Residue};
use std::collections::HashSet;

type Form = (i64, i64, i64);

fn isqrt(n: i64) -> i64 {
    let mut s = (n as f64).sqrt() as i64;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    crate::arith::gcd(crate::arith::gcd(a, b), c)
}

/// Reduced primitive forms of a non-square discriminant.
pub fn reduced_forms(disc: i64) -> Vec<Form> {
    let s = isqrt(disc);
    let mut out = Vec::new();
    for b in 1..=s {
        if (b - disc).rem_euclid(2) != 0 {
            continue;
        }
        for a_abs in 1..=(s + b) {
            let two_a = 2 * a_abs;
            // √d - b < 2|a| < √d + b
            if (two_a + b) * (two_a + b) <= disc {
                continue;
            }
            if two_a > b && (two_a - b) * (two_a - b) >= disc {
                continue;
            }
            for a in [a_abs, -a_abs] {
                let num = b * b - disc;
                if num % (4 * a) == 0 {
                    let c = num / (4 * a);
                    if gcd3(a, b, c).abs() == 1 {
                        out.push((a, b, c));
                    }
                }
            }
        }
    }
    out
}

fn rho(f: Form, disc: i64) -> Form {
    let (_, b, c) = f;
    let s = isqrt(disc);
    let m = 2 * c.abs();
    let b2 = s - (s + b).rem_euclid(m);
    (c, b2, (b2 * b2 - disc) / (4 * c))
}

/// Narrow class number as the number of ρ-cycles of reduced forms.
pub fn narrow_class_number_forms(disc: i64) -> usize {
    let forms = reduced_forms(disc);
    let mut seen = HashSet::new();
    let mut cycles = 0;
    for &f in &forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut g = f;
        while seen.insert(g) {
            g = rho(g, disc);
        }
    }
    cycles
}

/// Units of norm ±1 with coordinates in a box.
pub fn units_in_box(field: &NumberField, r: i128) -> Vec<OInt> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            if field.norm_int((a, b)).abs() == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

/// |(O/N)^× × {±}^n / image(units)| for a field of class number one,
/// using only units found by search.
pub fn ray_class_order_brute(field: &NumberField, modulus: u64, r: i128) -> usize {
    let res = Residue::new(field, modulus);
    let nsig = 1u8 << field.degree;
    let gens: Vec<(OInt, u8)> = if field.is_rational() {
        vec![(res.reduce((-1, 0)), 1)]
    } else {
        units_in_box(field, r)
            .into_iter()
            .map(|u| {
                let s = (0..2).filter(|&i| field.sign_int(u, i) < 0).fold(0u8, |s, i| s | 1 << i);
                (res.reduce(u), s)
            })
            .collect()
    };
    let mut sub: HashSet<(OInt, u8)> = HashSet::from([(res.reduce((1, 0)), 0)]);
    let mut frontier: Vec<(OInt, u8)> = sub.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &(u, s) in &gens {
            let y = (res.mul(x.0, u), x.1 ^ s);
            if sub.insert(y) {
                frontier.push(y);
            }
        }
    }
    res.units().len() * nsig as usize / sub.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn narrow_class_numbers() {
        // d_F: 5 → 1, 12 → 2, 60 → 4, 120 → 4, 40 → 2, 13 → 1
        assert_eq!(narrow_class_number_forms(5), 1);
        assert_eq!(narrow_class_number_forms(12), 2);
        assert_eq!(narrow_class_number_forms(60), 4);
        assert_eq!(narrow_class_number_forms(120), 4);
        assert_eq!(narrow_class_number_forms(40), 2);
        assert_eq!(narrow_class_number_forms(13), 1);
    }

    #[test]
    fn brute_ray_orders() {
        let f = NumberField::new(5).unwrap();
        assert_eq!(ray_class_order_brute(&f, 3, 10), 2);
        assert_eq!(ray_class_order_brute(&f, 4, 10), 4);
        assert_eq!(ray_class_order_brute(&NumberField::rationals(), 12, 1), 4);
    }
}
