//! Plain-text serialization of Schwartz functions.
//!
//! ```text
//! schwartz 1
//! field 5
//! scale 1/3 0
//! modulus 3
//! order 3
//! factor 1/2
//! 4 0:1 2:-1
//! ```
//!
//! Entry lines hold a table index followed by exponent:coefficient pairs
//! over powers of ζ_order; omitted indices are zero.

use super::table::FractionalSchwartz;
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use num_rational::BigRational;
use std::fmt::Write;
use std::str::FromStr;

impl FractionalSchwartz {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "schwartz 1").unwrap();
        writeln!(s, "field {}", self.field.d).unwrap();
        writeln!(s, "scale {} {}", self.scale.a, self.scale.b).unwrap();
        writeln!(s, "modulus {}", self.modulus).unwrap();
        writeln!(s, "order {}", self.order).unwrap();
        writeln!(s, "factor {}", self.factor).unwrap();
        for i in 0..self.len() {
            let e = self.entry(i);
            if e.iter().all(|&x| x == 0) {
                continue;
            }
            write!(s, "{}", i).unwrap();
            for (j, &c) in e.iter().enumerate() {
                if c != 0 {
                    write!(s, " {}:{}", j, c).unwrap();
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("schwartz text: bad {}", what));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut header = |key: &str| -> Result<String> {
            let l = lines.next().ok_or_else(|| bad(key))?;
            l.strip_prefix(key)
                .map(|r| r.trim().to_string())
                .ok_or_else(|| bad(key))
        };
        if header("schwartz")? != "1" {
            return Err(bad("version"));
        }
        let d: i64 = header("field")?.parse().map_err(|_| bad("field"))?;
        let field = NumberField::new(d)?;
        let sc = header("scale")?;
        let mut it = sc.split_whitespace();
        let a = BigRational::from_str(it.next().ok_or_else(|| bad("scale"))?).map_err(|_| bad("scale"))?;
        let b = BigRational::from_str(it.next().ok_or_else(|| bad("scale"))?).map_err(|_| bad("scale"))?;
        let modulus: u64 = header("modulus")?.parse().map_err(|_| bad("modulus"))?;
        let order: u64 = header("order")?.parse().map_err(|_| bad("order"))?;
        let factor = BigRational::from_str(&header("factor")?).map_err(|_| bad("factor"))?;
        if modulus == 0 || order == 0 {
            return Err(bad("modulus"));
        }
        let mut f = FractionalSchwartz::zero(&field, FieldElement::new(a, b), modulus).lift_order(order);
        f.factor = factor;
        let n = f.len();
        let m = order as usize;
        for l in lines {
            let mut parts = l.split_whitespace();
            let i: usize = parts
                .next()
                .and_then(|x| x.parse().ok())
                .filter(|&i| i < n)
                .ok_or_else(|| bad("index"))?;
            for p in parts {
                let (j, c) = p.split_once(':').ok_or_else(|| bad("entry"))?;
                let j: usize = j.parse().ok().filter(|&j| j < m).ok_or_else(|| bad("exponent"))?;
                let c: i128 = c.parse().map_err(|_| bad("coefficient"))?;
                f.data[i * m + j] += c;
            }
        }
        if f.scale.is_zero() {
            return Err(bad("scale"));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let fld = NumberField::new(5).unwrap();
        let f = FractionalSchwartz::from_points(&fld, 3, &[(((1, 0), (0, 1)), 2), (((0, 2), (1, 1)), -1)])
            .fourier_transform()
            .unwrap();
        let g = FractionalSchwartz::from_text(&f.to_text()).unwrap();
        assert!(g.equals(&f).unwrap());
        assert_eq!(g.to_text(), f.to_text());
        assert!(FractionalSchwartz::from_text("schwartz 2\n").is_err());
    }
}
