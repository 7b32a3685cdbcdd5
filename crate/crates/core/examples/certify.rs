//! Rational reconstruction of constant terms over real quadratic fields.

use eisen::arith::factorize;
use eisen::eisenstein::{certify_rational, constant_term, TorusData};
use eisen::field::NumberField;
use eisen::schwartz::random_s0;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> eisen::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = TorusData::default();
    for d in [5i64, 2, 3] {
        let f = NumberField::new(d)?;
        let phi = random_s0(&f, 3, &mut rng)?;
        let primes: Vec<u64> = factorize(3 * f.disc as u64).into_iter().map(|(p, _)| p).collect();
        for m in [0u32, 1] {
            let a = constant_term(&phi, m, &t, 1e4, 96)?;
            let b = constant_term(&phi, m, &t, 2e4, 104)?;
            match certify_rational(&a, &b, &primes, 12) {
                Ok(c) => println!("D = {}, m = {}: {} (denominator {:?})", d, m, c.rational, c.denominator),
                Err(e) => println!("D = {}, m = {}: not certified: {}", d, m, e.reason),
            }
        }
    }
    Ok(())
}
