//! Constant terms over Q: the lattice sum, the Bernoulli closed form and
//! the torus average of E.

use eisen::eisenstein::{constant_term, constant_term_quadrature, rank_one_constant_term, TorusData};
use eisen::field::NumberField;
use eisen::schwartz::random_s0;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> eisen::Result<()> {
    let q = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [3u64, 4, 5] {
        let phi = random_s0(&q, n, &mut rng)?;
        for m in [0u32, 1] {
            let ct = constant_term(&phi, m, &TorusData::default(), 1e5, 128)?;
            let exact = rank_one_constant_term(&phi, m)?;
            let avg = constant_term_quadrature(&phi, m, &[1.0], 1.0, 64, 1e4, 128)?;
            println!(
                "N = {}, m = {}: lattice {:+.15}, exact {}, quadrature {:+.15}",
                n,
                m,
                ct.value.re.to_f64(),
                exact.as_rational().map(|r| r.to_string()).unwrap_or_default(),
                avg.re.to_f64()
            );
        }
    }
    Ok(())
}
