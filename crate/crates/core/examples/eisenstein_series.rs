//! Values of the holomorphic lattice sum E(τ) at a few points.

use eisen::eisenstein::{eisenstein_value, EisensteinPoint};
use eisen::field::NumberField;
use eisen::numeric::C64;
use eisen::schwartz::{FractionalSchwartz, TwistedSchwartz};

fn main() -> eisen::Result<()> {
    let q = NumberField::rationals();
    let phi = TwistedSchwartz::untwisted(FractionalSchwartz::from_points(
        &q,
        2,
        &[(((1, 0), (0, 0)), 1), (((0, 0), (1, 0)), -1)],
    ));
    for m in [0u32, 1, 2] {
        for tau in [C64::new(0.0, 1.0), C64::new(0.25, 0.8), C64::new(-0.4, 1.5)] {
            let pt = EisensteinPoint::new(vec![tau], 1.0);
            let v = eisenstein_value(&phi, m, 0.0, &pt, 1e4, 128)?;
            println!(
                "m = {}, τ = {:+.2}{:+.2}i: E = {:+.12e} {:+.12e}i (tail ≤ {:.1e})",
                m,
                tau.re,
                tau.im,
                v.value.re.to_f64(),
                v.value.im.to_f64(),
                v.tail_estimate
            );
        }
    }
    Ok(())
}
