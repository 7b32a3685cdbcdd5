//! ζ_F(-1) and ζ_F(-3) three ways: Siegel's divisor sum, generalized
//! Bernoulli numbers and Shintani cones.

use eisen::field::NumberField;
use eisen::zeta::{dedekind_zeta_shintani, quadratic_zeta_bernoulli, ray_class_zeta_sum, siegel_sigma1};

fn main() -> eisen::Result<()> {
    for d in [2i64, 3, 5, 13] {
        let f = NumberField::new(d)?;
        println!(
            "D = {:2}: ζ_F(-1) = {} = {} = {},  ζ_F(-3) = {}",
            d,
            siegel_sigma1(&f),
            quadratic_zeta_bernoulli(&f, 1),
            dedekind_zeta_shintani(&f, 1)?,
            dedekind_zeta_shintani(&f, 3)?
        );
    }
    let f = NumberField::new(5)?;
    for n in [2u64, 3, 4] {
        println!("Q(√5), Σ over Cl({}) of ζ(-1, 𝔄) = {}", n, ray_class_zeta_sum(&f, n, 1)?);
    }
    Ok(())
}
