//! An explicit φ₀ with ρ(φ₀) = Λ_N·ψ for a kernel element ψ.

use eisen::field::NumberField;
use eisen::horospherical::{preimage, random_kernel_function, rho0, spherical_families, LMethod, LevelData};
use eisen::schwartz::is_s0;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> eisen::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (d, n) in [(1i64, 5u64), (5, 3)] {
        let f = NumberField::new(d)?;
        let level = LevelData::new(&f, n)?;
        let data = spherical_families(&level).remove(0);
        let psi = random_kernel_function(&level, &data, &mut rng)?;
        let pre = preimage(&psi, LMethod::Lattice { bound: 1e4, bits: 128 })?;
        let r = rho0(&level, &pre.phi, 0, 1e4, 128)?.scaled(pre.scale);
        let back = r
            .components
            .iter()
            .find(|c| c.data.chi == psi.data.chi)
            .expect("one component per character");
        println!(
            "{} N = {}: Λ_N = {:+.12} {:+.12}i, φ₀ ∈ S⁰: {}, max |ρ(φ₀)/Λ − ψ| = {:.1e}",
            f.name(),
            n,
            pre.lambda.value.re.to_f64(),
            pre.lambda.value.im.to_f64(),
            is_s0(&pre.phi),
            back.distance(&psi)
        );
    }
    Ok(())
}
