//! ρ on S⁰ lands in the kernel of the spherical projector.

use eisen::field::NumberField;
use eisen::horospherical::{psi_project, rho0, spherical_families, LevelData};
use eisen::schwartz::random_s0;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> eisen::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (d, n) in [(1i64, 4u64), (1, 5), (5, 3)] {
        let f = NumberField::new(d)?;
        let level = LevelData::new(&f, n)?;
        println!(
            "{} N = {}: |GL2| = {}, |SL2| = {}, {} spherical families",
            f.name(),
            n,
            level.gl2.order(),
            level.gl2.sl2_order(),
            spherical_families(&level).len()
        );
        let phi = random_s0(&f, n, &mut rng)?;
        let r = rho0(&level, &phi, 0, 1e4, 128)?;
        for c in &r.components {
            let p = psi_project(c);
            println!(
                "  χ′ of order {}: max |ρ| = {:.3e}, Ψ coefficient {:.1e}, law residual {:.1e}",
                c.data.chi.order(),
                c.max_abs(),
                p.coefficient.abs(),
                c.law_residual()
            );
        }
    }
    Ok(())
}
