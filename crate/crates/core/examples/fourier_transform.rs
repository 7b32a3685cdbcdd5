//! The finite Fourier transform of a level-3 table over Q(√5).

use eisen::field::{FieldElement, NumberField};
use eisen::schwartz::{mat_from_ints, FractionalSchwartz};

fn main() -> eisen::Result<()> {
    let f = NumberField::new(5)?;
    let phi = FractionalSchwartz::from_points(&f, 3, &[(((1, 0), (0, 1)), 2), (((0, 0), (2, 2)), -1)]);
    let fh = phi.fourier_transform()?;
    println!("φ at scale {} + {}ω, modulus {}", phi.scale.a, phi.scale.b, phi.modulus);
    println!("φ̂ at scale {} + {}ω, modulus {}", fh.scale.a, fh.scale.b, fh.modulus);
    println!("φ̂(0) = ∫φ = {}", fh.value_at_zero().as_rational().expect("rational table"));
    println!("φ̂̂ = φ: {}", fh.fourier_transform()?.equals(&phi)?);

    // (φ·w)^ = φ̂·w for the Weyl element
    let w = mat_from_ints([[0, 1], [-1, 0]]);
    let lhs = phi.act_group(&w)?.fourier_transform()?;
    let rhs = fh.act_group(&w)?;
    println!("(φ·w)^ = φ̂·w: {}", lhs.equals(&rhs)?);

    let half = phi.act_scalar(&FieldElement::from_int(2))?;
    println!("v ↦ φ(2v) has integral {}", half.integral().as_rational().expect("rational table"));
    println!("{}", phi.to_text());
    Ok(())
}
