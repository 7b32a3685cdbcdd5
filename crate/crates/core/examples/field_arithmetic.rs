//! Arithmetic in Q(√5): ω, the different, norms and the unit group.

use eisen::field::{FieldElement, NumberField};

fn main() -> eisen::Result<()> {
    let f = NumberField::new(5)?;
    println!("{}: d_F = {}, ω² = {}ω + {}", f.name(), f.disc, f.t, f.n);

    let x = FieldElement::from_ints(3, 2);
    let y = f.inv(&x)?;
    println!("x = 3 + 2ω, N(x) = {}, Tr(x) = {}", f.norm(&x), f.trace(&x));
    println!("1/x = {} + ({})ω", y.a, y.b);
    let d2 = f.mul(&f.delta(), &f.delta());
    println!("δ = 2ω − t, δ² = {} + ({})ω", d2.a, d2.b);

    let u = f.unit_data()?;
    println!("ε = {} + {}ω (norm {}), ε₊ = ε^{}", u.eps.0, u.eps.1, u.eps_norm, u.plus_exp);
    for d in [2, 3, 7, 13] {
        let g = NumberField::new(d)?;
        let u = g.unit_data()?;
        println!("D = {:2}: ε = {} + {}ω, N(ε) = {}", d, u.eps.0, u.eps.1, u.eps_norm);
    }
    Ok(())
}
