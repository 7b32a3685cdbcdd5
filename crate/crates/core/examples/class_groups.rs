//! Narrow ray class groups Cl(N) and their characters.

use eisen::classfield::oracle::narrow_class_number_forms;
use eisen::classfield::{narrow_class_group, RayClassGroup};
use eisen::field::NumberField;

fn main() -> eisen::Result<()> {
    for d in [2i64, 3, 5, 10, 15] {
        let f = NumberField::new(d)?;
        println!(
            "D = {:2}: h⁺ = {} (reduced forms: {})",
            d,
            narrow_class_group(&f)?.order(),
            narrow_class_number_forms(f.disc)
        );
    }
    let f = NumberField::new(5)?;
    for n in 2..=6 {
        let g = RayClassGroup::new(&f, n)?;
        println!(
            "Q(√5), N = {}: |Cl(N)| = {}, invariants {:?}, {} even / {} odd characters",
            n,
            g.order(),
            g.invariants(),
            g.characters_with_sign(0).len(),
            g.characters_with_sign(1).len()
        );
    }
    Ok(())
}
