//! Narrow ray class groups of real quadratic fields (and of Q) with their
//! character groups.

pub mod abelian;
pub mod oracle;
pub mod ray;

pub use abelian::AbelianGroup;
pub use ray::{
    narrow_class_group, residue_of, sign_bits, sign_representative, HeckeCharacter, RayClassGroup,
    RayElem,
};
