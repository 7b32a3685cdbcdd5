//! The horospherical map and the boundary side of the Eisenstein classes.
//!
//! Everything is computed at a finite level N on tables over GL₂(O/N).
//! Fields of narrow class number one only: then every ray class mod N is
//! represented by a unit residue, which the Tate integrals and the
//! preimage construction rely on.

mod group;
mod ind;
mod lfunc;
mod preimage;
mod rho;

pub use group::{sl2_order_formula, Gl2Level, ResMat, ENUMERATION_BUDGET};
pub use ind::{
    psi_project, random_ind_function, random_kernel_function, spherical_families, FiniteIdele,
    HeckeData, IndFunction, LevelData, Projection, SphericalData,
};
pub use lfunc::{hecke_l_lattice, hecke_l_partial, lambda_n, LMethod, LValue, LambdaValue};
pub use preimage::{preimage, preimage_table, Preimage};
pub use rho::{rho0, rho_m, Rho};
