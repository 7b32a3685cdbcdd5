//! Eisenstein lattice sums: orbit enumeration, constant terms, the
//! Eisenstein value on the upper half-plane(s), its x-average, and the
//! rational certification of constant terms.

mod buckets;
mod certify;
mod constant_term;
mod domain;
mod oracle;
mod series;

pub use buckets::{cutoff, norm_sign, OrbitSums};
pub use certify::{
    certify_rational, dd_to_rational, reconstruct, tolerance, CertifyFailure, RationalCertificate,
    RunSummary,
};
pub use constant_term::{
    constant_term, gamma_factor, gamma_prefactor, LatticeSumRecord, LatticeSumResult, TorusData,
};
pub(crate) use constant_term::lattice_bound;
pub use domain::UnitFundamentalDomain;
pub use oracle::rank_one_constant_term;
pub use series::{
    constant_term_quadrature, eisenstein_value, eisenstein_value_direct, richardson_at_zero,
    EisensteinPoint,
};
