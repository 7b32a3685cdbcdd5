//! Constant terms of Eisenstein lattice sums for GL2 over Q and real
//! quadratic fields, with exact oracles and rationality certificates.
//!
//! The modules build on each other bottom-up:
//! `field` (arithmetic in Q(√D)), `classfield` (ray class groups and their
//! characters), `schwartz` (finite-level Schwartz functions and their
//! Fourier transform), `zeta` (Bernoulli/Shintani/Siegel oracles),
//! `eisenstein` (lattice sums, constant terms, certification) and
//! `horospherical` (induced functions, projector, preimages).

pub mod arith;
pub mod classfield;
pub mod cli;
pub mod eisenstein;
pub mod error;
pub mod field;
pub mod horospherical;
pub mod numeric;
pub mod schwartz;
pub mod zeta;

pub use error::{Error, Result};
