//! Schwartz-Bruhat functions at finite level, the trace pairing and the
//! finite adelic Fourier transform.

pub mod action;
pub mod cyclo;
pub mod table;
pub mod text;
pub mod transform;
pub mod twisted;

pub use action::{mat_det, mat_from_ints, mat_scale, Mat2};
pub use cyclo::CyclotomicValue;
pub use table::{common_scale, FractionalSchwartz, VInt, VPoint};
pub use twisted::{is_s0, random_s0, trace_pairing, PairingValue, TwistedSchwartz};
