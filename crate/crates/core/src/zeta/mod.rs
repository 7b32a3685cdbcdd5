//! Exact oracles: Bernoulli numbers, rank-one twisted zeta values and
//! partial zeta values of real quadratic fields at negative integers.

pub mod bernoulli;
pub mod shintani;
pub mod siegel;

pub use bernoulli::{bernoulli, bernoulli_poly, twisted_zeta_rank1, BernoulliCache};
pub use shintani::{
    dedekind_zeta_shintani, ray_class_zeta_sum, ray_class_zetas, shintani_partial_zeta, ShintaniCone,
};
pub use siegel::{quadratic_zeta_bernoulli, siegel_sigma1};
