//! Asymptotic densities: exact inclusion–exclusion over progression unions,
//! certified enclosures for the affine families, the supremum bound and
//! empirical range-scan estimates.
//!
//! Every density here is an exact [`Rational`]; floating point only appears
//! when an enclosure is rendered for display.

mod affine;
mod empirical;
mod enclosure;
mod pie;
mod supremum;
mod tail;

pub use affine::{
    affine_density_enclosure, affine_density_enclosure_with, anti_korselt_enclosure,
    anti_korselt_enclosure_with, r_b_products,
};
pub use empirical::{empirical_density, empirical_density_capped, empirical_density_with};
pub use enclosure::{DensityEnclosure, Truncation};
pub use pie::{finite_union_density, PieBudget, MAX_UNION_SIZE};
pub use supremum::{supremum_prefix_values, supremum_upper_bound, SUPREMUM_CAP};
pub use tail::{prime_tail_bound, sharp_prime_tail_bound};

use crate::arith::Rational;
