//! The integer families characterized by power-sum divisibility, as
//! membership predicates, enumerators and progression constructions.

mod constructions;
mod descriptor;
mod membership;
mod progression;

pub use constructions::{
    affine_complement, f_progression, g_progression, hk_complement, in_p_ab, in_r, intersect_f,
    intersect_g, primes_with_p_minus_one_dividing, wn_complement, xi, xi_progression,
};
pub use descriptor::{AffineFunction, SetDescriptor};
pub use membership::{
    enumerate, enumerate_capped, enumerate_with, family_exponent, member,
    member_lambda_half_by_formula, member_with, Exponent, Membership,
};
pub use progression::{ArithmeticProgression, ProgressionUnion};
