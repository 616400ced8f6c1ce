//! Exact integer and number-theoretic kernel shared by every other module.

mod crt;
mod factor;
mod multiplicative;
mod primes;
pub mod rational;
mod sieve;

pub use crt::{crt_merge_u64, crt_solve, Congruence};
pub use factor::{factorize, Factorization, Factorizer, TrialRho};
pub use multiplicative::{carmichael_lambda, euler_phi, lambda_of, phi_of, two_adic_valuation};
pub use primes::{is_prime, mod_pow, mul_mod};
pub use rational::Rational;
pub use sieve::{first_odd_primes, odd_primes_up_to, primes_up_to, SpfSieve};
