use num_bigint::{BigInt, BigUint};

use super::Rational;
use crate::arith::{odd_primes_up_to, rational};

/// Beyond this bound the sharp tail is not summed and `1/P` is used.
const SHARP_TAIL_HORIZON: u64 = 100_000;

/// `Σ_{p > P} 1/(p(p-1)) <= Σ_{n > P} 1/(n(n-1)) = 1/P`.
///
/// Always an over-estimate. Panics if `prime_bound` is zero.
pub fn prime_tail_bound(prime_bound: u64) -> Rational {
    assert!(prime_bound > 0, "prime bound must be positive");
    rational::reciprocal(&BigUint::from(prime_bound))
}

/// A tighter certified bound on `Σ_{p > P} 1/(p(p-1))`: the primes up to
/// `Q = 10^5` are summed with every term rounded up to a multiple of
/// `2^-64`, and the rest is bounded by `1/Q`. Falls back to
/// [`prime_tail_bound`] when `P >= Q`.
pub fn sharp_prime_tail_bound(prime_bound: u64) -> Rational {
    if prime_bound >= SHARP_TAIL_HORIZON {
        return prime_tail_bound(prime_bound);
    }
    let unit: u128 = 1 << 64;
    let scaled: u128 = odd_primes_up_to(SHARP_TAIL_HORIZON)
        .into_iter()
        .filter(|&p| p > prime_bound)
        .map(|p| unit.div_ceil(p as u128 * (p as u128 - 1)))
        .sum();
    Rational::new(BigInt::from(scaled), BigInt::from(unit)) + prime_tail_bound(SHARP_TAIL_HORIZON)
}
