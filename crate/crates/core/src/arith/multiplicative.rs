use num_integer::Integer;

use super::factor::{factorize, Factorization};

/// Euler's totient from a factorization.
pub fn phi_of(f: &Factorization) -> u64 {
    f.iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Carmichael's function from a factorization: `λ(2) = 1`, `λ(4) = 2`,
/// `λ(2^m) = 2^(m-2)` for `m >= 3`, `λ(p^r) = φ(p^r)` for odd `p`, and the
/// lcm over prime powers.
pub fn lambda_of(f: &Factorization) -> u64 {
    f.iter()
        .map(|(p, e)| match (p, e) {
            (2, 1) => 1,
            (2, 2) => 2,
            (2, e) => 1 << (e - 2),
            (p, e) => (p - 1) * p.pow(e - 1),
        })
        .fold(1u64, |acc, x| acc.lcm(&x))
}

/// `φ(n)`, with `φ(1) = 1`.
///
/// # Panics
///
/// If `n == 0`.
pub fn euler_phi(n: u64) -> u64 {
    phi_of(&factorize(n).expect("euler_phi requires n >= 1"))
}

/// `λ(n)`, with `λ(1) = λ(2) = 1`.
///
/// # Panics
///
/// If `n == 0`.
pub fn carmichael_lambda(n: u64) -> u64 {
    lambda_of(&factorize(n).expect("carmichael_lambda requires n >= 1"))
}

/// Largest `k` with `2^k | m`.
///
/// # Panics
///
/// If `m == 0`.
pub fn two_adic_valuation(m: u64) -> u32 {
    assert!(m >= 1, "two_adic_valuation requires m >= 1");
    m.trailing_zeros()
}
