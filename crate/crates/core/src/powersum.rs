//! Residues of `S_k(n) = Σ_{j=1..n} j^k` modulo `n`.
//!
//! Three independent routes are provided and cross-checked in tests:
//! direct summation ([`power_sum_mod_naive`]), a CRT assembly of closed-form
//! prime-power residues ([`power_sum_mod_fast`]) and the Carlitz–von Staudt
//! congruence for even `n` ([`carlitz_von_staudt_residue`]). The divisibility
//! decision [`divides_power_sum`] uses only the prime divisors of `n`.

use serde::{Deserialize, Serialize};

use crate::arith::{crt_merge_u64, mod_pow, Factorization, Factorizer, TrialRho};
use crate::{Error, Result, DEFAULT_SCAN_CAP};

/// A pair `(n, k)` with `n >= 1` and `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerSumQuery {
    n: u64,
    k: u64,
}

impl PowerSumQuery {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        if k == 0 {
            return Err(Error::invalid("k must be positive (S_0(n) = n is excluded)"));
        }
        Ok(PowerSumQuery { n, k })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }
}

/// `S_k(n) mod n` by summing `j^k mod n`, refusing `n` above `cap`.
pub fn power_sum_mod_naive_capped(q: PowerSumQuery, cap: u64) -> Result<u64> {
    if q.n > cap {
        return Err(Error::CapExceeded {
            what: "naive summation length n",
            value: q.n,
            cap,
        });
    }
    let n = q.n;
    let mut acc = 0u64;
    for j in 1..=n {
        // acc, term < n so the sum fits in u128 trivially and u64 after reduction
        acc = ((acc as u128 + mod_pow(j, q.k, n) as u128) % n as u128) as u64;
    }
    Ok(acc)
}

/// Ground-truth oracle with the default cap of 10^7 terms.
pub fn power_sum_mod_naive(q: PowerSumQuery) -> Result<u64> {
    power_sum_mod_naive_capped(q, DEFAULT_SCAN_CAP)
}

/// `S_k(p^r) mod p^r` from the closed forms for a single prime power.
fn prime_power_block(p: u64, r: u32, k: u64) -> u64 {
    let q = p.pow(r);
    let half = p.pow(r - 1);
    if p == 2 {
        if k % 2 == 1 {
            mod_pow(half, k, q)
        } else {
            half % q
        }
    } else if k.is_multiple_of(p - 1) {
        // -p^(r-1)
        q - half
    } else {
        0
    }
}

/// `S_k(n) mod n` in `O(ω(n) log k)` from a known factorization of `n`.
pub fn power_sum_mod_factored(q: PowerSumQuery, f: &Factorization) -> u64 {
    match q.n {
        1 => return 0,
        2 => return 1,
        _ => {}
    }
    let mut acc = (0u64, 1u64);
    for (p, r) in f.iter() {
        let pr = p.pow(r);
        let cofactor = (q.n / pr) % pr;
        let local = ((cofactor as u128 * prime_power_block(p, r, q.k) as u128) % pr as u128) as u64;
        acc = crt_merge_u64(acc, (local, pr))
            .expect("prime-power moduli multiply to n")
            .expect("coprime moduli are always compatible");
    }
    acc.0
}

/// `S_k(n) mod n` via prime-power closed forms combined by CRT.
pub fn power_sum_mod_fast(q: PowerSumQuery) -> u64 {
    power_sum_mod_factored(q, &TrialRho.factor(q.n))
}

/// Whether `n | S_k(n)`, given the factorization of `n`.
pub fn divides_power_sum_factored(q: PowerSumQuery, f: &Factorization) -> bool {
    let (n, k) = (q.n, q.k);
    if n == 1 {
        return true;
    }
    if n % 2 == 1 {
        f.primes().all(|p| k % (p - 1) != 0)
    } else if n % 4 == 2 {
        false
    } else {
        k % 2 == 1 && k > 1
    }
}

/// Whether `n | S_k(n)`, decided from the prime divisors of `n` alone.
pub fn divides_power_sum(q: PowerSumQuery) -> bool {
    if q.n.is_multiple_of(2) {
        // the even cases never look at the odd primes
        return divides_power_sum_factored(q, &Factorization::default());
    }
    divides_power_sum_factored(q, &TrialRho.factor(q.n))
}

/// `-Σ_{p | n, p-1 | k} n/p mod n` for even `n` and `k > 1`.
///
/// The congruence holds for even `k` and for `n ≡ 2 (mod 4)`. For odd `k`
/// with `4 | n` the `p = 2` term would contribute `n/2` while the true
/// residue is `0` (for example `S_3(4) = 100`), so that case returns `0`.
pub fn carlitz_von_staudt_residue(q: PowerSumQuery) -> Result<u64> {
    if q.n % 2 == 1 || q.k <= 1 {
        return Err(Error::Domain {
            operation: "carlitz_von_staudt_residue",
            reason: format!("requires even n and k > 1, got n = {}, k = {}", q.n, q.k),
        });
    }
    if q.k % 2 == 1 && q.n.is_multiple_of(4) {
        return Ok(0);
    }
    let n = q.n;
    let sum = TrialRho
        .factor(n)
        .primes()
        .filter(|&p| q.k.is_multiple_of(p - 1))
        .fold(0u64, |acc, p| (acc + n / p) % n);
    Ok((n - sum) % n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: u64, k: u64) -> PowerSumQuery {
        PowerSumQuery::new(n, k).unwrap()
    }

    // exact S_k(n) mod n with big integers, independent of mod_pow
    fn exact_sum_mod(n: u64, k: u64) -> u64 {
        use num_bigint::BigUint;
        let s: BigUint = (1..=n).map(|j| BigUint::from(j).pow(k as u32)).sum();
        u64::try_from(s % n).unwrap()
    }

    #[test]
    fn query_validation() {
        assert!(PowerSumQuery::new(0, 3).is_err());
        assert!(PowerSumQuery::new(5, 0).is_err());
        assert_eq!(q(5, 4).n(), 5);
    }

    #[test]
    fn naive_examples() {
        assert_eq!(power_sum_mod_naive(q(5, 4)).unwrap(), 4);
        assert_eq!(power_sum_mod_naive(q(1, 7)).unwrap(), 0);
        assert_eq!(power_sum_mod_naive(q(9, 4)).unwrap(), 6);
        assert_eq!(exact_sum_mod(9, 4), 6);
        let err = power_sum_mod_naive_capped(q(1_001, 2), 1_000).unwrap_err();
        assert!(err.to_string().contains("1000"));
    }

    #[test]
    fn fast_examples() {
        assert_eq!(power_sum_mod_fast(q(9, 4)), 6);
        assert_eq!(power_sum_mod_fast(q(45, 3)), 0);
        assert_eq!(power_sum_mod_fast(q(4, 2)), 2);
        assert_eq!(power_sum_mod_fast(q(1, 9)), 0);
        assert_eq!(power_sum_mod_fast(q(2, 9)), 1);
    }

    #[test]
    fn decision_examples() {
        assert!(divides_power_sum(q(12, 3)));
        assert_eq!(exact_sum_mod(12, 3), 0);
        assert!(!divides_power_sum(q(6, 5)));
        assert!(divides_power_sum(q(35, 34)));
        assert_eq!(power_sum_mod_naive(q(35, 34)).unwrap(), 0);
        assert!(divides_power_sum(q(1, 1)));
        assert!(!divides_power_sum(q(8, 1)));
    }

    #[test]
    fn carlitz_von_staudt_examples() {
        assert_eq!(carlitz_von_staudt_residue(q(12, 4)).unwrap(), 2);
        assert_eq!(carlitz_von_staudt_residue(q(6, 2)).unwrap(), 1);
        assert_eq!(carlitz_von_staudt_residue(q(2, 2)).unwrap(), 1);
        assert!(matches!(
            carlitz_von_staudt_residue(q(9, 4)),
            Err(Error::Domain { .. })
        ));
        assert!(carlitz_von_staudt_residue(q(8, 1)).is_err());
        assert_eq!(carlitz_von_staudt_residue(q(4, 3)).unwrap(), 0);
        assert_eq!(exact_sum_mod(4, 3), 0);
        assert_eq!(carlitz_von_staudt_residue(q(6, 3)).unwrap(), exact_sum_mod(6, 3));
    }

    #[test]
    fn carlitz_von_staudt_matches_naive() {
        for n in (2..=600).step_by(2) {
            for k in 2..=40 {
                assert_eq!(
                    carlitz_von_staudt_residue(q(n, k)).unwrap(),
                    power_sum_mod_naive(q(n, k)).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn naive_matches_big_integer_sum() {
        for n in 1..=60 {
            for k in 1..=12 {
                assert_eq!(power_sum_mod_naive(q(n, k)).unwrap(), exact_sum_mod(n, k));
            }
        }
    }

    #[test]
    fn fast_matches_naive_on_grid() {
        for n in 1..=600 {
            for k in 1..=40 {
                let naive = power_sum_mod_naive(q(n, k)).unwrap();
                assert_eq!(power_sum_mod_fast(q(n, k)), naive, "n={n} k={k}");
                assert_eq!(divides_power_sum(q(n, k)), naive == 0, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn prime_residue_is_zero_or_minus_one() {
        for p in crate::arith::primes_up_to(500) {
            for k in 1..=60 {
                let expected = if k % (p - 1) == 0 { p - 1 } else { 0 };
                assert_eq!(power_sum_mod_fast(q(p, k)), expected, "p={p} k={k}");
            }
        }
    }

    proptest! {
        #[test]
        fn fast_matches_naive_random(n in 1u64..=200_000, k in 1u64..=1_000_000_000) {
            prop_assert_eq!(power_sum_mod_fast(q(n, k)), power_sum_mod_naive(q(n, k)).unwrap());
        }

        #[test]
        fn block_reduction(qq in 1u64..=300, mult in 1u64..=40, k in 1u64..=500) {
            let n = qq * mult;
            let lhs = power_sum_mod_naive(q(n, k)).unwrap() % qq;
            let rhs = ((n / qq % qq) * power_sum_mod_naive(q(qq, k)).unwrap()) % qq;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
