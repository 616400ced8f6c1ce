//! Arithmetic-progression descriptions of the characterized sets and their
//! complements.

use num_bigint::BigInt;
use num_integer::Integer;

use super::progression::{ArithmeticProgression, ProgressionUnion};
use crate::arith::{crt_merge_u64, crt_solve, euler_phi, is_prime, Congruence, Factorizer, TrialRho};
use crate::density::sharp_prime_tail_bound;
use crate::arith::rational::Rational;
use crate::arith::odd_primes_up_to;
use crate::{Error, Result};

fn require_odd_prime(p: u64) -> Result<()> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// `{k >= 1 : n ∤ S_k(n)}` as an exact union over `k`.
pub fn wn_complement(n: u64) -> Result<ProgressionUnion> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let ap = |first, step| ArithmeticProgression::new(first, step).expect("positive");
    Ok(match n % 4 {
        0 => ProgressionUnion {
            exceptions: vec![1],
            ..ProgressionUnion::exact(vec![ap(2, 2)])
        },
        2 => ProgressionUnion::exact(vec![ap(1, 1)]),
        _ => ProgressionUnion::exact(
            TrialRho
                .factor(n)
                .primes()
                .map(|p| ap(p - 1, p - 1))
                .collect(),
        ),
    })
}

fn divisors(k: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in TrialRho.factor(k).iter() {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Odd primes `p` with `p - 1 | k`.
pub fn primes_with_p_minus_one_dividing(k: u64) -> Vec<u64> {
    divisors(k)
        .into_iter()
        .filter_map(|d| d.checked_add(1))
        .filter(|&p| p > 2 && is_prime(p))
        .collect()
}

/// `{n >= 1 : n ∤ S_k(n)}` as an exact union over `n`, derived directly from
/// the divisibility criterion: even `n` for `k = 1`, `n ≡ 2 (mod 4)` for odd
/// `k > 1`, and for even `k` the even numbers together with the multiples of
/// every odd prime `p` with `p - 1 | k`.
pub fn hk_complement(k: u64) -> Result<ProgressionUnion> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let ap = |first, step| ArithmeticProgression::new(first, step).expect("positive");
    Ok(if k == 1 {
        ProgressionUnion::exact(vec![ap(2, 2)])
    } else if k % 2 == 1 {
        ProgressionUnion::exact(vec![ap(2, 4)])
    } else {
        let mut aps = vec![ap(2, 2)];
        aps.extend(primes_with_p_minus_one_dividing(k).into_iter().map(|p| ap(p, p)));
        ProgressionUnion::exact(aps)
    })
}

/// Whether `p ∈ P_{a,b}`, i.e. `gcd(a·p, p - 1) | b`.
pub fn in_p_ab(a: u64, b: i64, p: u64) -> bool {
    let g = ((a as u128) * (p as u128)).gcd(&((p - 1) as u128));
    (b as i128).rem_euclid(g as i128) == 0
}

/// `Ξ(a, b, p)`: the least positive `x` with `x ≡ 0 (mod a·p)` and
/// `x ≡ -b (mod p - 1)`, divided by `a`. Together with
/// [`xi_progression`] it anchors the progression of `n` with `p | n` and
/// `p - 1 | a·n + b`.
pub fn xi(a: u64, b: i64, p: u64) -> Result<u64> {
    Ok(xi_progression(a, b, p)?.first())
}

/// `{Ξ(a,b,p) + s·lcm(a·p, p-1)/a : s >= 0}`.
pub fn xi_progression(a: u64, b: i64, p: u64) -> Result<ArithmeticProgression> {
    if a == 0 {
        return Err(Error::invalid("a must be positive"));
    }
    require_odd_prime(p)?;
    if !in_p_ab(a, b, p) {
        return Err(Error::NoSolution(format!(
            "p = {p} is not in P_(a,b) for a = {a}, b = {b}"
        )));
    }
    let ap_mod = a
        .checked_mul(p)
        .ok_or_else(|| Error::Overflow(format!("{a} * {p}")))?;
    let minus_b = (-(b as i128)).rem_euclid((p - 1) as i128) as u64;
    let (r, l) = crt_merge_u64((0, ap_mod), (minus_b, p - 1))?
        .expect("compatible because p is in P_(a,b)");
    let x = if r == 0 { l } else { r };
    debug_assert_eq!(x % a, 0);
    ArithmeticProgression::new(x / a, l / a)
}

fn affine_parity_case(a: u64, b: i64) -> (bool, bool) {
    (a.is_multiple_of(2), b.rem_euclid(2) == 0)
}

/// The complement of `M_{f_{a,b}}` as a progression union, following the
/// parity cases: `a, b` even gives `2N ∪ ⋃_p Ξ-progressions`, `a, b` odd
/// gives `{n ≡ 2 (mod 4)} ∪ ⋃_p Ξ-progressions`, `a` even / `b` odd gives
/// `{n ≡ 2 (mod 4)}` and `a` odd / `b` even gives `2N`.
///
/// The infinite families are truncated to primes `p <= prime_bound` in
/// `P_{a,b}`; `tail_bound` bounds the density of the rest by
/// `a · Σ_{p > prime_bound} 1/(p(p-1))`. The finitely many `n` with
/// `a·n + b < 1`, or with `a·n + b = 1` and `4 | n`, are not represented.
pub fn affine_complement(a: u64, b: i64, prime_bound: u64) -> Result<ProgressionUnion> {
    if a == 0 {
        return Err(Error::invalid("a must be positive"));
    }
    if prime_bound < 3 {
        return Err(Error::invalid("prime_bound must be at least 3"));
    }
    let ap = |first, step| ArithmeticProgression::new(first, step).expect("positive");
    let exact_note = "exact up to finitely many n with a*n + b <= 1".to_string();
    let (a_even, b_even) = affine_parity_case(a, b);
    let base = match (a_even, b_even) {
        (true, false) => {
            return Ok(ProgressionUnion {
                truncation_note: exact_note,
                ..ProgressionUnion::exact(vec![ap(2, 4)])
            })
        }
        (false, true) => {
            return Ok(ProgressionUnion {
                truncation_note: exact_note,
                ..ProgressionUnion::exact(vec![ap(2, 2)])
            })
        }
        (true, true) => ap(2, 2),
        (false, false) => ap(2, 4),
    };
    let mut progressions = vec![base];
    for p in odd_primes_up_to(prime_bound) {
        if in_p_ab(a, b, p) {
            progressions.push(xi_progression(a, b, p)?);
        }
    }
    let tail = sharp_prime_tail_bound(prime_bound) * Rational::from_integer(BigInt::from(a));
    Ok(ProgressionUnion {
        progressions,
        exceptions: Vec::new(),
        tail_bound: tail,
        truncation_note: format!(
            "Xi-progressions for odd primes p <= {prime_bound} in P_(a,b); omitted p > {prime_bound}; \
             finitely many n with a*n + b <= 1 not represented"
        ),
    })
}

/// `G_p^b`: the positive integers `≡ -b·p (mod p(p-1))`.
pub fn g_progression(p: u64, b: i64) -> Result<ArithmeticProgression> {
    require_odd_prime(p)?;
    if b.rem_euclid(2) == 0 {
        return Err(Error::invalid(format!("b = {b} must be odd")));
    }
    ArithmeticProgression::from_residue(-(b as i128) * p as i128, p * (p - 1))
}

/// `F_p`: the positive integers `≡ p² (mod 2p(p-1))`.
pub fn f_progression(p: u64) -> Result<ArithmeticProgression> {
    require_odd_prime(p)?;
    ArithmeticProgression::from_residue((p as i128) * (p as i128), 2 * p * (p - 1))
}

/// `m ∈ R_b`: `m > 2` and `gcd(m, φ(m)) | b`.
pub fn in_r(m: u64, b: i64) -> bool {
    if m <= 2 {
        return false;
    }
    let g = m.gcd(&euler_phi(m));
    (b as i128).rem_euclid(g as i128) == 0
}

/// `⋂_{p ∈ primes} G_p^b`: empty unless `m = Π p` lies in `R_b`, otherwise
/// the progression `n ≡ 0 (mod m)`, `n ≡ -b (mod λ(m))` of step
/// `lcm(m, λ(m))`.
pub fn intersect_g(primes: &[u64], b: i64) -> Result<Option<ArithmeticProgression>> {
    if primes.is_empty() {
        return Err(Error::invalid("need at least one prime"));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("primes must be distinct"));
    }
    for &p in &sorted {
        require_odd_prime(p)?;
    }
    let m = sorted
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::Overflow(format!("product of {sorted:?}")))?;
    if !in_r(m, b) {
        return Ok(None);
    }
    let lambda = sorted.iter().fold(1u64, |acc, &p| acc.lcm(&(p - 1)));
    let sol = crt_solve(&[
        Congruence::new(0, m)?,
        Congruence::new(-(b as i128), lambda)?,
    ])
    .expect("compatible because m is in R_b");
    ArithmeticProgression::from_congruence(&sol).map(Some)
}

/// `⋂_{p ∈ primes} F_p` (empty intersection gives `None`).
pub fn intersect_f(primes: &[u64]) -> Result<Option<ArithmeticProgression>> {
    let mut system = Vec::with_capacity(primes.len());
    for &p in primes {
        system.push(f_progression(p)?.to_congruence());
    }
    crt_solve(&system)
        .map(|c| ArithmeticProgression::from_congruence(&c))
        .transpose()
}
