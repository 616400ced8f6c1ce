use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use smallvec::SmallVec;

use super::primes::{is_prime, mul_mod};
use super::sieve::primes_up_to;
use crate::{Error, Result};

/// Canonical prime-power decomposition: `(prime, exponent)` pairs with
/// strictly increasing primes. The integer 1 has no factors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: SmallVec<[(u64, u32); 8]>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs, validating
    /// primality, ordering and that the product fits in 64 bits.
    pub fn from_pairs(pairs: &[(u64, u32)]) -> Result<Self> {
        let mut prev = 1u64;
        for &(p, e) in pairs {
            if p <= prev || !is_prime(p) || e == 0 {
                return Err(Error::invalid(format!(
                    "not a canonical factorization: {pairs:?}"
                )));
            }
            prev = p;
        }
        let f = Factorization {
            factors: pairs.iter().copied().collect(),
        };
        f.checked_value()
            .ok_or_else(|| Error::Overflow(f.to_string()))?;
        Ok(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().copied()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Odd prime divisors, ascending.
    pub fn odd_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes().filter(|&p| p != 2)
    }

    /// Number of distinct prime factors, ω(n).
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` in the factorization (0 if `p` does not divide).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn checked_value(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            acc.checked_mul(p.checked_pow(e)?)
        })
    }

    /// The factored integer.
    pub fn value(&self) -> u64 {
        self.checked_value()
            .expect("factorization was validated to fit in u64")
    }

    pub(crate) fn from_sorted_unchecked(factors: SmallVec<[(u64, u32); 8]>) -> Self {
        Factorization { factors }
    }

    fn push(&mut self, p: u64, e: u32) {
        self.factors.push((p, e));
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Anything that can factor positive 64-bit integers. Range scans pass a
/// sieve; one-off queries use [`TrialRho`].
pub trait Factorizer: Sync {
    fn factor(&self, n: u64) -> Factorization;
}

/// Trial division by small primes followed by Pollard–Brent rho.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrialRho;

impl Factorizer for TrialRho {
    fn factor(&self, n: u64) -> Factorization {
        factorize(n).expect("Factorizer::factor requires n >= 1")
    }
}

const TRIAL_BOUND: u64 = 4096;

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_BOUND))
}

/// Canonical factorization of `n >= 1`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("cannot factor 0"));
    }
    let mut out = Factorization::default();
    let mut rest = n;
    for &p in trial_primes() {
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            out.push(p, e);
        }
    }
    if rest == 1 {
        return Ok(out);
    }
    if rest < TRIAL_BOUND * TRIAL_BOUND {
        // every prime below TRIAL_BOUND is already removed
        out.push(rest, 1);
        return Ok(out);
    }
    let mut large = Vec::new();
    split_large(rest, &mut large);
    large.sort_unstable();
    let mut i = 0;
    while i < large.len() {
        let p = large[i];
        let e = large[i..].iter().take_while(|&&q| q == p).count();
        out.push(p, e as u32);
        i += e;
    }
    Ok(out)
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// A nontrivial divisor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let isqrt = n.isqrt();
    if isqrt * isqrt == n {
        return isqrt;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut g = 1u64;
        let mut q = 1u64;
        let mut r = 1u64;
        const M: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += M;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}
