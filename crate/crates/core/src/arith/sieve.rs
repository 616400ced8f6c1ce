use super::factor::{factorize, Factorization, Factorizer};

/// Primes `p <= bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Odd primes `3 <= p <= bound`, ascending.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    primes_up_to(bound).into_iter().filter(|&p| p != 2).collect()
}

/// The first `count` odd primes.
pub fn first_odd_primes(count: usize) -> Vec<u64> {
    let mut bound = 64u64;
    loop {
        let ps = odd_primes_up_to(bound);
        if ps.len() >= count {
            return ps[..count].to_vec();
        }
        bound *= 4;
    }
}

/// Smallest-prime-factor table for `1..=limit`, built once and shared
/// read-only across scan threads.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    /// Linear sieve. `limit` must fit in `u32`.
    pub fn new(limit: u64) -> Self {
        assert!(limit <= u32::MAX as u64, "sieve limit must fit in u32");
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let j = i * p as usize;
                if p > si || j > n {
                    break;
                }
                spf[j] = p;
            }
        }
        SpfSieve { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn smallest_prime_factor(&self, n: u64) -> Option<u64> {
        match self.spf.get(n as usize) {
            Some(&p) if p > 0 => Some(p as u64),
            _ => None,
        }
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.smallest_prime_factor(n) == Some(n)
    }
}

impl Factorizer for SpfSieve {
    /// Falls back to trial division and rho above the sieve limit.
    fn factor(&self, n: u64) -> Factorization {
        if n > self.limit() {
            return factorize(n).expect("n >= 1");
        }
        assert!(n >= 1, "cannot factor 0");
        let mut pairs: smallvec::SmallVec<[(u64, u32); 8]> = smallvec::SmallVec::new();
        let mut rest = n as usize;
        while rest > 1 {
            let p = self.spf[rest] as usize;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            pairs.push((p as u64, e));
        }
        Factorization::from_sorted_unchecked(pairs)
    }
}
