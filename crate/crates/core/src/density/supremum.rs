use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::arith::{first_odd_primes, rational};
use crate::{Error, Execution, Result};

/// Largest `k` accepted by the supremum computation (`2^k` subsets).
pub const SUPREMUM_CAP: u32 = 26;

/// `Σ_{m | p_1⋯p_k} (-1)^{ω(m)} / lcm(m, λ(m)) - 1/4` over the first `k`
/// odd primes, the `m = 1` term included.
///
/// The sequence is non-increasing in `k`, so every value is an upper bound
/// for its limit, the supremum of the densities `δ(M_{n+b})` over odd `b`.
pub fn supremum_upper_bound(k: u32) -> Result<Rational> {
    Ok(supremum_prefix_values(k, Execution::default())?
        .pop()
        .expect("k >= 1 gives one value"))
}

/// The values for `1..=k` from a single enumeration: each subset is booked
/// under its largest prime, so prefix sums give every shorter product.
pub fn supremum_prefix_values(k: u32, exec: Execution) -> Result<Vec<Rational>> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    if k > SUPREMUM_CAP {
        return Err(Error::CapExceeded {
            what: "supremum prime count k",
            value: k as u64,
            cap: SUPREMUM_CAP as u64,
        });
    }
    let primes = first_odd_primes(k as usize);
    let common = primes
        .iter()
        .flat_map(|&p| [BigUint::from(p), BigUint::from(p - 1)])
        .fold(BigUint::one(), |acc, x| acc.lcm(&x));
    let tops: Vec<usize> = (0..primes.len()).collect();
    let parts = exec.map_slice(&tops, |&i| {
        let mut buckets = vec![BigInt::zero(); primes.len()];
        let node = Node::single(primes[i]);
        walk(&primes, &common, &node, i, &mut buckets);
        buckets
    });
    let mut buckets = vec![BigInt::zero(); primes.len()];
    for part in parts {
        for (b, x) in buckets.iter_mut().zip(part) {
            *b += x;
        }
    }
    let den = BigInt::from(common.clone());
    let mut running = BigInt::from(common);
    let quarter = rational::ratio(1, 4);
    Ok(buckets
        .into_iter()
        .map(|b| {
            running += b;
            Rational::new(running.clone(), den.clone()) - &quarter
        })
        .collect())
}

#[derive(Clone)]
struct Node {
    /// `(-1)^{ω(m)}` as a sign flag.
    negative: bool,
    m: BigUint,
    lambda: BigUint,
}

impl Node {
    fn single(p: u64) -> Self {
        Node {
            negative: true,
            m: BigUint::from(p),
            lambda: BigUint::from(p - 1),
        }
    }

    fn with(&self, p: u64) -> Self {
        Node {
            negative: !self.negative,
            m: &self.m * p,
            lambda: self.lambda.lcm(&BigUint::from(p - 1)),
        }
    }

    fn term(&self, common: &BigUint) -> BigInt {
        let step = (&self.m / self.m.gcd(&self.lambda)) * &self.lambda;
        let t = BigInt::from(common / step);
        if self.negative {
            -t
        } else {
            t
        }
    }
}

fn walk(primes: &[u64], common: &BigUint, node: &Node, last: usize, buckets: &mut [BigInt]) {
    buckets[last] += node.term(common);
    for j in last + 1..primes.len() {
        walk(primes, common, &node.with(primes[j]), j, buckets);
    }
}
