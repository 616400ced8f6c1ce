use serde::Serialize;

use super::descriptor::SetDescriptor;
use crate::arith::{lambda_of, phi_of, two_adic_valuation, Factorization, Factorizer, SpfSieve, TrialRho};
use crate::powersum::{divides_power_sum_factored, PowerSumQuery};
use crate::{Error, Execution, Result, DEFAULT_SCAN_CAP};

/// Outcome of a membership test.
///
/// `OutOfDomain` marks an `n` whose exponent `f(n)` is not a positive
/// integer (or does not fit in 64 bits); such `n` count as non-members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Member,
    NonMember,
    OutOfDomain,
}

impl Membership {
    pub fn is_member(self) -> bool {
        self == Membership::Member
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Membership::Member
        } else {
            Membership::NonMember
        }
    }
}

/// The exponent a family attaches to `n`, for families of the form
/// `{n : n | S_{f(n)}(n)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    /// The family is not defined through an exponent (`Υ_k`, `W(n)`).
    NotApplicable,
    OutOfDomain,
    Value(u64),
}

/// `f(n)` for the exponent-based families.
pub fn family_exponent<F: Factorizer + ?Sized>(set: &SetDescriptor, n: u64, fz: &F) -> Exponent {
    let half = |v: u64| {
        if v.is_multiple_of(2) {
            Exponent::Value(v / 2)
        } else {
            Exponent::OutOfDomain
        }
    };
    let positive = |v: Option<u64>| match v {
        Some(k) if k >= 1 => Exponent::Value(k),
        _ => Exponent::OutOfDomain,
    };
    match *set {
        SetDescriptor::Affine(f) => positive(f.eval(n)),
        SetDescriptor::AntiKorselt => positive(n.checked_sub(1)),
        SetDescriptor::PhiHalf => half(phi_of(&fz.factor(n))),
        SetDescriptor::LambdaHalf => half(lambda_of(&fz.factor(n))),
        SetDescriptor::FrakP if n.is_multiple_of(2) => Exponent::OutOfDomain,
        SetDescriptor::FrakP => positive(Some((n - 1) / 2)),
        SetDescriptor::H(k) => Exponent::Value(k),
        SetDescriptor::Upsilon(_) | SetDescriptor::W(_) => Exponent::NotApplicable,
    }
}

/// Exact membership of `n` in `set`, never by summation.
///
/// For `W(m)` the argument is the exponent `k` and the test is `m | S_k(m)`.
pub fn member(set: &SetDescriptor, n: u64) -> Membership {
    member_with(set, n, &TrialRho)
}

/// [`member`] with a caller-supplied factorizer (typically a sieve).
pub fn member_with<F: Factorizer + ?Sized>(set: &SetDescriptor, n: u64, fz: &F) -> Membership {
    if n == 0 {
        return Membership::OutOfDomain;
    }
    match *set {
        SetDescriptor::AntiKorselt => {
            if n == 1 {
                return Membership::OutOfDomain;
            }
            if n.is_multiple_of(2) {
                // p = 2 gives p - 1 = 1 | n - 1
                return Membership::NonMember;
            }
            Membership::from_bool(fz.factor(n).primes().all(|p| !(n - 1).is_multiple_of(p - 1)))
        }
        SetDescriptor::Upsilon(k) => {
            if n.is_multiple_of(2) {
                return Membership::NonMember;
            }
            Membership::from_bool(
                fz.factor(n)
                    .primes()
                    .all(|p| two_adic_valuation(p - 1) == k),
            )
        }
        SetDescriptor::W(m) => {
            let q = PowerSumQuery::new(m, n).expect("m, n >= 1");
            Membership::from_bool(decide(q, fz))
        }
        _ => match family_exponent(set, n, fz) {
            Exponent::Value(k) => {
                let q = PowerSumQuery::new(n, k).expect("n, k >= 1");
                Membership::from_bool(decide(q, fz))
            }
            Exponent::OutOfDomain => Membership::OutOfDomain,
            Exponent::NotApplicable => unreachable!("handled above"),
        },
    }
}

fn decide<F: Factorizer + ?Sized>(q: PowerSumQuery, fz: &F) -> bool {
    if q.n().is_multiple_of(2) {
        divides_power_sum_factored(q, &Factorization::default())
    } else {
        divides_power_sum_factored(q, &fz.factor(q.n()))
    }
}

/// `n ∈ M_{λ/2}` from the structure of `n = 2^m p_1^r_1 ... p_s^r_s`:
/// either `m = 0` and all `v2(p_i - 1)` agree, or `m ∈ {2, 3}`, every
/// `v2(p_i - 1) = 1` and `n / 2^m ≠ 3`.
///
/// Pure powers of two (and 1) have no odd prime factor; for them this falls
/// back to the divisibility test, which rejects every one of them.
pub fn member_lambda_half_by_formula(n: u64) -> bool {
    let f = TrialRho.factor(n);
    let m = f.exponent_of(2);
    let valuations: Vec<u32> = f.odd_primes().map(|p| two_adic_valuation(p - 1)).collect();
    let Some(&first) = valuations.first() else {
        return member(&SetDescriptor::LambdaHalf, n).is_member();
    };
    match m {
        0 => valuations.iter().all(|&v| v == first),
        2 | 3 => valuations.iter().all(|&v| v == 1) && n >> m != 3,
        _ => false,
    }
}

/// All members `<= limit`, ascending, refusing limits above `cap`.
pub fn enumerate_capped(
    set: &SetDescriptor,
    limit: u64,
    cap: u64,
    exec: Execution,
) -> Result<Vec<u64>> {
    if limit > cap {
        return Err(Error::CapExceeded {
            what: "enumeration limit",
            value: limit,
            cap,
        });
    }
    let sieve = SpfSieve::new(limit);
    Ok(enumerate_with(set, limit, &sieve, exec))
}

/// [`enumerate_capped`] with the default scan cap of 10^7.
pub fn enumerate(set: &SetDescriptor, limit: u64, exec: Execution) -> Result<Vec<u64>> {
    enumerate_capped(set, limit, DEFAULT_SCAN_CAP, exec)
}

/// Enumeration over a prebuilt sieve (which may be shared between scans).
pub fn enumerate_with<F: Factorizer>(
    set: &SetDescriptor,
    limit: u64,
    fz: &F,
    exec: Execution,
) -> Vec<u64> {
    exec.filter_range(1, limit, |n| member_with(set, n, fz).is_member())
}
