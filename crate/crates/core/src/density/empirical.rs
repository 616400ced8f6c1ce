use num_bigint::BigInt;

use super::Rational;
use crate::arith::{Factorizer, SpfSieve};
use crate::sets::{member_with, SetDescriptor};
use crate::{Error, Execution, Result, DEFAULT_SCAN_CAP};

/// `#{n <= limit : n ∈ set} / limit`, refusing limits above `cap`.
pub fn empirical_density_capped(
    set: &SetDescriptor,
    limit: u64,
    cap: u64,
    exec: Execution,
) -> Result<Rational> {
    if limit == 0 {
        return Err(Error::invalid("limit must be positive"));
    }
    if limit > cap {
        return Err(Error::CapExceeded {
            what: "scan limit",
            value: limit,
            cap,
        });
    }
    Ok(empirical_density_with(set, limit, &SpfSieve::new(limit), exec))
}

/// [`empirical_density_capped`] with the default cap of 10^7.
pub fn empirical_density(set: &SetDescriptor, limit: u64, exec: Execution) -> Result<Rational> {
    empirical_density_capped(set, limit, DEFAULT_SCAN_CAP, exec)
}

/// The scan over a prebuilt factorizer, so several limits or families can
/// share one sieve.
pub fn empirical_density_with<F: Factorizer>(
    set: &SetDescriptor,
    limit: u64,
    fz: &F,
    exec: Execution,
) -> Rational {
    assert!(limit > 0, "limit must be positive");
    let count = exec.count_range(1, limit, |n| member_with(set, n, fz).is_member());
    Rational::new(BigInt::from(count), BigInt::from(limit))
}
