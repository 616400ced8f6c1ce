//! Residues and divisibility of power sums `S_k(n) = 1^k + ... + n^k` modulo `n`.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: primality, factorization, Euler and Carmichael functions, CRT,
//!   exact rationals and the smallest-prime-factor sieve used by range scans.
//! - [`powersum`]: the naive oracle, the fast CRT-based residue, the
//!   closed-form divisibility decision and the Carlitz–von Staudt residue.
//! - [`sets`]: the characterized integer families (affine exponents,
//!   anti-Korselt numbers, `φ/2` and `λ/2` exponents, ...) as membership
//!   predicates, arithmetic-progression constructions and enumerators.
//! - [`density`]: exact inclusion–exclusion over progression unions, certified
//!   density enclosures, the supremum bound and empirical range estimates.
//! - [`verify`]: the invariant suites that back the `verify` CLI subcommand.
//!
//! Data-parallel loops go through [`Execution`]; with the `parallel` feature
//! disabled every loop runs sequentially and results are identical either way.

pub mod arith;
pub mod density;
mod error;
mod exec;
pub mod powersum;
pub mod sets;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;

/// Default cap on linear scans (naive oracle length, enumeration limit).
pub const DEFAULT_SCAN_CAP: u64 = 10_000_000;
