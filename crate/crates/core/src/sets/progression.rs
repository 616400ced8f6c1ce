use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::rational::{self, Rational};
use crate::arith::Congruence;
use crate::{Error, Result};

/// `{first + s·step : s >= 0}` over the positive integers.
///
/// A progression built with [`from_residue`](Self::from_residue) is a full
/// residue class: `first` is its least positive member, so `first <= step`.
/// Equality is structural on `(first, step)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArithmeticProgression {
    first: u64,
    step: u64,
}

impl ArithmeticProgression {
    pub fn new(first: u64, step: u64) -> Result<Self> {
        if first == 0 || step == 0 {
            return Err(Error::invalid(format!(
                "progression needs positive first and step, got ({first}, {step})"
            )));
        }
        Ok(ArithmeticProgression { first, step })
    }

    /// The positive integers congruent to `residue` mod `step`.
    pub fn from_residue(residue: i128, step: u64) -> Result<Self> {
        if step == 0 {
            return Err(Error::invalid("progression step must be positive"));
        }
        let first = (residue - 1).rem_euclid(step as i128) as u64 + 1;
        Ok(ArithmeticProgression { first, step })
    }

    pub(crate) fn from_congruence(c: &Congruence) -> Result<Self> {
        let (r, m) = c
            .to_u64_pair()
            .ok_or_else(|| Error::Overflow(format!("progression modulus {}", c.modulus())))?;
        Self::from_residue(r as i128, m)
    }

    pub fn first(&self) -> u64 {
        self.first
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    /// Whether every positive integer in the residue class is a member.
    pub fn is_full_class(&self) -> bool {
        self.first <= self.step
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.first && (n - self.first).is_multiple_of(self.step)
    }

    pub fn to_congruence(&self) -> Congruence {
        Congruence::new(BigInt::from(self.first), self.step).expect("step is positive")
    }

    /// Members `<= limit`, ascending.
    pub fn members_up_to(&self, limit: u64) -> impl Iterator<Item = u64> {
        let step = self.step;
        std::iter::successors(Some(self.first), move |&x| x.checked_add(step))
            .take_while(move |&x| x <= limit)
    }

    /// Asymptotic density `1/step`.
    pub fn density(&self) -> Rational {
        rational::reciprocal(&BigUint::from(self.step))
    }
}

impl fmt::Display for ArithmeticProgression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.first, self.step)
    }
}

/// A finite union of progressions, optionally with a few isolated extra
/// members, standing in for a possibly infinite family.
///
/// `tail_bound` certifies the density of the omitted part of the family;
/// zero means the union is represented exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressionUnion {
    pub progressions: Vec<ArithmeticProgression>,
    /// Isolated members not covered by any progression (e.g. `k = 1`).
    pub exceptions: Vec<u64>,
    pub tail_bound: Rational,
    pub truncation_note: String,
}

impl ProgressionUnion {
    pub fn exact(progressions: Vec<ArithmeticProgression>) -> Self {
        ProgressionUnion {
            progressions,
            exceptions: Vec::new(),
            tail_bound: Rational::zero(),
            truncation_note: "exact".to_string(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.tail_bound.is_zero()
    }

    /// Membership in the represented finite union.
    pub fn contains(&self, n: u64) -> bool {
        self.exceptions.contains(&n) || self.progressions.iter().any(|ap| ap.contains(n))
    }
}

impl fmt::Display for ProgressionUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.progressions.iter().map(|p| p.to_string()).collect();
        if !self.exceptions.is_empty() {
            let ex: Vec<String> = self.exceptions.iter().map(|x| x.to_string()).collect();
            parts.push(format!("{{{}}}", ex.join(", ")));
        }
        if parts.is_empty() {
            write!(f, "{{}}")?;
        } else {
            write!(f, "{}", parts.join(" ∪ "))?;
        }
        if !self.is_exact() {
            write!(f, " [tail <= {}; {}]", self.tail_bound, self.truncation_note)?;
        }
        Ok(())
    }
}
