use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::arith::rational::{fraction_string, to_decimal, Rounding};
use crate::arith::Rational;

/// Digits used by the decimal renderings of an enclosure.
const DISPLAY_DIGITS: u32 = 6;

/// How an enclosure was truncated.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Truncation {
    /// Primes `p <= prime_bound` were treated exactly.
    pub prime_bound: Option<u64>,
    /// Depth at which the inclusion–exclusion sum was cut, or `None` if it
    /// was exhaustive.
    pub pie_depth: Option<u32>,
    /// Number of non-empty intersections visited.
    pub pie_terms: u64,
    /// Width contributed by cutting the inclusion–exclusion sum.
    pub pie_gap: Rational,
    /// Certified bound on the width, `upper - lower <= tail_bound`.
    pub tail_bound: Rational,
    pub note: String,
}

/// Exact rational interval `[lower, upper]` known to contain a density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityEnclosure {
    pub lower: Rational,
    pub upper: Rational,
    pub truncation: Truncation,
}

impl DensityEnclosure {
    /// The one-point enclosure of an exactly known density.
    pub fn exact(value: Rational, note: impl Into<String>) -> Self {
        DensityEnclosure {
            lower: value.clone(),
            upper: value,
            truncation: Truncation {
                note: note.into(),
                ..Truncation::default()
            },
        }
    }

    /// `[0, 1]`, the enclosure that says nothing.
    pub fn trivial(note: impl Into<String>) -> Self {
        DensityEnclosure {
            lower: Rational::zero(),
            upper: Rational::one(),
            truncation: Truncation {
                tail_bound: Rational::one(),
                note: note.into(),
                ..Truncation::default()
            },
        }
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    /// Whether `self ⊆ other`.
    pub fn is_within(&self, other: &DensityEnclosure) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }

    /// Whether the closed intervals share a point.
    pub fn intersects(&self, lo: &Rational, hi: &Rational) -> bool {
        &self.lower <= hi && lo <= &self.upper
    }

    /// The enclosure translated by `delta` (metadata unchanged).
    pub fn shifted(&self, delta: &Rational) -> Self {
        DensityEnclosure {
            lower: &self.lower + delta,
            upper: &self.upper + delta,
            truncation: self.truncation.clone(),
        }
    }

    pub fn lower_decimal(&self) -> String {
        to_decimal(&self.lower, DISPLAY_DIGITS, Rounding::Down)
    }

    pub fn upper_decimal(&self) -> String {
        to_decimal(&self.upper, DISPLAY_DIGITS, Rounding::Up)
    }
}

impl fmt::Display for DensityEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower_decimal(), self.upper_decimal())
    }
}

impl Serialize for Truncation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Truncation", 6)?;
        st.serialize_field("prime_bound", &self.prime_bound)?;
        st.serialize_field("pie_depth", &self.pie_depth)?;
        st.serialize_field("pie_terms", &self.pie_terms)?;
        st.serialize_field("pie_gap", &fraction_string(&self.pie_gap))?;
        st.serialize_field("tail_bound", &fraction_string(&self.tail_bound))?;
        st.serialize_field("note", &self.note)?;
        st.end()
    }
}

impl Serialize for DensityEnclosure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DensityEnclosure", 6)?;
        st.serialize_field("lower", &fraction_string(&self.lower))?;
        st.serialize_field("upper", &fraction_string(&self.upper))?;
        st.serialize_field("lower_decimal", &self.lower_decimal())?;
        st.serialize_field("upper_decimal", &self.upper_decimal())?;
        st.serialize_field(
            "width_decimal",
            &to_decimal(&self.width(), DISPLAY_DIGITS + 3, Rounding::Up),
        )?;
        st.serialize_field("truncation", &self.truncation)?;
        st.end()
    }
}
