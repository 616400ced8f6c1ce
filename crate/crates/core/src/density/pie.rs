//! Depth-first inclusion–exclusion with pruning of empty intersections.
//!
//! The engine enumerates subsets of an indexed family in increasing index
//! order, carrying an intersection state. A child whose intersection is empty
//! is pruned together with all of its supersets. Densities are accumulated as
//! integer numerators over one common denominator and reduced once at the
//! end, so the sums are exact.
//!
//! When the recursion is cut at depth `d`, the Bonferroni inequalities give
//! `S_{<=d-1}` and `S_{<=d}` on opposite sides of the true union density;
//! [`PieSums::union_bracket`] reports the pair.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use super::Rational;
use crate::arith::{crt_merge_u64, Congruence};
use crate::sets::ArithmeticProgression;
use crate::{Error, Execution, Result};

/// Largest family accepted by [`finite_union_density`].
pub const MAX_UNION_SIZE: usize = 30;

/// Limits on one inclusion–exclusion enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PieBudget {
    /// Largest subset size enumerated.
    pub max_depth: u32,
    /// Largest number of non-empty intersections visited.
    pub max_nodes: u64,
}

impl Default for PieBudget {
    fn default() -> Self {
        PieBudget {
            max_depth: 5,
            max_nodes: 50_000_000,
        }
    }
}

impl PieBudget {
    pub fn exhaustive() -> Self {
        PieBudget {
            max_depth: u32::MAX,
            max_nodes: u64::MAX,
        }
    }
}

/// Per-depth sums `T_j = Σ_{|S| = j} δ(⋂S)`, as numerators over `common`.
#[derive(Debug, Clone)]
pub(crate) struct PieSums {
    pub by_depth: Vec<BigUint>,
    pub common: BigUint,
    pub nodes: u64,
    /// No subset at the cut depth had a non-empty extension.
    pub exhaustive: bool,
    pub depth: u32,
}

impl PieSums {
    fn partial(&self, upto: usize) -> BigInt {
        self.by_depth
            .iter()
            .take(upto)
            .enumerate()
            .fold(BigInt::zero(), |acc, (j, t)| {
                if j % 2 == 0 {
                    acc + BigInt::from(t.clone())
                } else {
                    acc - BigInt::from(t.clone())
                }
            })
    }

    /// `(lo, hi)` with `lo <= δ(⋃) <= hi`; equal when exhaustive.
    pub fn union_bracket(&self) -> (Rational, Rational) {
        let den = BigInt::from(self.common.clone());
        let d = self.by_depth.len();
        let last = Rational::new(self.partial(d), den.clone());
        if self.exhaustive || d == 0 {
            return (last.clone(), last);
        }
        let prev = Rational::new(self.partial(d - 1), den);
        if prev <= last {
            (prev, last)
        } else {
            (last, prev)
        }
    }
}

pub(crate) enum Stop {
    Budget,
    Fail(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Fail(e)
    }
}

/// Subset family for the engine: `extend` intersects a state with item
/// `idx` (returning `None` for an empty intersection) and `weight` is
/// `common / step` for a non-empty one.
pub(crate) trait Family: Sync {
    type State: Send + Sync;
    fn len(&self) -> usize;
    fn root(&self) -> Self::State;
    fn extend(&self, state: &Self::State, idx: usize) -> Result<Option<Self::State>>;
    fn weight(&self, state: &Self::State, common: &BigUint) -> Result<BigUint>;
}

const FLUSH_EVERY: u64 = 4096;

struct Walk<'a, F: Family> {
    family: &'a F,
    common: &'a BigUint,
    max_depth: usize,
    max_nodes: u64,
    counter: &'a AtomicU64,
}

struct Acc {
    by_depth: Vec<BigUint>,
    nodes: u64,
    pending: u64,
    extendable: bool,
}

impl<F: Family> Walk<'_, F> {
    fn visit(&self, child: F::State, depth: usize, idx: usize, acc: &mut Acc) -> std::result::Result<(), Stop> {
        acc.nodes += 1;
        acc.pending += 1;
        if acc.pending >= FLUSH_EVERY {
            let seen = self.counter.fetch_add(acc.pending, Ordering::Relaxed) + acc.pending;
            acc.pending = 0;
            if seen > self.max_nodes {
                return Err(Stop::Budget);
            }
        }
        acc.by_depth[depth] += self.family.weight(&child, self.common)?;
        if depth + 1 < self.max_depth {
            self.descend(&child, depth + 1, idx + 1, acc)?;
        } else if !acc.extendable {
            for next in idx + 1..self.family.len() {
                if self.family.extend(&child, next)?.is_some() {
                    acc.extendable = true;
                    break;
                }
            }
        }
        Ok(())
    }

    fn descend(&self, state: &F::State, depth: usize, from: usize, acc: &mut Acc) -> std::result::Result<(), Stop> {
        for idx in from..self.family.len() {
            if let Some(child) = self.family.extend(state, idx)? {
                self.visit(child, depth, idx, acc)?;
            }
        }
        Ok(())
    }
}

/// Runs the enumeration, splitting the work by the smallest chosen index.
pub(crate) fn run<F: Family>(
    family: &F,
    common: &BigUint,
    budget: PieBudget,
    exec: Execution,
) -> std::result::Result<PieSums, Stop> {
    let n = family.len();
    let max_depth = (budget.max_depth as usize).min(n).max(1);
    let counter = AtomicU64::new(0);
    let walk = Walk {
        family,
        common,
        max_depth,
        max_nodes: budget.max_nodes,
        counter: &counter,
    };
    let root = family.root();
    let tops: Vec<usize> = (0..n).collect();
    let parts = exec.map_slice(&tops, |&idx| -> std::result::Result<Acc, Stop> {
        let mut acc = Acc {
            by_depth: vec![BigUint::zero(); max_depth],
            nodes: 0,
            pending: 0,
            extendable: false,
        };
        if let Some(child) = family.extend(&root, idx)? {
            walk.visit(child, 0, idx, &mut acc)?;
        }
        counter.fetch_add(acc.pending, Ordering::Relaxed);
        Ok(acc)
    });
    let mut total = PieSums {
        by_depth: vec![BigUint::zero(); max_depth],
        common: common.clone(),
        nodes: 0,
        exhaustive: true,
        depth: max_depth as u32,
    };
    let mut budget_hit = false;
    for part in parts {
        match part {
            Ok(acc) => {
                for (t, a) in total.by_depth.iter_mut().zip(acc.by_depth) {
                    *t += a;
                }
                total.nodes += acc.nodes;
                total.exhaustive &= !acc.extendable;
            }
            Err(Stop::Budget) => budget_hit = true,
            Err(e @ Stop::Fail(_)) => return Err(e),
        }
    }
    if budget_hit || total.nodes > budget.max_nodes {
        return Err(Stop::Budget);
    }
    // trailing depths that were never reached carry no terms
    while total.by_depth.len() > 1 && total.by_depth.last().is_some_and(|t| t.is_zero()) {
        total.by_depth.pop();
        total.exhaustive = true;
    }
    Ok(total)
}

/// Intersection state for a family of residue classes.
#[derive(Debug, Clone)]
pub(crate) enum ClassState {
    Small(u64, u64),
    Big(Congruence),
}

impl ClassState {
    fn modulus(&self) -> BigUint {
        match self {
            ClassState::Small(_, m) => BigUint::from(*m),
            ClassState::Big(c) => c.modulus().clone(),
        }
    }

    fn merge(&self, other: &ArithmeticProgression) -> Option<ClassState> {
        if let ClassState::Small(r, m) = *self {
            if let Ok(merged) = crt_merge_u64((r, m), (other.first() % other.step(), other.step())) {
                return merged.map(|(r, m)| ClassState::Small(r, m));
            }
        }
        let big = match self {
            ClassState::Small(r, m) => Congruence::new(*r, *m).expect("positive modulus"),
            ClassState::Big(c) => c.clone(),
        };
        big.merge(&other.to_congruence()).map(ClassState::Big)
    }
}

/// Residue classes `first (mod step)` (full classes only).
pub(crate) struct ClassFamily<'a> {
    pub classes: &'a [ArithmeticProgression],
}

impl ClassFamily<'_> {
    pub fn common_denominator(&self) -> BigUint {
        self.classes
            .iter()
            .fold(BigUint::from(1u32), |acc, ap| acc.lcm(&BigUint::from(ap.step())))
    }
}

impl Family for ClassFamily<'_> {
    type State = ClassState;

    fn len(&self) -> usize {
        self.classes.len()
    }

    fn root(&self) -> ClassState {
        ClassState::Small(0, 1)
    }

    fn extend(&self, state: &ClassState, idx: usize) -> Result<Option<ClassState>> {
        Ok(state.merge(&self.classes[idx]))
    }

    fn weight(&self, state: &ClassState, common: &BigUint) -> Result<BigUint> {
        Ok(common / state.modulus())
    }
}

pub(crate) fn require_full_classes(aps: &[ArithmeticProgression]) -> Result<()> {
    match aps.iter().find(|ap| !ap.is_full_class()) {
        Some(ap) => Err(Error::invalid(format!(
            "{ap} is not a full residue class (first term exceeds the step)"
        ))),
        None => Ok(()),
    }
}

/// Exact density of a union of at most [`MAX_UNION_SIZE`] full residue
/// classes by inclusion–exclusion, intersections resolved by CRT.
pub fn finite_union_density(aps: &[ArithmeticProgression]) -> Result<Rational> {
    if aps.len() > MAX_UNION_SIZE {
        return Err(Error::CapExceeded {
            what: "number of progressions",
            value: aps.len() as u64,
            cap: MAX_UNION_SIZE as u64,
        });
    }
    require_full_classes(aps)?;
    if aps.is_empty() {
        return Ok(Rational::zero());
    }
    let family = ClassFamily { classes: aps };
    let common = family.common_denominator();
    match run(&family, &common, PieBudget::exhaustive(), Execution::Sequential) {
        Ok(sums) => Ok(sums.union_bracket().0),
        Err(Stop::Fail(e)) => Err(e),
        Err(Stop::Budget) => unreachable!("exhaustive budget"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;
    use proptest::prelude::*;

    fn ap(first: u64, step: u64) -> ArithmeticProgression {
        ArithmeticProgression::new(first, step).unwrap()
    }

    #[test]
    fn union_examples() {
        assert_eq!(finite_union_density(&[ap(2, 4)]).unwrap(), ratio(1, 4));
        assert_eq!(finite_union_density(&[ap(3, 6), ap(15, 20)]).unwrap(), ratio(1, 5));
        assert_eq!(finite_union_density(&[ap(2, 4), ap(3, 6)]).unwrap(), ratio(5, 12));
        assert_eq!(finite_union_density(&[]).unwrap(), ratio(0, 1));
        assert_eq!(finite_union_density(&[ap(1, 1), ap(2, 2)]).unwrap(), ratio(1, 1));
    }

    #[test]
    fn union_rejects_bad_input() {
        let many = vec![ap(1, 2); 31];
        assert!(matches!(finite_union_density(&many), Err(Error::CapExceeded { .. })));
        assert!(finite_union_density(&[ap(15, 6)]).is_err());
    }

    #[test]
    fn large_moduli_fall_back_to_big_integers() {
        let primes = [4_294_967_291u64, 4_294_967_279, 4_294_967_231];
        let aps: Vec<_> = primes.iter().map(|&p| ap(1, p)).collect();
        let got = finite_union_density(&aps).unwrap();
        let complement: Rational = primes
            .iter()
            .map(|&p| Rational::new(BigInt::from(p - 1), BigInt::from(p)))
            .product();
        assert_eq!(got, Rational::from_integer(1.into()) - complement);
    }

    #[test]
    fn truncated_sums_bracket_the_union() {
        let aps: Vec<_> = [2u64, 3, 5, 7, 11, 13, 17].iter().map(|&p| ap(p, p)).collect();
        let family = ClassFamily { classes: &aps };
        let common = family.common_denominator();
        let exact = finite_union_density(&aps).unwrap();
        for depth in 1..=7 {
            let budget = PieBudget { max_depth: depth, max_nodes: u64::MAX };
            let Ok(sums) = run(&family, &common, budget, Execution::Parallel) else { panic!() };
            let (lo, hi) = sums.union_bracket();
            assert!(lo <= exact && exact <= hi, "depth {depth}");
            assert_eq!(sums.exhaustive, depth == 7);
        }
        let tight = PieBudget { max_depth: 7, max_nodes: 50 };
        assert!(matches!(run(&family, &common, tight, Execution::Sequential), Err(Stop::Budget)));
    }

    fn lcm_of(aps: &[ArithmeticProgression]) -> u64 {
        aps.iter().fold(1u64, |acc, ap| acc.lcm(&ap.step()))
    }

    // steps up to 50 that divide 720720, so one full period stays small
    fn small_period_steps() -> Vec<u64> {
        (1..=50u64).filter(|s| 720_720 % s == 0).collect()
    }

    proptest! {
        #[test]
        fn union_density_matches_period_count(
            raw in proptest::collection::vec((0u64..50, proptest::sample::select(small_period_steps())), 1..=6)
        ) {
            let aps: Vec<_> = raw
                .iter()
                .map(|&(r, s)| ArithmeticProgression::from_residue(r as i128, s).unwrap())
                .collect();
            let period = lcm_of(&aps);
            let count = (1..=period).filter(|&n| aps.iter().any(|ap| ap.contains(n))).count();
            let density = finite_union_density(&aps).unwrap();
            prop_assert_eq!(density * Rational::from_integer(period.into()), Rational::from_integer(count.into()));
        }
    }
}
