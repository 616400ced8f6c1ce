//! Certified enclosures for `δ(M_{a·n+b})` and the anti-Korselt density.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::enclosure::{DensityEnclosure, Truncation};
use super::pie::{run, ClassFamily, Family, PieBudget, PieSums, Stop};
use super::tail::sharp_prime_tail_bound;
use super::Rational;
use crate::arith::{odd_primes_up_to, primes_up_to, rational};
use crate::sets::affine_complement;
use crate::{Error, Execution, Result};

/// Squarefree products `m` of odd primes `<= P` with `gcd(m, φ(m)) | b`,
/// visited in increasing prime order. For such `m`, the classes `G_p^b`
/// (`p | m`) meet in one class of step `lcm(m, λ(m))`; otherwise they are
/// disjoint.
struct RbFamily {
    primes: Vec<u64>,
    b: u64,
}

#[derive(Debug, Clone)]
struct RbNode {
    chosen: SmallVec<[u64; 8]>,
    m: u128,
    lambda: u128,
}

impl RbFamily {
    fn new(b: i64, prime_bound: u64) -> Self {
        RbFamily {
            primes: odd_primes_up_to(prime_bound),
            b: b.unsigned_abs(),
        }
    }

    /// `lcm(1..=P)`, a multiple of every `lcm(m, λ(m))` in the family.
    fn common_denominator(prime_bound: u64) -> BigUint {
        primes_up_to(prime_bound)
            .into_iter()
            .fold(BigUint::one(), |acc, q| {
                let mut qk = q;
                while qk <= prime_bound / q {
                    qk *= q;
                }
                acc * qk
            })
    }
}

impl Family for RbFamily {
    type State = RbNode;

    fn len(&self) -> usize {
        self.primes.len()
    }

    fn root(&self) -> RbNode {
        RbNode {
            chosen: SmallVec::new(),
            m: 1,
            lambda: 1,
        }
    }

    fn extend(&self, node: &RbNode, idx: usize) -> Result<Option<RbNode>> {
        let p = self.primes[idx];
        // chosen primes are smaller than p, so only q | p - 1 can enter gcd(m, φ(m))
        if node.chosen.iter().any(|&q| (p - 1).is_multiple_of(q) && !self.b.is_multiple_of(q)) {
            return Ok(None);
        }
        let m = node
            .m
            .checked_mul(p as u128)
            .ok_or_else(|| Error::Overflow(format!("product of {:?} and {p}", node.chosen)))?;
        let mut chosen = node.chosen.clone();
        chosen.push(p);
        Ok(Some(RbNode {
            chosen,
            m,
            lambda: node.lambda.lcm(&(p as u128 - 1)),
        }))
    }

    fn weight(&self, node: &RbNode, common: &BigUint) -> Result<BigUint> {
        let g = node.m.gcd(&node.lambda);
        match (node.m / g).checked_mul(node.lambda) {
            Some(step) => Ok(common / step),
            None => Ok(common / (BigUint::from(node.m / g) * BigUint::from(node.lambda))),
        }
    }
}

/// The `R_b`-admissible products `m > 1` of at most `max_depth` odd primes
/// `<= P`, ascending.
pub fn r_b_products(b: i64, prime_bound: u64, max_depth: u32) -> Result<Vec<u64>> {
    fn walk(fam: &RbFamily, node: &RbNode, from: usize, left: u32, out: &mut Vec<u64>) -> Result<()> {
        if left == 0 {
            return Ok(());
        }
        for idx in from..fam.len() {
            if let Some(child) = fam.extend(node, idx)? {
                out.push(u64::try_from(child.m).map_err(|_| Error::Overflow(format!("m = {}", child.m)))?);
                walk(fam, &child, idx + 1, left - 1, out)?;
            }
        }
        Ok(())
    }
    let fam = RbFamily::new(b, prime_bound);
    let mut out = Vec::new();
    walk(&fam, &fam.root(), 0, max_depth, &mut out)?;
    out.sort_unstable();
    Ok(out)
}

/// Which inclusion–exclusion family describes the complement of the set.
enum Plan {
    Exact(Rational, &'static str),
    /// `a = 1`, `b` odd: complement = `{n ≡ 2 (mod 4)} ∪ ⋃_p G_p^b`.
    Rb(RbFamily),
    /// General parities: complement = base class `∪ ⋃_p` Ξ-progressions.
    Classes(Vec<crate::sets::ArithmeticProgression>),
}

fn plan(a: u64, b: i64, prime_bound: u64) -> Result<Plan> {
    let (a_even, b_even) = (a.is_multiple_of(2), b.rem_euclid(2) == 0);
    Ok(match (a_even, b_even) {
        (true, false) => Plan::Exact(rational::ratio(3, 4), "exact: complement is n = 2 (mod 4)"),
        (false, true) => Plan::Exact(rational::ratio(1, 2), "exact: complement is the even numbers"),
        _ if a == 1 => Plan::Rb(RbFamily::new(b, prime_bound)),
        _ => Plan::Classes(affine_complement(a, b, prime_bound)?.progressions),
    })
}

fn run_plan(plan: &Plan, prime_bound: u64, budget: PieBudget, exec: Execution) -> std::result::Result<PieSums, Stop> {
    match plan {
        Plan::Rb(fam) => run(fam, &RbFamily::common_denominator(prime_bound), budget, exec),
        Plan::Classes(aps) => {
            let fam = ClassFamily { classes: aps };
            run(&fam, &fam.common_denominator(), budget, exec)
        }
        Plan::Exact(..) => unreachable!("exact plans need no enumeration"),
    }
}

fn build(sums: &PieSums, plan: &Plan, a: u64, prime_bound: u64) -> DensityEnclosure {
    let (lo, hi) = sums.union_bracket();
    // the 2 (mod 4) class is disjoint from every odd G_p^b and kept outside the sum
    let offset = match plan {
        Plan::Rb(_) => rational::ratio(1, 4),
        _ => Rational::zero(),
    };
    let tail = sharp_prime_tail_bound(prime_bound) * Rational::from_integer(BigInt::from(a));
    let gap = &hi - &lo;
    let one = Rational::one();
    let upper = (&one - &offset - &lo).min(one.clone());
    let lower = (&one - &offset - &hi - &tail).max(Rational::zero());
    let depth = (!sums.exhaustive).then_some(sums.depth);
    let family = match plan {
        Plan::Rb(_) => "products of odd primes in R_b",
        _ => "intersections of the complement progressions",
    };
    let pie = match depth {
        Some(d) => format!("inclusion-exclusion over {family} cut at depth {d} (Bonferroni bracket)"),
        None => format!("exhaustive inclusion-exclusion over {family}"),
    };
    DensityEnclosure {
        lower,
        upper,
        truncation: Truncation {
            prime_bound: Some(prime_bound),
            pie_depth: depth,
            pie_terms: sums.nodes,
            pie_gap: gap.clone(),
            tail_bound: tail + gap,
            note: if a == 1 {
                format!("primes <= {prime_bound}; {pie}; omitted primes bounded by sum 1/(p(p-1))")
            } else {
                format!("primes <= {prime_bound}; {pie}; omitted primes bounded by {a} * sum 1/(p(p-1))")
            },
        },
    }
}

/// [`affine_density_enclosure_with`] with the default budget and execution.
pub fn affine_density_enclosure(a: u64, b: i64, prime_bound: u64) -> Result<DensityEnclosure> {
    affine_density_enclosure_with(a, b, prime_bound, PieBudget::default(), Execution::default())
}

/// Certified enclosure of `δ(M_{f_{a,b}})` for `f(n) = a·n + b`.
///
/// `a` even with `b` odd gives exactly `3/4`; `a` odd with `b` even gives
/// exactly `1/2`. Otherwise the complement is the union of one base class
/// and one progression per odd prime; the primes `<= prime_bound` go through
/// inclusion–exclusion (cut at `budget.max_depth`), the rest through the
/// tail bound.
///
/// If the node budget runs out, the enumeration is retried two levels
/// shallower until it fits and the result comes back inside
/// [`Error::BudgetExceeded`] as a wider but still certified enclosure.
pub fn affine_density_enclosure_with(
    a: u64,
    b: i64,
    prime_bound: u64,
    budget: PieBudget,
    exec: Execution,
) -> Result<DensityEnclosure> {
    if a == 0 {
        return Err(Error::invalid("a must be positive"));
    }
    if prime_bound < 3 {
        return Err(Error::invalid("prime bound must be at least 3"));
    }
    let plan = plan(a, b, prime_bound)?;
    if let Plan::Exact(value, note) = &plan {
        return Ok(DensityEnclosure::exact(value.clone(), *note));
    }
    let mut attempt = budget;
    loop {
        match run_plan(&plan, prime_bound, attempt, exec) {
            Ok(sums) => {
                let enclosure = build(&sums, &plan, a, prime_bound);
                return if attempt == budget {
                    Ok(enclosure)
                } else {
                    Err(Error::BudgetExceeded {
                        max_nodes: budget.max_nodes,
                        partial: Box::new(enclosure),
                    })
                };
            }
            Err(Stop::Fail(e)) => return Err(e),
            Err(Stop::Budget) => {
                let depth = attempt.max_depth.min(plan_len(&plan) as u32);
                if depth <= 2 {
                    return Err(Error::BudgetExceeded {
                        max_nodes: budget.max_nodes,
                        partial: Box::new(DensityEnclosure::trivial(
                            "node budget too small for any inclusion-exclusion depth",
                        )),
                    });
                }
                attempt.max_depth = depth - 2;
            }
        }
    }
}

fn plan_len(plan: &Plan) -> usize {
    match plan {
        Plan::Rb(fam) => fam.len(),
        Plan::Classes(aps) => aps.len(),
        Plan::Exact(..) => 0,
    }
}

/// [`anti_korselt_enclosure_with`] with the default budget and execution.
pub fn anti_korselt_enclosure(prime_bound: u64) -> Result<DensityEnclosure> {
    anti_korselt_enclosure_with(prime_bound, PieBudget::default(), Execution::default())
}

/// Enclosure of the anti-Korselt density: the `f(n) = n - 1` enclosure
/// shifted down by exactly `1/4`, the share of multiples of 4.
pub fn anti_korselt_enclosure_with(
    prime_bound: u64,
    budget: PieBudget,
    exec: Execution,
) -> Result<DensityEnclosure> {
    let quarter = rational::ratio(-1, 4);
    match affine_density_enclosure_with(1, -1, prime_bound, budget, exec) {
        Ok(e) => Ok(e.shifted(&quarter)),
        Err(Error::BudgetExceeded { max_nodes, partial }) => Err(Error::BudgetExceeded {
            max_nodes,
            partial: Box::new(partial.shifted(&quarter)),
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;
    use crate::density::{empirical_density, finite_union_density, prime_tail_bound};
    use crate::sets::{g_progression, ArithmeticProgression, SetDescriptor};

    fn exhaustive() -> PieBudget {
        PieBudget::exhaustive()
    }

    #[test]
    fn exact_parity_cases() {
        let e = affine_density_enclosure(2, 1, 50).unwrap();
        assert_eq!((e.lower.clone(), e.upper.clone()), (ratio(3, 4), ratio(3, 4)));
        let e = affine_density_enclosure(1, 2, 50).unwrap();
        assert_eq!((e.lower.clone(), e.upper.clone()), (ratio(1, 2), ratio(1, 2)));
        assert!(affine_density_enclosure(0, 1, 50).is_err());
        assert!(affine_density_enclosure(1, 1, 2).is_err());
    }

    #[test]
    fn small_bound_by_hand() {
        // primes 3, 5: G_3 = 3 (mod 6), G_5 = 15 (mod 20), overlap 15 (mod 60)
        let e = affine_density_enclosure_with(1, 1, 5, exhaustive(), Execution::Sequential).unwrap();
        assert_eq!(e.upper, ratio(3, 4) - ratio(1, 5));
        assert_eq!(e.truncation.pie_depth, None);
        assert_eq!(e.width(), sharp_prime_tail_bound(5));
    }

    #[test]
    fn rb_engine_matches_explicit_union() {
        for b in [1i64, -1, 3, -5, 15] {
            for bound in [7u64, 13, 23] {
                let mut aps = vec![ArithmeticProgression::new(2, 4).unwrap()];
                aps.extend(odd_primes_up_to(bound).into_iter().map(|p| g_progression(p, b).unwrap()));
                let exact = Rational::one() - finite_union_density(&aps).unwrap();
                let e = affine_density_enclosure_with(1, b, bound, exhaustive(), Execution::Sequential).unwrap();
                assert_eq!(e.upper, exact, "b={b} P={bound}");
            }
        }
    }

    #[test]
    fn plus_and_minus_one_agree() {
        for bound in [3u64, 30, 100] {
            assert_eq!(
                affine_density_enclosure(1, 1, bound).unwrap(),
                affine_density_enclosure(1, -1, bound).unwrap()
            );
        }
    }

    #[test]
    fn width_within_tail_bounds() {
        for (a, b) in [(1u64, 1i64), (1, 3), (1, 15), (3, 1), (2, 2), (5, -3)] {
            for bound in [3u64, 11, 40] {
                let e = affine_density_enclosure(a, b, bound).unwrap();
                assert!(e.lower <= e.upper);
                assert!(e.width() <= e.truncation.tail_bound, "a={a} b={b} P={bound}");
                assert!(e.width() <= prime_tail_bound(bound) * Rational::from_integer(a.into()));
                assert!(e.lower >= Rational::zero() && e.upper <= Rational::one());
            }
        }
    }

    #[test]
    fn enclosures_nest_as_the_bound_grows() {
        for (a, b) in [(1u64, 1i64), (1, 3), (3, 1), (2, 2)] {
            let bounds = [3u64, 7, 20, 60, 120];
            let es: Vec<_> = bounds.iter().map(|&p| affine_density_enclosure(a, b, p).unwrap()).collect();
            for w in es.windows(2) {
                assert!(w[1].is_within(&w[0]), "a={a} b={b}: {} vs {}", w[1], w[0]);
            }
        }
    }

    #[test]
    fn general_engine_agrees_with_rb_engine() {
        let rb = affine_density_enclosure_with(1, 3, 29, exhaustive(), Execution::Sequential).unwrap();
        let aps = affine_complement(1, 3, 29).unwrap().progressions;
        let generic = Rational::one() - finite_union_density(&aps).unwrap();
        assert_eq!(rb.upper, generic);
    }

    #[test]
    fn enclosures_contain_empirical_estimates() {
        let slack = ratio(1, 100);
        for (a, b) in [(1u64, 1i64), (3, 1), (2, 2), (1, 3)] {
            let e = affine_density_enclosure(a, b, 60).unwrap();
            let set = SetDescriptor::affine(a, b).unwrap();
            let emp = empirical_density(&set, 200_000, Execution::default()).unwrap();
            assert!(
                &e.lower - &slack <= emp && emp <= &e.upper + &slack,
                "a={a} b={b}: {} vs {}",
                e,
                crate::arith::rational::to_f64(&emp)
            );
        }
    }

    #[test]
    fn budget_exhaustion_reports_partial_enclosure() {
        let tight = PieBudget { max_depth: 5, max_nodes: 2_000 };
        match affine_density_enclosure_with(1, 1, 100, tight, Execution::Parallel) {
            Err(Error::BudgetExceeded { max_nodes, partial }) => {
                assert_eq!(max_nodes, 2_000);
                let full = affine_density_enclosure(1, 1, 100).unwrap();
                assert!(full.is_within(&partial));
                assert!(partial.truncation.pie_depth.unwrap() < 5);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        let tiny = PieBudget { max_depth: 5, max_nodes: 3 };
        match affine_density_enclosure_with(1, 1, 100, tiny, Execution::Sequential) {
            Err(Error::BudgetExceeded { partial, .. }) => assert_eq!(partial.width(), Rational::one()),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn execution_modes_agree() {
        let a = affine_density_enclosure_with(1, 1, 80, PieBudget::default(), Execution::Sequential).unwrap();
        let b = affine_density_enclosure_with(1, 1, 80, PieBudget::default(), Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn anti_korselt_is_a_quarter_below() {
        for bound in [3u64, 50] {
            let ak = anti_korselt_enclosure(bound).unwrap();
            let f = affine_density_enclosure(1, -1, bound).unwrap();
            assert_eq!(ak.lower, &f.lower - ratio(1, 4));
            assert_eq!(ak.upper, &f.upper - ratio(1, 4));
        }
        let coarse = anti_korselt_enclosure(3).unwrap();
        assert!(coarse.width() <= ratio(1, 3));
        assert!(anti_korselt_enclosure(100).unwrap().is_within(&coarse));
    }

    #[test]
    fn admissible_products_grow_with_b() {
        let p1 = r_b_products(1, 100, 3).unwrap();
        let p3 = r_b_products(3, 100, 3).unwrap();
        let p15 = r_b_products(15, 100, 3).unwrap();
        let subset = |small: &[u64], big: &[u64]| small.iter().all(|m| big.binary_search(m).is_ok());
        assert!(subset(&p1, &p3) && subset(&p1, &p15) && subset(&p3, &p15));
        assert!(p1.len() < p3.len() && p3.len() < p15.len());
        assert!(p1.contains(&15) && !p1.contains(&21) && p3.contains(&21));
        for &m in &p3 {
            assert!(crate::sets::in_r(m, 3), "m={m}");
        }
    }
}
