//! Self-verification suites: the invariants of each layer, re-checked on
//! bounded grids against independent computations.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::rational::{self, to_f64};
use crate::arith::{euler_phi, odd_primes_up_to, primes_up_to, Factorizer, Rational, SpfSieve};
use crate::density::{
    affine_density_enclosure_with, anti_korselt_enclosure_with, empirical_density_with,
    finite_union_density, prime_tail_bound, supremum_prefix_values, PieBudget,
};
use crate::powersum::{
    carlitz_von_staudt_residue, divides_power_sum, power_sum_mod_fast, power_sum_mod_naive, PowerSumQuery,
};
use crate::sets::{
    g_progression, hk_complement, in_r, intersect_g, member_lambda_half_by_formula, member_with,
    wn_complement, ArithmeticProgression, Membership, SetDescriptor,
};
use crate::{Error, Execution, Result};

/// Counterexamples kept per check.
const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Oracle,
    Sets,
    Density,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "oracle" => Ok(Suite::Oracle),
            "sets" => Ok(Suite::Sets),
            "density" => Ok(Suite::Density),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!(
                "unknown suite {other:?} (expected oracle, sets, density or all)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Oracle => "oracle",
            Suite::Sets => "sets",
            Suite::Density => "density",
            Suite::All => "all",
        })
    }
}

/// Sizes of the grids each suite walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyBudget {
    /// Oracle grid: `n <= max_n`.
    pub max_n: u64,
    /// Oracle grid: `k <= max_k`.
    pub max_k: u64,
    /// Range for the set equivalences and empirical checks.
    pub scan_limit: u64,
    /// Largest prime bound used by the density checks.
    pub prime_bound: u64,
    /// Inclusion–exclusion depth for the density checks.
    pub pie_depth: u32,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget {
            max_n: 600,
            max_k: 40,
            scan_limit: 20_000,
            prime_bound: 50,
            pie_depth: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// Number of individual cases examined.
    pub cases: u64,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub budget: VerifyBudget,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Tally {
    suite: Suite,
    name: String,
    cases: u64,
    failures: u64,
    counterexamples: Vec<String>,
}

impl Tally {
    fn new(suite: Suite, name: &str) -> Self {
        Tally {
            suite,
            name: name.to_string(),
            cases: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(describe());
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            suite: self.suite,
            name: self.name,
            passed: self.failures == 0,
            cases: self.cases,
            counterexamples: self.counterexamples,
        }
    }
}

fn q(n: u64, k: u64) -> PowerSumQuery {
    PowerSumQuery::new(n, k).expect("grid values are positive")
}

/// Runs one suite (or all of them) on the grids described by `budget`.
pub fn run_suite(suite: Suite, budget: &VerifyBudget, exec: Execution) -> Result<VerifyReport> {
    if budget.max_n == 0 || budget.max_k == 0 || budget.scan_limit < 3 || budget.prime_bound < 3 {
        return Err(Error::invalid(
            "verify budget needs max_n, max_k >= 1, scan_limit >= 3 and prime_bound >= 3",
        ));
    }
    let mut checks = Vec::new();
    if matches!(suite, Suite::Oracle | Suite::All) {
        checks.extend(oracle_checks(budget, exec)?);
    }
    if matches!(suite, Suite::Sets | Suite::All) {
        checks.extend(set_checks(budget, exec)?);
    }
    if matches!(suite, Suite::Density | Suite::All) {
        checks.extend(density_checks(budget, exec)?);
    }
    Ok(VerifyReport {
        suite,
        budget: *budget,
        checks,
    })
}

fn oracle_checks(budget: &VerifyBudget, exec: Execution) -> Result<Vec<CheckResult>> {
    let s = Suite::Oracle;
    let (max_n, max_k) = (budget.max_n, budget.max_k);
    let rows = exec.map_range(1, max_n, |n| {
        (1..=max_k)
            .map(|k| {
                let naive = power_sum_mod_naive(q(n, k));
                (k, naive)
            })
            .collect::<Vec<_>>()
    });
    let mut fast = Tally::new(s, "fast residue equals naive summation");
    let mut decide = Tally::new(s, "divisibility decision matches a zero residue");
    let mut cvs = Tally::new(s, "Carlitz-von Staudt residue matches naive summation for even n");
    for (n, row) in (1..=max_n).zip(rows) {
        for (k, naive) in row {
            let naive = naive?;
            let got = power_sum_mod_fast(q(n, k));
            fast.case(got == naive, || format!("n={n} k={k}: fast {got}, naive {naive}"));
            let d = divides_power_sum(q(n, k));
            decide.case(d == (naive == 0), || format!("n={n} k={k}: decision {d}, residue {naive}"));
            if n % 2 == 0 && k >= 2 {
                let c = carlitz_von_staudt_residue(q(n, k))?;
                cvs.case(c == naive, || format!("n={n} k={k}: formula {c}, naive {naive}"));
            }
        }
    }
    let mut prime = Tally::new(s, "prime residue is p - 1 exactly when p - 1 divides k");
    for p in primes_up_to(max_n) {
        for k in 1..=max_k {
            let expected = if k % (p - 1) == 0 { p - 1 } else { 0 };
            let got = power_sum_mod_fast(q(p, k));
            prime.case(got == expected, || format!("p={p} k={k}: got {got}, expected {expected}"));
        }
    }
    Ok(vec![fast.finish(), decide.finish(), cvs.finish(), prime.finish()])
}

fn is_odd_prime_power(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    let p = (3..).step_by(2).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d)).unwrap_or(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

fn set_checks(budget: &VerifyBudget, exec: Execution) -> Result<Vec<CheckResult>> {
    let s = Suite::Sets;
    let limit = budget.scan_limit;
    let sieve = SpfSieve::new(limit);
    let mut out = Vec::new();

    let mut phi = Tally::new(s, "phi-half members are exactly the odd prime powers");
    let phi_members = exec.map_range(1, limit, |n| member_with(&SetDescriptor::PhiHalf, n, &sieve).is_member());
    for (n, m) in (1..=limit).zip(phi_members) {
        phi.case(m == is_odd_prime_power(n), || format!("n={n}: member {m}"));
    }
    for n in 3..=limit.min(2_000) {
        let e = euler_phi(n);
        if e.is_multiple_of(2) {
            let direct = power_sum_mod_naive(q(n, e / 2))? == 0;
            phi.case(direct == is_odd_prime_power(n), || format!("n={n}: S_(phi/2) test {direct}"));
        }
    }
    out.push(phi.finish());

    let mut lam = Tally::new(s, "lambda-half structural formula matches divisibility");
    for n in 3..=limit.min(5_000) {
        let by_formula = member_lambda_half_by_formula(n);
        let by_division = member_with(&SetDescriptor::LambdaHalf, n, &sieve).is_member();
        lam.case(by_formula == by_division, || format!("n={n}: formula {by_formula}, divisibility {by_division}"));
    }
    out.push(lam.finish());

    let mut cover = Tally::new(s, "G-progressions cover exactly the odd non-members of affine:1,b");
    for b in [1i64, -1, 3] {
        let set = SetDescriptor::affine(1, b)?;
        let gs: Vec<(u64, ArithmeticProgression)> = odd_primes_up_to(limit)
            .into_iter()
            .map(|p| Ok((p, g_progression(p, b)?)))
            .collect::<Result<_>>()?;
        let verdicts = exec.map_range(1, limit.div_ceil(2), |i| {
            let n = 2 * i - 1;
            let m = member_with(&set, n, &sieve);
            if m == Membership::OutOfDomain {
                return None;
            }
            let covered = sieve
                .factor(n)
                .primes()
                .any(|p| gs.binary_search_by_key(&p, |(q, _)| *q).is_ok_and(|i| gs[i].1.contains(n)));
            Some((n, covered, m.is_member()))
        });
        for (n, covered, member) in verdicts.into_iter().flatten() {
            cover.case(covered != member, || format!("b={b} n={n}: covered {covered}, member {member}"));
        }
    }
    out.push(cover.finish());

    let mut inter = Tally::new(s, "G-intersections are non-empty exactly for products in R_b");
    let primes = [3u64, 5, 7, 11, 13];
    for b in [1i64, -1, 3, 15] {
        for mask in 1u32..1 << primes.len() {
            let chosen: Vec<u64> = (0..primes.len()).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]).collect();
            let m: u64 = chosen.iter().product();
            let got = intersect_g(&chosen, b)?;
            let gs: Vec<ArithmeticProgression> = chosen.iter().map(|&p| g_progression(p, b)).collect::<Result<_>>()?;
            let lambda = chosen.iter().fold(1u64, |acc, &p| acc.lcm(&(p - 1)));
            let period = m.lcm(&lambda);
            let first_hit = (1..=period).find(|&n| gs.iter().all(|g| g.contains(n)));
            let ok = got.map(|ap| (ap.first(), ap.step())) == first_hit.map(|f| (f, period))
                && got.is_some() == in_r(m, b);
            inter.case(ok, || format!("b={b} primes={chosen:?}: got {got:?}, brute {first_hit:?}"));
        }
    }
    out.push(inter.finish());

    let mut comp = Tally::new(s, "W(n) and H(k) complements match the divisibility decision");
    let side = budget.max_n.min(300);
    for n in 1..=side {
        let w = wn_complement(n)?;
        for k in 1..=budget.max_k {
            let d = divides_power_sum(q(n, k));
            comp.case(w.contains(k) != d, || format!("W({n}) at k={k}"));
        }
    }
    for k in 1..=budget.max_k {
        let h = hk_complement(k)?;
        for n in 1..=side {
            let d = divides_power_sum(q(n, k));
            comp.case(h.contains(n) != d, || format!("H({k}) at n={n}"));
        }
    }
    out.push(comp.finish());
    Ok(out)
}

fn density_checks(budget: &VerifyBudget, exec: Execution) -> Result<Vec<CheckResult>> {
    let s = Suite::Density;
    let pie = PieBudget {
        max_depth: budget.pie_depth,
        ..PieBudget::default()
    };
    let top = budget.prime_bound;
    let mut bounds: Vec<u64> = vec![3, 7, (top / 2).max(3), top];
    bounds.sort_unstable();
    bounds.dedup();
    let mut out = Vec::new();

    let mut nested = Tally::new(s, "enclosures nest as the prime bound grows");
    let mut tail = Tally::new(s, "enclosure width never exceeds the tail bound");
    for (a, b) in [(1u64, 1i64), (1, 3), (3, 1), (2, 2)] {
        let es = bounds
            .iter()
            .map(|&p| affine_density_enclosure_with(a, b, p, pie, exec))
            .collect::<Result<Vec<_>>>()?;
        for (w, ps) in es.windows(2).zip(bounds.windows(2)) {
            nested.case(w[1].is_within(&w[0]), || {
                format!("a={a} b={b}: P={} gives {} outside P={} {}", ps[1], w[1], ps[0], w[0])
            });
        }
        for (e, &p) in es.iter().zip(&bounds) {
            let coarse = prime_tail_bound(p) * Rational::from_integer(a.into());
            let ok = e.width() <= coarse && e.width() <= e.truncation.tail_bound && e.lower <= e.upper;
            tail.case(ok, || format!("a={a} b={b} P={p}: width {}", to_f64(&e.width())));
        }
    }
    out.push(nested.finish());
    out.push(tail.finish());

    let mut sym = Tally::new(s, "b = 1 and b = -1 enclosures coincide");
    let mut ak = Tally::new(s, "anti-Korselt enclosure is the b = -1 enclosure minus 1/4");
    for &p in &bounds {
        let plus = affine_density_enclosure_with(1, 1, p, pie, exec)?;
        let minus = affine_density_enclosure_with(1, -1, p, pie, exec)?;
        sym.case(plus == minus, || format!("P={p}: {plus} vs {minus}"));
        let k = anti_korselt_enclosure_with(p, pie, exec)?;
        let quarter = rational::ratio(1, 4);
        ak.case(k.lower == &minus.lower - &quarter && k.upper == &minus.upper - &quarter, || {
            format!("P={p}: {k} vs {minus}")
        });
    }
    out.push(sym.finish());
    out.push(ak.finish());

    let mut sup = Tally::new(s, "supremum values are non-increasing and dominate the affine enclosures");
    let values = supremum_prefix_values(12, exec)?;
    for (k, w) in values.windows(2).enumerate() {
        sup.case(w[1] <= w[0], || format!("k={}: {} > {}", k + 2, to_f64(&w[1]), to_f64(&w[0])));
    }
    let odd = odd_primes_up_to(top);
    for (k, v) in values.iter().enumerate().take(odd.len().min(8)) {
        for b in [1i64, 3, 15] {
            let e = affine_density_enclosure_with(1, b, odd[k], PieBudget::exhaustive(), exec)?;
            sup.case(v >= &e.upper, || format!("k={} b={b}", k + 1));
        }
    }
    out.push(sup.finish());

    let mut union = Tally::new(s, "union density equals the count over one period");
    let classes: Vec<ArithmeticProgression> = [(2u64, 4u64), (3, 6), (15, 20), (5, 10), (1, 9), (4, 12), (7, 14), (11, 30)]
        .iter()
        .map(|&(f, st)| ArithmeticProgression::new(f, st))
        .collect::<Result<_>>()?;
    for mask in 1u32..1 << classes.len() {
        let aps: Vec<ArithmeticProgression> =
            (0..classes.len()).filter(|i| mask >> i & 1 == 1).map(|i| classes[i]).collect();
        let period = aps.iter().fold(1u64, |acc, ap| acc.lcm(&ap.step()));
        let count = (1..=period).filter(|&n| aps.iter().any(|ap| ap.contains(n))).count() as u64;
        let d = finite_union_density(&aps)?;
        union.case(d == rational::ratio(count as i64, period), || format!("{aps:?}"));
    }
    out.push(union.finish());

    let mut exact = Tally::new(s, "exact parity cases and their empirical densities");
    let sieve = SpfSieve::new(budget.scan_limit);
    for (a, b, value) in [(2u64, 1i64, rational::ratio(3, 4)), (1, 2, rational::ratio(1, 2)), (4, -3, rational::ratio(3, 4))] {
        let e = affine_density_enclosure_with(a, b, top, pie, exec)?;
        exact.case(e.lower == value && e.upper == value, || format!("a={a} b={b}: {e}"));
        let emp = empirical_density_with(&SetDescriptor::affine(a, b)?, budget.scan_limit, &sieve, exec);
        let gap = (to_f64(&emp) - to_f64(&value)).abs();
        exact.case(gap <= 1e-2, || format!("a={a} b={b}: empirical off by {gap}"));
    }
    out.push(exact.finish());

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("Density".parse::<Suite>().unwrap(), Suite::Density);
        assert!("proofs".parse::<Suite>().is_err());
        assert_eq!(Suite::All.to_string(), "all");
    }

    #[test]
    fn small_budget_passes_everything() {
        let budget = VerifyBudget {
            max_n: 120,
            max_k: 24,
            scan_limit: 5_000,
            prime_bound: 30,
            pie_depth: 4,
        };
        let report = run_suite(Suite::All, &budget, Execution::default()).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{}: {:?}", c.name, c.counterexamples);
            assert!(c.cases > 0, "{}", c.name);
        }
        assert!(report.passed());
        assert_eq!(report.checks.len(), 4 + 5 + 7);
    }

    #[test]
    fn rejects_degenerate_budget() {
        let budget = VerifyBudget {
            prime_bound: 2,
            ..VerifyBudget::default()
        };
        assert!(run_suite(Suite::Density, &budget, Execution::default()).is_err());
    }
}
