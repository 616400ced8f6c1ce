mod args;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use powersum_core::arith::rational::{fraction_string, to_decimal, Rounding};
use powersum_core::density::{
    affine_density_enclosure_with, anti_korselt_enclosure_with, empirical_density_capped,
    supremum_prefix_values, PieBudget,
};
use powersum_core::powersum::{
    carlitz_von_staudt_residue, power_sum_mod_fast, power_sum_mod_naive_capped, PowerSumQuery,
};
use powersum_core::sets::{enumerate_capped, member, SetDescriptor};
use powersum_core::verify::{run_suite, VerifyBudget};
use powersum_core::{Error, Execution};

use args::{Cli, Command, DensityArgs, Method, VerifyArgs};
use report::{
    DensityReport, DensityStatus, Empirical, EnumerateReport, MemberReport, Report, ResidueReport,
    SupremumReport, SupremumValue,
};

const EXIT_FAILED_CHECKS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } | Error::BudgetExceeded { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

/// A finished command: the report to print and the exit status that goes
/// with it (a report can accompany a nonzero status).
struct Outcome {
    report: Report,
    status: u8,
    warning: Option<String>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome {
            report,
            status: 0,
            warning: None,
        }
    }
}

fn configure_threads(threads: usize) -> Execution {
    #[cfg(feature = "parallel")]
    if threads > 0 {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    if threads == 1 {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn residue(a: &args::ResidueArgs) -> Result<Outcome, Error> {
    let q = PowerSumQuery::new(a.n, a.k)?;
    let (residue, method) = match a.method {
        Method::Fast => (power_sum_mod_fast(q), "fast"),
        Method::Naive => (power_sum_mod_naive_capped(q, a.naive_cap)?, "naive"),
        Method::Cvs => (carlitz_von_staudt_residue(q)?, "cvs"),
    };
    Ok(Report::Residue(ResidueReport {
        n: a.n,
        k: a.k,
        residue,
        method,
    })
    .into())
}

fn density(a: &DensityArgs, exec: Execution) -> Result<Outcome, Error> {
    if let Some(k) = a.supremum {
        let values = supremum_prefix_values(k, exec)?;
        let last = values.last().expect("k >= 1");
        return Ok(Report::Supremum(SupremumReport {
            supremum: k,
            value: fraction_string(last),
            decimal: to_decimal(last, 6, Rounding::Up),
            note: "non-increasing in k, so every value is an upper bound for the limit",
            prefix: values
                .iter()
                .zip(1..)
                .map(|(v, k)| SupremumValue {
                    k,
                    value: fraction_string(v),
                    decimal: to_decimal(v, 6, Rounding::Up),
                })
                .collect(),
        })
        .into());
    }
    let set = a.set.expect("clap requires --set or --supremum");
    let budget = PieBudget {
        max_depth: a.pie_depth,
        max_nodes: a.max_nodes,
    };
    if budget.max_depth == 0 {
        return Err(Error::InvalidParameter("--pie-depth must be positive".into()));
    }
    let certified = match set {
        SetDescriptor::Affine(f) => Some(affine_density_enclosure_with(f.a(), f.b(), a.prime_bound, budget, exec)),
        SetDescriptor::AntiKorselt => Some(anti_korselt_enclosure_with(a.prime_bound, budget, exec)),
        _ => None,
    };
    let (status, enclosure, warning) = match certified {
        Some(Ok(e)) => (DensityStatus::Complete, Some(e), None),
        Some(Err(Error::BudgetExceeded { max_nodes, partial })) => (
            DensityStatus::BudgetExceeded,
            Some(*partial),
            Some(format!(
                "inclusion-exclusion budget of {max_nodes} nodes exceeded; reporting a wider enclosure"
            )),
        ),
        Some(Err(e)) => return Err(e),
        None if a.empirical.is_none() => {
            return Err(Error::InvalidParameter(format!(
                "no certified enclosure for {set}; pass --empirical LIMIT for a range estimate"
            )))
        }
        None => (DensityStatus::EmpiricalOnly, None, None),
    };
    let empirical = match a.empirical {
        Some(limit) => Some(Empirical::new(
            limit,
            &empirical_density_capped(&set, limit, a.scan_cap, exec)?,
        )),
        None => None,
    };
    let status_code = if warning.is_some() { EXIT_CAP } else { 0 };
    Ok(Outcome {
        report: Report::Density(DensityReport {
            set: set.to_string(),
            prime_bound: a.prime_bound,
            pie_depth: a.pie_depth,
            max_nodes: a.max_nodes,
            status,
            enclosure,
            empirical,
        }),
        status: status_code,
        warning,
    })
}

fn verify(a: &VerifyArgs, exec: Execution) -> Result<Outcome, Error> {
    if a.scan_limit > a.scan_cap {
        return Err(Error::CapExceeded {
            what: "verify scan limit",
            value: a.scan_limit,
            cap: a.scan_cap,
        });
    }
    let budget = VerifyBudget {
        max_n: a.max_n,
        max_k: a.max_k,
        scan_limit: a.scan_limit,
        prime_bound: a.prime_bound,
        pie_depth: a.pie_depth,
    };
    let report = run_suite(a.suite, &budget, exec)?;
    let status = if report.passed() { 0 } else { EXIT_FAILED_CHECKS };
    Ok(Outcome {
        report: Report::Verify(report),
        status,
        warning: (status != 0).then(|| "some checks failed".to_string()),
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let exec = configure_threads(cli.threads);
    match &cli.command {
        Command::Residue(a) => residue(a),
        Command::Member(a) => {
            let status = member(&a.set, a.n);
            Ok(Report::Member(MemberReport {
                set: a.set.to_string(),
                n: a.n,
                member: status.is_member(),
                status,
            })
            .into())
        }
        Command::Enumerate(a) => {
            let members = enumerate_capped(&a.set, a.limit, a.scan_cap, exec)?;
            Ok(Report::Enumerate(EnumerateReport {
                set: a.set.to_string(),
                limit: a.limit,
                count: members.len(),
                members,
            })
            .into())
        }
        Command::Density(a) => density(a, exec),
        Command::Verify(a) => verify(a, exec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = io::stdout().lock();
            if let Err(e) = outcome.report.write(cli.format, &mut stdout).and_then(|_| stdout.flush()) {
                eprintln!("error: writing output: {e}");
                return ExitCode::FAILURE;
            }
            if let Some(w) = outcome.warning {
                eprintln!("warning: {w}");
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
