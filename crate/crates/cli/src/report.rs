//! Serializable reports and their plain/CSV renderings.
//!
//! Field order in every struct is the JSON field order, so identical
//! requests print byte-identical JSON.

use std::io::{self, Write};

use serde::Serialize;

use powersum_core::arith::rational::{fraction_string, to_decimal, Rounding};
use powersum_core::arith::Rational;
use powersum_core::density::DensityEnclosure;
use powersum_core::sets::Membership;
use powersum_core::verify::VerifyReport;

use crate::args::Format;

#[derive(Debug, Serialize)]
pub struct ResidueReport {
    pub n: u64,
    pub k: u64,
    pub residue: u64,
    pub method: &'static str,
}

#[derive(Debug, Serialize)]
pub struct MemberReport {
    pub set: String,
    pub n: u64,
    pub member: bool,
    pub status: Membership,
}

#[derive(Debug, Serialize)]
pub struct EnumerateReport {
    pub set: String,
    pub limit: u64,
    pub count: usize,
    pub members: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct Empirical {
    pub limit: u64,
    pub density: String,
    pub decimal: String,
}

impl Empirical {
    pub fn new(limit: u64, density: &Rational) -> Self {
        Empirical {
            limit,
            density: fraction_string(density),
            decimal: to_decimal(density, 6, Rounding::Nearest),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityStatus {
    Complete,
    BudgetExceeded,
    EmpiricalOnly,
}

#[derive(Debug, Serialize)]
pub struct DensityReport {
    pub set: String,
    pub prime_bound: u64,
    pub pie_depth: u32,
    pub max_nodes: u64,
    pub status: DensityStatus,
    pub enclosure: Option<DensityEnclosure>,
    pub empirical: Option<Empirical>,
}

#[derive(Debug, Serialize)]
pub struct SupremumValue {
    pub k: u32,
    pub value: String,
    pub decimal: String,
}

#[derive(Debug, Serialize)]
pub struct SupremumReport {
    pub supremum: u32,
    pub value: String,
    pub decimal: String,
    pub note: &'static str,
    pub prefix: Vec<SupremumValue>,
}

pub enum Report {
    Residue(ResidueReport),
    Member(MemberReport),
    Enumerate(EnumerateReport),
    Density(DensityReport),
    Supremum(SupremumReport),
    Verify(VerifyReport),
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::other)?;
    writeln!(out)
}

fn csv_rows(out: &mut dyn Write, header: &[&str], rows: Vec<Vec<String>>) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(io::Error::other)?;
    for row in rows {
        w.write_record(&row).map_err(io::Error::other)?;
    }
    w.flush()
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl Report {
    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => match self {
                Report::Residue(r) => json(out, r),
                Report::Member(r) => json(out, r),
                Report::Enumerate(r) => json(out, r),
                Report::Density(r) => json(out, r),
                Report::Supremum(r) => json(out, r),
                Report::Verify(r) => json(out, r),
            },
            Format::Csv => self.write_csv(out),
            Format::Plain => self.write_plain(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        match self {
            Report::Residue(r) => csv_rows(
                out,
                &["n", "k", "residue", "method"],
                vec![vec![r.n.to_string(), r.k.to_string(), r.residue.to_string(), r.method.to_string()]],
            ),
            Report::Member(r) => csv_rows(
                out,
                &["set", "n", "member", "status"],
                vec![vec![
                    r.set.clone(),
                    r.n.to_string(),
                    r.member.to_string(),
                    membership_word(r.status).to_string(),
                ]],
            ),
            Report::Enumerate(r) => csv_rows(out, &["n"], r.members.iter().map(|n| vec![n.to_string()]).collect()),
            Report::Density(r) => {
                let e = r.enclosure.as_ref();
                let emp = r.empirical.as_ref();
                csv_rows(
                    out,
                    &[
                        "set", "prime_bound", "pie_depth", "status", "lower", "upper", "lower_decimal",
                        "upper_decimal", "tail_bound", "empirical_limit", "empirical_density",
                    ],
                    vec![vec![
                        r.set.clone(),
                        r.prime_bound.to_string(),
                        r.pie_depth.to_string(),
                        status_word(&r.status).to_string(),
                        opt(e.map(|e| fraction_string(&e.lower))),
                        opt(e.map(|e| fraction_string(&e.upper))),
                        opt(e.map(|e| e.lower_decimal())),
                        opt(e.map(|e| e.upper_decimal())),
                        opt(e.map(|e| fraction_string(&e.truncation.tail_bound))),
                        opt(emp.map(|m| m.limit)),
                        opt(emp.map(|m| m.density.clone())),
                    ]],
                )
            }
            Report::Supremum(r) => csv_rows(
                out,
                &["k", "value", "decimal"],
                r.prefix
                    .iter()
                    .map(|v| vec![v.k.to_string(), v.value.clone(), v.decimal.clone()])
                    .collect(),
            ),
            Report::Verify(r) => csv_rows(
                out,
                &["suite", "check", "passed", "cases", "counterexamples"],
                r.checks
                    .iter()
                    .map(|c| {
                        vec![
                            c.suite.to_string(),
                            c.name.clone(),
                            c.passed.to_string(),
                            c.cases.to_string(),
                            c.counterexamples.join("; "),
                        ]
                    })
                    .collect(),
            ),
        }
    }

    fn write_plain(&self, out: &mut dyn Write) -> io::Result<()> {
        match self {
            Report::Residue(r) => writeln!(out, "S_{}({}) mod {} = {}  ({})", r.k, r.n, r.n, r.residue, r.method),
            Report::Member(r) => writeln!(out, "{} {} {}", r.n, membership_phrase(r.status), r.set),
            Report::Enumerate(r) => {
                for n in &r.members {
                    writeln!(out, "{n}")?;
                }
                Ok(())
            }
            Report::Density(r) => {
                writeln!(out, "set:        {}", r.set)?;
                if let Some(e) = &r.enclosure {
                    writeln!(out, "enclosure:  {e}")?;
                    writeln!(out, "width:      {}", to_decimal(&e.width(), 9, Rounding::Up))?;
                    writeln!(out, "tail bound: {}", to_decimal(&e.truncation.tail_bound, 9, Rounding::Up))?;
                    writeln!(out, "terms:      {}", e.truncation.pie_terms)?;
                    writeln!(out, "method:     {}", e.truncation.note)?;
                }
                if let Some(m) = &r.empirical {
                    writeln!(out, "empirical:  {} (n <= {})", m.decimal, m.limit)?;
                }
                if matches!(r.status, DensityStatus::BudgetExceeded) {
                    writeln!(out, "status:     node budget exceeded; enclosure computed at a smaller depth")?;
                }
                Ok(())
            }
            Report::Supremum(r) => {
                for v in &r.prefix {
                    writeln!(out, "k = {:>2}: {}", v.k, v.decimal)?;
                }
                writeln!(out, "bound for k = {}: {} ({})", r.supremum, r.decimal, r.note)
            }
            Report::Verify(r) => {
                for c in &r.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{tag} [{}] {} ({} cases)", c.suite, c.name, c.cases)?;
                    for x in &c.counterexamples {
                        writeln!(out, "       counterexample: {x}")?;
                    }
                }
                let failed = r.checks.iter().filter(|c| !c.passed).count();
                writeln!(out, "{} checks, {} failed", r.checks.len(), failed)
            }
        }
    }
}

fn membership_word(m: Membership) -> &'static str {
    match m {
        Membership::Member => "member",
        Membership::NonMember => "non-member",
        Membership::OutOfDomain => "out-of-domain",
    }
}

fn membership_phrase(m: Membership) -> &'static str {
    match m {
        Membership::Member => "is a member of",
        Membership::NonMember => "is not a member of",
        Membership::OutOfDomain => "is outside the domain of",
    }
}

fn status_word(s: &DensityStatus) -> &'static str {
    match s {
        DensityStatus::Complete => "complete",
        DensityStatus::BudgetExceeded => "budget-exceeded",
        DensityStatus::EmpiricalOnly => "empirical-only",
    }
}
