//! Subcommand implementations. Each returns the full stdout text and an exit code.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Duration;

use bellkit_core::bell::{
    bell2_number_series, bell_number_series, deg_bell2_number_series, deg_bell_number_series, BellError,
    BellFamily,
};
use bellkit_core::special::{derangements, stirling_table, StirlingKind};
use bellkit_core::verify::{check_many, Status, TheoremId, VerificationReport, VerifyError, DEFAULT_K_RANGE};
use bellkit_core::{ExactRational, MultiPoly, PolySeries};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::args::{Cli, Command};
use crate::bench::{self, BenchReport, Workload};
use crate::config::{FlagValues, Settings};
use crate::error::{exit, CliError};
use crate::oeis::{self, OeisQuery, OeisResult, Source, Transform};
use crate::output::{
    records_to_csv, records_to_text, to_csv, to_json, Format, OutputRecord, SeriesDoc, TableDoc,
};

pub const DEFAULT_TABLE_MAX_N: usize = 8;
pub const DEFAULT_SERIES_ORDER: usize = 8;
pub const DEFAULT_BENCH_ORDER: usize = 64;

/// What the process should print on stdout and exit with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: exit::OK,
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    settings: Settings,
}

impl Ctx<'_> {
    fn specialize(&self, p: &MultiPoly) -> MultiPoly {
        match (&self.cli.at_lambda, &self.cli.at_x) {
            (None, None) => p.clone(),
            (l, x) => p.eval(l.as_ref(), x.as_ref()),
        }
    }

    fn record(&self, id: &str, n: usize, p: &MultiPoly) -> OutputRecord {
        OutputRecord::new(id, n, &self.specialize(p))
            .with_specializations(self.cli.at_lambda.as_ref(), self.cli.at_x.as_ref())
    }
}

pub fn run(cli: &Cli, env: &dyn Fn(&str) -> Option<String>) -> Result<Outcome, CliError> {
    let flags = FlagValues {
        config: cli.config.clone(),
        format: cli.format,
        timeout_ms: cli.timeout_ms,
        fixtures: cli.fixtures.clone(),
    };
    let ctx = Ctx {
        cli,
        settings: Settings::resolve(&flags, env)?,
    };
    match &cli.command {
        Command::Table { family, k } => table(&ctx, family, *k),
        Command::Series { expr, k } => series(&ctx, expr, *k),
        Command::Verify { theorems, all, ids } => verify(&ctx, theorems, *all, ids),
        Command::Bench { workload, reps } => bench_cmd(&ctx, workload, *reps),
        Command::Oeis {
            terms,
            transform,
            live,
        } => oeis_cmd(&ctx, terms, transform, *live),
    }
}

fn render_records(
    format: Format,
    records: Vec<OutputRecord>,
    text_title: &str,
    with_ogf: bool,
    doc: impl FnOnce(Vec<OutputRecord>) -> Result<String, CliError>,
) -> Result<String, CliError> {
    match format {
        Format::Csv => records_to_csv(&records),
        Format::Text => Ok(records_to_text(text_title, &records, with_ogf)),
        Format::Json => doc(records),
    }
}

// ---------------------------------------------------------------- table

const TABLE_IDS: [&str; 5] = [
    "stirling1",
    "stirling2",
    "deg_stirling1",
    "deg_stirling2",
    "derangements",
];

fn table(ctx: &Ctx, family: &str, k: Option<i64>) -> Result<Outcome, CliError> {
    let max_n = ctx.cli.max_n.unwrap_or(DEFAULT_TABLE_MAX_N);
    let id = family.replace('-', "_");
    let poly_only = |what: &str| -> Result<(), CliError> {
        match k {
            Some(_) => Err(CliError::Usage(format!("{what} takes no poly index"))),
            None => Ok(()),
        }
    };
    let records = match id.as_str() {
        "stirling1" | "stirling2" | "deg_stirling1" | "deg_stirling2" => {
            poly_only(&id)?;
            let kind = if id.ends_with('1') {
                StirlingKind::First
            } else {
                StirlingKind::Second
            };
            let t = stirling_table(kind, id.starts_with("deg_"), max_n);
            let mut out = Vec::new();
            for n in 0..=max_n {
                for col in 0..=n {
                    out.push(OutputRecord {
                        column: Some(col),
                        ..ctx.record(&id, n, &t.get(n, col))
                    });
                }
            }
            out
        }
        "derangements" => {
            poly_only(&id)?;
            derangements(max_n)
                .values
                .iter()
                .enumerate()
                .map(|(n, d)| {
                    ctx.record(
                        &id,
                        n,
                        &MultiPoly::constant(ExactRational::from_integer(d.clone())),
                    )
                })
                .collect()
        }
        _ => {
            let fam = BellFamily::from_name(&id, k).map_err(|e| match e {
                BellError::UnknownFamily(name) => CliError::Usage(format!(
                    "unknown family `{name}`; expected one of {}, {}",
                    BellFamily::NAMES.join(", "),
                    TABLE_IDS.join(", ")
                )),
                other => other.into(),
            })?;
            if max_n < fam.first_index() {
                return Err(BellError::IndexStartsAtOne { family: fam }.into());
            }
            family_values(fam, max_n)?
                .into_iter()
                .map(|(n, v)| OutputRecord {
                    k: fam.poly_index(),
                    ..ctx.record(fam.name(), n, &v)
                })
                .collect()
        }
    };
    let title = match k {
        Some(k) => format!("{id} k={k}, n <= {max_n}"),
        None => format!("{id}, n <= {max_n}"),
    };
    let stdout = render_records(ctx.settings.format, records, &title, false, |records| {
        to_json(&TableDoc {
            kind: "table".into(),
            id: id.clone(),
            max_n,
            records,
        })
    })?;
    Ok(Outcome::ok(stdout))
}

/// Values by both computation paths; any disagreement is a verification failure.
fn family_values(fam: BellFamily, max_n: usize) -> Result<Vec<(usize, MultiPoly)>, CliError> {
    let explicit = fam.explicit_values(max_n);
    let generating = fam.gf_values(max_n)?;
    explicit
        .into_iter()
        .zip(generating)
        .map(|(e, g)| {
            if e.value != g.value {
                return Err(BellError::PathMismatch {
                    family: fam,
                    n: e.n,
                    explicit: e.value,
                    generating: g.value,
                }
                .into());
            }
            Ok((e.n, e.value))
        })
        .collect()
}

// ---------------------------------------------------------------- series

/// Named generating functions: id, description, needs a poly index.
pub const SERIES_IDS: [(&str, &str, bool); 10] = [
    ("eq4", "e^(x(e^t - 1)), classical Bell polynomials", false),
    (
        "eq9",
        "e_lambda^x(e_lambda(t) - 1), degenerate Bell polynomials",
        false,
    ),
    ("eq13", "e^(e^t - 1) - 1, Bell numbers", false),
    (
        "eq15",
        "log(1 + log(1 + t)), Bell numbers of the second kind",
        false,
    ),
    (
        "eq19",
        "log(1 + x log(1 + t)), Bell polynomials of the second kind",
        false,
    ),
    (
        "eq26",
        "e_lambda(e_lambda(t) - 1) - 1, degenerate Bell numbers",
        false,
    ),
    (
        "eq28",
        "log_lambda(1 + log_lambda(1 + t)), degenerate Bell numbers of the second kind",
        false,
    ),
    (
        "eq32",
        "log_lambda(1 + x log_lambda(1 + t)), degenerate Bell polynomials of the second kind",
        false,
    ),
    (
        "eq36",
        "Li_k(-x log(1 - t)), poly-Bell polynomials of the second kind",
        true,
    ),
    (
        "eq40",
        "Li_{k,lambda}(-x log_lambda(1 - t)), degenerate poly-Bell polynomials of the second kind",
        true,
    ),
];

fn to_poly_series(s: bellkit_core::RationalSeries) -> PolySeries {
    s.map(|c| MultiPoly::constant(c.clone()))
}

pub fn named_series(expr: &str, k: Option<i64>, order: usize) -> Result<PolySeries, CliError> {
    let Some(&(id, _, needs_k)) = SERIES_IDS.iter().find(|(id, _, _)| id.eq_ignore_ascii_case(expr)) else {
        let known: Vec<&str> = SERIES_IDS.iter().map(|(id, _, _)| *id).collect();
        return Err(CliError::Usage(format!(
            "unknown series `{expr}`; expected one of {}",
            known.join(", ")
        )));
    };
    match (needs_k, k) {
        (true, None) => return Err(CliError::Usage(format!("{id} needs --k"))),
        (false, Some(_)) => return Err(CliError::Usage(format!("{id} takes no poly index"))),
        _ => {}
    }
    let k = k.unwrap_or_default();
    let s = match id {
        "eq4" => BellFamily::ClassicalBell.generating_function(order)?,
        "eq9" => BellFamily::DegBell.generating_function(order)?,
        "eq13" => to_poly_series(bell_number_series(order)),
        "eq15" => to_poly_series(bell2_number_series(order)?),
        "eq19" => BellFamily::Bell2.generating_function(order)?,
        "eq26" => deg_bell_number_series(order),
        "eq28" => deg_bell2_number_series(order)?,
        "eq32" => BellFamily::DegBell2.generating_function(order)?,
        "eq36" => BellFamily::PolyBell2 { k }.generating_function(order)?,
        _ => BellFamily::DegPolyBell2 { k }.generating_function(order)?,
    };
    Ok(s)
}

fn series(ctx: &Ctx, expr: &str, k: Option<i64>) -> Result<Outcome, CliError> {
    let order = ctx.cli.order.unwrap_or(DEFAULT_SERIES_ORDER);
    let s = named_series(expr, k, order)?;
    let id = expr.to_ascii_lowercase();
    let records: Vec<OutputRecord> = (0..=order)
        .map(|n| OutputRecord {
            k,
            ogf: Some(ctx.specialize(s.coeff(n)).to_string()),
            ..ctx.record(&id, n, &s.egf_term(n))
        })
        .collect();
    let description = SERIES_IDS
        .iter()
        .find(|(i, _, _)| *i == id)
        .map(|(_, d, _)| *d)
        .unwrap_or_default();
    let title = format!("{id} to order {order}: {description}\n# n\togf\tegf");
    let egf_line = records
        .iter()
        .map(|r| r.value.as_str())
        .collect::<Vec<_>>()
        .join(", ");
    let mut stdout = render_records(ctx.settings.format, records, &title, true, |records| {
        to_json(&SeriesDoc {
            kind: "series".into(),
            id: id.clone(),
            order,
            records,
        })
    })?;
    if ctx.settings.format == Format::Text {
        let _ = writeln!(stdout, "egf: {egf_line}");
    }
    Ok(Outcome::ok(stdout))
}

// ---------------------------------------------------------------- verify

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub n: usize,
    pub k: Option<i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub theorem: String,
    pub statement: String,
    /// `pass`, `fail` or `error`.
    pub status: String,
    pub max_n: usize,
    pub k_range: Option<String>,
    pub cases: usize,
    pub counterexample: Option<CounterexampleRecord>,
    pub notes: Vec<String>,
    pub elapsed_us: u64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub kind: String,
    pub all_passed: bool,
    pub reports: Vec<ReportRecord>,
}

fn range_text(r: &RangeInclusive<i64>) -> String {
    format!("{}..{}", r.start(), r.end())
}

fn micros(d: Duration) -> u64 {
    u64::try_from(d.as_micros()).unwrap_or(u64::MAX)
}

fn report_record(
    id: TheoremId,
    max_n: usize,
    result: Result<VerificationReport, VerifyError>,
) -> ReportRecord {
    match result {
        Ok(r) => ReportRecord {
            theorem: id.name().into(),
            statement: id.statement().into(),
            status: match r.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
            }
            .into(),
            max_n: r.max_n,
            k_range: r.k_range.as_ref().map(range_text),
            cases: r.cases,
            counterexample: r.counterexample.map(|c| CounterexampleRecord {
                n: c.n,
                k: c.k,
                lhs: c.lhs,
                rhs: c.rhs,
            }),
            notes: r.notes,
            elapsed_us: micros(r.elapsed),
            error: None,
        },
        Err(e) => ReportRecord {
            theorem: id.name().into(),
            statement: id.statement().into(),
            status: "error".into(),
            max_n,
            k_range: None,
            cases: 0,
            counterexample: None,
            notes: Vec::new(),
            elapsed_us: 0,
            error: Some(e.to_string()),
        },
    }
}

pub fn select_theorems(theorems: &[String], all: bool, ids: &[String]) -> Result<Vec<TheoremId>, CliError> {
    let named: Vec<&String> = theorems.iter().chain(ids).collect();
    if all || named.is_empty() || named.iter().any(|s| s.eq_ignore_ascii_case("all")) {
        return Ok(TheoremId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for s in named {
        let id: TheoremId = s
            .parse()
            .map_err(|e: VerifyError| CliError::Usage(e.to_string()))?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct VerifyCsvRow<'a> {
    theorem: &'a str,
    status: &'a str,
    max_n: usize,
    k_range: Option<&'a str>,
    cases: usize,
    elapsed_us: u64,
    counterexample_n: Option<usize>,
    counterexample_k: Option<i64>,
    lhs: Option<&'a str>,
    rhs: Option<&'a str>,
    error: Option<&'a str>,
}

fn verify(ctx: &Ctx, theorems: &[String], all: bool, ids: &[String]) -> Result<Outcome, CliError> {
    let selected = select_theorems(theorems, all, ids)?;
    if ctx.cli.max_n == Some(0) {
        return Err(CliError::Usage(VerifyError::MaxNTooSmall.to_string()));
    }
    let k_range = ctx.cli.k_range.clone().unwrap_or(DEFAULT_K_RANGE);
    let results = check_many(&selected, ctx.cli.max_n, Some(k_range));
    let reports: Vec<ReportRecord> = selected
        .iter()
        .zip(results)
        .map(|(&id, r)| report_record(id, ctx.cli.max_n.unwrap_or_else(|| id.default_max_n()), r))
        .collect();
    let code = if reports.iter().any(|r| r.status == "error") {
        exit::USAGE
    } else if reports.iter().any(|r| r.status == "fail") {
        exit::VERIFICATION_FAILED
    } else {
        exit::OK
    };
    let doc = VerificationDoc {
        kind: "verification".into(),
        all_passed: code == exit::OK,
        reports,
    };
    let stdout = match ctx.settings.format {
        Format::Json => to_json(&doc)?,
        Format::Csv => to_csv(doc.reports.iter().map(|r| VerifyCsvRow {
            theorem: &r.theorem,
            status: &r.status,
            max_n: r.max_n,
            k_range: r.k_range.as_deref(),
            cases: r.cases,
            elapsed_us: r.elapsed_us,
            counterexample_n: r.counterexample.as_ref().map(|c| c.n),
            counterexample_k: r.counterexample.as_ref().and_then(|c| c.k),
            lhs: r.counterexample.as_ref().map(|c| c.lhs.as_str()),
            rhs: r.counterexample.as_ref().map(|c| c.rhs.as_str()),
            error: r.error.as_deref(),
        }))?,
        Format::Text => {
            let mut s = String::new();
            for r in &doc.reports {
                let mut line = format!(
                    "{:<5} {:<18} n <= {}",
                    r.status.to_uppercase(),
                    r.theorem,
                    r.max_n
                );
                if let Some(k) = &r.k_range {
                    let _ = write!(line, ", k in {k}");
                }
                let _ = write!(line, ", {} cases, {} us", r.cases, r.elapsed_us);
                let _ = writeln!(s, "{line}");
                if let Some(c) = &r.counterexample {
                    let k = c.k.map(|k| format!(", k = {k}")).unwrap_or_default();
                    let _ = writeln!(
                        s,
                        "      counterexample at n = {}{k}: {} != {}",
                        c.n, c.lhs, c.rhs
                    );
                }
                if let Some(e) = &r.error {
                    let _ = writeln!(s, "      error: {e}");
                }
            }
            let passed = doc.reports.iter().filter(|r| r.status == "pass").count();
            let _ = writeln!(s, "{passed}/{} checks passed", doc.reports.len());
            s
        }
    };
    Ok(Outcome { stdout, code })
}

// ---------------------------------------------------------------- bench

#[derive(Serialize)]
struct BenchCsvRow<'a> {
    workload: String,
    order: usize,
    reps: usize,
    algorithm: &'a str,
    min_ns: u64,
    median_ns: u64,
    max_ns: u64,
    coeff_mults: u64,
    coeff_adds: u64,
}

fn bench_cmd(ctx: &Ctx, workload: &str, reps: usize) -> Result<Outcome, CliError> {
    let workload: Workload = workload.parse()?;
    let order = ctx.cli.order.unwrap_or(DEFAULT_BENCH_ORDER);
    let report: BenchReport = bench::run(workload, order, reps)?;
    let stdout = match ctx.settings.format {
        Format::Json => to_json(&report)?,
        Format::Csv => to_csv(report.algorithms.iter().map(|a| BenchCsvRow {
            workload: report.workload.to_string(),
            order: report.order,
            reps: report.reps,
            algorithm: &a.algorithm,
            min_ns: a.min_ns,
            median_ns: a.median_ns,
            max_ns: a.max_ns,
            coeff_mults: a.coeff_mults,
            coeff_adds: a.coeff_adds,
        }))?,
        Format::Text => {
            let mut s = format!(
                "# {} at order {}, {} reps; outputs agree: {}\n# algorithm\tmin_ns\tmedian_ns\tmax_ns\tmults\tadds\n",
                report.workload, report.order, report.reps, report.outputs_agree
            );
            for a in &report.algorithms {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    a.algorithm, a.min_ns, a.median_ns, a.max_ns, a.coeff_mults, a.coeff_adds
                );
            }
            s
        }
    };
    Ok(Outcome::ok(stdout))
}

// ---------------------------------------------------------------- oeis

fn oeis_cmd(ctx: &Ctx, terms: &[String], transform: &str, live: bool) -> Result<Outcome, CliError> {
    let terms = terms
        .iter()
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Usage(format!("`{t}` is not an integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let transform: Transform = transform.parse()?;
    let query = OeisQuery::new(terms, transform)?;
    let source = if live {
        Source::Live {
            base_url: ctx.settings.oeis_url.clone(),
            timeout: Duration::from_millis(ctx.settings.timeout_ms),
            cache_dir: ctx.settings.cache_dir.clone(),
        }
    } else {
        let dir: PathBuf = ctx.settings.fixtures.clone().ok_or(oeis::OeisError::NoSource)?;
        Source::Fixtures(dir)
    };
    let result: OeisResult = oeis::lookup(&query, &source)?;
    let stdout = match ctx.settings.format {
        Format::Json => to_json(&result)?,
        Format::Csv => to_csv(&result.candidates)?,
        Format::Text => {
            let mut s = format!(
                "# query {} (transform {}), {} candidate(s), advisory only\n",
                result.query,
                serde_json::to_value(result.transform)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                result.candidates.len()
            );
            for c in &result.candidates {
                let _ = writeln!(s, "{}\t{}", c.id, c.name);
            }
            s
        }
    };
    Ok(Outcome::ok(stdout))
}
