//! The `qfam` command line.
//!
//! [`run`] takes the argument vector and two sinks so it can be driven from
//! tests without spawning a process.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use qfam_core::io::{
    emit_atlas, emit_gamma, emit_table, emit_validation, parse_table_file, AtlasSummary,
    GammaExport, ReportConfig, ValidationFile, VerdictCounts, TOOL_VERSION,
};
use qfam_core::numrep::{sample_rep, CONSTRUCTION_TOL, IDENTITY_TOL};
use qfam_core::qfam::{
    antipode_candidates, check_antipode_candidate, numeric_residuals, search_counit,
    DEFAULT_SEARCH_CAP,
};
use qfam_core::{
    build_gamma, emit_report, enumerate_tables, validate_associativity, verify_all, CayleyTable,
    CheckRecord, CheckVerdict, GammaPresentation, QFamConfig, RelationPreset, ReportFile,
    TableFilter, VerificationReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "qfam", version, about = "Quantum families of maps over finite semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check associativity and look for a two-sided identity.
    Validate { table: PathBuf },
    /// Print every table of the given order, one JSON object per line.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        associative: bool,
    },
    /// Print the comultiplication on generators.
    Gamma {
        table: PathBuf,
        #[command(flatten)]
        family: Family,
    },
    /// Run every structural check and emit a JSON report.
    Verify {
        table: PathBuf,
        #[command(flatten)]
        family: Family,
        #[command(flatten)]
        numeric: NumericArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Search for counits and, if one exists, antipode candidates.
    Counit {
        table: PathBuf,
        #[command(flatten)]
        family: Family,
        #[command(flatten)]
        output: Output,
    },
    /// Verify every associative table of one order.
    Atlas {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        family: Family,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
struct Family {
    /// Number of points; defaults to the table order.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, default_value_t = RelationPreset::AllMaps)]
    preset: RelationPreset,
}

#[derive(Debug, Args)]
struct NumericArgs {
    /// Cross-check the symbolic results in random matrix representations.
    #[arg(long)]
    numeric: bool,
    /// Comma-separated representation dimensions.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 8])]
    dims: Vec<usize>,
    /// Representations per dimension.
    #[arg(long, default_value_t = 1)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock times (makes reports run-dependent).
    #[arg(long)]
    timings: bool,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_PASS
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(stderr, "qfam: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Usage> {
    match cmd {
        Command::Validate { table } => validate(&table, stdout),
        Command::Enumerate { order, associative } => enumerate(order, associative, stdout),
        Command::Gamma { table, family } => gamma(&table, &family, stdout, stderr),
        Command::Verify { table, family, numeric, output } => {
            verify(&table, &family, &numeric, &output, stdout, stderr)
        }
        Command::Counit { table, family, output } => counit(&table, &family, &output, stdout),
        Command::Atlas { order, family, output } => atlas(order, &family, &output, stdout),
    }
}

fn read_table(path: &Path) -> Result<(CayleyTable, Option<String>), Usage> {
    let mut bytes = Vec::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_end(&mut bytes)?;
    } else {
        bytes = std::fs::read(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    }
    parse_table_file(&bytes).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

/// Non-associative tables are accepted; the checks report how they fail.
fn config(table: &CayleyTable, family: &Family) -> Result<QFamConfig, Usage> {
    let m = family.points.unwrap_or(table.order());
    let cfg = match validate_associativity(table) {
        Ok(rec) => QFamConfig::new(m, &rec, family.preset),
        Err(_) => QFamConfig::bypass_validation(m, table.clone(), family.preset),
    };
    Ok(cfg?)
}

fn write_to(out: &Output, stdout: &mut dyn Write, bytes: &[u8]) -> Result<(), Usage> {
    match &out.out {
        Some(path) => {
            std::fs::write(path, bytes).map_err(|e| Usage(format!("{}: {e}", path.display())))
        }
        None => Ok(stdout.write_all(bytes)?),
    }
}

fn validate(path: &Path, stdout: &mut dyn Write) -> Result<i32, Usage> {
    let (table, _) = read_table(path)?;
    let (associative, witness, identity) = match validate_associativity(&table) {
        Ok(rec) => (true, None, rec.identity()),
        Err(w) => (false, Some(w), None),
    };
    let file = ValidationFile {
        version: TOOL_VERSION.to_string(),
        n: table.order(),
        table: table.rows(),
        associative,
        witness,
        identity,
    };
    stdout.write_all(&emit_validation(&file))?;
    Ok(if associative { EXIT_PASS } else { EXIT_FAIL })
}

fn enumerate(order: usize, associative: bool, stdout: &mut dyn Write) -> Result<i32, Usage> {
    let filter = if associative { TableFilter::AssociativeOnly } else { TableFilter::AllMagmas };
    for (i, table) in enumerate_tables(order, filter)?.enumerate() {
        writeln!(stdout, "{}", emit_table(&table, Some(&format!("#{i}"))))?;
    }
    Ok(EXIT_PASS)
}

fn gamma(
    path: &Path,
    family: &Family,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Usage> {
    let (table, _) = read_table(path)?;
    let cfg = config(&table, family)?;
    if !cfg.is_associative() {
        writeln!(stderr, "qfam: warning: table is not associative")?;
    }
    stdout.write_all(&emit_gamma(&GammaExport::new(&build_gamma(&cfg))))?;
    Ok(EXIT_PASS)
}

/// Symbolic checks plus, optionally, one `numeric_oracle` record that fails
/// when a symbolically passing identity is violated in some representation.
fn verify_report(
    g: &GammaPresentation,
    numeric: &NumericArgs,
    rc: &mut ReportConfig,
) -> Result<VerificationReport, Usage> {
    let mut report = verify_all(g);
    if !numeric.numeric {
        return Ok(report);
    }
    let cfg = g.config();
    let mut disagreements = Vec::new();
    let mut relation_residuals = Vec::new();
    for &d in &numeric.dims {
        for i in 0..numeric.samples as u64 {
            let seed = numeric.seed.wrapping_add(i);
            let rep = sample_rep(cfg.m(), cfg.n(), d, seed)?;
            let rel = rep.relation_residual();
            relation_residuals.push(rel);
            if rel > CONSTRUCTION_TOL {
                disagreements.push(format!("d={d} seed={seed}: relation residual {rel:e}"));
            }
            for (name, r) in numeric_residuals(g, &rep, seed)? {
                let Some(rec) = report.records.iter_mut().find(|c| c.name == name) else {
                    continue;
                };
                rec.residuals.push(r);
                if rec.verdict.is_pass() && r > IDENTITY_TOL {
                    disagreements.push(format!("d={d} seed={seed}: {name} residual {r:e}"));
                }
            }
            if !rc.seeds.contains(&seed) {
                rc.seeds.push(seed);
            }
        }
        rc.dims.push(d);
    }
    let verdict = if disagreements.is_empty() {
        CheckVerdict::Pass
    } else {
        CheckVerdict::Fail(disagreements.join("; "))
    };
    let mut rec = CheckRecord::new("numeric_oracle", verdict);
    rec.residuals = relation_residuals;
    report.push(rec);
    Ok(report)
}

fn verify(
    path: &Path,
    family: &Family,
    numeric: &NumericArgs,
    output: &Output,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Usage> {
    let (table, label) = read_table(path)?;
    let cfg = config(&table, family)?;
    let g = build_gamma(&cfg);
    let mut rc = ReportConfig::new(cfg.m(), &table, family.preset);
    rc.label = label;
    let report = verify_report(&g, numeric, &mut rc)?;
    for r in report.records.iter().filter(|r| !r.verdict.is_pass()) {
        writeln!(stderr, "{}: {}", r.name, r.verdict)?;
    }
    write_to(output, stdout, &emit_report(&ReportFile::new(rc, &report, output.timings)))?;
    Ok(report.exit_code())
}

fn counit(
    path: &Path,
    family: &Family,
    output: &Output,
    stdout: &mut dyn Write,
) -> Result<i32, Usage> {
    let (table, label) = read_table(path)?;
    let cfg = config(&table, family)?;
    let g = build_gamma(&cfg);
    let mut rc = ReportConfig::new(cfg.m(), &table, family.preset);
    rc.label = label;
    let mut report = VerificationReport::default();
    let mut found = std::collections::BTreeMap::new();

    let counits = search_counit(&g, DEFAULT_SEARCH_CAP)?;
    report.push(CheckRecord::new(
        "counit_search",
        if counits.is_empty() {
            CheckVerdict::Fail("no character satisfies the counit identities".into())
        } else {
            CheckVerdict::Pass
        },
    ));
    found.insert("counits".to_string(), counits.iter().map(|c| c.to_string()).collect());

    if let Some(eps) = counits.first() {
        let verdict = match antipode_candidates(cfg.m(), cfg.n(), DEFAULT_SEARCH_CAP) {
            Err(e) => CheckVerdict::Inconclusive(e.to_string()),
            Ok(candidates) => {
                let mut passing = Vec::new();
                for s in &candidates {
                    if check_antipode_candidate(&g, s, eps)?.verdict.is_pass() {
                        passing.push(s.to_string());
                    }
                }
                let verdict = if passing.is_empty() {
                    CheckVerdict::Inconclusive(format!(
                        "none of {} row-permutation candidates is an antipode",
                        candidates.len()
                    ))
                } else {
                    CheckVerdict::Pass
                };
                found.insert("antipodes".to_string(), passing);
                verdict
            }
        };
        report.push(CheckRecord::new("antipode_search", verdict));
    }
    let mut file = ReportFile::new(rc, &report, output.timings);
    file.found = found;
    write_to(output, stdout, &emit_report(&file))?;
    Ok(report.exit_code())
}

fn atlas(order: usize, family: &Family, output: &Output, stdout: &mut dyn Write) -> Result<i32, Usage> {
    let tables: Vec<CayleyTable> = enumerate_tables(order, TableFilter::AssociativeOnly)?.collect();
    let results: Vec<Result<VerificationReport, Usage>> = tables
        .par_iter()
        .map(|t| Ok(verify_all(&build_gamma(&config(t, family)?))))
        .collect();
    let mut verdicts = VerdictCounts::default();
    let mut failing = Vec::new();
    let mut inconclusive = Vec::new();
    for (i, (table, report)) in tables.iter().zip(results).enumerate() {
        let report = report?;
        verdicts.record(&report);
        match report.exit_code() {
            EXIT_FAIL => failing.push(format!("#{i} {table}")),
            EXIT_INCONCLUSIVE => inconclusive.push(format!("#{i} {table}")),
            _ => {}
        }
    }
    let summary = AtlasSummary {
        version: TOOL_VERSION.to_string(),
        order,
        m: family.points,
        preset: family.preset,
        tables: tables.len(),
        verdicts,
        failing,
        inconclusive,
    };
    write_to(output, stdout, &emit_atlas(&summary))?;
    Ok(if summary.verdicts.fail > 0 {
        EXIT_FAIL
    } else if summary.verdicts.inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_PASS
    })
}
