//! The `rascal` command line.
//!
//! Exit codes: 0 success or PASS, 1 FAIL (a pattern or rule does not hold,
//! or generation hit a non-integral cell), 2 usage or parse error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::cell::Cell;
use crate::error::Error;
use crate::io::{self as tio, Format};
use crate::patterns::{self, PatternReport, RingSpec};
use crate::rule::{self, AffineDiamondRule, Inference};
use crate::sequences::{self, DiagonalFamily};
use crate::triangle::Generator;
use crate::{BigRule, BigTriangle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rascal",
    version,
    about = "Exact Pascal/Rascal triangle toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a triangle and print it as JSON or CSV.
    ///
    /// KIND is pascal, rascal-diamond, rascal-additive, rascal-diagonal,
    /// rascal (closed form) or rule. For `rule` the rule text comes first:
    /// `generate rule "E+W-N+1" 5`.
    Generate {
        kind: String,
        #[arg(num_args = 0..=2)]
        args: Vec<String>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        rule: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Check a pattern or rule and print PASS/FAIL with counterexamples.
    Verify {
        #[arg(value_enum)]
        pattern: PatternArg,
        #[command(flatten)]
        source: SourceArgs,
        /// Sweep every valid anchor (ring patterns).
        #[arg(long)]
        all: bool,
        #[arg(long, value_parser = parse_cell)]
        center: Option<Cell>,
        #[arg(long, value_parser = parse_cell)]
        apex: Option<Cell>,
        #[arg(long)]
        level: Option<usize>,
        /// Rule text for `verify rule`.
        #[arg(long)]
        rule: Option<String>,
        /// Generator to compare against for `verify equivalence` on a file.
        #[arg(long)]
        against: Option<String>,
    },
    /// Infer an affine rule over a neighbor template.
    Mine {
        #[command(flatten)]
        source: SourceArgs,
        /// Comma-separated offsets, e.g. E,W,N or E,(-2,0).
        #[arg(long)]
        template: String,
        /// Include a constant term.
        #[arg(long)]
        constant: bool,
        /// Print the rule as structured JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print the cells, values and sums of one diamond ring.
    Ring {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_parser = parse_cell, conflicts_with = "apex")]
        center: Option<Cell>,
        #[arg(long, value_parser = parse_cell)]
        apex: Option<Cell>,
        #[arg(long)]
        level: usize,
    },
    /// Print one diagonal and its arithmetic-progression profile.
    Diagonal {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = FamilyArg::Col)]
        family: FamilyArg,
        #[arg(long)]
        index: usize,
    },
    /// Print a centered text layout.
    Render {
        #[command(flatten)]
        source: SourceArgs,
        /// Minimum cell width.
        #[arg(long, default_value_t = 1)]
        width: usize,
    },
    /// Re-emit a triangle in another format.
    Export {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Values up to LIMIT representable as a·x + b·y with x, y >= 0.
    Representable {
        #[arg(short, default_value_t = 3)]
        a: u64,
        #[arg(short, default_value_t = 5)]
        b: u64,
        #[arg(long, default_value_t = 100)]
        limit: u64,
    },
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// Triangle file (JSON or CSV).
    input: Option<PathBuf>,
    /// Use a built-in Rascal triangle with this many rows.
    #[arg(long, conflicts_with_all = ["input", "pascal"])]
    rascal: Option<usize>,
    /// Use a built-in Pascal triangle with this many rows.
    #[arg(long, conflicts_with = "input")]
    pascal: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PatternArg {
    Tmeg,
    Ashley,
    OddDiamond,
    EvenDiamond,
    HockeyStick,
    Rule,
    Equivalence,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Constant column.
    Col,
    /// Constant row - column.
    Anti,
}

fn parse_cell(s: &str) -> Result<Cell, String> {
    let (r, c) = s.split_once(',').ok_or("expected ROW,COL")?;
    let r: usize = r.trim().parse().map_err(|e| format!("row: {e}"))?;
    let c: usize = c.trim().parse().map_err(|e| format!("col: {e}"))?;
    Cell::new(r, c).ok_or_else(|| format!("column {c} exceeds row {r}"))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Fail(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Integrality { .. } | Error::Overflow(_) => CliError::Fail(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult = Result<i32, CliError>;

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let mut buf = String::new();
    let result = execute(cli.command, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Fail(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAIL
        }
    }
}

fn execute(command: Command, out: &mut String) -> CliResult {
    match command {
        Command::Generate {
            kind,
            args,
            rows,
            rule,
            format,
        } => cmd_generate(&kind, &args, rows, rule, format.into(), out),
        Command::Verify {
            pattern,
            source,
            all,
            center,
            apex,
            level,
            rule,
            against,
        } => {
            let opts = VerifyOptions {
                all,
                center,
                apex,
                level,
                rule,
                against,
            };
            cmd_verify(pattern, &source, &opts, out)
        }
        Command::Mine {
            source,
            template,
            constant,
            json,
        } => cmd_mine(&source, &template, constant, json, out),
        Command::Ring {
            source,
            center,
            apex,
            level,
        } => cmd_ring(&source, center, apex, level, out),
        Command::Diagonal {
            source,
            family,
            index,
        } => cmd_diagonal(&source, family, index, out),
        Command::Render { source, width } => {
            let t = load(&source)?;
            out.push_str(&tio::render(&t, width));
            Ok(EXIT_OK)
        }
        Command::Export { source, format } => {
            let t = load(&source)?;
            out.push_str(&tio::write(&t, format.into()));
            Ok(EXIT_OK)
        }
        Command::Representable { a, b, limit } => {
            let r = sequences::representable_values(a, b, limit);
            let join = |v: &mut dyn Iterator<Item = &u64>| {
                v.map(ToString::to_string).collect::<Vec<_>>().join(",")
            };
            writeln!(out, "representable: {}", join(&mut r.values.iter())).unwrap();
            writeln!(out, "not representable: {}", join(&mut r.complement.iter())).unwrap();
            Ok(EXIT_OK)
        }
    }
}

fn load(source: &SourceArgs) -> Result<BigTriangle, CliError> {
    match (&source.input, source.rascal, source.pascal) {
        (Some(path), None, None) => load_file(path),
        (None, Some(n), None) => Ok(Generator::RascalClosedForm.build(n)?),
        (None, None, Some(n)) => Ok(Generator::Pascal.build(n)?),
        _ => Err(CliError::Usage(
            "give exactly one of an input file, --rascal N, or --pascal N".into(),
        )),
    }
}

fn load_file(path: &Path) -> Result<BigTriangle, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("triangle");
    tio::read(&text, stem).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_rule(text: &str) -> Result<BigRule, CliError> {
    text.parse()
        .map_err(|e: Error| CliError::Usage(format!("rule {text:?}: {e}")))
}

fn cmd_generate(
    kind: &str,
    args: &[String],
    rows: Option<usize>,
    rule: Option<String>,
    format: Format,
    out: &mut String,
) -> CliResult {
    let mut args = args.iter();
    let triangle = if kind == "rule" {
        let text = rule
            .or_else(|| args.next().cloned())
            .ok_or_else(|| CliError::Usage("generate rule needs a rule".into()))?;
        let rule = parse_rule(&text)?;
        let rows = row_count(rows, args.next())?;
        rule::generate_with_rule(&rule, rows)?
    } else {
        let generator = Generator::from_name(kind)
            .ok_or_else(|| CliError::Usage(format!("unknown triangle kind {kind:?}")))?;
        let rows = row_count(rows, args.next())?;
        generator.build(rows)?
    };
    if let Some(extra) = args.next() {
        return Err(CliError::Usage(format!("unexpected argument {extra:?}")));
    }
    out.push_str(&tio::write(&triangle, format));
    Ok(EXIT_OK)
}

fn row_count(flag: Option<usize>, positional: Option<&String>) -> Result<usize, CliError> {
    match (flag, positional) {
        (Some(n), None) => Ok(n),
        (None, Some(s)) => s
            .parse()
            .map_err(|_| CliError::Usage(format!("row count {s:?} is not a number"))),
        (Some(_), Some(_)) => Err(CliError::Usage("row count given twice".into())),
        (None, None) => Err(CliError::Usage("missing row count".into())),
    }
}

struct VerifyOptions {
    all: bool,
    center: Option<Cell>,
    apex: Option<Cell>,
    level: Option<usize>,
    rule: Option<String>,
    against: Option<String>,
}

fn cmd_verify(
    pattern: PatternArg,
    source: &SourceArgs,
    opts: &VerifyOptions,
    out: &mut String,
) -> CliResult {
    let report = match pattern {
        PatternArg::Tmeg => patterns::tmeg_verify(&load(source)?)?,
        PatternArg::Ashley => patterns::ashley_verify(&load(source)?)?,
        PatternArg::HockeyStick => patterns::hockey_stick_sweep(&load(source)?)?,
        PatternArg::OddDiamond => {
            let t = load(source)?;
            match (opts.center, opts.all) {
                (Some(center), false) => {
                    let level = opts.level.unwrap_or(1);
                    let check = patterns::odd_diamond_check(&t, center, level)?;
                    patterns::ring_report("odd-diamond", &check)
                }
                (None, _) => patterns::odd_diamond_sweep(&t)?,
                (Some(_), true) => {
                    return Err(CliError::Usage("--center and --all are exclusive".into()))
                }
            }
        }
        PatternArg::EvenDiamond => {
            let t = load(source)?;
            match (opts.apex, opts.all) {
                (Some(apex), false) => {
                    let level = opts.level.unwrap_or(2);
                    let check = patterns::even_diamond_check(&t, apex, level)?;
                    patterns::ring_report("even-diamond", &check)
                }
                (None, _) => patterns::even_diamond_sweep(&t)?,
                (Some(_), true) => {
                    return Err(CliError::Usage("--apex and --all are exclusive".into()))
                }
            }
        }
        PatternArg::Rule => {
            let text = opts
                .rule
                .as_deref()
                .ok_or_else(|| CliError::Usage("verify rule needs --rule".into()))?;
            let rule = parse_rule(text)?;
            let t = load(source)?;
            let report = rule::check_rule(&rule, &t)?;
            let mut p = PatternReport {
                pattern: format!("rule {rule}"),
                counterexamples: Vec::new(),
                cells_checked: report.cells_checked,
            };
            p.counterexamples = report
                .violations
                .iter()
                .map(|v| patterns::Counterexample {
                    cell: v.cell,
                    expected: v.expected.to_string(),
                    found: v.actual.to_string(),
                    note: None,
                })
                .collect();
            p
        }
        PatternArg::Equivalence => equivalence(source, opts.against.as_deref())?,
    };
    print_report(&report, out);
    Ok(if report.holds() { EXIT_OK } else { EXIT_FAIL })
}

/// Compares a file against a fresh build of the same kind, or all built-in
/// constructions of one triangle against each other.
fn equivalence(source: &SourceArgs, against: Option<&str>) -> Result<PatternReport, CliError> {
    let mut report = PatternReport {
        pattern: "equivalence".into(),
        counterexamples: Vec::new(),
        cells_checked: 0,
    };
    let (reference, candidates): (BigTriangle, Vec<BigTriangle>) = match &source.input {
        Some(path) => {
            let t = load_file(path)?;
            let kind = against.unwrap_or(t.name());
            let generator = Generator::from_name(kind).ok_or_else(|| {
                CliError::Usage(format!(
                    "cannot tell what {kind:?} should equal; pass --against KIND"
                ))
            })?;
            (generator.build(t.num_rows())?, vec![t])
        }
        None => {
            if against.is_some() {
                return Err(CliError::Usage("--against needs an input file".into()));
            }
            match (source.rascal, source.pascal) {
                (Some(n), None) => (
                    Generator::RascalClosedForm.build(n)?,
                    vec![
                        Generator::RascalDiamond.build(n)?,
                        Generator::RascalAdditive.build(n)?,
                        Generator::RascalDiagonal.build(n)?,
                        rule::generate_with_rule(&AffineDiamondRule::rascal_additive(), n)?,
                    ],
                ),
                (None, Some(n)) => (
                    Generator::Pascal.build(n)?,
                    vec![rule::generate_with_rule(&AffineDiamondRule::pascal(), n)?],
                ),
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of an input file, --rascal N, or --pascal N".into(),
                    ))
                }
            }
        }
    };
    for candidate in &candidates {
        if candidate.num_rows() != reference.num_rows() {
            return Err(CliError::Usage("row counts differ".into()));
        }
        report.cells_checked += candidate.cells().count();
        report
            .counterexamples
            .extend(reference.differences(candidate).into_iter().map(|m| {
                patterns::Counterexample {
                    cell: m.cell,
                    expected: m.left.to_string(),
                    found: m.right.to_string(),
                    note: Some(candidate.name().to_string()),
                }
            }));
    }
    Ok(report)
}

fn print_report(report: &PatternReport, out: &mut String) {
    writeln!(out, "{}", if report.holds() { "PASS" } else { "FAIL" }).unwrap();
    writeln!(
        out,
        "{}: {} checked, {} counterexamples",
        report.pattern,
        report.cells_checked,
        report.counterexamples.len()
    )
    .unwrap();
    for c in &report.counterexamples {
        writeln!(out, "{c}").unwrap();
    }
}

fn cmd_mine(
    source: &SourceArgs,
    template: &str,
    constant: bool,
    json: bool,
    out: &mut String,
) -> CliResult {
    let offsets = rule::parse_template(template).map_err(|e| CliError::Usage(e.to_string()))?;
    let t = load(source)?;
    match rule::infer_affine_rule_detailed(&t, &offsets, constant)? {
        Inference::Found(rule) if json => {
            let doc = serde_json::to_string_pretty(&rule.to_document()).expect("rule serializes");
            writeln!(out, "{doc}").unwrap();
        }
        Inference::Found(rule) => writeln!(out, "{rule}").unwrap(),
        _ => writeln!(out, "no rule found").unwrap(),
    }
    Ok(EXIT_OK)
}

fn cmd_ring(
    source: &SourceArgs,
    center: Option<Cell>,
    apex: Option<Cell>,
    level: usize,
    out: &mut String,
) -> CliResult {
    let t = load(source)?;
    let check = match (center, apex) {
        (Some(c), None) => patterns::odd_diamond_check(&t, c, level)?,
        (None, Some(a)) if level == 1 => {
            let cells = patterns::ring_cells(&t, RingSpec::even(a, 1))?;
            let sum = cells
                .iter()
                .map(|&c| t.get(c).cloned().unwrap_or_default())
                .sum::<BigInt>();
            patterns::RingCheck {
                spec: RingSpec::even(a, 1),
                cells,
                ring_sum: sum.clone(),
                expected_sum: sum,
            }
        }
        (None, Some(a)) => patterns::even_diamond_check(&t, a, level)?,
        _ => {
            return Err(CliError::Usage(
                "give --center (odd) or --apex (even)".into(),
            ))
        }
    };
    let cells: Vec<String> = check.cells.iter().map(ToString::to_string).collect();
    let values: Vec<String> = check
        .cells
        .iter()
        .map(|&c| t.get(c).expect("ring inside").to_string())
        .collect();
    writeln!(out, "cells: {}", cells.join(" ")).unwrap();
    writeln!(out, "values: {}", values.join(",")).unwrap();
    writeln!(out, "count: {}", check.cells.len()).unwrap();
    writeln!(out, "sum: {}", check.ring_sum).unwrap();
    writeln!(out, "expected: {}", check.expected_sum).unwrap();
    Ok(EXIT_OK)
}

fn cmd_diagonal(
    source: &SourceArgs,
    family: FamilyArg,
    index: usize,
    out: &mut String,
) -> CliResult {
    let t = load(source)?;
    let family = match family {
        FamilyArg::Col => DiagonalFamily::ConstantCol,
        FamilyArg::Anti => DiagonalFamily::ConstantAnti,
    };
    let seq = sequences::diagonal(&t, family, index)?;
    let text: Vec<String> = seq.iter().map(ToString::to_string).collect();
    writeln!(out, "{}", text.join(",")).unwrap();
    match sequences::ap_profile(&seq) {
        Ok(Some(p)) => writeln!(out, "ap: start {}, difference {}", p.start, p.difference).unwrap(),
        Ok(None) => writeln!(out, "ap: none").unwrap(),
        Err(_) => writeln!(out, "ap: too short").unwrap(),
    }
    Ok(EXIT_OK)
}
