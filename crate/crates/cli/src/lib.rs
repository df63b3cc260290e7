//! The `cosetnum` command line.
//!
//! [`run`] parses arguments and returns the exit status together with the text
//! for standard output, so the whole surface can be tested in-process.

pub mod calc;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cosetnum::group::{AxiomStatus, GroupSpec};
use cosetnum::rational::format_rational;
use cosetnum::registry::{builtin_group, builtin_system, tag_for, BUILTIN_GROUPS};
use cosetnum::tables::{Format, ClassTable};
use cosetnum::{
    automorphisms, build_pattern, classify, derive_constraints, enumerate_assignments, parse_rational,
    reproduce_table, validate_group, DoublingSpec, Error, Filter, NumberSystem, RepMatrix, RulePattern, WhichTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Io { .. } => EXIT_RUNTIME,
            CliError::Core(e) => match e {
                Error::UnknownSystem(_) | Error::UnknownGroup(_) => EXIT_USAGE,
                Error::GroupFile(_)
                | Error::NotAGroup(_)
                | Error::NonSquareTable { .. }
                | Error::IdentityOutOfRange { .. }
                | Error::InvalidOrder(_) => EXIT_VALIDATION,
                Error::ParseRational(_) | Error::ParseNumber(_) => EXIT_PARSE,
                _ => EXIT_RUNTIME,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cosetnum", version, about = "Number systems generated from finite groups")]
pub struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List associative assignments over a finite value domain.
    Enumerate {
        #[command(flatten)]
        group: GroupArgs,
        /// Comma-separated rationals.
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        domain: String,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        /// Collapse assignments related by a relabeling of the basis.
        #[arg(long)]
        classes: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
    },
    /// Regenerate one of the classification tables.
    Tables {
        #[arg(long, value_parser = ["1", "2", "3", "4"])]
        which: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
    },
    /// Print the associativity constraints of a group's rule pattern.
    Constraints {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
    },
    /// Evaluate an expression such as "(0,1,0,0)*(0,0,1,0)" or "inv((3,4))".
    Calc {
        #[arg(long)]
        system: String,
        /// Print decimal approximations instead of exact fractions.
        #[arg(long)]
        decimal: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print representation matrices of the basis elements or of one number.
    Matrices {
        #[arg(long)]
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        number: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
    },
    /// Check the group axioms of a Cayley table.
    Validate {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
    },
    /// Build a four-dimensional system over a two-dimensional base.
    Double {
        #[arg(long, allow_hyphen_values = true, required_unless_present_all = ["base_alpha", "outer_alpha"])]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        base_alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        outer_alpha: Option<String>,
        #[arg(long, value_enum, default_value_t = Emit::Assignment)]
        emit: Emit,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GroupArgs {
    /// Builtin group: c2, c3, c4, klein4.
    #[arg(long)]
    pub group: Option<String>,
    /// JSON file with `order`, `identity` and `table`.
    #[arg(long)]
    pub group_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Md,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Md => Format::Markdown,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    All,
    Nonzero,
    Zero,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => Filter::All,
            FilterArg::Nonzero => Filter::NonZero,
            FilterArg::Zero => Filter::ZeroSignature,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Assignment,
    Matrices,
    System,
}

/// What a finished command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((text, failure)) => {
            let stdout = match &cli.output {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => String::new(),
                    Err(source) => {
                        let e = CliError::Io { path: path.clone(), source };
                        return Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") };
                    }
                },
                None => text,
            };
            match failure {
                None => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
                Some(e) => Outcome { code: e.exit_code(), stdout, stderr: format!("error: {e}\n") },
            }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Output text plus an optional failure that still wants the text shown
/// (a validation report for a broken table).
type Executed = (String, Option<CliError>);

fn execute(cli: &Cli) -> Result<Executed, CliError> {
    match &cli.command {
        Command::Enumerate { group, domain, filter, classes, format } => {
            let pattern = build_pattern(&load_group(group)?)?;
            let domain = parse_domain(domain)?;
            Ok((enumerate_cmd(&pattern, &domain, (*filter).into(), *classes, *format), None))
        }
        Command::Tables { which, format } => {
            let which: WhichTable = which.parse()?;
            Ok((reproduce_table(which).render((*format).into()), None))
        }
        Command::Constraints { group, format } => {
            let pattern = build_pattern(&load_group(group)?)?;
            Ok((constraints_cmd(&pattern, *format), None))
        }
        Command::Calc { system, decimal, format, expr } => {
            let sys = builtin_system(system)?;
            let x = calc::evaluate(&sys, expr)?;
            let text = match format {
                FormatArg::Json => {
                    let coeffs: Vec<String> = x.coeffs().iter().map(format_rational).collect();
                    pretty(&json!({ "system": sys.name(), "result": coeffs }))
                }
                _ if *decimal => format!("{}\n", x.decimal()),
                _ => format!("{x}\n"),
            };
            Ok((text, None))
        }
        Command::Matrices { system, number, format } => {
            let sys = builtin_system(system)?;
            let labeled: Vec<(String, RepMatrix)> = match number {
                Some(text) => vec![(text.trim().to_string(), sys.parse(text)?.rep_matrix())],
                None => named_generators(&sys),
            };
            Ok((matrices_text(sys.name(), &labeled, *format), None))
        }
        Command::Validate { group, format } => {
            let spec = load_group(group)?;
            let report = validate_group(&spec);
            let text = match format {
                FormatArg::Json => pretty(&report_json(&report)),
                _ => report.to_string(),
            };
            let failure = report.first_failure().map(|c| match c.status {
                AxiomStatus::Fail(w) => {
                    CliError::Validation(format!("group {} fails {} at {w}", report.group, c.axiom))
                }
                _ => unreachable!("first_failure only returns failures"),
            });
            Ok((text, failure))
        }
        Command::Double { alpha, base_alpha, outer_alpha, emit, format } => {
            let parse = |s: &Option<String>| s.as_deref().map(parse_rational).transpose();
            let (alpha, base, outer) = (parse(alpha)?, parse(base_alpha)?, parse(outer_alpha)?);
            let spec = match (base.or(alpha.clone()), outer.or(alpha)) {
                (Some(b), Some(o)) => DoublingSpec::with_levels(b, o),
                _ => return Err(CliError::Usage("give --alpha or both --base-alpha and --outer-alpha".into())),
            };
            Ok((double_cmd(&spec, *emit, *format)?, None))
        }
    }
}

fn pretty(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json"))
}

fn load_group(args: &GroupArgs) -> Result<GroupSpec, CliError> {
    match (&args.group, &args.group_file) {
        (Some(name), _) => match builtin_group(name) {
            Ok(g) => Ok(g),
            Err(Error::UnknownGroup(n)) => Err(CliError::Usage(format!(
                "unknown group `{n}` (builtin groups: {})",
                BUILTIN_GROUPS.join(", ")
            ))),
            Err(e) => Err(e.into()),
        },
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::GroupFile(format!("{}: {e}", path.display())))?;
            Ok(GroupSpec::from_json(&text)?)
        }
        (None, None) => Err(CliError::Usage("give --group or --group-file".into())),
    }
}

fn parse_domain(text: &str) -> Result<Vec<cosetnum::Rational>, CliError> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(|s| Ok(parse_rational(s)?)).collect()
}

fn enumerate_cmd(
    pattern: &RulePattern,
    domain: &[cosetnum::Rational],
    filter: Filter,
    classes: bool,
    format: FormatArg,
) -> String {
    let constraints = derive_constraints(pattern);
    let found = enumerate_assignments(pattern, &constraints, domain, filter);
    let slot_names: Vec<String> = pattern.slot_ids().map(|s| pattern.slot_name(s).to_string()).collect();
    let name_of = |v: &[cosetnum::Rational]| tag_for(pattern, v).unwrap_or("").to_string();

    if format == FormatArg::Json {
        let body = if classes {
            let cls = classify(pattern, &found, &automorphisms(pattern.group()));
            let items: Vec<Value> = cls
                .iter()
                .map(|c| {
                    json!({
                        "representative": c.representative.to_json_value(pattern).expect("complete"),
                        "orbit": c.orbit.iter().map(|m| m.to_json_value(pattern).expect("complete")).collect::<Vec<_>>(),
                        "name": name_of(&c.representative.dense()),
                    })
                })
                .collect();
            json!({ "group": pattern.group().name(), "slots": slot_names, "count": items.len(), "classes": items })
        } else {
            let items: Vec<Value> = found.iter().map(|a| a.to_json_value(pattern).expect("complete")).collect();
            json!({ "group": pattern.group().name(), "slots": slot_names, "count": items.len(), "assignments": items })
        };
        return pretty(&body);
    }

    let mut columns = slot_names;
    let rows: Vec<Vec<String>> = if classes {
        columns.push("orbit".into());
        classify(pattern, &found, &automorphisms(pattern.group()))
            .iter()
            .map(|c| {
                let v = c.representative.dense();
                let mut row: Vec<String> = v.iter().map(format_rational).collect();
                row.push(c.orbit.len().to_string());
                row.push(name_of(&v));
                row
            })
            .collect()
    } else {
        found
            .iter()
            .map(|a| {
                let v = a.dense();
                let mut row: Vec<String> = v.iter().map(format_rational).collect();
                row.push(name_of(&v));
                row
            })
            .collect()
    };
    columns.push("name".into());
    let count = rows.len();
    let table = ClassTable {
        title: format!("{} over {} ({:?} filter)", pattern.kind(), pattern.group().name(), filter),
        columns,
        rows,
        notes: if format == FormatArg::Md {
            vec![format!("{count} {}", if classes { "classes" } else { "assignments" })]
        } else {
            Vec::new()
        },
    };
    table.render(format.into())
}

fn constraints_cmd(pattern: &RulePattern, format: FormatArg) -> String {
    let cs = derive_constraints(pattern);
    match format {
        FormatArg::Json => format!("{}\n", cs.to_json()),
        FormatArg::Csv | FormatArg::Md => {
            let rows: Vec<Vec<String>> = cs
                .equations
                .iter()
                .map(|eq| {
                    let labels = pattern.basis_labels();
                    let [a, b, c] = eq.triple.map(|x| labels[x].clone());
                    vec![format!("({a}, {b}, {c})"), eq.display(pattern).to_string()]
                })
                .collect();
            ClassTable {
                title: format!("associativity constraints for {}", pattern.group().name()),
                columns: vec!["triple".into(), "equation".into()],
                rows,
                notes: Vec::new(),
            }
            .render(format.into())
        }
    }
}

fn named_generators(sys: &Arc<NumberSystem>) -> Vec<(String, RepMatrix)> {
    let labels = sys.pattern().basis_labels().to_vec();
    labels.into_iter().zip(sys.generator_matrices()).collect()
}

fn matrices_text(system: &str, labeled: &[(String, RepMatrix)], format: FormatArg) -> String {
    let cells = |m: &RepMatrix| -> Vec<Vec<String>> {
        m.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
    };
    match format {
        FormatArg::Json => {
            let items: Vec<Value> =
                labeled.iter().map(|(l, m)| json!({ "element": l, "rows": cells(m) })).collect();
            pretty(&json!({ "system": system, "matrices": items }))
        }
        FormatArg::Csv => {
            let mut out = String::from("element,row,entries\n");
            for (l, m) in labeled {
                for (r, row) in cells(m).iter().enumerate() {
                    out.push_str(&format!("{l},{r},{}\n", row.join(" ")));
                }
            }
            out
        }
        FormatArg::Md => {
            let mut out = String::new();
            for (l, m) in labeled {
                out.push_str(&format!("M({l}) in {system}:\n{m}\n"));
            }
            out
        }
    }
}

fn report_json(report: &cosetnum::ValidationReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| match c.status {
            AxiomStatus::Pass => json!({ "axiom": c.axiom.to_string(), "status": "pass" }),
            AxiomStatus::Skipped => json!({ "axiom": c.axiom.to_string(), "status": "skipped" }),
            AxiomStatus::Fail(w) => json!({ "axiom": c.axiom.to_string(), "status": "fail", "witness": w.to_string() }),
        })
        .collect();
    json!({ "group": report.group, "passed": report.passed(), "checks": checks })
}

fn double_cmd(spec: &DoublingSpec, emit: Emit, format: FormatArg) -> Result<String, CliError> {
    let sys = cosetnum::double(spec);
    let pattern = sys.pattern();
    let text = match emit {
        Emit::Assignment => match format {
            FormatArg::Json => format!("{}\n", sys.assignment().to_json(pattern)?),
            _ => {
                let v = sys.assignment().dense();
                let mut columns: Vec<String> = pattern.slot_ids().map(|s| pattern.slot_name(s).to_string()).collect();
                columns.push("name".into());
                let mut row: Vec<String> = v.iter().map(format_rational).collect();
                row.push(tag_for(pattern, &v).unwrap_or("").to_string());
                ClassTable { title: spec.label(), columns, rows: vec![row], notes: Vec::new() }.render(format.into())
            }
        },
        Emit::Matrices => {
            let labels = pattern.basis_labels().to_vec();
            let labeled: Vec<(String, RepMatrix)> = labels.into_iter().zip(spec.generator_matrices()).collect();
            matrices_text(sys.name(), &labeled, format)
        }
        Emit::System => {
            let v = sys.assignment().dense();
            let tag = tag_for(pattern, &v);
            let body = json!({
                "name": sys.name(),
                "group": pattern.group().name(),
                "assignment": sys.assignment().to_json_value(pattern)?,
                "commutative": sys.is_commutative(),
                "matches": tag,
                "verified": cosetnum::verify_correspondence(spec),
            });
            match format {
                FormatArg::Json => pretty(&body),
                _ => {
                    let mut out = format!("{}\n", sys.name());
                    out.push_str(&format!("  assignment: {}\n", sys.assignment().display(pattern)));
                    out.push_str(&format!("  commutative: {}\n", sys.is_commutative()));
                    out.push_str(&format!("  matches: {}\n", tag.unwrap_or("-")));
                    out.push_str(&format!("  constraints hold: {}\n", cosetnum::verify_correspondence(spec)));
                    out
                }
            }
        }
    };
    Ok(text)
}
