use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use folres::algebra::{parse_rational, Rat};
use folres::divisors::balanced_divisor;
use folres::error::Error;
use folres::foliation::OneFormGerm;
use folres::parse::{parse_bipoly, parse_tripoly};
use folres::projective::{audit, ProjForm};
use folres::report;
use folres::resolution::reduce;
use folres::valuation::verify;

#[derive(Parser)]
#[command(name = "folres", about = "Resolve plane 1-form singularities and verify divisor valuation identities", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Args)]
struct CommonOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Maximum number of blow-ups before giving up.
    #[arg(long, default_value_t = 64)]
    max_depth: u32,
    /// Parameter binding NAME=RATIONAL, repeatable.
    #[arg(long = "param", value_name = "NAME=RAT")]
    params: Vec<String>,
}

#[derive(Args)]
struct LocalInput {
    /// dx coefficient of the 1-form.
    #[arg(short = 'p', long, allow_hyphen_values = true)]
    p: String,
    /// dy coefficient of the 1-form.
    #[arg(short = 'q', long, allow_hyphen_values = true)]
    q: String,
}

#[derive(Subcommand)]
enum Command {
    /// Blow up a local 1-form until every point is reduced and dump the tree.
    Resolve {
        #[command(flatten)]
        input: LocalInput,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Resolve, build the balanced divisor, and check the valuation identities.
    Verify {
        #[command(flatten)]
        input: LocalInput,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Describe the balanced divisor of separatrices.
    Balanced {
        #[command(flatten)]
        input: LocalInput,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Validate a homogeneous 1-form on the projective plane and audit its
    /// singular points against the degree bound.
    Audit {
        /// dx coefficient.
        #[arg(short = 'a', long, allow_hyphen_values = true)]
        a: String,
        /// dy coefficient.
        #[arg(short = 'b', long, allow_hyphen_values = true)]
        b: String,
        /// dz coefficient.
        #[arg(short = 'c', long, allow_hyphen_values = true)]
        c: String,
        /// File with one singular point per line, three rationals separated
        /// by whitespace; defaults to the built-in rational point finder.
        #[arg(long)]
        points: Option<PathBuf>,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

fn parse_params(specs: &[String]) -> Result<BTreeMap<String, Rat>, String> {
    let mut out = BTreeMap::new();
    for s in specs {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| format!("--param expects NAME=RAT, got '{s}'"))?;
        let r = parse_rational(value.trim()).map_err(|e| format!("bad value in '{s}': {e}"))?;
        out.insert(name.trim().to_string(), r);
    }
    Ok(out)
}

fn read_points(path: &PathBuf) -> Result<Vec<[Rat; 3]>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords: Vec<&str> = line.split_whitespace().collect();
        if coords.len() != 3 {
            return Err(format!("line {}: expected three coordinates", lineno + 1));
        }
        let mut p = Vec::new();
        for c in coords {
            p.push(parse_rational(c).map_err(|e| format!("line {}: {e}", lineno + 1))?);
        }
        out.push([p[0].clone(), p[1].clone(), p[2].clone()]);
    }
    Ok(out)
}

fn emit<T: serde::Serialize>(format: Format, doc: &T, table: String) {
    match format {
        Format::Table => print!("{table}"),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(doc).expect("serializable document"))
        }
    }
}

/// Exit code for a failed pipeline step: 3 for unsupported-field and depth
/// limits, 1 for everything else (bad input).
fn failure_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedField { .. } | Error::DepthExceeded(_) => 3,
        _ => 1,
    }
}

fn run() -> Result<u8, (u8, String)> {
    let cli = Cli::parse();
    match cli.command {
        Command::Resolve { input, opts } => {
            let tree = build_tree(&input, &opts)?;
            let doc = report::resolve_document(&tree);
            emit(opts.format, &doc, report::resolve_table(&doc));
            Ok(0)
        }
        Command::Verify { input, opts } => {
            let tree = build_tree(&input, &opts)?;
            let r = verify(&tree);
            let doc = report::verify_document(&r);
            emit(opts.format, &doc, report::verify_table(&doc));
            Ok(if r.all_ok() { 0 } else { 2 })
        }
        Command::Balanced { input, opts } => {
            let tree = build_tree(&input, &opts)?;
            let b = balanced_divisor(&tree);
            let doc = report::balanced_document(&b);
            emit(opts.format, &doc, report::balanced_table(&doc));
            Ok(0)
        }
        Command::Audit { a, b, c, points, opts } => {
            let env = parse_params(&opts.params).map_err(|m| (1, m))?;
            let ta = parse_tripoly(&a, &env).map_err(|e| (1, e.to_string()))?;
            let tb = parse_tripoly(&b, &env).map_err(|e| (1, e.to_string()))?;
            let tc = parse_tripoly(&c, &env).map_err(|e| (1, e.to_string()))?;
            let form = ProjForm::validate(ta, tb, tc).map_err(|e| (1, e.to_string()))?;
            let (pts, complete) = match &points {
                Some(path) => (read_points(path).map_err(|m| (1, m))?, None),
                None => {
                    let (pts, complete) = form.find_rational_singularities();
                    (pts, Some(complete))
                }
            };
            let r = audit(&form, &pts, opts.max_depth, complete);
            let doc = report::audit_document(&r);
            emit(opts.format, &doc, report::audit_table(&doc));
            if r.points.iter().any(|p| p.error.is_some()) {
                Ok(3)
            } else if r.cross_check_ok && r.inequality_ok {
                Ok(0)
            } else {
                Ok(2)
            }
        }
    }
}

fn build_tree(
    input: &LocalInput,
    opts: &CommonOpts,
) -> Result<folres::resolution::ResolutionTree, (u8, String)> {
    let env = parse_params(&opts.params).map_err(|m| (1, m))?;
    let p = parse_bipoly(&input.p, &env).map_err(|e| (1, e.to_string()))?;
    let q = parse_bipoly(&input.q, &env).map_err(|e| (1, e.to_string()))?;
    let germ = OneFormGerm::new(p, q).map_err(|e| (1, e.to_string()))?;
    reduce(&germ, opts.max_depth).map_err(|e| (failure_code(&e), e.to_string()))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
