mod check_spec;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use parity_forge::colored::ak_series;
use parity_forge::dissection::extract;
use parity_forge::recipe::Recipe;
use parity_forge::series::{parse_series_text, series_to_json, series_to_text};
use parity_forge::verify::{
    render_table, reports_to_json, run_suite, Arithmetic, Checker, ParamBounds, Report, RunConfig,
    DEEP_ORDER, DEFAULT_ORDER,
};
use parity_forge::{Integers, ParseError, Series, Zn};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "parity-forge", version)]
#[command(
    about = "Expand eta quotients and verify colored partition congruences to a truncation order"
)]
struct Cli {
    /// Truncation order N: coefficients of q^0..q^N are computed.
    #[arg(short = 'N', long, global = true, env = "PARITY_FORGE_ORDER", default_value_t = DEFAULT_ORDER)]
    order: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a product such as "f2^4/f1^5" or "D(q)*Y(q^3)".
    Expand {
        expr: String,
        /// Reduce coefficients mod m.
        #[arg(short = 'm', long = "mod")]
        modulus: Option<u64>,
    },
    /// Coefficients a_k(0..=N).
    Ak {
        k: u32,
        #[arg(short = 'm', long = "mod")]
        modulus: Option<u64>,
    },
    /// Extract sum c(mn + r) q^n from a series file in the text format.
    Dissect {
        #[arg(long = "in")]
        input: PathBuf,
        /// Number of residue classes.
        #[arg(short = 'm', long = "parts")]
        parts: usize,
        #[arg(short = 'r', long)]
        residue: usize,
        /// Reduce the extracted coefficients mod this modulus.
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Check one congruence, e.g. "ak=5 A=5 B=3 mod=5" or
    /// "internal ak=5 lhs=27,10 rhs=3,1 mod=3".
    Check { spec: String },
    /// Run a registered suite ("all", "thm_1_2", "lemmas", ...) or a single entry id.
    Suite {
        id: String,
        /// Family parameter ranges, e.g. "alpha=0..2,j=0..2,t=0..8".
        #[arg(long)]
        params: Option<String>,
        /// Order for the deep (alpha >= 1) instances.
        #[arg(long, default_value_t = DEEP_ORDER)]
        deep_order: usize,
        /// Use exact integer coefficients instead of residues.
        #[arg(long)]
        exact: bool,
    },
}

enum Failure {
    Usage(String),
    Parse { input: String, error: ParseError },
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Parse { input, error }) => {
            eprintln!("error: {error}\n{}", error.caret(&input));
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let (body, code) = match &cli.command {
        Command::Expand { expr, modulus } => {
            let recipe = Recipe::from_str(expr).map_err(|error| Failure::Parse {
                input: expr.clone(),
                error,
            })?;
            let series = match modulus {
                Some(m) => {
                    let ring = Zn::checked(*m)
                        .ok_or_else(|| Failure::Usage(format!("modulus {m} outside [2, 2^32]")))?;
                    recipe
                        .eval_in(&ring, cli.order)
                        .map_err(Failure::usage)?
                        .lift()
                }
                None => recipe
                    .eval_in(&Integers, cli.order)
                    .map_err(Failure::usage)?,
            };
            (
                render_series(&series, *modulus, cli.format, true),
                ExitCode::SUCCESS,
            )
        }
        Command::Ak { k, modulus } => {
            if *k == 0 {
                return Err(Failure::usage("k must be at least 1"));
            }
            let series = reduce(ak_series(*k, cli.order), *modulus)?;
            (
                render_series(&series, *modulus, cli.format, false),
                ExitCode::SUCCESS,
            )
        }
        Command::Dissect {
            input,
            parts,
            residue,
            modulus,
        } => {
            let text = fs::read_to_string(input)
                .map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
            let series = parse_series_text(&text).map_err(|error| Failure::Parse {
                input: error_line(&text, error.position),
                error: column_error(&text, error),
            })?;
            let sub = extract(&series, *parts, *residue).map_err(Failure::usage)?;
            let sub = reduce(sub, *modulus)?;
            (
                render_series(&sub, *modulus, cli.format, false),
                ExitCode::SUCCESS,
            )
        }
        Command::Check { spec } => {
            let check = check_spec::parse(spec).map_err(|error| Failure::Parse {
                input: spec.clone(),
                error,
            })?;
            let report = Checker::new(Arithmetic::Modular)
                .check(&check, cli.order)
                .map_err(Failure::usage)?;
            render_reports(&[report], cli.format)
        }
        Command::Suite {
            id,
            params,
            deep_order,
            exact,
        } => {
            let params = match params {
                Some(p) => p.parse::<ParamBounds>().map_err(Failure::usage)?,
                None => ParamBounds::default(),
            };
            let config = RunConfig {
                order: cli.order,
                deep_order: *deep_order,
                params,
                arithmetic: if *exact {
                    Arithmetic::Exact
                } else {
                    Arithmetic::Modular
                },
            };
            let reports = run_suite(id, &config).map_err(Failure::usage)?;
            render_reports(&reports, cli.format)
        }
    };
    emit(cli.out.as_ref(), &body)?;
    Ok(code)
}

fn reduce(series: Series, modulus: Option<u64>) -> Result<Series, Failure> {
    match modulus {
        Some(m) => Ok(series.reduce_mod(m).map_err(Failure::usage)?.lift()),
        None => Ok(series),
    }
}

/// `one_line` prints text output as a single row of coefficients.
fn render_series(series: &Series, modulus: Option<u64>, format: Format, one_line: bool) -> String {
    match format {
        Format::Text if one_line => {
            let row: Vec<String> = series.coeffs().iter().map(|c| c.to_string()).collect();
            row.join(" ") + "\n"
        }
        Format::Text => series_to_text(series),
        Format::Json => {
            let mut value = series_to_json(series);
            if let (Some(m), Value::Object(map)) = (modulus, &mut value) {
                map.insert("modulus".into(), json!(m));
            }
            value.to_string() + "\n"
        }
        Format::Csv => {
            let mut out = String::from("n,coeff\n");
            for (n, c) in series.coeffs().iter().enumerate() {
                out.push_str(&format!("{n},{c}\n"));
            }
            out
        }
    }
}

fn render_reports(reports: &[Report], format: Format) -> (String, ExitCode) {
    let body = match format {
        Format::Text => render_table(reports),
        Format::Json => {
            serde_json::to_string_pretty(&reports_to_json(reports)).expect("reports serialize")
                + "\n"
        }
        Format::Csv => {
            let mut out =
                String::from("id,status,order,range_checked,n,index,residue,elapsed_ms\n");
            for r in reports {
                let (n, index, residue) = match &r.counterexample {
                    Some(c) => (c.n.to_string(), c.index.to_string(), c.residue.to_string()),
                    None => Default::default(),
                };
                out.push_str(&format!(
                    "\"{}\",{},{},{},{n},{index},{residue},{}\n",
                    r.id.replace('"', "\"\""),
                    r.status.as_str(),
                    r.order_used,
                    r.range_checked,
                    r.elapsed.as_millis()
                ));
            }
            out
        }
    };
    let code = if reports.iter().all(Report::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    (body, code)
}

/// The line of `text` containing byte `position`.
fn error_line(text: &str, position: usize) -> String {
    let start = text[..position.min(text.len())]
        .rfind('\n')
        .map_or(0, |i| i + 1);
    text[start..].lines().next().unwrap_or("").to_string()
}

/// Rebases a whole-file error position onto its line.
fn column_error(text: &str, error: ParseError) -> ParseError {
    let start = text[..error.position.min(text.len())]
        .rfind('\n')
        .map_or(0, |i| i + 1);
    let line = text[..start].matches('\n').count() + 1;
    ParseError::new(
        format!("line {line}: {}", error.message),
        error.position - start,
    )
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = stdout.write_all(body.as_bytes());
            Ok(())
        }
    }
}
