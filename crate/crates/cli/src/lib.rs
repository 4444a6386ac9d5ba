//! `lhcalc` command-line front end.
//!
//! [`run`] parses arguments and returns the rendered output with an exit
//! code, so the binary is a thin wrapper and tests can drive commands
//! in-process. Exit codes: 0 success, 1 a mathematical failure (inexact
//! division, non-degeneration, sweep violations, cross-check disagreement),
//! 2 usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lhcalc_core::fixtures::FixtureSet;
use lhcalc_core::models::{gl_poincare_serre, GlCohomology};
use lhcalc_core::rational::format_rational;
use lhcalc_core::spectral::{check_degeneration, SpectralGrid};
use lhcalc_core::verifier::{self, ModuliInstance};
use lhcalc_core::{BigradedPolynomial, DivisionError, Error, Execution};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lhcalc", version, about = "Exact Leray–Hirsch bookkeeping for moduli of hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Format {
    /// Machine-readable JSON output
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Aligned plain-text output (default)
    #[arg(long)]
    table: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Nonvanishing certificate for degree-d hypersurfaces in P^n
    Verify {
        n: u32,
        d: u32,
        #[command(flatten)]
        format: Format,
    },
    /// Exact quotient of two Poincaré–Serre polynomials (JSON files)
    Factor {
        total: PathBuf,
        divisor: PathBuf,
        /// Print the quotient as a polynomial instead of JSON
        #[arg(long)]
        text: bool,
    },
    /// Poincaré–Serre polynomial of GL_n
    Gl {
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Chern class c(γ*E/F) on the Fermat hypersurface
    Chern {
        n: u32,
        d: u32,
        #[arg(long)]
        json: bool,
    },
    /// Degree of the discriminant
    Disc { n: u32, d: u32 },
    /// Check E_2 degeneration against the abutment's Betti numbers
    SsCheck { e2: PathBuf, betti: PathBuf },
    /// Verify every instance 1 <= n <= n_max, 2 <= d <= d_max
    Sweep {
        n_max: u32,
        d_max: u32,
        /// Evaluate on the calling thread only
        #[arg(long)]
        sequential: bool,
    },
    /// List the built-in fixtures or write them as JSON files
    Fixtures {
        /// Directory to write `<name>.json` files into
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self::with_code(EXIT_OK, stdout)
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Output::ok(text)
            } else {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match cli.command {
        Command::Verify { n, d, format } => cmd_verify(n, d, format.json),
        Command::Factor { total, divisor, text } => cmd_factor(&total, &divisor, text),
        Command::Gl { n, json } => cmd_gl(n, json),
        Command::Chern { n, d, json } => cmd_chern(n, d, json),
        Command::Disc { n, d } => cmd_disc(n, d),
        Command::SsCheck { e2, betti } => cmd_ss_check(&e2, &betti),
        Command::Sweep {
            n_max,
            d_max,
            sequential,
        } => cmd_sweep(n_max, d_max, sequential),
        Command::Fixtures { out } => cmd_fixtures(out.as_deref()),
    }
}

fn instance(n: u32, d: u32) -> Result<ModuliInstance, Output> {
    ModuliInstance::new(n, d).map_err(|e| Output::error(EXIT_USAGE, e))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_verify(n: u32, d: u32, json: bool) -> Output {
    let inst = match instance(n, d) {
        Ok(i) => i,
        Err(o) => return o,
    };
    let report = match verifier::verify_instance(&inst) {
        Ok(r) => r,
        Err(e) => return Output::error(EXIT_FAILURE, e),
    };
    let mut out = if json {
        to_json(&report)
    } else {
        let mut s = String::new();
        if !report.satisfies_hypothesis {
            let _ = writeln!(s, "note: d = {d} is outside the range d >= 3 (boundary case)");
        }
        s.push_str(&report.render_table());
        s
    };
    if out.is_empty() {
        out.push('\n');
    }
    Output::ok(out)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Output> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Output::error(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Output::error(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn cmd_factor(total: &Path, divisor: &Path, text: bool) -> Output {
    let (total, divisor): (BigradedPolynomial, BigradedPolynomial) = match (read_json(total), read_json(divisor)) {
        (Ok(t), Ok(d)) => (t, d),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    match total.exact_divide(&divisor) {
        Ok(q) if text => Output::ok(format!("{q}\n")),
        Ok(q) => Output::ok(to_json(&q)),
        Err(DivisionError::ZeroDivisor) => Output::error(EXIT_USAGE, DivisionError::ZeroDivisor),
        Err(e) => Output::with_code(EXIT_FAILURE, format!("{e}\n")),
    }
}

fn cmd_gl(n: u32, json: bool) -> Output {
    let ps = gl_poincare_serre(n);
    if json {
        return Output::ok(to_json(&ps));
    }
    let mut s = format!("{ps}\n");
    if let Ok(gl) = GlCohomology::new(n) {
        let _ = writeln!(s, "dimension {}, top degree {}", gl.dimension(), gl.top_degree());
    }
    Output::ok(s)
}

fn cmd_chern(n: u32, d: u32, json: bool) -> Output {
    let inst = match instance(n, d) {
        Ok(i) => i,
        Err(o) => return o,
    };
    let total = verifier::gauss_chern_total(&inst);
    let (top, degree) = match (verifier::chern_top_coefficient(&inst), verifier::chern_degree(&inst)) {
        (Ok(t), Ok(g)) => (t, g),
        (Err(e), _) | (_, Err(e)) => return Output::error(EXIT_FAILURE, e),
    };
    if json {
        let v = json!({
            "n": n,
            "d": d,
            "total": total,
            "top_coefficient": format_rational(&top),
            "degree": degree.to_string(),
        });
        return Output::ok(to_json(&v));
    }
    Output::ok(format!(
        "c(γ*E/F) = {total}\nc_{} coefficient: {}\ndegree: {degree}\n",
        n - 1,
        format_rational(&top)
    ))
}

fn cmd_disc(n: u32, d: u32) -> Output {
    match instance(n, d) {
        Ok(inst) => Output::ok(format!("{}\n", verifier::discriminant_degree(&inst))),
        Err(o) => o,
    }
}

fn cmd_ss_check(e2: &Path, betti: &Path) -> Output {
    let (grid, betti): (SpectralGrid, Vec<u64>) = match (read_json(e2), read_json(betti)) {
        (Ok(g), Ok(b)) => (g, b),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    let ok = check_degeneration(&grid, &betti);
    let sums: Vec<String> = grid.total_dimensions().iter().map(u64::to_string).collect();
    let text = format!("E_2 antidiagonal sums: [{}]\ndegenerates: {ok}\n", sums.join(", "));
    Output::with_code(if ok { EXIT_OK } else { EXIT_FAILURE }, text)
}

fn cmd_sweep(n_max: u32, d_max: u32, sequential: bool) -> Output {
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let summary = verifier::sweep(n_max, d_max, exec);
    let code = if summary.violation_count() == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    Output::with_code(code, summary.render_table())
}

fn cmd_fixtures(out: Option<&Path>) -> Output {
    let set = FixtureSet::generate();
    match out {
        Some(dir) => match set.write_all(dir) {
            Ok(()) => Output::ok(format!("wrote {} fixtures to {}\n", set.names().count(), dir.display())),
            Err(e) => Output::error(EXIT_USAGE, Error::Json(e.to_string())),
        },
        None => {
            let mut s = String::new();
            for (name, p) in set.iter() {
                let _ = writeln!(s, "{name:<10} {p}");
            }
            Output::ok(s)
        }
    }
}
