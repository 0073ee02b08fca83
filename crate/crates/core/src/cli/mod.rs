//! Command-line surface of `sisport`.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
//! 3 portrait written but the integrator reported diagnostics.

mod sweep;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::field::SisParams;
use crate::portrait::{build_portrait, render_svg, PortraitOptions, Style};
use crate::rational::{parse_rational, Rational};
use crate::sis::full_report;

pub use sweep::{parse_axis, sweep, SweepRow, SweepSummary};
pub use verify::{sample_params, verify, VerifyOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DIAGNOSTICS: i32 = 3;

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "sisport",
    version,
    about = "Qualitative analysis and Poincaré-disc portraits of the SIS system"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct ParamArgs {
    /// Infectivity (nonzero). Integers, p/q fractions and finite decimals
    /// are read exactly.
    #[arg(value_parser = rational_arg, allow_hyphen_values = true)]
    pub b: Rational,
    /// Recovery rate.
    #[arg(value_parser = rational_arg, allow_hyphen_values = true)]
    pub c: Rational,
    /// Total population.
    #[arg(value_parser = rational_arg, allow_hyphen_values = true)]
    pub k: Rational,
    /// Proportional death rate (nonzero).
    #[arg(value_parser = rational_arg, allow_hyphen_values = true)]
    pub m: Rational,
}

impl ParamArgs {
    pub fn params(&self) -> crate::Result<SisParams> {
        SisParams::new(
            self.b.clone(),
            self.c.clone(),
            self.k.clone(),
            self.m.clone(),
        )
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every singular point and print the JSON report.
    Analyze {
        #[command(flatten)]
        params: ParamArgs,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Render the phase portrait on the Poincaré disc as SVG.
    Portrait {
        #[command(flatten)]
        params: ParamArgs,
        /// Write the SVG here instead of stdout.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 0.004)]
        stroke_width: f64,
        #[arg(long, default_value = "#4a6fa5")]
        orbit_color: String,
        #[arg(long, default_value = "#b03a2e")]
        separatrix_color: String,
        #[arg(long, default_value = "#1e8449")]
        line_color: String,
        /// Shade the biologically meaningful quadrant x >= 0, y >= 0.
        #[arg(long)]
        shade_quadrant: bool,
        /// Skip the ring of generic orbits.
        #[arg(long)]
        no_ring: bool,
        /// Stop radius around singular points (disc metric).
        #[arg(long, default_value_t = 1e-3)]
        eps_sing: f64,
        /// Width of the stop band at the equator.
        #[arg(long, default_value_t = 1e-4)]
        eps_eq: f64,
        /// Offset of separatrix seeds from their singular point.
        #[arg(long, default_value_t = 1e-4)]
        separatrix_offset: f64,
    },
    /// Classify every tuple of a parameter grid and write CSV.
    Sweep {
        /// Values of b: a comma list ("1,3/2,2") or "lo:hi:count".
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-check the local and global results on pseudo-random parameters.
    Verify {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Deliberately break one check to exercise the failure path.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// Caps the rayon pool at `SISPORT_THREADS` when it is set.
fn configure_threads(err: &mut dyn Write) {
    if let Ok(v) = std::env::var("SISPORT_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                // Fails only if the pool already exists, e.g. in tests.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                let _ = writeln!(err, "warning: ignoring SISPORT_THREADS={v:?}");
            }
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn invalid(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_INVALID
}

fn io_failure(err: &mut dyn Write, e: std::io::Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_INVALID
}

/// Parses `args` and runs the command, writing to `out` and `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    configure_threads(err);
    match cli.command {
        Command::Analyze { params, json } => {
            let report = match params.params().and_then(|p| full_report(&p)) {
                Ok(r) => r,
                Err(e) => return invalid(err, &e),
            };
            let mut text = report.to_json();
            text.push('\n');
            match write_output(&json, &text, out) {
                Ok(()) => EXIT_OK,
                Err(e) => io_failure(err, e),
            }
        }
        Command::Portrait {
            params,
            svg,
            stroke_width,
            orbit_color,
            separatrix_color,
            line_color,
            shade_quadrant,
            no_ring,
            eps_sing,
            eps_eq,
            separatrix_offset,
        } => {
            let report = match params.params().and_then(|p| full_report(&p)) {
                Ok(r) => r,
                Err(e) => return invalid(err, &e),
            };
            let mut opts = PortraitOptions {
                separatrix_offset,
                ring: !no_ring,
                ..PortraitOptions::default()
            };
            opts.controls.eps_sing = eps_sing;
            opts.controls.eps_eq = eps_eq;
            let portrait = match build_portrait(&report, &opts) {
                Ok(p) => p,
                Err(e) => return invalid(err, &e),
            };
            let style = Style {
                stroke_width,
                orbit_color,
                separatrix_color,
                line_color,
                shade_quadrant,
                ..Style::default()
            };
            let text = render_svg(&report, &portrait.orbits, &style);
            if let Err(e) = write_output(&svg, &text, out) {
                return io_failure(err, e);
            }
            if portrait.diagnostics.is_empty() {
                EXIT_OK
            } else {
                for d in &portrait.diagnostics {
                    let _ = writeln!(err, "diagnostic: {d}");
                }
                EXIT_DIAGNOSTICS
            }
        }
        Command::Sweep { b, c, k, m, csv } => {
            let axes = match [&b, &c, &k, &m].map(|s| parse_axis(s)) {
                [Ok(b), Ok(c), Ok(k), Ok(m)] => [b, c, k, m],
                other => {
                    let e = other.into_iter().find_map(|r| r.err()).unwrap();
                    return invalid(err, &e);
                }
            };
            let (rows, summary) = match sweep(&axes) {
                Ok(r) => r,
                Err(e) => return invalid(err, &e),
            };
            let text = sweep::to_csv(&rows);
            if let Err(e) = write_output(&csv, &text, out) {
                return io_failure(err, e);
            }
            if summary.skipped > 0 {
                let _ = writeln!(
                    err,
                    "warning: skipped {} cell(s) with b = 0 or m = 0",
                    summary.skipped
                );
            }
            // With the CSV on stdout the summary goes to stderr.
            let sink: &mut dyn Write = if csv.is_some() { out } else { err };
            let _ = writeln!(sink, "rows: {}", rows.len());
            let _ = writeln!(sink, "distinct classes: {}", summary.classes.len());
            let names: Vec<String> = summary.classes.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(sink, "classes observed: {}", names.join(","));
            EXIT_OK
        }
        Command::Verify {
            samples,
            seed,
            inject_fault,
        } => {
            if samples == 0 {
                let _ = writeln!(err, "error: --samples must be at least 1");
                return EXIT_INVALID;
            }
            let outcome = verify(samples, seed, inject_fault);
            let _ = write!(out, "{}", outcome.tally_text());
            match &outcome.counterexample {
                None => {
                    let _ = writeln!(out, "all checks passed");
                    EXIT_OK
                }
                Some((params, check, why)) => {
                    let _ = writeln!(
                        out,
                        "counterexample ({check}): b={} c={} k={} m={}: {why}",
                        params.b, params.c, params.k, params.m
                    );
                    EXIT_CHECK_FAILED
                }
            }
        }
    }
}
