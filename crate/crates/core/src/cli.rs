//! The `assoc` command line.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success; for `compare`, non-equivalence established |
//! | 1 | `compare`: affine witness found; `verify`: a check failed |
//! | 2 | bad arguments, parameters or input files |
//! | 3 | `n` out of the supported range |
//! | 4 | facet certification or internal consistency failure |
//! | 5 | `compare`: inconclusive |

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analysis::{equivalence_search, Verdict};
use crate::error::Error;
use crate::io::{analysis_report, equivalence_json, export, to_pretty, ConstructionParams, ExportFormat, PolytopeFile};
use crate::polytope::ConstructionTag;
use crate::verify::{run_manifest, VerifyManifest, VERIFY_MAX_N};

pub const DEFAULT_MAX_N: usize = 7;

/// Environment variable raising the `build` bound on `n`. Larger values are unsupported.
pub const MAX_N_ENV: &str = "ASSOC_MAX_N";

#[derive(Parser, Debug)]
#[command(name = "assoc", version, about = "Exact realizations of the associahedron")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a realization and write it as a polytope file.
    Build {
        #[arg(long)]
        construction: ConstructionTag,
        /// Dimension; may be omitted when --params determines it.
        #[arg(long)]
        n: Option<usize>,
        /// Parameter file: geometry, support values or weights.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Output path; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Facets, parallel pairs and special profile of a polytope file.
    Analyze { path: PathBuf },
    /// Decide affine equivalence of two polytope files.
    Compare { a: PathBuf, b: PathBuf },
    /// Run the verification suite.
    Verify {
        #[arg(long = "n-max", default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// JSON manifest replacing the built-in one.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Convert a polytope file to json, csv or off.
    Export {
        path: PathBuf,
        #[arg(long)]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OutOfRange { .. } => 3,
        Error::Certification { .. } | Error::Internal(_) => 4,
        _ => 2,
    }
}

fn max_n() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<(), Error> {
    match target {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn build(
    tag: ConstructionTag,
    n: Option<usize>,
    params: Option<&Path>,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Error> {
    let params = match params {
        Some(path) => {
            let p = ConstructionParams::parse(tag, &std::fs::read_to_string(path)?)?;
            if let Some(n) = n {
                if p.n()? != n {
                    return Err(Error::Parse(format!("--n {n} but the parameters are for n = {}", p.n()?)));
                }
            }
            p
        }
        None => {
            let n = n.ok_or_else(|| Error::Parse("--n is required without --params".into()))?;
            check_n(n)?;
            ConstructionParams::default_for(tag, n)?
        }
    };
    check_n(params.n()?)?;
    let file = PolytopeFile::build(params)?;
    emit(out, out_path, &file.to_json_string())?;
    Ok(0)
}

fn check_n(n: usize) -> Result<(), Error> {
    let max = max_n();
    if n == 0 || n > max {
        return Err(Error::OutOfRange { n, min: 1, max });
    }
    Ok(())
}

fn compare(a: &Path, b: &Path, out: &mut dyn Write) -> Result<i32, Error> {
    let (fa, fb) = (PolytopeFile::read(a)?, PolytopeFile::read(b)?);
    if fa.polytope.n() != fb.polytope.n() {
        return Err(Error::Parse(format!(
            "cannot compare n = {} with n = {}",
            fa.polytope.n(),
            fb.polytope.n()
        )));
    }
    let report = equivalence_search(&fa.polytope, &fb.polytope)?;
    out.write_all(to_pretty(&equivalence_json(&report)).as_bytes())?;
    Ok(match report.verdict {
        Verdict::NonEquivalent => 0,
        Verdict::Equivalent => 1,
        Verdict::Inconclusive => 5,
    })
}

fn verify(n_max: usize, seed: u64, manifest: Option<&Path>, out: &mut dyn Write) -> Result<i32, Error> {
    if !(1..=VERIFY_MAX_N).contains(&n_max) {
        return Err(Error::OutOfRange {
            n: n_max,
            min: 1,
            max: VERIFY_MAX_N,
        });
    }
    let manifest = match manifest {
        Some(path) => VerifyManifest::from_json(&std::fs::read_to_string(path)?)?,
        None => VerifyManifest::default(),
    };
    let report = run_manifest(&manifest, n_max, seed)?;
    out.write_all(report.table().as_bytes())?;
    if let Some(row) = report.first_failure() {
        let example = serde_json::json!({
            "check": row.name,
            "detail": row.detail,
            "counterexample": row.counterexample,
        });
        out.write_all(to_pretty(&example).as_bytes())?;
        return Ok(1);
    }
    Ok(0)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Build {
            construction,
            n,
            params,
            out: out_path,
        } => build(construction, n, params.as_deref(), out_path.as_deref(), out),
        Command::Analyze { path } => {
            let file = PolytopeFile::read(&path)?;
            out.write_all(to_pretty(&analysis_report(&file.polytope)?).as_bytes())?;
            Ok(0)
        }
        Command::Compare { a, b } => compare(&a, &b, out),
        Command::Verify { n_max, seed, manifest } => verify(n_max, seed, manifest.as_deref(), out),
        Command::Export { path, format, out: out_path } => {
            let format: ExportFormat = format.parse()?;
            let file = PolytopeFile::read(&path)?;
            emit(out, out_path.as_deref(), &export(&file, format)?)?;
            Ok(0)
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "assoc: {e}");
            exit_code(&e)
        }
    }
}
