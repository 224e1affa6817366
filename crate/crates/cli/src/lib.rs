//! Command-line driver. `run` is the whole program minus process setup, so
//! tests can call it with in-memory streams.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use apollonius::apollonius::{
    solve_apollonius, verify_first_level, verify_inscribed, verify_second_level,
};
use apollonius::document::{
    parse_config, serialize, ConfigDocument, ReportDocument, SolutionRecord, TOOL_VERSION,
};
use apollonius::render::{render_svg, Overlay};
use apollonius::scenarios::{
    random_configuration_with, verify_scenario_with, ScenarioName, ScenarioParams, ScenarioSpec,
    DEFAULT_ATTEMPTS,
};
use apollonius::Tolerances;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Name of the environment variable holding tolerance overrides.
pub const TOL_ENV: &str = "APOLLONIUS_TOL";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] apollonius::Error),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{0}")]
    Args(String),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "IO_ERROR",
            CliError::Args(_) => "INVALID_ARGUMENT",
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let mut error = json!({ "code": self.code(), "message": self.to_string() });
        if let CliError::Core(e) = self {
            if let Some(i) = e.subset_index() {
                error["subset"] = json!(i);
            }
            if let apollonius::Error::Validation { path, .. } = e {
                error["path"] = json!(path);
            }
            if let apollonius::Error::Parse { line, column, .. } = e {
                error["line"] = json!(line);
                error["column"] = json!(column);
            }
        }
        json!({ "error": error })
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "apollonius",
    version,
    about = "Apollonius problems and concurrency points in Lie sphere geometry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TheoremArg {
    FirstLevel,
    TwoStep,
    Inscribed,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the Apollonius problem for n + 1 cycles in R^n.
    Solve {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check a concurrency theorem on a configuration of n + 2 cycles.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Tangent hyperplanes sampled per pair (inscribed only).
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build and check one of the classical configurations.
    Scenario {
        #[arg(long)]
        name: String,
        /// JSON file with scenario parameters.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print a seeded generic configuration.
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ATTEMPTS)]
        attempts: usize,
    },
    /// Draw a planar configuration as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 800)]
        width: u32,
        /// Add solutions, center lines, P_X and the inscribed circle.
        #[arg(long)]
        overlay: bool,
    },
}

/// Engine tolerances from `APOLLONIUS_TOL`: either a bare number (the
/// verification threshold) or a JSON object with any subset of the fields.
pub fn tolerances_from_env(value: Option<&str>) -> CliResult<Tolerances> {
    let Some(raw) = value.map(str::trim).filter(|v| !v.is_empty()) else {
        return Ok(Tolerances::default());
    };
    if let Ok(verify) = raw.parse::<f64>() {
        return Ok(Tolerances {
            verify,
            ..Tolerances::default()
        });
    }
    serde_json::from_str(raw).map_err(|e| CliError::Args(format!("{TOL_ENV}: {e}")))
}

fn check_tol(t: f64) -> CliResult<f64> {
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(CliError::Args(format!(
            "tolerance must be positive, got {t}"
        )))
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn json(&mut self, value: &impl serde::Serialize) -> CliResult<()> {
        let text = serde_json::to_string_pretty(value).expect("reports always serialize");
        writeln!(self.out, "{text}").map_err(|e| CliError::Io {
            path: "<stdout>".into(),
            message: e.to_string(),
        })
    }

    fn note(&mut self, msg: &str) {
        let _ = writeln!(self.err, "{msg}");
    }

    fn load(&mut self, path: &Path) -> CliResult<ConfigDocument> {
        let parsed = parse_config(&read(path)?)?;
        for d in &parsed.diagnostics {
            self.note(&format!("note: {d}"));
        }
        Ok(parsed.document)
    }
}

/// Runs the program. `env_tol` is the value of `APOLLONIUS_TOL`, if set.
pub fn run<I, T>(args: I, env_tol: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(io.out, "{e}");
                return EXIT_PASS;
            }
            let _ = write!(io.err, "{e}");
            let error = CliError::Args(e.kind().to_string());
            let _ = io.json(&error.to_json());
            return EXIT_ERROR;
        }
    };
    match dispatch(cli.command, env_tol, &mut io) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            io.note(&format!("error: {e}"));
            let _ = io.json(&e.to_json());
            EXIT_ERROR
        }
    }
}

/// Returns whether the command's check passed.
fn dispatch(command: Command, env_tol: Option<&str>, io: &mut Io) -> CliResult<bool> {
    let tols = tolerances_from_env(env_tol)?;
    match command {
        Command::Solve { input } => {
            let doc = io.load(&input)?;
            let cycles = doc.to_cycles()?;
            let solutions = solve_apollonius(&cycles, &tols)?;
            let records: Vec<SolutionRecord> = solutions.iter().map(SolutionRecord::from).collect();
            io.json(&json!({
                "solutions": records,
                "tolerances": tols,
                "tool_version": TOOL_VERSION,
            }))?;
            Ok(true)
        }
        Command::Verify {
            theorem,
            input,
            tol,
            samples,
            seed,
        } => {
            let tol = check_tol(tol.unwrap_or(tols.verify))?;
            let config = io.load(&input)?.to_configuration()?;
            let report = match theorem {
                TheoremArg::FirstLevel => {
                    ReportDocument::first_level(&verify_first_level(&config, tol, &tols)?, &tols)
                }
                TheoremArg::TwoStep => {
                    ReportDocument::two_step(&verify_second_level(&config, tol, &tols)?, &tols)
                }
                TheoremArg::Inscribed => ReportDocument::inscribed(
                    &verify_inscribed(&config, samples, seed, tol, &tols)?,
                    &tols,
                ),
            };
            io.json(&report)?;
            Ok(report.pass)
        }
        Command::Scenario {
            name,
            params,
            tol,
            dim,
            seed,
        } => {
            let tol = check_tol(tol.unwrap_or(tols.verify))?;
            let name: ScenarioName = name.parse()?;
            let mut params: ScenarioParams = match params {
                Some(path) => {
                    serde_json::from_str(&read(&path)?).map_err(|e| apollonius::Error::Parse {
                        line: e.line(),
                        column: e.column(),
                        message: e.to_string(),
                    })?
                }
                None => ScenarioParams::default(),
            };
            if seed.is_some() {
                params.seed = seed;
            }
            let spec = ScenarioSpec { name, params, dim };
            let report = verify_scenario_with(&spec, tol, &tols)?;
            let doc = ReportDocument::scenario(&report, tol, spec.params.seed, &tols);
            io.json(&doc)?;
            Ok(doc.pass)
        }
        Command::Random {
            dim,
            seed,
            attempts,
        } => {
            let generated = random_configuration_with(dim, seed, attempts, &tols)?;
            io.note(&format!("rejected {} draw(s)", generated.rejections));
            let doc = ConfigDocument::from_configuration(&generated.configuration);
            writeln!(io.out, "{}", serialize(&doc)).map_err(|e| CliError::Io {
                path: "<stdout>".into(),
                message: e.to_string(),
            })?;
            Ok(true)
        }
        Command::Render {
            input,
            output,
            width,
            overlay,
        } => {
            let doc = io.load(&input)?;
            let overlay = if overlay {
                Overlay::theorem(&doc.to_configuration()?, &tols)?
            } else {
                Overlay::default()
            };
            let svg = render_svg(&doc, &overlay, width)?;
            std::fs::write(&output, svg).map_err(|e| CliError::Io {
                path: output.clone(),
                message: e.to_string(),
            })?;
            io.note(&format!("wrote {}", output.display()));
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_tolerances() {
        assert_eq!(tolerances_from_env(None).unwrap(), Tolerances::default());
        assert_eq!(tolerances_from_env(Some("1e-6")).unwrap().verify, 1e-6);
        let t = tolerances_from_env(Some(r#"{"quadric":1e-7}"#)).unwrap();
        assert_eq!(t.quadric, 1e-7);
        assert_eq!(t.verify, Tolerances::default().verify);
        assert!(tolerances_from_env(Some(r#"{"bogus":1}"#)).is_err());
    }

    #[test]
    fn bad_arguments_exit_2() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            ["apollonius", "verify", "--theorem", "nope"],
            None,
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_ERROR);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["error"]["code"], "INVALID_ARGUMENT");
    }

    #[test]
    fn missing_file_exit_2() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            ["apollonius", "solve", "--input", "/nonexistent/x.json"],
            None,
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_ERROR);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["error"]["code"], "IO_ERROR");
    }
}
