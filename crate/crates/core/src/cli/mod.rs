//! Run configurations and deterministic CSV/JSON output for the `bitrial`
//! binary.
//!
//! Every output starts with the fully resolved [`RunConfig`]: a
//! `# config: {...}` comment line in CSV, a `config` entry in JSON.
//! [`replay`] re-runs that config and reproduces the file byte for byte.
//! Parallel sweeps assemble their rows in index order, so the worker count
//! never changes the output.
//!
//! Exit codes: [`EXIT_OK`], [`EXIT_CONFIG`] for invalid arguments and
//! [`EXIT_NUMERICAL`] for poles or refused ill-conditioned solves.

mod commands;
mod config;
mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Arg, ArgAction, ArgMatches, Command};

pub use commands::execute;
pub use config::{
    command_spec, parse_interval, parse_range, parse_value, CommandSpec, Format, ParamSpec, Range, RunConfig, Value,
    COMMANDS,
};
pub use output::{embedded_config, render, Cell, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Overrides the default worker count (available parallelism).
pub const WORKERS_ENV: &str = "BITRIAL_WORKERS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(crate::Error),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    /// Command-line syntax error, already reported by the parser.
    #[error("invalid command line")]
    Usage,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } | CliError::Usage => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Domain(_) | crate::Error::Size(_) => CliError::Config(e.to_string()),
            crate::Error::Singularity(_) | crate::Error::Conditioning { .. } => CliError::Numerical(e),
        }
    }
}

pub fn command() -> Command {
    let mut cmd = Command::new("bitrial")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Bitrial (m-exponential) maps, m-algebra, m-Fourier bases and m-KGF residual checks")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(
            Arg::new("workers")
                .long("workers")
                .global(true)
                .value_name("N")
                .help(format!("worker threads [default: ${WORKERS_ENV} or available parallelism]")),
        );
    for spec in COMMANDS {
        let mut sub = Command::new(spec.name)
            .about(spec.about)
            .arg(Arg::new("seed").long("seed").default_value("1").help("random seed"))
            .arg(
                Arg::new("output")
                    .long("output")
                    .short('o')
                    .value_name("PATH")
                    .help("output file [default: standard output]"),
            )
            .arg(
                Arg::new("format")
                    .long("format")
                    .value_parser(["csv", "json"])
                    .default_value(match spec.default_format {
                        Format::Csv => "csv",
                        Format::Json => "json",
                    })
                    .help("output format"),
            );
        for p in spec.params {
            sub = sub.arg(
                Arg::new(p.name)
                    .long(p.name)
                    .default_value(p.default)
                    .allow_hyphen_values(true)
                    .action(ArgAction::Set)
                    .help(p.help),
            );
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

fn config_from_matches(name: &str, m: &ArgMatches) -> Result<RunConfig, CliError> {
    let spec = command_spec(name).ok_or_else(|| CliError::Config(format!("unknown command `{name}`")))?;
    let mut params = BTreeMap::new();
    for p in spec.params {
        if let Some(v) = m.get_one::<String>(p.name) {
            params.insert(p.name.to_string(), v.clone());
        }
    }
    let raw_seed = m.get_one::<String>("seed").map(String::as_str).unwrap_or("1");
    let seed = raw_seed
        .parse()
        .map_err(|_| CliError::Config(format!("`seed` must be a non-negative integer, got `{raw_seed}`")))?;
    let format = m.get_one::<String>("format").and_then(|f| Format::parse(f));
    RunConfig::new(name, params, seed, m.get_one::<String>("output").cloned(), format)
}

fn worker_count(m: &ArgMatches) -> Result<Option<usize>, CliError> {
    let raw = match m.get_one::<String>("workers") {
        Some(v) => Some(v.clone()),
        None => std::env::var(WORKERS_ENV).ok(),
    };
    match raw {
        None => Ok(None),
        Some(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("worker count must be a positive integer, got `{s}`"))),
        },
    }
}

/// Executes a config and renders its output.
pub fn run_config(cfg: &RunConfig) -> Result<String, CliError> {
    render(cfg, &execute(cfg)?)
}

/// Re-runs the config embedded in an output file.
pub fn replay(path: &Path) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    run_config(&embedded_config(&text)?)
}

fn run_inner<I, T>(args: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(()),
                _ => Err(CliError::Usage),
            };
        }
    };
    let (name, sub) = matches.subcommand().expect("a subcommand is required");
    let cfg = config_from_matches(name, sub)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = worker_count(sub)? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Config(e.to_string()))?;
    let text = pool.install(|| run_config(&cfg))?;
    match cfg.output_path.as_deref() {
        None | Some("-") => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io {
                path: "<stdout>".into(),
                message: e.to_string(),
            })
        }
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.to_string(),
            message: e.to_string(),
        }),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors are reported on standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run_inner(args) {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage) => EXIT_CONFIG,
        Err(e) => {
            eprintln!("bitrial: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: &str, pairs: &[(&str, &str)]) -> RunConfig {
        let params = pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        RunConfig::new(command, params, 1, None, None).unwrap()
    }

    #[test]
    fn command_tree_is_consistent() {
        command().debug_assert();
        let names: Vec<_> = command().get_subcommands().map(|s| s.get_name().to_string()).collect();
        assert_eq!(names, ["bifurcate", "lyapunov", "orbit", "gram", "fourier", "residual", "axioms"]);
    }

    #[test]
    fn matches_resolve_defaults() {
        let m = command().try_get_matches_from(["bitrial", "gram", "--alpha", "-0.2"]).unwrap();
        let (name, sub) = m.subcommand().unwrap();
        let c = config_from_matches(name, sub).unwrap();
        assert_eq!(c.get("alpha").unwrap(), "-0.2");
        assert_eq!(c.get("range").unwrap(), "-4:4");
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn error_classes() {
        let e = execute(&cfg("bifurcate", &[("q", "1:15:0")])).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_CONFIG);
        let e = execute(&cfg("bifurcate", &[])).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_CONFIG);
        let e = execute(&cfg("fourier", &[("alpha", "0.5"), ("trunc", "32")])).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_NUMERICAL, "{e}");
        let e = execute(&cfg("gram", &[("alpha", "1.5")])).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_CONFIG);
    }

    #[test]
    fn small_bifurcation_has_two_cell_groups() {
        let r = execute(&cfg("bifurcate", &[("q", "1:15:2"), ("keep", "3"), ("transient", "100")])).unwrap();
        let controls: Vec<_> = r.rows.iter().map(|row| row[0].clone()).collect();
        assert_eq!(controls.len(), 6);
        assert_eq!(controls[0], Cell::Float(1.0));
        assert_eq!(controls[5], Cell::Float(15.0));
    }
}
