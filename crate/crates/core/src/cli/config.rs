use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::CliError;

/// One command-line parameter and its default, as shown by `--help`.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
    pub help: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct CommandSpec {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static [ParamSpec],
    pub default_format: Format,
}

const fn p(name: &'static str, default: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec { name, default, help }
}

const MAP_NAME: ParamSpec = p("map", "vrp", "step rule: vrp, four_rats or limit_map");
const Q: ParamSpec = p("q", "1", "growth factor q of the VRP map");
const PHI: ParamSpec = p("phi", "1", "exponent Φ of the VRP map");
const ALPHA_MAP: ParamSpec = p("alpha", "0", "shift α in e^x + α");
const Q1: ParamSpec = p("q1", "1", "source strength q₁ of the inverse-square maps");
const MU: ParamSpec = p("mu", "1", "scale μ of the inverse-square maps");
const START: ParamSpec = p(
    "start",
    "default",
    "initial state: default (0.5 for vrp, 1 otherwise), a number, or random:low:high (cell i seeded with seed + i)",
);

pub const COMMANDS: &[CommandSpec] = &[
    CommandSpec {
        name: "bifurcate",
        about: "Bifurcation diagram over one control parameter; exactly one of q, phi, alpha, q1, mu is a low:high:count range",
        params: &[
            MAP_NAME,
            Q,
            PHI,
            ALPHA_MAP,
            Q1,
            MU,
            START,
            p("transient", "10000", "discarded iterations per cell"),
            p("keep", "500", "kept iterations per cell"),
            p("tol", "1e-6", "absolute tolerance for merging attractor samples into branches"),
        ],
        default_format: Format::Csv,
    },
    CommandSpec {
        name: "lyapunov",
        about: "Lyapunov exponent over one control parameter given as a low:high:count range",
        params: &[
            MAP_NAME,
            Q,
            PHI,
            ALPHA_MAP,
            Q1,
            MU,
            START,
            p("iterations", "20000", "averaging steps after a 1000-step transient (at least 1000)"),
        ],
        default_format: Format::Csv,
    },
    CommandSpec {
        name: "orbit",
        about: "A single orbit of a map",
        params: &[
            MAP_NAME,
            Q,
            PHI,
            ALPHA_MAP,
            Q1,
            MU,
            p("x0", "default", "initial state, or default"),
            p("transient", "0", "discarded iterations"),
            p("steps", "100", "recorded iterations"),
        ],
        default_format: Format::Csv,
    },
    CommandSpec {
        name: "gram",
        about: "Gram matrix of the m-Fourier basis with the deviation from the published orthogonality values",
        params: &[
            p("alpha", "0.3", "deformation α, |α| < 1"),
            p("pairing", "same_sign", "same_sign or conjugate"),
            p("range", "-4:4", "basis index range min:max"),
            p("nodes", "4096", "quadrature nodes"),
        ],
        default_format: Format::Csv,
    },
    CommandSpec {
        name: "fourier",
        about: "m-Fourier coefficients, Gram-corrected synthesis weights and reconstruction error",
        params: &[
            p("alpha", "0", "deformation α, |α| < 1"),
            p("f", "inv_two_minus_cos", "test function: cos, inv_two_minus_cos, exp_cos or one"),
            p("trunc", "8", "truncation N; indices run over [-N, N]"),
            p("nodes", "4096", "quadrature nodes"),
        ],
        default_format: Format::Csv,
    },
    CommandSpec {
        name: "residual",
        about: "Finite-difference residual or defect over a refinement ladder",
        params: &[
            p("which", "ode1d", "ode1d, pde2d, spherical, el or adjoint"),
            p("alpha", "0.3", "deformation α"),
            p("mu0", "1.4142135623730951", "μ^0"),
            p("mu1", "1", "μ^1 (the 1-D and radial checks use the scalar mass sign(μ^0)√(μ_kμ^k))"),
            p("q1", "1", "source strength for the spherical check"),
            p("sign", "1", "exponent sign ±1 of the Lagrangian weight (el)"),
            p("version", "coefficient1_weighted", "coefficient2 or coefficient1_weighted (adjoint)"),
            p("ladder", "129,257,513", "comma-separated node counts per axis"),
            p("z_range", "0:6.283185307179586", "z interval for ode1d"),
            p("r_range", "0.1:10", "radial interval for spherical"),
            p("extent", "-1:1", "interval used for both axes of the 2-D checks"),
        ],
        default_format: Format::Json,
    },
    CommandSpec {
        name: "axioms",
        about: "Randomized group-axiom check of both parameter operations",
        params: &[
            p("alpha", "0.3", "deformation α, |α| < 1"),
            p("samples", "10000", "number of random triples"),
        ],
        default_format: Format::Json,
    },
];

pub fn command_spec(name: &str) -> Option<&'static CommandSpec> {
    COMMANDS.iter().find(|c| c.name == name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Fully resolved run: every parameter of the command is present, with
/// defaults filled in. Values are kept as the strings that were parsed, so a
/// replay parses exactly the same text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub output_path: Option<String>,
    pub format: Format,
}

impl RunConfig {
    /// Validates the command and keys, filling in defaults for missing keys.
    pub fn new(
        command: &str,
        params: BTreeMap<String, String>,
        seed: u64,
        output_path: Option<String>,
        format: Option<Format>,
    ) -> Result<Self, CliError> {
        let spec = command_spec(command).ok_or_else(|| CliError::Config(format!("unknown command `{command}`")))?;
        if let Some(key) = params.keys().find(|k| !spec.params.iter().any(|p| p.name == k.as_str())) {
            return Err(CliError::Config(format!("unknown parameter `{key}` for `{command}`")));
        }
        let mut resolved = params;
        for p in spec.params {
            resolved.entry(p.name.to_string()).or_insert_with(|| p.default.to_string());
        }
        Ok(Self {
            command: command.to_string(),
            params: resolved,
            seed,
            output_path,
            format: format.unwrap_or(spec.default_format),
        })
    }

    /// Re-validates a deserialized config.
    pub fn validated(self) -> Result<Self, CliError> {
        Self::new(&self.command, self.params, self.seed, self.output_path, Some(self.format))
    }

    pub fn get(&self, key: &str) -> Result<&str, CliError> {
        self.params
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::Config(format!("missing parameter `{key}`")))
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        parse_f64(key, self.get(key)?)
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        let raw = self.get(key)?;
        raw.trim()
            .parse()
            .map_err(|_| CliError::Config(format!("`{key}` must be a non-negative integer, got `{raw}`")))
    }

    pub fn i32(&self, key: &str) -> Result<i32, CliError> {
        let raw = self.get(key)?;
        raw.trim()
            .parse()
            .map_err(|_| CliError::Config(format!("`{key}` must be an integer, got `{raw}`")))
    }

    pub fn value(&self, key: &str) -> Result<Value, CliError> {
        parse_value(key, self.get(key)?)
    }
}

pub(crate) fn parse_f64(key: &str, raw: &str) -> Result<f64, CliError> {
    match raw.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::Config(format!("`{key}` must be a finite number, got `{raw}`"))),
    }
}

/// `low:high:count`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub low: f64,
    pub high: f64,
    pub count: usize,
}

pub fn parse_range(key: &str, raw: &str) -> Result<Range, CliError> {
    let parts: Vec<&str> = raw.split(':').collect();
    let [low, high, count] = parts[..] else {
        return Err(CliError::Config(format!("`{key}` range must be low:high:count, got `{raw}`")));
    };
    let range = Range {
        low: parse_f64(key, low)?,
        high: parse_f64(key, high)?,
        count: count
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("`{key}` range count must be an integer, got `{count}`")))?,
    };
    if range.count == 0 {
        return Err(CliError::Config(format!("`{key}` range is empty")));
    }
    if range.low > range.high {
        return Err(CliError::Config(format!("`{key}` range has low > high")));
    }
    Ok(range)
}

/// `low:high` interval of reals.
pub fn parse_interval(key: &str, raw: &str) -> Result<[f64; 2], CliError> {
    let parts: Vec<&str> = raw.split(':').collect();
    let [low, high] = parts[..] else {
        return Err(CliError::Config(format!("`{key}` must be low:high, got `{raw}`")));
    };
    let (low, high) = (parse_f64(key, low)?, parse_f64(key, high)?);
    if !(low < high) {
        return Err(CliError::Config(format!("`{key}` must have low < high, got `{raw}`")));
    }
    Ok([low, high])
}

/// A scalar or a `low:high:count` sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Scalar(f64),
    Sweep(Range),
}

pub fn parse_value(key: &str, raw: &str) -> Result<Value, CliError> {
    if raw.contains(':') {
        parse_range(key, raw).map(Value::Sweep)
    } else {
        parse_f64(key, raw).map(Value::Scalar)
    }
}
