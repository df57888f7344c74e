use std::path::PathBuf;

use biprestar::{BoundsError, ClassParams, Mode};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_COUNT: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "biprestar", version)]
#[command(about = "Coefficient bounds for bi-prestarlike functions subordinate to Chebyshev generating functions")]
pub struct Cli {
    /// Seed for every random stream.
    #[arg(long, global = true, env = "BIPRESTAR_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Point {
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// |a2| and |a3| bounds and the excluded value of t
    Bounds {
        #[command(flatten)]
        point: Point,
    },

    /// Fekete-Szego bound for |a3 - mu a2^2|
    Fekete {
        #[command(flatten)]
        point: Point,
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
    },

    /// Monte Carlo check of the bounds (the default grid when no point is given)
    Verify {
        #[command(flatten)]
        point: Point,
        /// Check a single mu instead of 0, 0.5, 1 and 2.
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<f64>,
        #[arg(long, default_value_t = Mode::Paper)]
        mode: Mode,
        /// Random samples per run, on top of the fixed boundary samples.
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
        /// Self-test: check against half the |a2| bound, which must fail.
        #[arg(long)]
        corrupt_bound: bool,
    },

    /// Evaluate the bounds along one parameter axis
    Sweep {
        #[arg(long, value_enum)]
        sweep: Axis,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        point: Point,
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Lambda,
    Alpha,
    T,
    Mu,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Lambda => "lambda",
            Axis::Alpha => "alpha",
            Axis::T => "t",
            Axis::Mu => "mu",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Bounds,
    Fekete,
    Verify,
    Sweep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.stop } else { self.start + (self.stop - self.start) * i as f64 / last })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    /// `None` for a grid verification.
    pub params: Option<ClassParams>,
    pub mu: Option<f64>,
    pub mode: Mode,
    pub seed: u64,
    pub count: usize,
    pub sweep: Option<SweepSpec>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub corrupt_bound: bool,
}

#[derive(Debug)]
pub enum ConfigError {
    Usage(String),
    Range(BoundsError),
}

impl From<BoundsError> for ConfigError {
    fn from(e: BoundsError) -> Self {
        ConfigError::Range(e)
    }
}

fn require(name: &str, v: Option<f64>) -> Result<f64, ConfigError> {
    v.ok_or_else(|| ConfigError::Usage(format!("--{name} is required")))
}

fn point(p: &Point) -> Result<ClassParams, ConfigError> {
    Ok(ClassParams::new(require("lambda", p.lambda)?, require("alpha", p.alpha)?, require("t", p.t)?)?)
}

fn check_mu(mu: f64) -> Result<f64, ConfigError> {
    if mu.is_finite() {
        Ok(mu)
    } else {
        Err(ConfigError::Range(BoundsError::OutOfRange { name: "mu", value: mu, range: "the real line" }))
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig {
            command: CommandKind::Bounds,
            params: None,
            mu: None,
            mode: Mode::Paper,
            seed: cli.seed,
            count: DEFAULT_COUNT,
            sweep: None,
            format: cli.format,
            out: cli.out,
            corrupt_bound: false,
        };
        match cli.command {
            Command::Bounds { point: p } => {
                cfg.params = Some(point(&p)?);
            }
            Command::Fekete { point: p, mu } => {
                cfg.command = CommandKind::Fekete;
                cfg.params = Some(point(&p)?);
                cfg.mu = Some(check_mu(mu)?);
            }
            Command::Verify { point: p, mu, mode, count, corrupt_bound } => {
                cfg.command = CommandKind::Verify;
                let given = [p.lambda, p.alpha, p.t].iter().filter(|x| x.is_some()).count();
                cfg.params = match given {
                    0 => None,
                    3 => Some(point(&p)?),
                    _ => return Err(ConfigError::Usage("give all of --lambda, --alpha, --t or none of them".into())),
                };
                cfg.mu = mu.map(check_mu).transpose()?;
                cfg.mode = mode;
                cfg.count = count;
                cfg.corrupt_bound = corrupt_bound;
            }
            Command::Sweep { sweep, from, to, steps, point: p, mu } => {
                cfg.command = CommandKind::Sweep;
                if steps < 2 {
                    return Err(ConfigError::Usage(format!("--steps must be at least 2, got {steps}")));
                }
                if from.is_nan() || to.is_nan() || from >= to {
                    return Err(ConfigError::Usage(format!("--from ({from}) must be below --to ({to})")));
                }
                let spec = SweepSpec { axis: sweep, start: from, stop: to, steps };
                // The swept axis takes its values from the range, whatever was given for it.
                let fill = |axis: Axis, v: Option<f64>| if sweep == axis { Some(from) } else { v };
                let base = Point { lambda: fill(Axis::Lambda, p.lambda), alpha: fill(Axis::Alpha, p.alpha), t: fill(Axis::T, p.t) };
                cfg.params = Some(point(&base)?);
                cfg.mu = match sweep {
                    Axis::Mu => None,
                    _ => mu.map(check_mu).transpose()?,
                };
                for v in spec.values() {
                    cfg.point_on(&spec, v)?;
                }
                cfg.sweep = Some(spec);
            }
        }
        Ok(cfg)
    }

    /// Parameters and μ at one sweep value.
    pub fn point_on(&self, spec: &SweepSpec, v: f64) -> Result<(ClassParams, Option<f64>), ConfigError> {
        let base = self.params.expect("sweep has a base point");
        Ok(match spec.axis {
            Axis::Lambda => (base.with_lambda(v)?, self.mu),
            Axis::Alpha => (base.with_alpha(v)?, self.mu),
            Axis::T => (base.with_t(v)?, self.mu),
            Axis::Mu => (base, Some(check_mu(v)?)),
        })
    }
}
