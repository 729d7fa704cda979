//! Flag parsing and the serialized run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "ffrl", version, about = "Finite field Fourier restriction experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full battery of checks for one (q, d).
    Verify(VerifyArgs),
    /// Restriction ratios or subspace sharpness across a list of q.
    Sweep(SweepArgs),
    /// Largest |(d sigma)^vee| away from the origin.
    Decay(DecayArgs),
    /// Lifting maps and their norm transfer, over random test functions.
    Lift(LiftArgs),
    /// Operator norm or lower bounds for R(p -> r) on one variety.
    Constants(ConstantsArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarietyArg {
    Paraboloid,
    Sphere,
    Cone,
    Hsphere,
    Whole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanArg {
    Paraboloid,
    Sphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassArg {
    All,
    Lay,
    Hom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyArg {
    Delta,
    Constant,
    Subspace,
    Random,
    Ascent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftArg {
    Lay,
    Hom,
}

#[derive(Clone, Debug, Args)]
pub struct OutputArgs {
    /// Write results here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Random functions per randomized check.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "paraboloid")]
    pub kind: ScanArg,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7, 9, 13])]
    pub qs: Vec<u64>,
    #[arg(long, value_enum, default_value = "all")]
    pub class: ClassArg,
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["delta", "random"])]
    pub strategies: Vec<StrategyArg>,
    #[arg(long, default_value_t = 100)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run the subspace sharpness sweep at exponent --p instead.
    #[arg(long)]
    pub sharpness: bool,
    #[arg(long)]
    pub p: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct DecayArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, value_enum, default_value = "cone")]
    pub variety: VarietyArg,
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct LiftArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, value_enum, default_value = "lay")]
    pub kind: LiftArg,
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, value_enum, default_value = "paraboloid")]
    pub variety: VarietyArg,
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 2.0)]
    pub r: f64,
    #[arg(long, value_enum, default_value = "all")]
    pub class: ClassArg,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_values = ["delta", "constant", "subspace", "random", "ascent"]
    )]
    pub strategies: Vec<StrategyArg>,
    #[arg(long, default_value_t = 100)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Everything a run depends on, written at the top of every output.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub qs: Option<Vec<u64>>,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variety: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<ClassArg>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub strategies: Option<Vec<StrategyArg>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<usize>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }
}

impl From<&Command> for RunConfig {
    fn from(cmd: &Command) -> Self {
        match cmd {
            Command::Verify(a) => RunConfig {
                command: "verify".into(),
                q: Some(a.q),
                d: a.d,
                trials: Some(a.trials),
                seed: a.seed,
                output: a.out.output.clone(),
                format: a.out.format,
                ..Default::default()
            },
            Command::Sweep(a) => RunConfig {
                command: if a.sharpness { "sweep-sharpness" } else { "sweep" }.into(),
                qs: Some(a.qs.clone()),
                d: a.d,
                j: (a.kind == ScanArg::Sphere).then_some(a.j),
                p: a.p,
                r: Some(2.0),
                variety: Some(format!("{:?}", a.kind).to_lowercase()),
                class: (!a.sharpness).then_some(a.class),
                strategies: (!a.sharpness).then(|| a.strategies.clone()),
                budget: (!a.sharpness).then_some(a.budget),
                seed: a.seed,
                output: a.out.output.clone(),
                format: a.out.format,
                ..Default::default()
            },
            Command::Decay(a) => RunConfig {
                command: "decay".into(),
                q: Some(a.q),
                d: a.d,
                j: matches!(a.variety, VarietyArg::Sphere | VarietyArg::Hsphere).then_some(a.j),
                variety: Some(format!("{:?}", a.variety).to_lowercase()),
                output: a.out.output.clone(),
                format: a.out.format,
                ..Default::default()
            },
            Command::Lift(a) => RunConfig {
                command: "lift".into(),
                q: Some(a.q),
                d: a.d,
                j: (a.kind == LiftArg::Hom).then_some(a.j),
                variety: Some(format!("{:?}", a.kind).to_lowercase()),
                trials: Some(a.trials),
                seed: a.seed,
                output: a.out.output.clone(),
                format: a.out.format,
                ..Default::default()
            },
            Command::Constants(a) => RunConfig {
                command: "constants".into(),
                q: Some(a.q),
                d: a.d,
                j: matches!(a.variety, VarietyArg::Sphere | VarietyArg::Hsphere).then_some(a.j),
                p: Some(a.p),
                r: Some(a.r),
                variety: Some(format!("{:?}", a.variety).to_lowercase()),
                class: Some(a.class),
                strategies: Some(a.strategies.clone()),
                budget: Some(a.budget),
                seed: a.seed,
                output: a.out.output.clone(),
                format: a.out.format,
                ..Default::default()
            },
        }
    }
}
