use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use selfsim::experiments::{self, ExperimentConfig, Scenario, TableFormat};
use selfsim::hurst::{Estimator, Method, ScaleGrid};
use selfsim::multiplex::{mux_report, HurstSource};
use selfsim::synthesis::FormingKind;
use selfsim::traffic::{calibrate, transform};

#[derive(Parser)]
#[command(name = "selfsim", version, about = "Self-similar traffic synthesis and Hurst exponent analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a traffic trace and write it as CSV
    Generate(GenerateArgs),
    /// Estimate the Hurst exponent of a trace file
    Estimate(EstimateArgs),
    /// Multiplex two or more trace files and report the diagnostics
    Mux(MuxArgs),
    /// Run a Monte Carlo campaign and write the result table
    Experiment(ExperimentArgs),
    /// Print the model coefficients (b, k) for a target mean and cv
    Calibrate(CalibrateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Fgn,
    White,
    Ar1,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Dfa,
    Rs,
    Aggvar,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dfa => Method::Dfa,
            MethodArg::Rs => Method::Rs,
            MethodArg::Aggvar => Method::AggVar,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    SelfPlusWhite,
    SelfPlusAr1,
    SelfPlusSelf,
    MultiStream,
}

impl From<ScenarioArg> for Scenario {
    fn from(s: ScenarioArg) -> Self {
        match s {
            ScenarioArg::SelfPlusWhite => Scenario::SelfPlusWhite,
            ScenarioArg::SelfPlusAr1 => Scenario::SelfPlusAr1,
            ScenarioArg::SelfPlusSelf => Scenario::SelfPlusSelf,
            ScenarioArg::MultiStream => Scenario::MultiStream,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "fgn")]
    kind: Kind,
    #[arg(long, default_value_t = 0.8)]
    hurst: f64,
    #[arg(long, default_value_t = 0.5)]
    phi: f64,
    #[arg(long, default_value_t = 1.0)]
    mean: f64,
    #[arg(long, default_value_t = 1.2)]
    cv: f64,
    #[arg(long, default_value_t = 1000)]
    length: usize,
    /// Drawn from the OS when omitted; the chosen seed is printed to stderr
    #[arg(long)]
    seed: Option<u64>,
    /// Write here instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EstimatorArgs {
    #[arg(long, value_enum, default_value = "dfa")]
    method: MethodArg,
    #[arg(long)]
    min_scale: Option<usize>,
    #[arg(long)]
    max_fraction: Option<f64>,
    #[arg(long)]
    points_per_decade: Option<usize>,
    /// DFA detrending order
    #[arg(long, default_value_t = 1)]
    order: usize,
}

impl EstimatorArgs {
    fn estimator(&self) -> Estimator {
        let defaults = ScaleGrid::default();
        Estimator {
            method: self.method.into(),
            grid: ScaleGrid {
                min_scale: self.min_scale.unwrap_or(defaults.min_scale),
                max_scale_fraction: self.max_fraction.unwrap_or(defaults.max_scale_fraction),
                points_per_decade: self.points_per_decade.unwrap_or(defaults.points_per_decade),
            },
            dfa_order: self.order,
        }
    }
}

#[derive(Args)]
struct EstimateArgs {
    trace: PathBuf,
    #[command(flatten)]
    estimator: EstimatorArgs,
}

#[derive(Args)]
struct MuxArgs {
    #[arg(required = true, num_args = 2..)]
    traces: Vec<PathBuf>,
    /// Known Hurst exponents, one per trace, used to pick the max-H stream
    #[arg(long, value_delimiter = ',')]
    hursts: Option<Vec<f64>>,
    #[command(flatten)]
    estimator: EstimatorArgs,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ExperimentArgs {
    /// JSON config; flags below override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    scenario: Option<ScenarioArg>,
    #[arg(long, value_delimiter = ',')]
    h_values: Option<Vec<f64>>,
    #[arg(long)]
    base_cv: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    ratios: Option<Vec<f64>>,
    #[arg(long)]
    length: Option<usize>,
    #[arg(long)]
    replications: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    estimator: Option<MethodArg>,
    #[arg(long)]
    ar_phi: Option<f64>,
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Defaults to the output file extension, else CSV
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CalibrateArgs {
    #[arg(long)]
    mean: f64,
    #[arg(long)]
    cv: f64,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(args) => generate(args),
        Command::Estimate(args) => {
            let trace = read_trace(&args.trace)?;
            let estimate = args.estimator.estimator().estimate(&trace)?;
            print_json(&estimate)
        }
        Command::Mux(args) => mux(args),
        Command::Experiment(args) => experiment(args),
        Command::Calibrate(args) => print_json(&calibrate(args.mean, args.cv)?),
    }
}

fn generate(args: GenerateArgs) -> Result<()> {
    let seed = match args.seed {
        Some(seed) => seed,
        None => {
            let seed = rand::random();
            eprintln!("seed: {seed}");
            seed
        }
    };
    let kind = match args.kind {
        Kind::Fgn => FormingKind::Fgn { hurst: args.hurst },
        Kind::White => FormingKind::White,
        Kind::Ar1 => FormingKind::Ar1 { phi: args.phi },
    };
    let forming = kind.generate(args.length, seed)?;
    let trace = transform(&forming, &calibrate(args.mean, args.cv)?)?;
    write_output(args.output.as_deref(), &experiments::export_trace(&trace))
}

fn mux(args: MuxArgs) -> Result<()> {
    let traces = args.traces.iter().map(|p| read_trace(p)).collect::<Result<Vec<_>>>()?;
    let source = match args.hursts {
        Some(h) if h.len() != traces.len() => bail!("--hursts has {} values for {} traces", h.len(), traces.len()),
        Some(h) => HurstSource::Known(h),
        None => HurstSource::Estimated,
    };
    print_json(&mux_report(&traces, &source, &args.estimator.estimator())?)
}

fn experiment(args: ExperimentArgs) -> Result<()> {
    let mut config = match &args.config {
        Some(path) => {
            let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            let mut doc: serde_json::Value =
                serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))?;
            if let (Some(seed), Some(obj)) = (args.seed, doc.as_object_mut()) {
                obj.insert("base_seed".into(), seed.into());
            }
            if doc.get("base_seed").is_none() {
                bail!("experiment requires --seed (or base_seed in the config file)");
            }
            serde_json::from_value(doc).with_context(|| format!("invalid config {}", path.display()))?
        }
        None => {
            let Some(seed) = args.seed else {
                bail!("experiment requires --seed");
            };
            let Some(scenario) = args.scenario else {
                bail!("experiment requires --scenario or --config");
            };
            let scenario: Scenario = scenario.into();
            let h_values = match scenario {
                Scenario::SelfPlusWhite | Scenario::SelfPlusAr1 => vec![0.8, 0.5],
                Scenario::SelfPlusSelf => vec![0.8, 0.6],
                Scenario::MultiStream => vec![0.8, 0.6, 0.6, 0.6],
            };
            ExperimentConfig::new(scenario, h_values, seed)
        }
    };
    apply_overrides(&mut config, &args);

    let table = experiments::run(&config)?;
    let format = match (args.format, &args.output) {
        (Some(FormatArg::Json), _) => TableFormat::Json,
        (Some(FormatArg::Csv), _) => TableFormat::Csv,
        (None, Some(p)) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) => TableFormat::Json,
        (None, _) => TableFormat::Csv,
    };
    write_output(args.output.as_deref(), &table.export(format)?)
}

fn apply_overrides(config: &mut ExperimentConfig, args: &ExperimentArgs) {
    if args.config.is_some() {
        if let Some(s) = args.scenario {
            config.scenario = s.into();
        }
    }
    if let Some(h) = &args.h_values {
        config.h_values = h.clone();
    }
    if let Some(cv) = args.base_cv {
        config.base_cv = cv;
    }
    if let Some(r) = &args.ratios {
        config.ratio_grid = r.clone();
    }
    if let Some(n) = args.length {
        config.length = n;
    }
    if let Some(n) = args.replications {
        config.replications = n;
    }
    if let Some(seed) = args.seed {
        config.base_seed = seed;
    }
    if let Some(m) = args.estimator {
        config.estimator = m.into();
    }
    if let Some(phi) = args.ar_phi {
        config.ar_phi = phi;
    }
}

fn read_trace(path: &Path) -> Result<selfsim::TrafficTrace> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    experiments::import_trace(&bytes).with_context(|| format!("{}", path.display()))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    write_output(None, &out)
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}
