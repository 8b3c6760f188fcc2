//! The `numrange` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a verification exceeds its
//! tolerance, 2 for input or usage errors.

pub mod input;
pub mod output;
pub mod svg;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::elemop::{shifted_norm, KTupleOperator};
use crate::fov::{field_of_values, fov_support};
use crate::linalg::spectral_norm;
use crate::optim::{derive_seed, OptConfig};
use crate::orbit::{banach_region, orbit_region, standard_schedule};
use crate::region::direction;
use crate::verify::{verify_derivation, verify_inclusion, verify_main, verify_mult_projection, Verification, VerifyConfig};

use input::{parse_instance, parse_matrix, parse_pair, Instance};
use output::{ConfigEcho, InstanceResult, NormRecord, RegionRecord, ResultFile};

const RANDOM_STREAM: u64 = 0x7261_6e64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Compute(#[from] crate::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io { path: path.to_path_buf(), source }
    }
}

#[derive(Debug, Parser)]
#[command(name = "numrange", version, about = "Numerical ranges of elementary operators on M_n(C)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field of values of a single matrix.
    Fov {
        /// Matrix file: {"n", "matrix", "label"?}.
        matrix: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Operator norm ||R - z Id|| maximized over unitaries.
    Norm {
        instance: PathBuf,
        /// Shift as "re,im".
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Option<Complex64>,
        #[command(flatten)]
        common: Common,
    },
    /// Support regions of the Banach side, the orbit side, or both.
    Range {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Side::Both)]
        side: Side,
        #[command(flatten)]
        common: Common,
    },
    /// Compares both sides for each instance, plus the per-unitary inclusion.
    Verify {
        instances: Vec<PathBuf>,
        /// Also verify this many seeded random instances.
        #[arg(long)]
        random: Option<usize>,
        /// Matrix size of random instances.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Tuple length of random instances.
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Orbit side of x -> Ax - xB against W(A) - W(B).
    Derivation {
        /// Pair file: {"n", "A", "B", "label"?}.
        pair: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Both sides of x -> pxp for an orthogonal projection p.
    Projection {
        /// Matrix file holding p.
        matrix: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fov { .. } => "fov",
            Command::Norm { .. } => "norm",
            Command::Range { .. } => "range",
            Command::Verify { .. } => "verify",
            Command::Derivation { .. } => "derivation",
            Command::Projection { .. } => "projection",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Fov { common, .. }
            | Command::Norm { common, .. }
            | Command::Range { common, .. }
            | Command::Verify { common, .. }
            | Command::Derivation { common, .. }
            | Command::Projection { common, .. } => common,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Lhs,
    Rhs,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    #[arg(long, default_value_t = crate::region::DEFAULT_DIRECTIONS)]
    pub directions: usize,
    /// Fresh Haar starts per optimization.
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    #[arg(long, default_value_t = 64)]
    pub haar_samples: usize,
    #[arg(long, default_value_t = crate::orbit::DEFAULT_SMAX_FACTOR)]
    pub smax_factor: f64,
    /// Default seed; an instance file's own seed takes precedence.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Overrides the tolerance of the primary check.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Optimize directions independently instead of chaining warm starts.
    #[arg(long)]
    pub no_warm_start: bool,
    /// Output path (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl Common {
    fn opt(&self, seed: u64) -> OptConfig {
        OptConfig { restarts: self.restarts, seed, warm_start: !self.no_warm_start, ..Default::default() }
    }

    fn verify_config(&self, seed: u64) -> VerifyConfig {
        VerifyConfig {
            directions: self.directions,
            haar_samples: self.haar_samples,
            smax_factor: self.smax_factor,
            tolerance: self.tol,
            opt: self.opt(seed),
        }
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            directions: self.directions,
            haar_samples: self.haar_samples,
            smax_factor: self.smax_factor,
            tolerance: self.tol,
            threads: self.threads,
            side: None,
            z: None,
            optimizer: self.opt(self.seed),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        self.verify_config(self.seed).validate()?;
        if self.threads == Some(0) {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        Ok(())
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    let z = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err("expected \"re,im\"".into()),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err("shift must be finite".into())
    }
}

/// A finished command: the result document and whether every check passed.
pub struct Outcome {
    pub result: ResultFile,
    pub passed: bool,
}

fn label_of(path: &Path, label: Option<String>) -> String {
    label.unwrap_or_else(|| path.file_stem().unwrap_or(path.as_os_str()).to_string_lossy().into_owned())
}

fn attach(inst: &mut InstanceResult, v: &Verification) {
    if let Some(lhs) = &v.lhs {
        inst.regions.push(RegionRecord::from_estimate("lhs", lhs));
    }
    if let Some(rhs) = &v.rhs {
        inst.regions.push(RegionRecord::from_estimate("rhs", rhs));
        inst.witnesses = output::witnesses(rhs);
    }
    if let Some(oracle) = &v.oracle {
        inst.regions.push(RegionRecord::from_region("oracle", oracle));
    }
    inst.report = Some(v.report.clone().with_instance(inst.label.clone()));
}

fn document(command: &str, config: ConfigEcho, instances: Vec<InstanceResult>) -> ResultFile {
    ResultFile {
        tool: output::TOOL.into(),
        version: output::VERSION.into(),
        command: command.into(),
        config,
        instances,
    }
}

fn verify_one(op: &KTupleOperator, label: String, seed: u64, common: &Common) -> Result<InstanceResult, CliError> {
    let cfg = common.verify_config(seed);
    let mut v = verify_main(op, &cfg)?;
    let inclusion = verify_inclusion(op, &cfg)?;
    v.report.checks.extend(inclusion.checks);
    let mut inst = InstanceResult::new(label, seed);
    attach(&mut inst, &v);
    Ok(inst)
}

/// Runs a parsed command.
pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    let common = command.common();
    common.validate()?;
    let mut echo = common.echo();
    let mut instances = Vec::new();
    match command {
        Command::Fov { matrix, .. } => {
            let (c, label) = parse_matrix(matrix)?;
            let m = common.directions;
            let region = field_of_values(&c, m)?;
            let mut inst = InstanceResult::new(label_of(matrix, label), common.seed);
            inst.regions.push(RegionRecord::from_region("fov", &region));
            inst.witnesses = (0..m)
                .map(|j| fov_support(&c, direction(m, j)).map(|s| [s.witness.re, s.witness.im]))
                .collect::<crate::Result<_>>()?;
            instances.push(inst);
        }
        Command::Norm { instance, z, .. } => {
            let Instance { op, label, seed } = parse_instance(instance)?;
            let z = z.unwrap_or_default();
            echo.z = Some([z.re, z.im]);
            let seed = seed.unwrap_or(common.seed);
            let report = shifted_norm(&op, z, &common.opt(seed));
            let sigma = spectral_norm(&op.shifted(-z).matricize());
            let root_n = (op.n() as f64).sqrt();
            let mut inst = InstanceResult::new(label_of(instance, label), seed);
            inst.norm = Some(NormRecord::new(z, &report, [sigma / root_n, sigma * root_n]));
            instances.push(inst);
        }
        Command::Range { instance, side, .. } => {
            let Instance { op, label, seed } = parse_instance(instance)?;
            echo.side = Some(format!("{side:?}").to_lowercase());
            let seed = seed.unwrap_or(common.seed);
            let opt = common.opt(seed);
            let m = common.directions;
            let mut inst = InstanceResult::new(label_of(instance, label), seed);
            if matches!(side, Side::Lhs | Side::Both) {
                let (schedule, _) = standard_schedule(&op, &opt, common.smax_factor)?;
                inst.regions.push(RegionRecord::from_estimate("lhs", &banach_region(&op, m, &opt, &schedule)?));
            }
            if matches!(side, Side::Rhs | Side::Both) {
                let rhs = orbit_region(&op, m, &opt, common.haar_samples)?;
                inst.regions.push(RegionRecord::from_estimate("rhs", &rhs));
                inst.witnesses = output::witnesses(&rhs);
            }
            instances.push(inst);
        }
        Command::Verify { instances: paths, random, dim, k, .. } => {
            if paths.is_empty() && random.unwrap_or(0) == 0 {
                return Err(CliError::Usage("verify needs instance files or --random N".into()));
            }
            for path in paths {
                let Instance { op, label, seed } = parse_instance(path)?;
                instances.push(verify_one(&op, label_of(path, label), seed.unwrap_or(common.seed), common)?);
            }
            if let Some(count) = random {
                if *dim == 0 || *k == 0 {
                    return Err(CliError::Usage("--dim and --k must be positive".into()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(common.seed, &[RANDOM_STREAM]));
                for i in 0..*count {
                    let op = KTupleOperator::random(*dim, *k, &mut rng);
                    instances.push(verify_one(&op, format!("random-{i}"), common.seed, common)?);
                }
            }
        }
        Command::Derivation { pair, .. } => {
            let (a, b, label) = parse_pair(pair)?;
            let v = verify_derivation(&a, &b, &common.verify_config(common.seed))?;
            let mut inst = InstanceResult::new(label_of(pair, label), common.seed);
            attach(&mut inst, &v);
            instances.push(inst);
        }
        Command::Projection { matrix, .. } => {
            let (p, label) = parse_matrix(matrix)?;
            let v = verify_mult_projection(&p, &common.verify_config(common.seed))?;
            let mut inst = InstanceResult::new(label_of(matrix, label), common.seed);
            attach(&mut inst, &v);
            instances.push(inst);
        }
    }
    let passed = instances.iter().all(|i| i.report.as_ref().is_none_or(|r| r.passed()));
    Ok(Outcome { result: document(command.name(), echo, instances), passed })
}

fn render(result: &ResultFile, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(output::to_json(result)),
        Format::Csv => output::to_csv(result),
        Format::Svg => svg::render_svg(result),
    }
}

fn emit(outcome: &Outcome, common: &Common) -> Result<(), CliError> {
    let text = render(&outcome.result, common.format)?;
    match &common.out {
        Some(path) => output::write_atomic(path, &text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

/// Parses arguments, runs the command and writes its output; returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let common = cli.command.common();
    let job = || execute(&cli.command).and_then(|o| emit(&o, common).map(|_| o.passed));
    let outcome = match common.threads {
        Some(t) if t > 0 => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(job),
            Err(e) => Err(CliError::Usage(format!("cannot start {t} threads: {e}"))),
        },
        _ => job(),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
