//! End-to-end numerical checks of the identity between the two sides and
//! of its special cases.
//!
//! Every check records a measured discrepancy and a tolerance; `pass` is
//! exactly `discrepancy <= tolerance`. Informational checks (such as the
//! hermitian classification) are reported but do not decide overall success.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::elemop::{russo_dye_norm, KTupleOperator};
use crate::error::{Error, Result};
use crate::fov::field_of_values;
use crate::linalg::{cis, haar_unitary, hermitian_part, spectral_norm, top_eigenpair, ComplexMatrix};
use crate::optim::{derive_seed, OptConfig};
use crate::orbit::{banach_region, orbit_region, RangeEstimate, RaySchedule, DEFAULT_SMAX_FACTOR};
use crate::region::{direction, hausdorff, hull_of_points, minkowski_sum, negate, SupportRegion};

const INCLUSION_STREAM: u64 = 0x696e_636c;
const HERMITIAN_STREAM: u64 = 0x6865_726d;

/// Projection defect accepted by [`verify_mult_projection`].
pub const PROJECTION_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub directions: usize,
    /// Haar samples for the witness cloud, the inclusion check and the
    /// sampled hermitian criterion.
    pub haar_samples: usize,
    /// Largest ray shift as a multiple of `||R|| + 1`.
    pub smax_factor: f64,
    /// Overrides the default tolerance of the primary check.
    pub tolerance: Option<f64>,
    pub opt: OptConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            directions: crate::region::DEFAULT_DIRECTIONS,
            haar_samples: 64,
            smax_factor: DEFAULT_SMAX_FACTOR,
            tolerance: None,
            opt: OptConfig::default(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.directions < 8 {
            return Err(Error::TooFewDirections(self.directions, 8));
        }
        if !self.directions.is_multiple_of(2) {
            return Err(Error::OddDirections(self.directions));
        }
        if !(self.smax_factor.is_finite() && self.smax_factor > 0.0) {
            return Err(Error::InvalidConfig("smax factor must be positive".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::InvalidConfig("tolerance must be nonnegative".into()));
            }
        }
        self.opt.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub informational: bool,
}

impl Check {
    pub fn new(name: &str, discrepancy: f64, tolerance: f64) -> Self {
        Self { name: name.into(), discrepancy, tolerance, pass: discrepancy <= tolerance, informational: false }
    }

    pub fn informational(name: &str, discrepancy: f64, tolerance: f64) -> Self {
        Self { informational: true, ..Self::new(name, discrepancy, tolerance) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

/// Optimizer rollup over every computed side.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `||R|| + 1`, the unit for scale-relative tolerances.
    pub scale: f64,
    pub total_iterations: usize,
    /// Directions whose best start stopped before reaching the gradient tolerance.
    pub unconverged_directions: usize,
    pub max_restart_spread: f64,
    pub max_ray_residual: f64,
}

impl Diagnostics {
    fn absorb(&mut self, est: &RangeEstimate) {
        self.total_iterations += est.total_iterations();
        self.unconverged_directions += est.unconverged();
        self.max_restart_spread = self.max_restart_spread.max(est.max_restart_spread());
        self.max_ray_residual = self.max_ray_residual.max(est.max_residual());
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: String,
    pub checks: Vec<Check>,
    pub values: Vec<NamedValue>,
    pub diagnostics: Diagnostics,
}

impl VerificationReport {
    fn new(scale: f64) -> Self {
        Self {
            instance: String::new(),
            checks: Vec::new(),
            values: Vec::new(),
            diagnostics: Diagnostics { scale, ..Default::default() },
        }
    }

    pub fn with_instance(mut self, instance: impl Into<String>) -> Self {
        self.instance = instance.into();
        self
    }

    /// True when every non-informational check passes.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || c.informational)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|v| v.name == name).map(|v| v.value)
    }

    fn push_value(&mut self, name: &str, value: f64) {
        self.values.push(NamedValue { name: name.into(), value });
    }
}

/// A report together with the regions it was computed from.
#[derive(Clone, Debug)]
pub struct Verification {
    pub report: VerificationReport,
    pub lhs: Option<RangeEstimate>,
    pub rhs: Option<RangeEstimate>,
    pub oracle: Option<SupportRegion>,
}

fn scale_of(op: &KTupleOperator, cfg: &VerifyConfig) -> f64 {
    russo_dye_norm(op, &cfg.opt).value + 1.0
}

/// Checks `lambda_max(Re(e^{-i theta} u^* R(u))) <= ||R(u) + s e^{i theta} u|| - s`
/// for `cfg.haar_samples` Haar unitaries, every grid direction and every
/// schedule shift. The discrepancy is the worst violation (clamped at 0).
pub fn verify_inclusion(op: &KTupleOperator, cfg: &VerifyConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let scale = scale_of(op, cfg);
    let schedule = RaySchedule::standard(scale, cfg.smax_factor)?;
    let m = cfg.directions;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.opt.seed, &[INCLUSION_STREAM]));
    let mut worst: f64 = 0.0;
    for _ in 0..cfg.haar_samples {
        let u = haar_unitary(op.n(), &mut rng);
        let c = &u.as_matrix().adjoint() * &op.apply(u.as_matrix())?;
        for j in 0..m {
            let theta = direction(m, j);
            let lam = top_eigenpair(&hermitian_part(&c, theta))?.value;
            // ||R(u) + s e^{i theta} u|| = ||e^{-i theta} u^* R(u) + s||
            let rotated = c.scale(cis(-theta));
            for &s in schedule.points() {
                worst = worst.max(lam - (spectral_norm(&rotated.shift(s.into())) - s));
            }
        }
    }
    let mut report = VerificationReport::new(scale);
    report.checks.push(Check::new("inclusion", worst, cfg.tolerance.unwrap_or(1e-10)));
    report.push_value("samples", cfg.haar_samples as f64);
    Ok(report)
}

/// Both sides, compared: the identity itself plus the consistency checks
/// that hold for any computed pair.
fn compare_sides(op: &KTupleOperator, cfg: &VerifyConfig) -> Result<Verification> {
    cfg.validate()?;
    let m = cfg.directions;
    let scale = scale_of(op, cfg);
    let schedule = RaySchedule::standard(scale, cfg.smax_factor)?;
    let lhs = banach_region(op, m, &cfg.opt, &schedule)?;
    let rhs = orbit_region(op, m, &cfg.opt, cfg.haar_samples)?;

    let mut report = VerificationReport::new(scale);
    report.diagnostics.absorb(&lhs);
    report.diagnostics.absorb(&rhs);

    let equality = hausdorff(&lhs.region, &rhs.region)?;
    let tol = cfg.tolerance.unwrap_or((2e-2 * scale).max(2.0 * lhs.max_residual()));
    report.checks.push(Check::new("main_equality", equality, tol));

    let increase = lhs.max_ray_increase().max(0.0);
    report.checks.push(Check::new("ray_monotonicity", increase, 1e-6 * scale));

    let below = (0..m)
        .map(|j| rhs.raw_support[j] - lhs.raw_support[j] - lhs.residuals[j])
        .fold(0.0, f64::max);
    report.checks.push(Check::new("orbit_below_banach", below, 1e-6 * scale));

    let containment = rhs.samples.points().iter().map(|z| rhs.region.slack(*z)).fold(0.0, f64::max);
    report.checks.push(Check::new("witness_containment", containment, 1e-6 * scale));

    let filling = hausdorff(&hull_of_points(&rhs.samples, m)?, &rhs.region)?;
    report.checks.push(Check::new("hull_filling", filling, cfg.tolerance.unwrap_or(2e-2 * scale)));

    report.push_value("max_ray_residual", lhs.max_residual());
    Ok(Verification { report, lhs: Some(lhs), rhs: Some(rhs), oracle: None })
}

/// Computes both sides on `cfg.directions` directions and compares them.
/// The default tolerance is `max(2e-2 * scale, 2 * max ray residual)`.
pub fn verify_main(op: &KTupleOperator, cfg: &VerifyConfig) -> Result<Verification> {
    compare_sides(op, cfg)
}

/// The orbit side of `x -> Ax - xB` against `W(A) - W(B)`.
pub fn verify_derivation(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &VerifyConfig) -> Result<Verification> {
    cfg.validate()?;
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: b.n() });
    }
    let m = cfg.directions;
    let op = KTupleOperator::derivation(a.clone(), b.clone());
    let scale = scale_of(&op, cfg);
    let rhs = orbit_region(&op, m, &cfg.opt, cfg.haar_samples)?;
    let oracle = minkowski_sum(&field_of_values(a, m)?, &negate(&field_of_values(b, m)?)?)?;

    let mut report = VerificationReport::new(scale);
    report.diagnostics.absorb(&rhs);
    let d = hausdorff(&rhs.region, &oracle)?;
    let tol = cfg.tolerance.unwrap_or((1e-2 * oracle.diameter()).max(1e-6 * scale));
    report.checks.push(Check::new("derivation_oracle", d, tol));
    let filling = hausdorff(&hull_of_points(&rhs.samples, m)?, &rhs.region)?;
    report.checks.push(Check::new("hull_filling", filling, 2e-2 * scale));
    report.push_value("oracle_diameter", oracle.diameter());
    Ok(Verification { report, lhs: None, rhs: Some(rhs), oracle: Some(oracle) })
}

/// `max(||p - p^*||, ||p^2 - p||)` in Frobenius norm.
pub fn projection_defect(p: &ComplexMatrix) -> f64 {
    let herm = (p - &p.adjoint()).frobenius_norm();
    let idem = (&(p * p) - p).frobenius_norm();
    herm.max(idem)
}

/// Both sides of `x -> p x p` for an orthogonal projection `p`, with the
/// supports at `0` and `pi` and the hermitian classification.
pub fn verify_mult_projection(p: &ComplexMatrix, cfg: &VerifyConfig) -> Result<Verification> {
    let defect = projection_defect(p);
    if defect.is_nan() || defect > PROJECTION_TOL {
        return Err(Error::NotProjection(defect));
    }
    let op = KTupleOperator::multiplication(p.clone(), p.clone());
    let mut v = compare_sides(&op, cfg)?;
    let (lhs, rhs) = (v.lhs.as_ref().unwrap(), v.rhs.as_ref().unwrap());
    let pi = std::f64::consts::PI;
    let values = [
        ("lhs_support_0", lhs.region.support_at(0.0)),
        ("lhs_support_pi", lhs.region.support_at(pi)),
        ("rhs_support_0", rhs.region.support_at(0.0)),
        ("rhs_support_pi", rhs.region.support_at(pi)),
        ("imaginary_extent", rhs.region.imaginary_extent()),
    ];
    for (name, value) in values {
        v.report.push_value(name, value);
    }
    let scale = v.report.diagnostics.scale;
    let extent = rhs.region.imaginary_extent();
    v.report.checks.push(Check::informational("hermitian", extent, 1e-6 * scale));
    Ok(v)
}

/// Classifies `R` as hermitian by whether its orbit-side region is real.
/// The discrepancy is `max |Im z|` over the region; the sampled
/// `max_u ||c - c^*||` with `c = u^* R(u)` is reported alongside.
pub fn hermitian_check(op: &KTupleOperator, cfg: &VerifyConfig) -> Result<Verification> {
    cfg.validate()?;
    let scale = scale_of(op, cfg);
    let rhs = orbit_region(op, cfg.directions, &cfg.opt, cfg.haar_samples)?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.opt.seed, &[HERMITIAN_STREAM]));
    let sampled = (0..cfg.haar_samples.max(1))
        .map(|_| {
            let c = op.orbit_element(&haar_unitary(op.n(), &mut rng));
            spectral_norm(&(&c - &c.adjoint()))
        })
        .fold(0.0, f64::max);

    let mut report = VerificationReport::new(scale);
    report.diagnostics.absorb(&rhs);
    let extent = rhs.region.imaginary_extent();
    report.checks.push(Check::informational("hermitian", extent, cfg.tolerance.unwrap_or(1e-6 * scale)));
    report.push_value("imaginary_extent", extent);
    report.push_value("sampled_antihermitian_norm", sampled);
    Ok(Verification { report, lhs: None, rhs: Some(rhs), oracle: None })
}
