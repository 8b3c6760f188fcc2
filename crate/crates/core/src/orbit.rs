//! Both sides of the numerical-range identity for `R_{a,b}`, as support regions.
//!
//! * Orbit side: the support of `closure(union_u W(sum_i u^* a_i u b_i))` in
//!   direction `theta` is `sup_u lambda_max(Re(e^{-i theta} u^* R(u)))`.
//! * Banach side: the disk-intersection form of the numerical range of `R` in
//!   `B(M_n)` restricted to centers `z = -s e^{i theta}` on a ray gives the
//!   support as `inf_s (||R + s e^{i theta} Id|| - s)`. The map
//!   `s -> ||R + s e^{i theta}|| - s` is nonincreasing, so it is evaluated on
//!   an increasing schedule and the last value is reported together with the
//!   last decrement as a residual.
//!
//! Every norm `||R - z Id||` is itself a maximum over unitaries (Russo–Dye),
//! so both sides are multistart ascents on `U(n)`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::elemop::{russo_dye_norm, KTupleOperator, ShiftedNormObjective};
use crate::error::{Error, Result};
use crate::fov::fov_support;
use crate::linalg::{cis, haar_unitary, hermitian_part, top_eigenpair, ComplexMatrix, UnitaryMatrix};
use crate::optim::{derive_seed, maximize, standard_starts, OptConfig, OptReport, UnitaryObjective};
use crate::region::{direction, region_from_supports, PointCloud, SupportRegion};

const ORBIT_STREAM: u64 = 0x6f72_6269;
const RAY_STREAM: u64 = 0x7261_7973;
const WITNESS_STREAM: u64 = 0x7769_746e;

/// Angles at which boundary witnesses of each sampled `W(u^* R(u))` are recorded.
pub const WITNESS_ANGLES: usize = 32;

/// Default `s_max / scale`.
pub const DEFAULT_SMAX_FACTOR: f64 = 64.0;

/// Most endpoints carried from one shift to the next.
const CONTINUATION_STARTS: usize = 8;

/// `u -> lambda_max(Re(e^{-i theta} u^* R(u)))`.
pub struct OrbitSupportObjective<'a> {
    op: &'a KTupleOperator,
    theta: f64,
    scale: f64,
}

impl<'a> OrbitSupportObjective<'a> {
    pub fn new(op: &'a KTupleOperator, theta: f64) -> Self {
        Self { op, theta, scale: op.norm_bound() + 1.0 }
    }
}

impl UnitaryObjective for OrbitSupportObjective<'_> {
    fn n(&self) -> usize {
        self.op.n()
    }

    fn value(&self, u: &ComplexMatrix) -> f64 {
        let c = &u.adjoint() * &self.op.apply_unchecked(u);
        top_eigenpair(&hermitian_part(&c, self.theta)).expect("finite").value
    }

    fn value_and_gradient(&self, u: &ComplexMatrix) -> (f64, ComplexMatrix) {
        // f = Re(e^{-i theta} v^* c v), c = sum A_i b_i with A_i = u^* a_i u.
        // Along u e^{tK}: dA_i = A_i K - K A_i, so
        // df = Re tr(K M), M = e^{-i theta} sum (b_i v v^* A_i - A_i b_i v v^*),
        // and the skew representative is (M^* - M) / 2.
        let ua = u.adjoint();
        let rotated: Vec<ComplexMatrix> = self.op.left().iter().map(|a| &(&ua * a) * u).collect();
        let mut c = ComplexMatrix::zeros(u.n());
        for (ai, b) in rotated.iter().zip(self.op.right()) {
            c.axpy(Complex64::new(1.0, 0.0), &(ai * b));
        }
        let pair = top_eigenpair(&hermitian_part(&c, self.theta)).expect("finite");
        let vv = ComplexMatrix::outer(&pair.vector, &pair.vector);
        let mut m = ComplexMatrix::zeros(u.n());
        for (ai, b) in rotated.iter().zip(self.op.right()) {
            let bvv = b * &vv;
            m.axpy(Complex64::new(1.0, 0.0), &(&bvv * ai));
            m.axpy(Complex64::new(-1.0, 0.0), &(ai * &bvv));
        }
        let m = m.scale(cis(-self.theta));
        (pair.value, m.adjoint().skew_part())
    }

    fn scale(&self) -> f64 {
        self.scale
    }
}

/// Increasing shifts `s` along the ray, with the early-stop threshold on
/// successive decrements.
#[derive(Clone, Debug, PartialEq)]
pub struct RaySchedule {
    points: Vec<f64>,
    early_stop: f64,
}

impl RaySchedule {
    pub fn new(points: Vec<f64>, early_stop: f64) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidSchedule("need at least two shifts".into()));
        }
        if points.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::InvalidSchedule("shifts must be positive and finite".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSchedule("shifts must be strictly increasing".into()));
        }
        if early_stop.is_nan() || early_stop < 0.0 {
            return Err(Error::InvalidSchedule("early-stop threshold must be nonnegative".into()));
        }
        Ok(Self { points, early_stop })
    }

    /// `{s_max/8, s_max/4, s_max/2, s_max}` with `s_max = smax_factor * scale`,
    /// stopping once a decrement falls below `1e-4 * scale`.
    pub fn standard(scale: f64, smax_factor: f64) -> Result<Self> {
        let top = smax_factor * scale;
        Self::new(vec![top / 8.0, top / 4.0, top / 2.0, top], 1e-4 * scale)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn early_stop(&self) -> f64 {
        self.early_stop
    }
}

/// `scale = ||R|| + 1` (optimizer value) and the standard schedule for it.
pub fn standard_schedule(op: &KTupleOperator, cfg: &OptConfig, smax_factor: f64) -> Result<(RaySchedule, f64)> {
    let scale = russo_dye_norm(op, cfg).value + 1.0;
    Ok((RaySchedule::standard(scale, smax_factor)?, scale))
}

/// One direction of the Banach side.
#[derive(Clone, Debug)]
pub struct RaySupport {
    /// `g(s_last)`.
    pub value: f64,
    /// `g(s_prev) - g(s_last)`.
    pub residual: f64,
    /// `(s, g(s))` for every evaluated shift.
    pub trace: Vec<(f64, f64)>,
    /// Optimizer report at the last evaluated shift.
    pub report: OptReport,
    /// Maximizer at the first shift (used to warm-start the next direction).
    pub first_maximizer: UnitaryMatrix,
}

/// `h(theta) ~ ||R + s e^{i theta} Id|| - s` at the largest evaluated shift.
pub fn banach_support_ray(op: &KTupleOperator, theta: f64, cfg: &OptConfig, schedule: &RaySchedule) -> RaySupport {
    ray_support(op, theta, cfg, schedule, &[])
}

fn ray_support(
    op: &KTupleOperator,
    theta: f64,
    cfg: &OptConfig,
    schedule: &RaySchedule,
    warm: &[UnitaryMatrix],
) -> RaySupport {
    let seed = derive_seed(cfg.seed, &[RAY_STREAM, theta.to_bits()]);
    let mut starts = standard_starts(op.n(), cfg.restarts, seed, warm);
    let mut reports: Vec<OptReport> = Vec::with_capacity(schedule.points.len());
    for (i, &s) in schedule.points.iter().enumerate() {
        let obj = ShiftedNormObjective::ray(op, theta, s);
        let rep = maximize(&obj, std::mem::take(&mut starts), cfg);
        starts = distinct_endpoints(&rep, CONTINUATION_STARTS, 1e-6 * obj.scale());
        reports.push(rep);
        if i >= 1 && reports[i - 1].value - reports[i].value < schedule.early_stop {
            break;
        }
    }
    // Any maximizer found at a larger shift is also a candidate at smaller
    // shifts; folding them back makes the recorded sequence monotone.
    for i in 0..reports.len() {
        let obj = ShiftedNormObjective::ray(op, theta, schedule.points[i]);
        for j in (i + 1)..reports.len() {
            let cand = reports[j].maximizer.clone();
            let v = obj.value(cand.as_matrix());
            if v > reports[i].value {
                reports[i].value = v;
                reports[i].maximizer = cand;
            }
        }
    }
    let trace: Vec<(f64, f64)> = reports.iter().enumerate().map(|(i, r)| (schedule.points[i], r.value)).collect();
    let last = trace.len() - 1;
    let residual = trace[last - 1].1 - trace[last].1;
    let first_maximizer = reports[0].maximizer.clone();
    RaySupport { value: trace[last].1, residual, trace, report: reports.pop().unwrap(), first_maximizer }
}

/// One endpoint per distinct local maximum (values closer than `tol` are
/// taken as the same maximum), best first, at most `count`. Branches that
/// lose at one shift can win at a larger one, so every branch is carried.
fn distinct_endpoints(rep: &OptReport, count: usize, tol: f64) -> Vec<UnitaryMatrix> {
    let mut order: Vec<usize> = (0..rep.endpoints.len()).collect();
    order.sort_by(|&i, &j| rep.best_per_restart[j].total_cmp(&rep.best_per_restart[i]).then(i.cmp(&j)));
    let mut kept: Vec<usize> = Vec::with_capacity(count);
    for i in order {
        if kept.len() == count {
            break;
        }
        if kept.iter().all(|&k| (rep.best_per_restart[k] - rep.best_per_restart[i]).abs() > tol) {
            kept.push(i);
        }
    }
    kept.into_iter().map(|i| rep.endpoints[i].clone()).collect()
}

/// Lower bound on the orbit-side support in direction `theta`.
pub fn orbit_support(op: &KTupleOperator, theta: f64, cfg: &OptConfig) -> OptReport {
    orbit_support_warm(op, theta, cfg, &[])
}

fn orbit_support_warm(op: &KTupleOperator, theta: f64, cfg: &OptConfig, warm: &[UnitaryMatrix]) -> OptReport {
    let seed = derive_seed(cfg.seed, &[ORBIT_STREAM, theta.to_bits()]);
    let obj = OrbitSupportObjective::new(op, theta);
    maximize(&obj, standard_starts(op.n(), cfg.restarts, seed, warm), cfg)
}

/// A computed side of the identity.
#[derive(Clone, Debug)]
pub struct RangeEstimate {
    pub region: SupportRegion,
    /// Optimizer support value per direction, before canonicalization.
    pub raw_support: Vec<f64>,
    /// Per-direction optimizer report (last shift for the Banach side).
    pub reports: Vec<OptReport>,
    /// Per-direction ray residual (Banach side only).
    pub residuals: Vec<f64>,
    /// Per-direction `(s, g(s))` traces (Banach side only).
    pub traces: Vec<Vec<(f64, f64)>>,
    /// Field-of-values witness points (orbit side only).
    pub samples: PointCloud,
}

impl RangeEstimate {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }

    pub fn max_restart_spread(&self) -> f64 {
        self.reports.iter().map(|r| r.restart_spread()).fold(0.0, f64::max)
    }

    pub fn total_iterations(&self) -> usize {
        self.reports.iter().map(|r| r.iterations).sum()
    }

    pub fn unconverged(&self) -> usize {
        self.reports.iter().filter(|r| !r.converged).count()
    }

    /// Largest increase `g(s_{i+1}) - g(s_i)` over all traces (nonpositive when
    /// every trace is monotone).
    pub fn max_ray_increase(&self) -> f64 {
        self.traces
            .iter()
            .flat_map(|t| t.windows(2).map(|w| w[1].1 - w[0].1))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn check_directions(m: usize) -> Result<()> {
    if m < 8 {
        return Err(Error::TooFewDirections(m, 8));
    }
    Ok(())
}

/// Runs `f(j, warm)` for every direction: chained sequentially (each
/// direction warm-started by the previous one's maximizer) or independently
/// in parallel.
fn sweep<T: Send>(
    m: usize,
    chained: bool,
    f: impl Fn(usize, &[UnitaryMatrix]) -> T + Sync,
    next_warm: impl Fn(&T) -> UnitaryMatrix,
) -> Vec<T> {
    if chained {
        let mut out: Vec<T> = Vec::with_capacity(m);
        for j in 0..m {
            let warm: Vec<UnitaryMatrix> = out.last().map(|t| vec![next_warm(t)]).unwrap_or_default();
            out.push(f(j, &warm));
        }
        out
    } else {
        (0..m).into_par_iter().map(|j| f(j, &[])).collect()
    }
}

/// The Banach side: per-direction ray supports on `m` directions.
pub fn banach_region(op: &KTupleOperator, m: usize, cfg: &OptConfig, schedule: &RaySchedule) -> Result<RangeEstimate> {
    check_directions(m)?;
    cfg.validate()?;
    let rays = sweep(
        m,
        cfg.warm_start,
        |j, warm| ray_support(op, direction(m, j), cfg, schedule, warm),
        |r| r.first_maximizer.clone(),
    );
    let raw_support: Vec<f64> = rays.iter().map(|r| r.value).collect();
    let region = region_from_supports(raw_support.clone())?;
    let residuals = rays.iter().map(|r| r.residual).collect();
    let traces = rays.iter().map(|r| r.trace.clone()).collect();
    let reports = rays.into_iter().map(|r| r.report).collect();
    Ok(RangeEstimate { region, raw_support, reports, residuals, traces, samples: PointCloud::default() })
}

/// Boundary witnesses of `W(c)` at [`WITNESS_ANGLES`] equally spaced angles.
pub fn witness_points(c: &ComplexMatrix) -> Result<Vec<Complex64>> {
    (0..WITNESS_ANGLES).map(|k| fov_support(c, direction(WITNESS_ANGLES, k)).map(|s| s.witness)).collect()
}

/// The orbit side: per-direction orbit supports on `m` directions, plus a
/// witness cloud from `n_haar` Haar samples and every direction maximizer.
///
/// Witness points belong to the union, so each stored support is the larger
/// of the optimizer value and the cloud's support.
pub fn orbit_region(op: &KTupleOperator, m: usize, cfg: &OptConfig, n_haar: usize) -> Result<RangeEstimate> {
    check_directions(m)?;
    cfg.validate()?;
    let reports = sweep(
        m,
        cfg.warm_start,
        |j, warm| orbit_support_warm(op, direction(m, j), cfg, warm),
        |r| r.maximizer.clone(),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[WITNESS_STREAM]));
    let mut unitaries: Vec<UnitaryMatrix> = (0..n_haar).map(|_| haar_unitary(op.n(), &mut rng)).collect();
    unitaries.extend(reports.iter().map(|r| r.maximizer.clone()));
    let clouds = unitaries
        .par_iter()
        .map(|u| witness_points(&op.orbit_element(u)))
        .collect::<Result<Vec<_>>>()?;
    let samples = PointCloud::new(clouds.into_iter().flatten().collect())?;

    let raw_support: Vec<f64> = reports.iter().map(|r| r.value).collect();
    let merged = raw_support
        .iter()
        .enumerate()
        .map(|(j, h)| h.max(samples.support(direction(m, j))))
        .collect();
    let region = region_from_supports(merged)?;
    Ok(RangeEstimate { region, raw_support, reports, residuals: Vec::new(), traces: Vec::new(), samples })
}
