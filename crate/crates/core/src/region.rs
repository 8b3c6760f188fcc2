//! Compact convex planar sets stored as sampled support functions.
//!
//! A [`SupportRegion`] with `m` directions keeps the support values
//! `h_j = max Re(e^{-i theta_j} z)` at `theta_j = 2 pi j / m` together with the
//! polygon cut out by the halfplanes `Re(e^{-i theta_j} z) <= h_j`. Stored
//! samples are always canonical: each one is attained by the polygon.
//!
//! With that representation Hausdorff distance and Minkowski sums are
//! coordinate-wise on the support vector.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest direction count for which the halfplane intersection is bounded
/// and the grid is symmetric under negation.
pub const MIN_DIRECTIONS: usize = 4;

/// Direction grid used when none is given.
pub const DEFAULT_DIRECTIONS: usize = 720;

/// `theta_j = 2 pi j / m`.
#[inline]
pub fn direction(m: usize, j: usize) -> f64 {
    2.0 * PI * j as f64 / m as f64
}

pub fn directions(m: usize) -> Vec<f64> {
    (0..m).map(|j| direction(m, j)).collect()
}

/// `Re(e^{-i theta} z)`.
#[inline]
pub fn project(z: Complex64, theta: f64) -> f64 {
    z.re * theta.cos() + z.im * theta.sin()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupportRegion {
    support: Vec<f64>,
    vertices: Vec<Complex64>,
}

/// Closed disk `{lambda : |lambda - center| <= radius}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskSpec {
    pub center: Complex64,
    pub radius: f64,
}

impl DiskSpec {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::InvalidDisk(format!("radius {radius}")));
        }
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::InvalidDisk(format!("center {center}")));
        }
        Ok(Self { center, radius })
    }
}

/// Finite sample of points in the plane.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointCloud(Vec<Complex64>);

impl PointCloud {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite);
        }
        Ok(Self(points))
    }

    pub fn points(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `max_p Re(e^{-i theta} p)`, or `-inf` for an empty cloud.
    pub fn support(&self, theta: f64) -> f64 {
        let (c, s) = (theta.cos(), theta.sin());
        self.0.iter().map(|p| p.re * c + p.im * s).fold(f64::NEG_INFINITY, f64::max)
    }
}

impl SupportRegion {
    pub fn m(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn directions(&self) -> Vec<f64> {
        directions(self.m())
    }

    /// Support of the stored polygon in an arbitrary direction.
    pub fn support_at(&self, theta: f64) -> f64 {
        self.vertices.iter().map(|v| project(*v, theta)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest halfplane violation of `z`; nonpositive iff `z` is in the region.
    pub fn slack(&self, z: Complex64) -> f64 {
        self.support
            .iter()
            .enumerate()
            .map(|(j, h)| project(z, direction(self.m(), j)) - h)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    /// Largest `|Im z|` over the region.
    pub fn imaginary_extent(&self) -> f64 {
        self.vertices.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// `self + z`.
    pub fn translate(&self, z: Complex64) -> SupportRegion {
        let m = self.m();
        SupportRegion {
            support: self.support.iter().enumerate().map(|(j, h)| h + project(z, direction(m, j))).collect(),
            vertices: self.vertices.iter().map(|v| v + z).collect(),
        }
    }

    /// `alpha * self` for `alpha >= 0`.
    pub fn dilate(&self, alpha: f64) -> SupportRegion {
        assert!(alpha >= 0.0, "dilation factor must be nonnegative");
        SupportRegion {
            support: self.support.iter().map(|h| h * alpha).collect(),
            vertices: self.vertices.iter().map(|v| v * alpha).collect(),
        }
    }

    /// Builds a region from support values already known to be canonical
    /// (exact support samples of some convex set); only the polygon is computed.
    pub(crate) fn from_canonical(support: Vec<f64>) -> Result<Self> {
        check_samples(&support)?;
        let vertices = clip_polygon(&support)?;
        Ok(Self { support, vertices })
    }
}

fn check_samples(h: &[f64]) -> Result<()> {
    if h.len() < MIN_DIRECTIONS {
        return Err(Error::TooFewDirections(h.len(), MIN_DIRECTIONS));
    }
    if h.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn sample_scale(h: &[f64]) -> f64 {
    h.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0)
}

/// Polygon of the halfplanes `Re(e^{-i theta_j} z) <= h_j`, by successive
/// clipping of a bounding square.
fn clip_polygon(h: &[f64]) -> Result<Vec<Complex64>> {
    let m = h.len();
    let scale = sample_scale(h);
    let eps = 1e-11 * scale;
    let merge = 1e-12 * scale;
    let bound = 2.0 * scale / (PI / m as f64).cos() + 1.0;
    let mut poly = vec![
        Complex64::new(-bound, -bound),
        Complex64::new(bound, -bound),
        Complex64::new(bound, bound),
        Complex64::new(-bound, bound),
    ];
    let mut next = Vec::with_capacity(m + 8);
    for (j, hj) in h.iter().enumerate() {
        let theta = direction(m, j);
        let (c, s) = (theta.cos(), theta.sin());
        let dist = |p: &Complex64| p.re * c + p.im * s - hj;
        next.clear();
        let len = poly.len();
        for i in 0..len {
            let p = poly[i];
            let q = poly[(i + 1) % len];
            let (dp, dq) = (dist(&p), dist(&q));
            let (ip, iq) = (dp <= eps, dq <= eps);
            if ip {
                next.push(p);
            }
            if ip != iq {
                let t = (dp / (dp - dq)).clamp(0.0, 1.0);
                next.push(p + (q - p) * t);
            }
        }
        dedup_ring(&mut next, merge);
        if next.is_empty() {
            return Err(Error::EmptyRegion);
        }
        std::mem::swap(&mut poly, &mut next);
    }
    Ok(poly)
}

fn dedup_ring(ring: &mut Vec<Complex64>, tol: f64) {
    ring.dedup_by(|a, b| (*a - *b).norm() <= tol);
    while ring.len() > 1 && (ring[0] - ring[ring.len() - 1]).norm() <= tol {
        ring.pop();
    }
}

/// Canonical region from raw support samples on the uniform grid.
///
/// Samples are tightened to the polygon they bound, so a redundant halfplane
/// comes back with the value the polygon actually attains.
pub fn region_from_supports(samples: Vec<f64>) -> Result<SupportRegion> {
    check_samples(&samples)?;
    let vertices = clip_polygon(&samples)?;
    let m = samples.len();
    let support = samples
        .iter()
        .enumerate()
        .map(|(j, h)| {
            let theta = direction(m, j);
            let attained = vertices.iter().map(|v| project(*v, theta)).fold(f64::NEG_INFINITY, f64::max);
            attained.min(*h)
        })
        .collect();
    Ok(SupportRegion { support, vertices })
}

fn same_grid(a: &SupportRegion, b: &SupportRegion) -> Result<()> {
    if a.m() != b.m() {
        return Err(Error::GridMismatch(a.m(), b.m()));
    }
    Ok(())
}

/// `max_j |h_A(theta_j) - h_B(theta_j)|`.
pub fn hausdorff(a: &SupportRegion, b: &SupportRegion) -> Result<f64> {
    same_grid(a, b)?;
    Ok(a.support.iter().zip(&b.support).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// `A ⊕ B`; support values add exactly.
pub fn minkowski_sum(a: &SupportRegion, b: &SupportRegion) -> Result<SupportRegion> {
    same_grid(a, b)?;
    let support: Vec<f64> = a.support.iter().zip(&b.support).map(|(x, y)| x + y).collect();
    SupportRegion::from_canonical(support)
}

/// `-A`: the support grid rotated by half a turn.
pub fn negate(a: &SupportRegion) -> Result<SupportRegion> {
    let m = a.m();
    if !m.is_multiple_of(2) {
        return Err(Error::OddDirections(m));
    }
    let support = (0..m).map(|j| a.support[(j + m / 2) % m]).collect();
    Ok(SupportRegion { support, vertices: a.vertices.iter().map(|v| -v).collect() })
}

/// Outer approximation of the intersection of closed disks: every disk is
/// replaced by its circumscribed `m`-gon tangent at the grid directions.
///
/// The overshoot relative to the true intersection is at most
/// `(sec(pi/m) - 1) * max radius`, see [`disk_overshoot_bound`].
pub fn intersect_disks(disks: &[DiskSpec], m: usize) -> Result<SupportRegion> {
    if disks.is_empty() {
        return Err(Error::NoDisks);
    }
    let samples = (0..m)
        .map(|j| {
            let theta = direction(m, j);
            disks.iter().map(|d| project(d.center, theta) + d.radius).fold(f64::INFINITY, f64::min)
        })
        .collect();
    region_from_supports(samples)
}

pub fn disk_overshoot_bound(disks: &[DiskSpec], m: usize) -> f64 {
    let r = disks.iter().map(|d| d.radius).fold(0.0, f64::max);
    (1.0 / (PI / m as f64).cos() - 1.0) * r
}

/// Convex hull of a point cloud, sampled on the grid.
pub fn hull_of_points(cloud: &PointCloud, m: usize) -> Result<SupportRegion> {
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let support = (0..m).map(|j| cloud.support(direction(m, j))).collect();
    SupportRegion::from_canonical(support)
}

/// Disk `D(z, r)` sampled as a region (circumscribed polygon).
pub fn disk_region(center: Complex64, radius: f64, m: usize) -> Result<SupportRegion> {
    intersect_disks(&[DiskSpec::new(center, radius)?], m)
}

/// Point `{z}` as a region.
pub fn point_region(z: Complex64, m: usize) -> Result<SupportRegion> {
    hull_of_points(&PointCloud::new(vec![z])?, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cis;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn segment(a: Complex64, b: Complex64, m: usize) -> SupportRegion {
        hull_of_points(&PointCloud::new(vec![a, b]).unwrap(), m).unwrap()
    }

    /// Brute-force membership oracle: is `z` in every halfplane?
    fn in_halfplanes(h: &[f64], z: Complex64, tol: f64) -> bool {
        h.iter().enumerate().all(|(j, hj)| project(z, direction(h.len(), j)) <= hj + tol)
    }

    #[test]
    fn square_from_axis_supports() {
        let r = region_from_supports(vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(r.support(), &[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(r.vertices().len(), 4);
        for corner in [c(1., 1.), c(-1., 1.), c(-1., -1.), c(1., -1.)] {
            assert!(r.vertices().iter().any(|v| (v - corner).norm() < 1e-12), "missing {corner}");
        }
    }

    #[test]
    fn zero_samples_give_a_point() {
        let r = region_from_supports(vec![0.0; 16]).unwrap();
        assert_eq!(r.vertices().len(), 1);
        assert!(r.vertices()[0].norm() < 1e-12);
        assert!(r.support().iter().all(|h| h.abs() < 1e-12));
    }

    #[test]
    fn thin_segment_samples() {
        // Re <= 1, Im <= 0, Re >= 0.5, Im >= 0: the segment [0.5, 1].
        let h = vec![1.0, 0.0, -0.5, 0.0];
        // oracle: grid points of the box [-2,2]^2 inside all halfplanes
        let mut inside = Vec::new();
        for i in -40..=40 {
            let z = c(i as f64 * 0.05, 0.0);
            if in_halfplanes(&h, z, 1e-12) {
                inside.push(z.re);
            }
        }
        assert!(!inside.is_empty());
        let r = region_from_supports(h.clone()).unwrap();
        assert!((r.support()[0] - 1.0).abs() < 1e-12);
        assert!((r.support()[2] + 0.5).abs() < 1e-12);
        assert!(r.support()[1].abs() < 1e-12 && r.support()[3].abs() < 1e-12);
        let lo = inside.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = inside.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!((lo - 0.5).abs() < 1e-9 && (hi - 1.0).abs() < 1e-9);
    }

    #[test]
    fn empty_intersection_is_an_error() {
        // Re <= 0 and Re >= 1
        assert!(matches!(region_from_supports(vec![0.0, 1.0, -1.0, 1.0]), Err(Error::EmptyRegion)));
    }

    #[test]
    fn redundant_halfplane_is_tightened() {
        let mut h = vec![1.0; 8];
        h[1] = 5.0;
        let r = region_from_supports(h).unwrap();
        // corner of the square-ish octagon in direction pi/4
        let want = r.vertices().iter().map(|v| project(*v, PI / 4.0)).fold(f64::NEG_INFINITY, f64::max);
        assert!((r.support()[1] - want).abs() < 1e-12);
        assert!(r.support()[1] < 5.0);
    }

    #[test]
    fn grid_size_checks() {
        assert!(matches!(region_from_supports(vec![1.0; 3]), Err(Error::TooFewDirections(3, _))));
        let a = disk_region(c(0., 0.), 1.0, 8).unwrap();
        let b = disk_region(c(0., 0.), 1.0, 16).unwrap();
        assert!(matches!(hausdorff(&a, &b), Err(Error::GridMismatch(8, 16))));
        assert!(matches!(minkowski_sum(&a, &b), Err(Error::GridMismatch(8, 16))));
        let odd = region_from_supports(vec![1.0; 9]).unwrap();
        assert!(matches!(negate(&odd), Err(Error::OddDirections(9))));
    }

    #[test]
    fn hausdorff_examples() {
        let m = 64;
        let a = disk_region(c(0.3, -0.2), 1.0, m).unwrap();
        assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
        let d1 = disk_region(c(0., 0.), 1.0, m).unwrap();
        let d2 = disk_region(c(0., 0.), 2.0, m).unwrap();
        assert!((hausdorff(&d1, &d2).unwrap() - 1.0).abs() < 1e-12);
        let seg = segment(c(0., 0.), c(1., 0.), m);
        let pt = point_region(c(0., 0.), m).unwrap();
        assert!((hausdorff(&seg, &pt).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn minkowski_examples() {
        let m = 8;
        let a = segment(c(0., 0.), c(1., 0.), m);
        let b = segment(c(0., 0.), c(0., 1.), m);
        let rect = minkowski_sum(&a, &negate(&b).unwrap()).unwrap();
        // interval arithmetic: [0,1] x [-1,0]
        let h = rect.support();
        assert!((h[0] - 1.0).abs() < 1e-15);
        assert!(h[2].abs() < 1e-15);
        assert!(h[4].abs() < 1e-15);
        assert!((h[6] - 1.0).abs() < 1e-15);
        for corner in [c(0., 0.), c(1., 0.), c(1., -1.), c(0., -1.)] {
            assert!(rect.vertices().iter().any(|v| (v - corner).norm() < 1e-12));
        }

        let zero = point_region(c(0., 0.), m).unwrap();
        let s = minkowski_sum(&a, &zero).unwrap();
        assert!(hausdorff(&s, &a).unwrap() < 1e-15);

        let d1 = disk_region(c(0., 0.), 1.0, 32).unwrap();
        let d2 = disk_region(c(0., 0.), 2.0, 32).unwrap();
        assert!(hausdorff(&minkowski_sum(&d1, &d1).unwrap(), &d2).unwrap() < 1e-12);
    }

    #[test]
    fn negate_examples() {
        let m = 16;
        let a = segment(c(0., 0.), c(1., 0.), m);
        let want = segment(c(-1., 0.), c(0., 0.), m);
        assert!(hausdorff(&negate(&a).unwrap(), &want).unwrap() < 1e-15);
        let d = disk_region(c(0.5, 0.25), 0.75, m).unwrap();
        let nd = disk_region(c(-0.5, -0.25), 0.75, m).unwrap();
        assert!(hausdorff(&negate(&d).unwrap(), &nd).unwrap() < 1e-12);
        assert_eq!(negate(&negate(&d).unwrap()).unwrap(), d);
    }

    #[test]
    fn intersect_disks_examples() {
        let m = 720;
        let single = intersect_disks(&[DiskSpec::new(c(0., 0.), 1.0).unwrap()], m).unwrap();
        assert!(single.support().iter().all(|h| (h - 1.0).abs() < 1e-12));

        let disks = [DiskSpec::new(c(-1., 0.), 1.0).unwrap(), DiskSpec::new(c(1., 0.), 1.0).unwrap()];
        let r = intersect_disks(&disks, m).unwrap();
        let bound = disk_overshoot_bound(&disks, m);
        assert!(r.support()[0] <= bound + 1e-12);
        assert!(r.diameter() <= 1e-2);

        let lens = intersect_disks(&[DiskSpec::new(c(0., 0.), 1.0).unwrap(), DiskSpec::new(c(1., 0.), 1.0).unwrap()], m)
            .unwrap();
        assert!((lens.support()[0] - 1.0).abs() < 1e-12);
        assert!(intersect_disks(&[], m).is_err());
        assert!(DiskSpec::new(c(0., 0.), -1.0).is_err());

        let far = [DiskSpec::new(c(-3., 0.), 1.0).unwrap(), DiskSpec::new(c(3., 0.), 1.0).unwrap()];
        assert!(matches!(intersect_disks(&far, m), Err(Error::EmptyRegion)));
    }

    #[test]
    fn point_regions_on_fine_grids() {
        for m in [720, 1440, 2880] {
            for z in [c(1.0, 0.0), c(-3.5, 2.25), c(1e-3, -7.0)] {
                let h: Vec<f64> = (0..m).map(|j| project(z, direction(m, j))).collect();
                let r = region_from_supports(h).unwrap();
                assert!(r.diameter() <= 1e-10 * z.norm().max(1.0), "m {m} z {z}");
                assert!(r.vertices().iter().all(|v| (v - z).norm() <= 1e-10 * z.norm().max(1.0)));
            }
        }
    }

    #[test]
    fn hull_examples() {
        let m = 8;
        let p = point_region(c(0., 0.), m).unwrap();
        assert!(p.support().iter().all(|h| h.abs() < 1e-15));
        let sq = hull_of_points(&PointCloud::new(vec![c(0., 0.), c(1., 0.), c(0., 1.), c(1., 1.)]).unwrap(), m).unwrap();
        for (j, want) in [(0, 1.0), (2, 1.0), (4, 0.0), (6, 0.0)] {
            assert!((sq.support()[j] - want).abs() < 1e-15);
        }
        assert!((sq.support()[1] - 2f64.sqrt()).abs() < 1e-15);
        assert!(hull_of_points(&PointCloud::default(), m).is_err());

        // 100 points on the unit circle: direct max over the cloud
        let k = 100;
        let pts: Vec<Complex64> = (0..k).map(|i| cis(2.0 * PI * i as f64 / k as f64)).collect();
        let m = 720;
        let circle = hull_of_points(&PointCloud::new(pts.clone()).unwrap(), m).unwrap();
        let floor = (PI / k as f64).cos();
        for (j, h) in circle.support().iter().enumerate() {
            let direct = pts.iter().map(|p| project(*p, direction(m, j))).fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(*h, direct);
            assert!(*h <= 1.0 + 1e-15 && *h >= floor - 1e-15);
        }
    }

    fn cloud_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..12)
    }

    fn to_cloud(v: &[(f64, f64)]) -> PointCloud {
        PointCloud::new(v.iter().map(|&(x, y)| c(x, y)).collect()).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn canonicalization_idempotent(pts in cloud_strategy(), raw in prop::collection::vec(0.5f64..3.0, 24)) {
            let r = hull_of_points(&to_cloud(&pts), 24).unwrap();
            let again = region_from_supports(r.support().to_vec()).unwrap();
            for (a, b) in r.support().iter().zip(again.support()) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
            // arbitrary consistent samples (all contain 0): canonical form is a fixed point
            let c1 = region_from_supports(raw).unwrap();
            let c2 = region_from_supports(c1.support().to_vec()).unwrap();
            for (a, b) in c1.support().iter().zip(c2.support()) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }

        #[test]
        fn canonical_supports_are_attained(raw in prop::collection::vec(0.1f64..3.0, 16)) {
            let r = region_from_supports(raw.clone()).unwrap();
            for (j, h) in r.support().iter().enumerate() {
                prop_assert!(*h <= raw[j]);
                prop_assert!((r.support_at(direction(16, j)) - h).abs() <= 1e-12);
            }
        }

        #[test]
        fn minkowski_adds_exactly(p in cloud_strategy(), q in cloud_strategy()) {
            let a = hull_of_points(&to_cloud(&p), 32).unwrap();
            let b = hull_of_points(&to_cloud(&q), 32).unwrap();
            let s = minkowski_sum(&a, &b).unwrap();
            for j in 0..32 {
                prop_assert_eq!(s.support()[j], a.support()[j] + b.support()[j]);
            }
        }

        #[test]
        fn adding_disks_never_grows(centers in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..6)) {
            let disks: Vec<DiskSpec> = centers.iter().map(|&(x, y)| DiskSpec::new(c(x, y), 3.0).unwrap()).collect();
            let mut prev = intersect_disks(&disks[..1], 32).unwrap();
            for k in 2..=disks.len() {
                let next = intersect_disks(&disks[..k], 32).unwrap();
                for (a, b) in next.support().iter().zip(prev.support()) {
                    prop_assert!(*a <= b + 1e-12);
                }
                prev = next;
            }
        }

        #[test]
        fn hull_supports_are_exact_maxima(p in cloud_strategy()) {
            let cloud = to_cloud(&p);
            let r = hull_of_points(&cloud, 40).unwrap();
            for (j, h) in r.support().iter().enumerate() {
                let theta = direction(40, j);
                let direct = p.iter().map(|&(x, y)| project(c(x, y), theta)).fold(f64::NEG_INFINITY, f64::max);
                prop_assert_eq!(*h, direct);
            }
        }

        #[test]
        fn hausdorff_is_a_metric(p in cloud_strategy(), q in cloud_strategy(), r in cloud_strategy()) {
            let a = hull_of_points(&to_cloud(&p), 24).unwrap();
            let b = hull_of_points(&to_cloud(&q), 24).unwrap();
            let c3 = hull_of_points(&to_cloud(&r), 24).unwrap();
            let ab = hausdorff(&a, &b).unwrap();
            prop_assert_eq!(ab, hausdorff(&b, &a).unwrap());
            prop_assert!(ab <= hausdorff(&a, &c3).unwrap() + hausdorff(&c3, &b).unwrap() + 1e-12);
            prop_assert!(hausdorff(&a, &a).unwrap() <= 1e-12);
            if ab <= 1e-12 {
                prop_assert!(a.support().iter().zip(b.support()).all(|(x, y)| (x - y).abs() <= 1e-12));
            }
        }
    }
}
