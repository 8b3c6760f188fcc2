//! Field of values `W(c) = {v^* c v : |v| = 1}` of a single matrix.
//!
//! For `M_n(C)` with the operator norm, the algebra numerical range `V(c)`
//! coincides with the closed convex set `W(c)`, so this is the reference
//! computation for single elements. The support in direction `theta` is the
//! top eigenvalue of `Re(e^{-i theta} c)`; the top eigenvector gives a boundary
//! witness.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::linalg::{hermitian_part, top_eigenpair, ComplexMatrix};
use crate::region::{direction, region_from_supports, SupportRegion};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FovBoundarySample {
    pub theta: f64,
    pub support: f64,
    /// `v^* c v` for the top eigenvector `v`; lies in `W(c)`.
    pub witness: Complex64,
}

pub fn fov_support(c: &ComplexMatrix, theta: f64) -> Result<FovBoundarySample> {
    let pair = top_eigenpair(&hermitian_part(c, theta))?;
    Ok(FovBoundarySample { theta, support: pair.value, witness: c.quadratic_form(&pair.vector) })
}

/// `W(c)` sampled on `m` directions.
pub fn field_of_values(c: &ComplexMatrix, m: usize) -> Result<SupportRegion> {
    let support = (0..m)
        .into_par_iter()
        .map(|j| fov_support(c, direction(m, j)).map(|s| s.support))
        .collect::<Result<Vec<f64>>>()?;
    region_from_supports(support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cis, haar_unitary, spectral_norm, ComplexMatrix};
    use crate::region::{hausdorff, hull_of_points, point_region, project, PointCloud};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, |_, _| c(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)))
    }

    /// Brute-force oracle: max of Re(e^{-i theta} v^* c v) over sampled unit vectors of C^2.
    fn sampled_support_2x2(m: &ComplexMatrix, theta: f64) -> f64 {
        let mut best = f64::NEG_INFINITY;
        let steps = 400;
        for a in 0..=steps {
            let t = 0.5 * PI * a as f64 / steps as f64;
            for b in 0..steps {
                let phi = 2.0 * PI * b as f64 / steps as f64;
                let v = [c(t.cos(), 0.0), cis(phi) * t.sin()];
                best = best.max(project(m.quadratic_form(&v), theta));
            }
        }
        best
    }

    #[test]
    fn fov_support_examples() {
        let d = ComplexMatrix::diag_real(&[0.0, 1.0]);
        let s = fov_support(&d, 0.0).unwrap();
        assert!((s.support - 1.0).abs() < 1e-15 && (s.witness - c(1.0, 0.0)).norm() < 1e-15);

        for theta in [0.0, 0.7, 2.0, 4.5] {
            let s = fov_support(&ComplexMatrix::identity(2), theta).unwrap();
            assert!((s.support - theta.cos()).abs() < 1e-15);
            assert!((s.witness - c(1.0, 0.0)).norm() < 1e-15);
        }

        let jordan = ComplexMatrix::unit(2, 0, 1);
        for theta in [0.0, 1.0, 2.5, 5.0] {
            let oracle = sampled_support_2x2(&jordan, theta);
            assert!((oracle - 0.5).abs() < 1e-4, "oracle {oracle}");
            let s = fov_support(&jordan, theta).unwrap();
            assert!((s.support - 0.5).abs() < 1e-12);
            assert!(s.support >= oracle - 1e-12);
        }
    }

    #[test]
    fn fov_region_examples() {
        let m = 64;
        let seg = field_of_values(&ComplexMatrix::diag_real(&[0.0, 1.0]), m).unwrap();
        let want = hull_of_points(&PointCloud::new(vec![c(0., 0.), c(1., 0.)]).unwrap(), m).unwrap();
        assert!(hausdorff(&seg, &want).unwrap() < 1e-14);

        let disk = field_of_values(&ComplexMatrix::unit(2, 0, 1), m).unwrap();
        for (j, h) in disk.support().iter().enumerate() {
            let oracle = sampled_support_2x2(&ComplexMatrix::unit(2, 0, 1), direction(m, j));
            assert!((h - 0.5).abs() < 1e-12 && (h - oracle).abs() < 1e-4);
        }

        let pt = field_of_values(&ComplexMatrix::identity(2), m).unwrap();
        assert!(hausdorff(&pt, &point_region(c(1., 0.), m).unwrap()).unwrap() < 1e-14);
    }

    #[test]
    fn random_supports_match_sampling_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..3 {
            let a = random_matrix(2, &mut rng);
            for theta in [0.3, 2.0, 4.0] {
                let s = fov_support(&a, theta).unwrap();
                let oracle = sampled_support_2x2(&a, theta);
                assert!(s.support >= oracle - 1e-12);
                assert!(s.support - oracle < 1e-3 * spectral_norm(&a));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn unitary_invariance(seed in any::<u64>(), n in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(n, &mut rng);
            let u = haar_unitary(n, &mut rng);
            let conj = &(&u.as_matrix().adjoint() * &a) * u.as_matrix();
            let d = hausdorff(&field_of_values(&a, 64).unwrap(), &field_of_values(&conj, 64).unwrap()).unwrap();
            prop_assert!(d <= 1e-8 * spectral_norm(&a));
        }

        #[test]
        fn affine_equivariance(seed in any::<u64>(), n in 1usize..5, alpha in 0.0f64..3.0, br in -2.0f64..2.0, bi in -2.0f64..2.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(n, &mut rng);
            let beta = c(br, bi);
            let lhs = field_of_values(&a.scale_real(alpha).shift(beta), 64).unwrap();
            let rhs = field_of_values(&a, 64).unwrap().dilate(alpha).translate(beta);
            let scale = alpha * spectral_norm(&a) + beta.norm() + 1.0;
            prop_assert!(hausdorff(&lhs, &rhs).unwrap() <= 1e-8 * scale);
        }

        #[test]
        fn eigenvalues_witnesses_and_norm(seed in any::<u64>(), n in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(n, &mut rng);
            let norm = spectral_norm(&a);
            let m = 64;
            let w = field_of_values(&a, m).unwrap();
            prop_assert!(w.support().iter().all(|h| *h <= norm * (1.0 + 1e-12)));
            // eigenvalues of a 1x1 or 2x2 from the characteristic polynomial
            if n <= 2 {
                let eig: Vec<Complex64> = if n == 1 {
                    vec![a[(0, 0)]]
                } else {
                    let tr = a.trace();
                    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
                    let disc = (tr * tr - det * 4.0).sqrt();
                    vec![(tr + disc) * 0.5, (tr - disc) * 0.5]
                };
                for e in eig {
                    prop_assert!(w.slack(e) <= 1e-8 * norm);
                }
            }
            for j in 0..m {
                let s = fov_support(&a, direction(m, j)).unwrap();
                prop_assert!(w.slack(s.witness) <= 1e-8 * norm.max(1.0));
                prop_assert!((project(s.witness, s.theta) - s.support).abs() <= 1e-9 * norm.max(1.0));
            }
        }
    }
}
