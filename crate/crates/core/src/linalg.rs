//! Dense complex matrix primitives.
//!
//! Everything here works on small square matrices (desk scale, `n <= 8` or so),
//! stored row-major in a flat `Vec<Complex64>`. The Hermitian eigensolver is a
//! cyclic complex Jacobi sweep with a closed-form fast path for `n = 2`, which
//! is the hot loop of every optimization in the crate.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Unitarity tolerance for `UnitaryMatrix`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Relative symmetry tolerance for `HermitianMatrix`.
pub const HERMITIAN_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `e^{i theta}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn scalar(n: usize, z: Complex64) -> Self {
        Self::identity(n).scale(z)
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = *v;
        }
        m
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let v: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diag(&v)
    }

    /// Matrix unit `e_{ij}` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.data[i * n + j] = ONE;
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from rows; rejects ragged, non-square, empty or non-finite input.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("matrix has no rows".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {n} (matrix must be square)",
                    row.len()
                )));
            }
            data.extend(row);
        }
        let m = Self { n, data };
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    /// Builds an `n x n` matrix from row-major data.
    pub fn from_row_major(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != n * n || n == 0 {
            return Err(Error::Shape(format!("{} entries do not form a {n}x{n} matrix", data.len())));
        }
        Ok(Self { n, data })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| self.data[j * n + i].conj())
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| self.data[j * n + i])
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * z).collect() }
    }

    pub fn scale_real(&self, r: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * r).collect() }
    }

    /// `self + z * I`.
    pub fn shift(&self, z: Complex64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.data[i * self.n + i] += z;
        }
        m
    }

    /// `self += z * other`.
    pub fn axpy(&mut self, z: Complex64, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += z * b;
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `(self - self^*) / 2`.
    pub fn skew_part(&self) -> Self {
        let n = self.n;
        Self::from_fn(n, |i, j| (self.data[i * n + j] - self.data[j * n + i].conj()) * 0.5)
    }

    /// `self * v`.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `v^* self v`.
    pub fn quadratic_form(&self, v: &[Complex64]) -> Complex64 {
        let cv = self.mul_vec(v);
        v.iter().zip(&cv).map(|(a, b)| a.conj() * b).sum()
    }

    /// Column-stacking vectorization `vec(self)`.
    pub fn vec_columns(&self) -> Vec<Complex64> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                out.push(self.data[i * n + j]);
            }
        }
        out
    }

    /// Inverse of [`Self::vec_columns`].
    pub fn from_vec_columns(n: usize, v: &[Complex64]) -> Self {
        Self::from_fn(n, |i, j| v[j * n + i])
    }

    /// `x y^*`.
    pub fn outer(x: &[Complex64], y: &[Complex64]) -> Self {
        let n = x.len();
        Self::from_fn(n, |i, j| x[i] * y[j].conj())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = (self.n, other.n);
        Self::from_fn(p * q, |r, c| {
            self.data[(r / q) * p + c / q] * other.data[(r % q) * q + c % q]
        })
    }

    fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let orow = &mut out[i * n..(i + 1) * n];
            for (k, a) in row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Self { n, data: out }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix sum");
        ComplexMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix difference");
        ComplexMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

/// A Hermitian matrix. Construction through [`hermitian_part`] is exactly
/// symmetric; [`HermitianMatrix::try_new`] checks the structural tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    pub fn try_new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let resid = (&m - &m.adjoint()).frobenius_norm();
        if resid > HERMITIAN_TOL * m.frobenius_norm().max(1.0) {
            return Err(Error::NotHermitian(resid));
        }
        Ok(Self(m))
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}

/// An element of `U(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(ComplexMatrix);

impl UnitaryMatrix {
    pub fn try_new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let dev = unitarity_defect(&m);
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self(m))
    }

    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        debug_assert!(unitarity_defect(&m) <= 1e-8, "unitarity lost: {}", unitarity_defect(&m));
        Self(m)
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    /// The anti-diagonal permutation reversing the standard basis.
    pub fn flip(n: usize) -> Self {
        Self(ComplexMatrix::from_fn(n, |i, j| if i + j + 1 == n { ONE } else { ZERO }))
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n
    }
}

/// `max(||u^*u - I||, ||uu^* - I||)` in Frobenius norm.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    let id = ComplexMatrix::identity(u.n());
    let a = (&(&u.adjoint() * u) - &id).frobenius_norm();
    let b = (&(u * &u.adjoint()) - &id).frobenius_norm();
    a.max(b)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<Complex64>,
}

/// `Re(e^{-i theta} c) = (e^{-i theta} c + e^{i theta} c^*) / 2`.
pub fn hermitian_part(c: &ComplexMatrix, theta: f64) -> HermitianMatrix {
    let n = c.n();
    let w = cis(-theta);
    let mut h = ComplexMatrix::zeros(n);
    for i in 0..n {
        h[(i, i)] = Complex64::new((w * c[(i, i)]).re, 0.0);
        for j in (i + 1)..n {
            let v = (w * c[(i, j)] + (w * c[(j, i)]).conj()) * 0.5;
            h[(i, j)] = v;
            h[(j, i)] = v.conj();
        }
    }
    HermitianMatrix(h)
}

/// Full eigendecomposition of a Hermitian matrix: eigenvalues in descending
/// order, eigenvectors as the columns of the returned unitary.
pub fn hermitian_eigen(h: &HermitianMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let a = h.as_matrix();
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    if a.n() == 2 {
        let (vals, v1) = eigen_2x2(a);
        let v2 = [-v1[1].conj(), v1[0].conj()];
        let v = ComplexMatrix::from_fn(2, |i, j| if j == 0 { v1[i] } else { v2[i] });
        return Ok((vals.to_vec(), v));
    }
    jacobi_eigen(a)
}

/// Largest eigenvalue with a unit eigenvector.
///
/// When the top eigenvalue is repeated, any vector of the top eigenspace may
/// come back; callers only depend on the value or on set-wise quantities.
pub fn top_eigenpair(h: &HermitianMatrix) -> Result<EigenPair> {
    let a = h.as_matrix();
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    if a.n() == 1 {
        return Ok(EigenPair { value: a[(0, 0)].re, vector: vec![ONE] });
    }
    if a.n() == 2 {
        let (vals, v) = eigen_2x2(a);
        return Ok(EigenPair { value: vals[0], vector: v.to_vec() });
    }
    let (vals, vecs) = jacobi_eigen(a)?;
    let n = a.n();
    Ok(EigenPair { value: vals[0], vector: (0..n).map(|i| vecs[(i, 0)]).collect() })
}

/// Closed form for 2x2 Hermitian `[[a, b], [conj b, d]]`: eigenvalues
/// (descending) and the unit eigenvector of the larger one.
fn eigen_2x2(m: &ComplexMatrix) -> ([f64; 2], [Complex64; 2]) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let rad = half.hypot(b.norm());
    let hi = mean + rad;
    let lo = mean - rad;
    // (A - hi) v = 0; pick the better-conditioned of the two candidate vectors.
    let v = if rad == 0.0 {
        [ONE, ZERO]
    } else if half >= 0.0 {
        // hi - d = rad + half >= rad
        let v0 = Complex64::new(rad + half, 0.0);
        let v1 = b.conj();
        let s = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
        [v0 / s, v1 / s]
    } else {
        let v0 = b;
        let v1 = Complex64::new(rad - half, 0.0);
        let s = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
        [v0 / s, v1 / s]
    };
    ([hi, lo], v)
}

/// Cyclic complex Jacobi.
fn jacobi_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.n();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-16 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G acts on columns p, q: [[c, s], [-s conj(phase), c conj(phase)]]
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g_pp + akq * g_qp;
                    a[(k, q)] = akp * g_pq + akq * g_qq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g_pp + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * g_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}

/// Largest singular value together with unit left/right singular vectors
/// `(sigma, x, y)` such that `c y = sigma x`.
pub fn top_singular_triplet(c: &ComplexMatrix) -> (f64, Vec<Complex64>, Vec<Complex64>) {
    let gram = HermitianMatrix(exact_gram(c));
    let pair = top_eigenpair(&gram).expect("finite input");
    let y = pair.vector;
    let cy = c.mul_vec(&y);
    let sigma = cy.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let x = if sigma > 0.0 {
        cy.iter().map(|z| z / sigma).collect()
    } else {
        let mut e = vec![ZERO; c.n()];
        e[0] = ONE;
        e
    };
    (sigma, x, y)
}

/// `c^* c` with its lower triangle mirrored so that it is exactly Hermitian.
fn exact_gram(c: &ComplexMatrix) -> ComplexMatrix {
    let n = c.n();
    let mut g = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let s: Complex64 = (0..n).map(|k| c[(k, i)].conj() * c[(k, j)]).sum();
            if i == j {
                g[(i, i)] = Complex64::new(s.re, 0.0);
            } else {
                g[(i, j)] = s;
                g[(j, i)] = s.conj();
            }
        }
    }
    g
}

/// Operator (spectral) norm: the largest singular value.
pub fn spectral_norm(c: &ComplexMatrix) -> f64 {
    top_singular_triplet(c).0
}

/// Haar-distributed unitary: Gram–Schmidt on a complex Gaussian matrix.
///
/// Gram–Schmidt produces the QR factor whose triangular part has a positive
/// real diagonal, which is exactly the phase-normalized factorization.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnitaryMatrix {
    assert!(n >= 1, "dimension must be positive");
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re * s, im * s)
                })
                .collect()
        })
        .collect();
    for j in 0..n {
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let qi = &done[i];
                let r: Complex64 = qi.iter().zip(rest[0].iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, q) in rest[0].iter_mut().zip(qi) {
                    *x -= r * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    UnitaryMatrix::new_unchecked(ComplexMatrix::from_fn(n, |i, j| cols[j][i]))
}

pub fn is_skew_hermitian(k: &ComplexMatrix, tol: f64) -> bool {
    (k + &k.adjoint()).frobenius_norm() <= tol
}

/// `exp(k)` for skew-Hermitian `k`, via the eigendecomposition of `i k`.
pub fn expm_skew(k: &ComplexMatrix) -> ComplexMatrix {
    let n = k.n();
    // i k is Hermitian; mirror to make it exactly so
    let mut h = ComplexMatrix::zeros(n);
    let i_unit = Complex64::new(0.0, 1.0);
    for r in 0..n {
        h[(r, r)] = Complex64::new((i_unit * k[(r, r)]).re, 0.0);
        for c in (r + 1)..n {
            let v = i_unit * (k[(r, c)] - k[(c, r)].conj()) * 0.5;
            h[(r, c)] = v;
            h[(c, r)] = v.conj();
        }
    }
    let (vals, v) = hermitian_eigen(&HermitianMatrix(h)).expect("finite skew matrix");
    // exp(k) = exp(-i h) = V diag(e^{-i lambda}) V^*
    let mut out = ComplexMatrix::zeros(n);
    for (col, lam) in vals.iter().enumerate() {
        let e = cis(-lam);
        for r in 0..n {
            let vr = v[(r, col)] * e;
            for c in 0..n {
                out[(r, c)] += vr * v[(c, col)].conj();
            }
        }
    }
    out
}

/// `u exp(step k)` for skew-Hermitian `k`.
pub fn retract(u: &UnitaryMatrix, k: &ComplexMatrix, step: f64) -> Result<UnitaryMatrix> {
    if k.n() != u.n() {
        return Err(Error::DimensionMismatch { expected: u.n(), found: k.n() });
    }
    let defect = (k + &k.adjoint()).frobenius_norm();
    if defect > UNITARY_TOL * k.frobenius_norm().max(1.0) {
        return Err(Error::NotSkewHermitian(defect));
    }
    Ok(retract_unchecked(u.as_matrix(), k, step))
}

pub(crate) fn retract_unchecked(u: &ComplexMatrix, k: &ComplexMatrix, step: f64) -> UnitaryMatrix {
    if step == 0.0 {
        return UnitaryMatrix(u.clone());
    }
    UnitaryMatrix(u * &expm_skew(&k.scale_real(step)))
}
