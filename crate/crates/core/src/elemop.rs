//! Elementary operators `R_{a,b}(x) = sum_i a_i x b_i` on `M_n(C)`.
//!
//! The operator norm of `R` on `(M_n, ||.||_op)` is a supremum over the unit
//! ball; by the Russo–Dye theorem the unit ball is the closed convex hull of
//! the unitaries, and `x -> ||(R - z)(x)||` is convex, so the supremum may be
//! taken over `U(n)` alone. That reduction is what [`russo_dye_norm`] and
//! [`shifted_norm`] optimize.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, top_singular_triplet, ComplexMatrix, UnitaryMatrix};
use crate::optim::{derive_seed, maximize, standard_starts, UnitaryObjective};

pub use crate::optim::{OptConfig, OptReport};

const NORM_STREAM: u64 = 0x6e6f726d;

/// The pair of k-tuples `(a, b)` defining `R_{a,b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct KTupleOperator {
    n: usize,
    a: Vec<ComplexMatrix>,
    b: Vec<ComplexMatrix>,
}

impl KTupleOperator {
    pub fn new(a: Vec<ComplexMatrix>, b: Vec<ComplexMatrix>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::TupleMismatch { a: a.len(), b: b.len() });
        }
        let Some(first) = a.first() else {
            return Err(Error::EmptyTuple);
        };
        let n = first.n();
        for m in a.iter().chain(&b) {
            if m.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.n() });
            }
            if !m.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { n, a, b })
    }

    /// The identity map `x -> x`.
    pub fn identity(n: usize) -> Self {
        Self::multiplication(ComplexMatrix::identity(n), ComplexMatrix::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        Self::multiplication(ComplexMatrix::zeros(n), ComplexMatrix::zeros(n))
    }

    /// `x -> alpha x`.
    pub fn scalar(n: usize, alpha: Complex64) -> Self {
        Self::multiplication(ComplexMatrix::scalar(n, alpha), ComplexMatrix::identity(n))
    }

    /// Multiplication operator `M_{a,b}(x) = a x b`.
    pub fn multiplication(a: ComplexMatrix, b: ComplexMatrix) -> Self {
        assert_eq!(a.n(), b.n(), "factors must have the same dimension");
        Self { n: a.n(), a: vec![a], b: vec![b] }
    }

    /// Generalized derivation `delta_{A,B}(x) = A x - x B`, encoded as
    /// `a = (A, I)`, `b = (I, -B)`.
    pub fn derivation(a: ComplexMatrix, b: ComplexMatrix) -> Self {
        assert_eq!(a.n(), b.n(), "factors must have the same dimension");
        let n = a.n();
        let id = ComplexMatrix::identity(n);
        Self { n, a: vec![a, id.clone()], b: vec![id, b.scale_real(-1.0)] }
    }

    /// Tuple entries i.i.d. standard complex Gaussian (`E|z|^2 = 1`).
    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut draw = || {
            ComplexMatrix::from_fn(n, |_, _| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re * s, im * s)
            })
        };
        let a = (0..k).map(|_| draw()).collect();
        let b = (0..k).map(|_| draw()).collect();
        Self { n, a, b }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn left(&self) -> &[ComplexMatrix] {
        &self.a
    }

    pub fn right(&self) -> &[ComplexMatrix] {
        &self.b
    }

    /// `R + z Id`, appending `a_{k+1} = z I`, `b_{k+1} = I`.
    pub fn shifted(&self, z: Complex64) -> Self {
        let mut out = self.clone();
        out.a.push(ComplexMatrix::scalar(self.n, z));
        out.b.push(ComplexMatrix::identity(self.n));
        out
    }

    /// Replaces every `a_i, b_i` by `w^* a_i w, w^* b_i w`.
    pub fn conjugated(&self, w: &UnitaryMatrix) -> Self {
        let wm = w.as_matrix();
        let wa = wm.adjoint();
        let conj = |m: &ComplexMatrix| &(&wa * m) * wm;
        Self { n: self.n, a: self.a.iter().map(conj).collect(), b: self.b.iter().map(conj).collect() }
    }

    /// `sum_i ||a_i|| ||b_i||`, an upper bound for `||R||`.
    pub fn norm_bound(&self) -> f64 {
        self.a.iter().zip(&self.b).map(|(a, b)| spectral_norm(a) * spectral_norm(b)).sum()
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.n() });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.n);
        for (a, b) in self.a.iter().zip(&self.b) {
            out.axpy(Complex64::new(1.0, 0.0), &(&(a * x) * b));
        }
        out
    }

    /// `sum_i u^* a_i u b_i = u^* R(u)`, the matrix whose field of values the
    /// orbit side collects.
    pub fn orbit_element(&self, u: &UnitaryMatrix) -> ComplexMatrix {
        &u.as_matrix().adjoint() * &self.apply_unchecked(u.as_matrix())
    }

    /// `n^2 x n^2` matrix of `R` acting on column-stacked `vec(x)`:
    /// `sum_i b_i^T ⊗ a_i`.
    pub fn matricize(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.n * self.n);
        for (a, b) in self.a.iter().zip(&self.b) {
            out.axpy(Complex64::new(1.0, 0.0), &b.transpose().kron(a));
        }
        out
    }
}

/// `u -> ||R(u) - z u|| + offset` over `U(n)`.
pub struct ShiftedNormObjective<'a> {
    op: &'a KTupleOperator,
    z: Complex64,
    offset: f64,
    scale: f64,
}

impl<'a> ShiftedNormObjective<'a> {
    pub fn new(op: &'a KTupleOperator, z: Complex64) -> Self {
        Self { op, z, offset: 0.0, scale: op.norm_bound() + 1.0 }
    }

    /// The ray objective `||R(u) + s e^{i theta} u|| - s`.
    pub fn ray(op: &'a KTupleOperator, theta: f64, s: f64) -> Self {
        Self { op, z: -crate::linalg::cis(theta) * s, offset: -s, scale: op.norm_bound() + 1.0 }
    }

    fn shifted_image(&self, u: &ComplexMatrix) -> ComplexMatrix {
        let mut c = self.op.apply_unchecked(u);
        c.axpy(-self.z, u);
        c
    }
}

impl UnitaryObjective for ShiftedNormObjective<'_> {
    fn n(&self) -> usize {
        self.op.n()
    }

    fn value(&self, u: &ComplexMatrix) -> f64 {
        spectral_norm(&self.shifted_image(u)) + self.offset
    }

    fn value_and_gradient(&self, u: &ComplexMatrix) -> (f64, ComplexMatrix) {
        // sigma = Re x^* C y; dC = sum a_i dU b_i - z dU
        // Euclidean gradient G = sum a_i^* x y^* b_i^* - conj(z) x y^*
        let c = self.shifted_image(u);
        let (sigma, x, y) = top_singular_triplet(&c);
        let xy = ComplexMatrix::outer(&x, &y);
        let mut g = xy.scale(-self.z.conj());
        for (a, b) in self.op.a.iter().zip(&self.op.b) {
            g.axpy(Complex64::new(1.0, 0.0), &(&(&a.adjoint() * &xy) * &b.adjoint()));
        }
        let ug = &u.adjoint() * &g;
        (sigma + self.offset, ug.skew_part())
    }

    fn scale(&self) -> f64 {
        self.scale
    }
}

/// `||R - z Id||` via the maximum of `||R(u) - z u||` over unitaries.
///
/// The value is always a lower bound on the true norm; it equals it when the
/// multistart ascent reaches the global maximum.
pub fn shifted_norm(op: &KTupleOperator, z: Complex64, cfg: &OptConfig) -> OptReport {
    let obj = ShiftedNormObjective::new(op, z);
    let starts = standard_starts(op.n(), cfg.restarts, derive_seed(cfg.seed, &[NORM_STREAM]), &[]);
    maximize(&obj, starts, cfg)
}

/// `||R||` via the maximum of `||R(u)||` over unitaries.
pub fn russo_dye_norm(op: &KTupleOperator, cfg: &OptConfig) -> OptReport {
    shifted_norm(op, Complex64::new(0.0, 0.0), cfg)
}
