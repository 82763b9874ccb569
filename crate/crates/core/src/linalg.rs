//! Dense complex linear algebra used throughout the crate.
//!
//! Everything is built on one primitive, the Hermitian eigendecomposition;
//! matrix square roots, trace norms and the Fisher information all go through
//! [`HermitianEigen`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn dagger(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

/// Kronecker product with `a` as the slow (row-major outer) index.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.trace()
}

/// Tr(a b) without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    assert_eq!(a.ncols(), b.nrows());
    assert_eq!(a.nrows(), b.ncols());
    let mut acc = ZERO;
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// (a + a^H) / 2.
pub fn hermitize(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).unscale(2.0)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn unitary_deviation(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

pub fn check_unitary(u: &CMatrix, tol: f64) -> Result<()> {
    let deviation = unitary_deviation(u);
    if deviation > tol {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: DVector<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// Decomposes the Hermitian part of `a`.
    pub fn new(a: &CMatrix) -> Self {
        let eig = SymmetricEigen::new(hermitize(a));
        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
        let mut vectors = CMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        Self { values, vectors }
    }

    /// V f(Λ) V^H.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let s = f(self.values[j]);
            scaled.column_mut(j).scale_mut(s);
        }
        scaled * self.vectors.adjoint()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Square root of a PSD matrix, negative eigenvalues clipped to zero.
pub fn psd_sqrt(a: &CMatrix) -> CMatrix {
    HermitianEigen::new(a).map(|x| x.max(0.0).sqrt())
}

/// Eigenvalues of a Hermitian matrix, unsorted, without eigenvectors.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    a.clone().symmetric_eigenvalues().iter().copied().collect()
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm_hermitian(a: &CMatrix) -> f64 {
    hermitian_eigenvalues(a).iter().map(|x| x.abs()).sum()
}

/// Hilbert-Schmidt norm squared, Tr(a a^H).
pub fn frobenius_sq(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// Outer product |u><v|.
pub fn outer(u: &CVector, v: &CVector) -> CMatrix {
    u * v.adjoint()
}

/// Diagonal matrix from real entries.
pub fn diag(values: &[f64]) -> CMatrix {
    let n = values.len();
    let mut m = CMatrix::zeros(n, n);
    for (i, &v) in values.iter().enumerate() {
        m[(i, i)] = real(v);
    }
    m
}

pub fn from_real_rows(rows: &[&[f64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| real(rows[i][j]))
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

/// Orthonormal Hermitian operator basis of a d-dimensional space.
///
/// Ordering: `I/sqrt(d)` first, then for each pair j < k (row-major) the
/// symmetric `(E_jk + E_kj)/sqrt 2` followed by the antisymmetric
/// `-i(E_jk - E_kj)/sqrt 2`, then the diagonal generators
/// `(sum_{k<l} E_kk - l E_ll)/sqrt(l(l+1))` for l = 1..d-1.
#[derive(Debug, Clone)]
pub struct HermitianBasis {
    operators: Vec<CMatrix>,
}

impl HermitianBasis {
    pub fn gell_mann(d: usize) -> Self {
        let mut operators = Vec::with_capacity(d * d);
        operators.push(identity(d).unscale((d as f64).sqrt()));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for j in 0..d {
            for k in (j + 1)..d {
                let mut sym = CMatrix::zeros(d, d);
                sym[(j, k)] = real(h);
                sym[(k, j)] = real(h);
                operators.push(sym);
                let mut anti = CMatrix::zeros(d, d);
                anti[(j, k)] = c(0.0, -h);
                anti[(k, j)] = c(0.0, h);
                operators.push(anti);
            }
        }
        for l in 1..d {
            let norm = ((l * (l + 1)) as f64).sqrt();
            let mut m = CMatrix::zeros(d, d);
            for k in 0..l {
                m[(k, k)] = real(1.0 / norm);
            }
            m[(l, l)] = real(-(l as f64) / norm);
            operators.push(m);
        }
        Self { operators }
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.operators.first().map_or(0, |m| m.nrows())
    }

    /// Largest deviation of Tr(X_k X_l) from the Kronecker delta.
    pub fn orthonormality_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, a) in self.operators.iter().enumerate() {
            for (l, b) in self.operators.iter().enumerate() {
                let target = if k == l { 1.0 } else { 0.0 };
                worst = worst.max((trace_product(a, b) - real(target)).norm());
            }
        }
        worst
    }
}
