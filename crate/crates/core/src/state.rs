//! Validated quantum states.
//!
//! Subsystems are ordered as Kronecker factors: for dims `[m, n]` the basis
//! index of `|i>|j>` is `i * n + j`, so the first subsystem is the slowest
//! index. The state file format uses the same convention.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, HermitianEigen};
use crate::tolerance::Tolerances;

/// Hermitian, positive semidefinite, unit-trace matrix with subsystem dims.
///
/// The spectrum is computed once at construction and cached; the square root
/// and every spectral quantity derive from it.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMatrix,
    dims: Vec<usize>,
    eigen: HermitianEigen,
}

impl DensityMatrix {
    /// Validates `matrix` with the default tolerances.
    pub fn new(matrix: CMatrix, dims: &[usize]) -> Result<Self> {
        Self::with_tolerances(matrix, dims, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(matrix: CMatrix, dims: &[usize], tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        check_dims(dims, matrix.nrows())?;
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse("matrix contains non-finite entries".into()));
        }
        let deviation = linalg::hermitian_deviation(&matrix);
        if deviation > tol.hermitian {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::TraceNotOne { trace });
        }
        let mut matrix = if deviation > 0.0 {
            linalg::hermitize(&matrix)
        } else {
            matrix
        };
        let mut eigen = HermitianEigen::new(&matrix);
        let min = eigen.min();
        if min < -tol.psd_floor {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        let mut rebuild = min < -tol.psd_rebuild;
        eigen
            .values
            .iter_mut()
            .for_each(|x| *x = if *x <= tol.spectral_floor { 0.0 } else { *x });
        let spectral_trace: f64 = eigen.values.sum();
        if (trace - 1.0).abs() > 4.0 * f64::EPSILON * matrix.nrows() as f64 {
            rebuild = true;
        }
        if rebuild {
            eigen.values.unscale_mut(spectral_trace);
            matrix = eigen.map(|x| x);
        }
        Ok(Self {
            matrix,
            dims: dims.to_vec(),
            eigen,
        })
    }

    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        let d: usize = dims.iter().product();
        Self::new(linalg::identity(d).unscale(d as f64), dims)
    }

    /// Computational basis state `|index><index|`.
    pub fn basis(dims: &[usize], index: usize) -> Result<Self> {
        let d: usize = dims.iter().product();
        if index >= d {
            return Err(Error::DimensionMismatch(format!(
                "basis index {index} out of range for dimension {d}"
            )));
        }
        let mut m = CMatrix::zeros(d, d);
        m[(index, index)] = linalg::ONE;
        Self::new(m, dims)
    }

    /// Incoherent state with the given diagonal.
    pub fn diagonal(probabilities: &[f64], dims: &[usize]) -> Result<Self> {
        Self::new(linalg::diag(probabilities), dims)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Eigenvalues ascending, clipped at zero.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigen.values
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eigen
    }

    /// Principal square root via the cached eigendecomposition.
    pub fn sqrt(&self) -> CMatrix {
        self.eigen.map(f64::sqrt)
    }

    /// Bipartite split `(m, n)`.
    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims.as_slice() {
            [m, n] => Ok((*m, *n)),
            other => Err(Error::NotBipartite(other.len())),
        }
    }

    pub fn purity(&self) -> f64 {
        self.eigen.values.iter().map(|x| x * x).sum()
    }

    /// `U rho U^H`, keeping dims.
    pub fn conjugate(&self, unitary: &CMatrix) -> Result<Self> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, state dimension {}",
                unitary.nrows(),
                unitary.ncols(),
                self.dim()
            )));
        }
        let m = unitary * &self.matrix * unitary.adjoint();
        Self::new(linalg::hermitize(&m), &self.dims)
    }

    /// Convex combination `sum p_i rho_i`; weights must sum to one.
    pub fn mixture(weights: &[f64], states: &[DensityMatrix]) -> Result<Self> {
        let first = states
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty mixture".into()))?;
        if weights.len() != states.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} states",
                weights.len(),
                states.len()
            )));
        }
        let mut acc = CMatrix::zeros(first.dim(), first.dim());
        for (w, s) in weights.iter().zip(states) {
            if s.dims != first.dims {
                return Err(Error::DimensionMismatch("mixture of unequal dims".into()));
            }
            acc += s.matrix.scale(*w);
        }
        Self::new(acc, &first.dims)
    }
}

impl PartialEq for DensityMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.matrix == other.matrix
    }
}

fn check_dims(dims: &[usize], order: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!("invalid dims {dims:?}")));
    }
    let product: usize = dims.iter().product();
    if product != order {
        return Err(Error::DimensionMismatch(format!(
            "dims {dims:?} have product {product}, matrix order is {order}"
        )));
    }
    Ok(())
}

/// Normalized state vector with subsystem dims.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: CVector,
    dims: Vec<usize>,
}

impl PureState {
    pub fn new(amplitudes: CVector, dims: &[usize]) -> Result<Self> {
        Self::with_tolerances(amplitudes, dims, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(amplitudes: CVector, dims: &[usize], tol: &Tolerances) -> Result<Self> {
        check_dims(dims, amplitudes.len())?;
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - 1.0).abs() > tol.norm {
            return Err(Error::NotNormalized {
                norm: norm_sq.sqrt(),
            });
        }
        Ok(Self {
            amplitudes,
            dims: dims.to_vec(),
        })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(amplitudes: CVector, dims: &[usize]) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Self::new(amplitudes.unscale(norm), dims)
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn to_density(&self) -> DensityMatrix {
        let m = linalg::outer(&self.amplitudes, &self.amplitudes);
        DensityMatrix::new(m, &self.dims).expect("outer product of a unit vector is a state")
    }
}

/// Reduced state on subsystem `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: usize) -> Result<DensityMatrix> {
    let dims = rho.dims();
    if dims.len() < 2 {
        return Err(Error::NotBipartite(dims.len()));
    }
    if keep >= dims.len() {
        return Err(Error::BadSubsystemIndex {
            index: keep,
            count: dims.len(),
        });
    }
    let before: usize = dims[..keep].iter().product();
    let kept = dims[keep];
    let after: usize = dims[keep + 1..].iter().product();
    let m = rho.matrix();
    let mut out = CMatrix::zeros(kept, kept);
    for i in 0..kept {
        for j in 0..kept {
            let mut acc = linalg::ZERO;
            for p in 0..before {
                for q in 0..after {
                    let row = (p * kept + i) * after + q;
                    let col = (p * kept + j) * after + q;
                    acc += m[(row, col)];
                }
            }
            out[(i, j)] = acc;
        }
    }
    DensityMatrix::new(linalg::hermitize(&out), &[kept])
}

/// Kronecker product with concatenated dims.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    let dims: Vec<usize> = a.dims().iter().chain(b.dims()).copied().collect();
    DensityMatrix::new(linalg::kron(a.matrix(), b.matrix()), &dims)
        .expect("tensor product of states is a state")
}

/// Squared singular values of the `m x n` amplitude matrix, descending,
/// with coefficients at or below the Schmidt cutoff dropped.
pub fn schmidt_coefficients(psi: &PureState) -> Result<Vec<f64>> {
    let (m, n) = match psi.dims() {
        [m, n] => (*m, *n),
        other => return Err(Error::NotBipartite(other.len())),
    };
    let amp = psi.amplitudes();
    let matrix = CMatrix::from_fn(m, n, |i, j| amp[i * n + j]);
    let svd = matrix.svd(false, false);
    let mut coefficients: Vec<f64> = svd
        .singular_values
        .iter()
        .map(|s| s * s)
        .filter(|&s| s > Tolerances::DEFAULT.schmidt_cutoff)
        .collect();
    coefficients.sort_by(|a, b| b.total_cmp(a));
    Ok(coefficients)
}

/// Principal square root of a density matrix.
pub fn matrix_sqrt(rho: &DensityMatrix) -> CMatrix {
    rho.sqrt()
}
