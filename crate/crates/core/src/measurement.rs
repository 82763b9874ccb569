//! Rank-one projective measurements and their unitary parameterization.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};
use crate::state::DensityMatrix;
use crate::tolerance::Tolerances;

/// Complete set of rank-one orthogonal projectors `|u_k><u_k|`, where the
/// `u_k` are the columns of a unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    basis: CMatrix,
    projectors: Vec<CMatrix>,
}

impl ProjectiveMeasurement {
    pub fn from_unitary(basis: CMatrix) -> Result<Self> {
        linalg::check_unitary(&basis, Tolerances::DEFAULT.operator)?;
        let projectors = (0..basis.ncols())
            .map(|k| {
                let col = basis.column(k);
                &col * col.adjoint()
            })
            .collect();
        Ok(Self { basis, projectors })
    }

    pub fn computational(d: usize) -> Self {
        Self::from_unitary(linalg::identity(d)).expect("identity is unitary")
    }

    /// Fourier basis `u_k = sum_j w^{jk} |j> / sqrt d`.
    pub fn fourier(d: usize) -> Self {
        let norm = (d as f64).sqrt();
        let u = CMatrix::from_fn(d, d, |j, k| {
            let angle = 2.0 * std::f64::consts::PI * (j * k) as f64 / d as f64;
            c(angle.cos(), angle.sin()).unscale(norm)
        });
        Self::from_unitary(u).expect("Fourier matrix is unitary")
    }

    /// Measurement in the eigenbasis of `rho`.
    pub fn eigenbasis(rho: &DensityMatrix) -> Self {
        Self::from_unitary(rho.eigen().vectors.clone()).expect("eigenvectors are orthonormal")
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Max deviation of `sum P_k = I` and `P_k P_l = delta_kl P_k`.
    pub fn completeness_deviation(&self) -> f64 {
        let d = self.dim();
        let mut sum = CMatrix::zeros(d, d);
        let mut worst: f64 = 0.0;
        for (k, p) in self.projectors.iter().enumerate() {
            sum += p;
            for (l, q) in self.projectors.iter().enumerate() {
                let target = if k == l { p.clone() } else { CMatrix::zeros(d, d) };
                worst = worst.max(linalg::max_abs_diff(&(p * q), &target));
            }
        }
        worst.max(linalg::max_abs_diff(&sum, &linalg::identity(d)))
    }

    /// Pinching `sum_k P_k sigma P_k` of a single-system matrix.
    pub fn pinch(&self, sigma: &CMatrix) -> CMatrix {
        let rotated = self.basis.adjoint() * sigma * &self.basis;
        let diag = CMatrix::from_fn(rotated.nrows(), rotated.ncols(), |i, j| {
            if i == j {
                rotated[(i, i)]
            } else {
                linalg::ZERO
            }
        });
        &self.basis * diag * self.basis.adjoint()
    }
}

/// Complex Givens rotation acting on coordinates `j < k`.
fn givens(d: usize, j: usize, k: usize, theta: f64, phi: f64) -> CMatrix {
    let mut g = linalg::identity(d);
    let (s, co) = theta.sin_cos();
    g[(j, j)] = linalg::real(co);
    g[(k, k)] = linalg::real(co);
    g[(j, k)] = -c(phi.cos(), -phi.sin()) * s;
    g[(k, j)] = c(phi.cos(), phi.sin()) * s;
    g
}

/// Number of real parameters of [`givens_unitary`] in dimension `d`.
pub fn givens_parameter_count(d: usize) -> usize {
    d * d.saturating_sub(1)
}

/// Product of complex Givens rotations over all pairs `j < k` in row-major
/// order, two angles `(theta, phi)` per pair. Covers every unitary up to a
/// diagonal phase, which leaves the measured projectors unchanged. For a
/// qubit this is the Bloch-sphere parameterization of the measurement axis.
pub fn givens_unitary(d: usize, params: &[f64]) -> CMatrix {
    assert_eq!(params.len(), givens_parameter_count(d));
    let mut u = linalg::identity(d);
    let mut p = params.chunks_exact(2);
    for j in 0..d {
        for k in (j + 1)..d {
            let angles = p.next().expect("parameter count checked");
            u = u * givens(d, j, k, angles[0], angles[1]);
        }
    }
    u
}

/// Set of measurement bases `base * blockdiag(W_1, ..., W_r)` where each
/// `W_i` is a free unitary on one block of consecutive columns.
///
/// The unconstrained family is a single block with the identity as base.
/// The marginal-invariant family for a reduced state takes its eigenbasis as
/// base and one block per cluster of (numerically) equal eigenvalues, so
/// every member commutes with the reduced state.
#[derive(Debug, Clone)]
pub struct MeasurementFamily {
    base: CMatrix,
    blocks: Vec<(usize, usize)>,
}

impl MeasurementFamily {
    pub fn unconstrained(d: usize) -> Self {
        Self {
            base: linalg::identity(d),
            blocks: vec![(0, d)],
        }
    }

    /// Bases that leave `marginal` invariant under pinching.
    pub fn marginal_invariant(marginal: &DensityMatrix, tolerance: f64) -> Self {
        let values = marginal.eigenvalues();
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 1..=values.len() {
            if i == values.len() || values[i] - values[i - 1] > tolerance {
                blocks.push((start, i - start));
                start = i;
            }
        }
        Self {
            base: marginal.eigen().vectors.clone(),
            blocks,
        }
    }

    pub fn dim(&self) -> usize {
        self.base.nrows()
    }

    pub fn parameter_count(&self) -> usize {
        self.blocks.iter().map(|&(_, s)| givens_parameter_count(s)).sum()
    }

    /// Whether the family is the full unitary group (up to phases).
    pub fn is_unconstrained(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn unitary(&self, params: &[f64]) -> CMatrix {
        assert_eq!(params.len(), self.parameter_count());
        let d = self.dim();
        let mut w = CMatrix::zeros(d, d);
        let mut offset = 0;
        for &(start, size) in &self.blocks {
            let n = givens_parameter_count(size);
            let block = givens_unitary(size, &params[offset..offset + n]);
            w.view_mut((start, start), (size, size)).copy_from(&block);
            offset += n;
        }
        &self.base * w
    }

    pub fn measurement(&self, params: &[f64]) -> ProjectiveMeasurement {
        ProjectiveMeasurement::from_unitary(self.unitary(params))
            .expect("product of unitaries is unitary")
    }
}

pub(crate) fn check_dim(pi: &ProjectiveMeasurement, expected: usize, what: &str) -> Result<()> {
    if pi.dim() != expected {
        return Err(Error::DimensionMismatch(format!(
            "{what} measurement has dimension {}, subsystem has {expected}",
            pi.dim()
        )));
    }
    Ok(())
}
