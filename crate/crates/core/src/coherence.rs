//! Coherence relative to the computational basis.
//!
//! The affinity-based coherence has the closed form
//! `C_A(rho) = 1 - sqrt(sum_i <i|sqrt(rho)|i>^2)`; the optimization-based
//! definitions (affinity, fidelity and trace-norm versions) are computed by a
//! softmax-parameterized search over the incoherent simplex and serve as
//! oracles and as the bounds of the sandwich `C_F <= C_A <= C_T`.

use crate::distances::clamp_unit;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::optim::{self, Estimate, Search};
use crate::state::DensityMatrix;

pub use crate::channel::{apply_channel, selective_outcomes, QuantumChannel};

/// Diagonal state in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct IncoherentState {
    diagonal: Vec<f64>,
}

impl IncoherentState {
    pub fn new(diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::DimensionMismatch("empty diagonal".into()));
        }
        if diagonal.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::NotPsd {
                min_eigenvalue: diagonal.iter().copied().fold(f64::INFINITY, f64::min),
            });
        }
        let sum: f64 = diagonal.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::TraceNotOne { trace: sum });
        }
        Ok(Self { diagonal })
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn to_density(&self, dims: &[usize]) -> Result<DensityMatrix> {
        DensityMatrix::diagonal(&self.diagonal, dims)
    }
}

/// `<i|sqrt(rho)|i>`, real and nonnegative.
fn sqrt_diagonal(rho: &DensityMatrix) -> Vec<f64> {
    let s = rho.sqrt();
    (0..s.nrows()).map(|i| s[(i, i)].re.max(0.0)).collect()
}

/// `C_A(rho) = 1 - sqrt(sum_i <i|sqrt(rho)|i>^2)`.
pub fn coherence_affinity(rho: &DensityMatrix) -> f64 {
    let m: f64 = sqrt_diagonal(rho).iter().map(|x| x * x).sum::<f64>().sqrt();
    (1.0 - m).clamp(0.0, 1.0)
}

/// Coherence with respect to the orthonormal basis given by the columns of
/// `basis`.
pub fn coherence_affinity_in_basis(rho: &DensityMatrix, basis: &CMatrix) -> Result<f64> {
    linalg::check_unitary(basis, crate::tolerance::Tolerances::DEFAULT.operator)?;
    Ok(coherence_affinity(&rho.conjugate(&basis.adjoint())?))
}

/// The maximizer of `A(rho, delta)` over incoherent `delta`:
/// `delta_i = <i|sqrt(rho)|i>^2 / sum_j <j|sqrt(rho)|j>^2`.
pub fn closest_incoherent_state(rho: &DensityMatrix) -> Result<IncoherentState> {
    let d = sqrt_diagonal(rho);
    let squares: Vec<f64> = d.iter().map(|x| x * x).collect();
    let total: f64 = squares.iter().sum();
    if d.iter().all(|&x| x < 1e-14) {
        return Err(Error::DegenerateState);
    }
    IncoherentState::new(squares.iter().map(|x| x / total).collect())
}

/// Softmax map with the first logit pinned at zero.
fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(0.0, f64::max);
    let mut w: Vec<f64> = std::iter::once(0.0)
        .chain(logits.iter().copied())
        .map(|z| (z - max).exp())
        .collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= s);
    w
}

/// Minimizes `objective` over the probability simplex of dimension `d`.
/// The search runs in logit space; restart 0 starts from the uniform
/// distribution.
pub fn simplex_search<F>(d: usize, objective: F, search: &Search) -> Result<(Vec<f64>, optim::Minimum)>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let m = optim::minimize(search, d.saturating_sub(1), |z: &[f64]| objective(&softmax(z)))?;
    Ok((softmax(&m.x), m))
}

/// `1 - max_delta A(rho, delta)` by direct numerical maximization.
pub fn coherence_affinity_bruteforce(rho: &DensityMatrix, search: &Search) -> Result<Estimate> {
    let s = rho.sqrt();
    let diag: Vec<f64> = (0..s.nrows()).map(|i| s[(i, i)].re).collect();
    // A(rho, delta) = sum_i sqrt(delta_i) <i|sqrt(rho)|i>
    let objective = |w: &[f64]| -> f64 { -w.iter().zip(&diag).map(|(p, d)| p.sqrt() * d).sum::<f64>() };
    let (_, m) = simplex_search(rho.dim(), objective, search)?;
    Ok(Estimate::from_minimum(clamp_unit(1.0 + m.value, "C_A")?, &m))
}

/// `C_F(rho) = 1 - max_delta F(rho, delta)`.
pub fn coherence_fidelity(rho: &DensityMatrix, search: &Search) -> Result<Estimate> {
    let m = rho.matrix();
    // F(rho, delta) = Tr sqrt(D rho D) with D = sqrt(delta) diagonal
    let objective = |w: &[f64]| -> f64 {
        let root: Vec<f64> = w.iter().map(|p| p.sqrt()).collect();
        let scaled = CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * (root[i] * root[j]));
        -linalg::hermitian_eigenvalues(&scaled).iter().map(|x| x.max(0.0).sqrt()).sum::<f64>()
    };
    let (_, m) = simplex_search(rho.dim(), objective, search)?;
    Ok(Estimate::from_minimum(clamp_unit(1.0 + m.value, "C_F")?, &m))
}

/// Trace-norm coherence in both normalizations.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceCoherence {
    /// `min_delta ||rho - delta||_1`, in `[0, 2]`.
    pub raw: f64,
    /// `min_delta (1/2)||rho - delta||_1`, in `[0, 1]`.
    pub normalized: f64,
    pub estimate: Estimate,
}

/// Minimizes the trace norm `||rho - delta||_1` over incoherent `delta`.
pub fn coherence_trace(rho: &DensityMatrix, search: &Search) -> Result<TraceCoherence> {
    let m = rho.matrix();
    let objective = |w: &[f64]| -> f64 {
        let diff = m - linalg::diag(w);
        linalg::trace_norm_hermitian(&diff)
    };
    let (_, min) = simplex_search(rho.dim(), objective, search)?;
    let raw = min.value.max(0.0);
    Ok(TraceCoherence {
        raw,
        normalized: clamp_unit(raw / 2.0, "C_T")?,
        estimate: Estimate::from_minimum(raw, &min),
    })
}

/// Pure-qubit affinity to the incoherent state with Bloch vector `(0,0,s_z)`:
/// `(1 + sqrt(1 - s^2) + r_z s) / (sqrt 2 (sqrt(1+s) + sqrt(1-s)))`.
pub fn qubit_pure_affinity(r_z: f64, s_z: f64) -> f64 {
    let root = (1.0 - s_z * s_z).max(0.0).sqrt();
    (1.0 + root + r_z * s_z)
        / (std::f64::consts::SQRT_2 * ((1.0 + s_z).max(0.0).sqrt() + (1.0 - s_z).max(0.0).sqrt()))
}

/// Golden-section maximization of [`qubit_pure_affinity`] over `s_z`.
/// Returns the maximizing `s_z` and the coherence `1 - max`.
pub fn qubit_pure_affinity_coherence_scan(r_z: f64) -> Result<(f64, f64)> {
    if !(r_z.abs() <= 1.0) {
        return Err(Error::ParameterOutOfRange(format!("r_z = {r_z} outside [-1, 1]")));
    }
    let (s_z, best) = optim::golden_section_max(|s| qubit_pure_affinity(r_z, s), -1.0, 1.0, 1e-10);
    Ok((s_z, (1.0 - best).clamp(0.0, 1.0)))
}
