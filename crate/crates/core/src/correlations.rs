//! Bipartite correlations built from the affinity: the symmetric discord
//! `D_A`, measurement-relative coherence and the correlated-coherence pair
//! `Q_A` / `N_A`.
//!
//! Everything is expressed through `S = sqrt(rho)`. For a local basis `U`,
//! rotating `S` into `U (x) I` (or `U (x) V`) turns a local pinching into
//! "keep the diagonal blocks", so the overlaps `Tr(S Pi(S))` reduce to sums of
//! squared moduli of the rotated entries.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::channel::{apply_channel, QuantumChannel};
use crate::coherence::coherence_affinity;
use crate::distances::{self, clamp_unit};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, HermitianBasis};
use crate::measurement::{check_dim, MeasurementFamily, ProjectiveMeasurement};
use crate::optim::{self, Estimate, Search};
use crate::state::{partial_trace, schmidt_coefficients, tensor, DensityMatrix, PureState};
use crate::tolerance::Tolerances;

fn rotate(s: &CMatrix, u: &CMatrix) -> CMatrix {
    u.adjoint() * s * u
}

/// `sum_i |X_ii|^2`: the overlap `Tr(X Pi(X))` for a rank-one product pinching.
fn diagonal_weight(x: &CMatrix) -> f64 {
    (0..x.nrows()).map(|i| x[(i, i)].norm_sqr()).sum()
}

/// Sum of `|X_ij|^2` over the `n x n` diagonal blocks: the overlap for a
/// pinching on the first factor only.
fn block_weight(x: &CMatrix, n: usize) -> f64 {
    let m = x.nrows() / n;
    let mut acc = 0.0;
    for k in 0..m {
        for j in 0..n {
            for l in 0..n {
                acc += x[(k * n + j, k * n + l)].norm_sqr();
            }
        }
    }
    acc
}

fn local_unitary(pi_a: &ProjectiveMeasurement, pi_b: Option<&ProjectiveMeasurement>, n: usize) -> CMatrix {
    let ub = pi_b.map_or_else(|| linalg::identity(n), |p| p.basis().clone());
    linalg::kron(pi_a.basis(), &ub)
}

fn check_measurements(
    rho: &DensityMatrix,
    pi_a: &ProjectiveMeasurement,
    pi_b: Option<&ProjectiveMeasurement>,
) -> Result<(usize, usize)> {
    let (m, n) = rho.bipartite_dims()?;
    check_dim(pi_a, m, "subsystem a")?;
    if let Some(pb) = pi_b {
        check_dim(pb, n, "subsystem b")?;
    }
    Ok((m, n))
}

/// Local pinching of an arbitrary operator on `C^m (x) C^n`.
fn pinch_local(
    x: &CMatrix,
    pi_a: &ProjectiveMeasurement,
    pi_b: Option<&ProjectiveMeasurement>,
    n: usize,
) -> CMatrix {
    let u = local_unitary(pi_a, pi_b, n);
    let mut r = rotate(x, &u);
    for i in 0..r.nrows() {
        for j in 0..r.ncols() {
            let keep = match pi_b {
                Some(_) => i == j,
                None => i / n == j / n,
            };
            if !keep {
                r[(i, j)] = linalg::ZERO;
            }
        }
    }
    &u * r * u.adjoint()
}

/// Post-measurement state `sum (P_k (x) Q_l) rho (P_k (x) Q_l)`, or the
/// one-sided `sum (P_k (x) I) rho (P_k (x) I)` when `pi_b` is `None`.
pub fn measure_local(
    rho: &DensityMatrix,
    pi_a: &ProjectiveMeasurement,
    pi_b: Option<&ProjectiveMeasurement>,
) -> Result<DensityMatrix> {
    let (_, n) = check_measurements(rho, pi_a, pi_b)?;
    let out = pinch_local(rho.matrix(), pi_a, pi_b, n);
    DensityMatrix::new(linalg::hermitize(&out), rho.dims())
}

/// Symmetric discord `D_A = 1 - max sum_{kk'} <kk'|sqrt(rho)|kk'>^2` over
/// local product bases that leave both marginals invariant.
///
/// Admissible bases commute with the marginal, so they are the marginal
/// eigenbasis up to a free unitary inside each degenerate eigenspace. With
/// non-degenerate marginals the optimum is attained directly; with a
/// maximally mixed marginal the search covers every basis.
pub fn discord_affinity(rho: &DensityMatrix, search: &Search) -> Result<Estimate> {
    rho.bipartite_dims()?;
    let tol = Tolerances::DEFAULT.degeneracy;
    let fa = MeasurementFamily::marginal_invariant(&partial_trace(rho, 0)?, tol);
    let fb = MeasurementFamily::marginal_invariant(&partial_trace(rho, 1)?, tol);
    product_basis_search(rho, &fa, &fb, search, "D_A")
}

/// The same optimization over all local product bases, ignoring marginal
/// invariance.
pub fn discord_affinity_unconstrained(rho: &DensityMatrix, search: &Search) -> Result<Estimate> {
    let (m, n) = rho.bipartite_dims()?;
    let fa = MeasurementFamily::unconstrained(m);
    let fb = MeasurementFamily::unconstrained(n);
    product_basis_search(rho, &fa, &fb, search, "D_A (unconstrained)")
}

fn product_basis_search(
    rho: &DensityMatrix,
    fa: &MeasurementFamily,
    fb: &MeasurementFamily,
    search: &Search,
    what: &str,
) -> Result<Estimate> {
    let pa = fa.parameter_count();
    let s = rho.sqrt();
    let objective = |x: &[f64]| -> f64 {
        let u = linalg::kron(&fa.unitary(&x[..pa]), &fb.unitary(&x[pa..]));
        -diagonal_weight(&rotate(&s, &u))
    };
    let min = optim::minimize(search, pa + fb.parameter_count(), objective)?;
    Ok(Estimate::from_minimum(clamp_unit(1.0 + min.value, what)?, &min))
}

/// `1 - sum s_i^2` from the Schmidt coefficients.
pub fn discord_pure(psi: &PureState) -> Result<f64> {
    let s = schmidt_coefficients(psi)?;
    Ok((1.0 - s.iter().map(|x| x * x).sum::<f64>()).clamp(0.0, 1.0))
}

/// Coefficients `gamma_ij = Tr(sqrt(rho) X_i (x) Y_j)` in the Gell-Mann
/// bases of [`HermitianBasis::gell_mann`]; row and column 0 belong to the
/// scaled identities.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    gamma: DMatrix<f64>,
    dims: (usize, usize),
}

impl CorrelationMatrix {
    pub fn gamma(&self) -> &DMatrix<f64> {
        &self.gamma
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    /// `sum gamma_ij X_i (x) Y_j`.
    pub fn reconstruct(&self) -> CMatrix {
        let (m, n) = self.dims;
        let xa = HermitianBasis::gell_mann(m);
        let yb = HermitianBasis::gell_mann(n);
        let mut out = CMatrix::zeros(m * n, m * n);
        for (i, x) in xa.operators().iter().enumerate() {
            for (j, y) in yb.operators().iter().enumerate() {
                out += linalg::kron(x, y) * linalg::real(self.gamma[(i, j)]);
            }
        }
        out
    }
}

pub fn correlation_matrix(rho: &DensityMatrix) -> Result<CorrelationMatrix> {
    let (m, n) = rho.bipartite_dims()?;
    let s = rho.sqrt();
    let xa = HermitianBasis::gell_mann(m);
    let yb = HermitianBasis::gell_mann(n);
    let mut gamma = DMatrix::zeros(m * m, n * n);
    for (i, x) in xa.operators().iter().enumerate() {
        for (j, y) in yb.operators().iter().enumerate() {
            gamma[(i, j)] = linalg::trace_product(&s, &linalg::kron(x, y)).re;
        }
    }
    Ok(CorrelationMatrix { gamma, dims: (m, n) })
}

/// Lower bounds on `D_A` from the correlation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscordLowerBound {
    /// `max(side_a, side_b)`.
    pub value: f64,
    /// `Tr G - (sum of the m-1 largest eigenvalues of G)`, `G = G' G'^T` with
    /// `G'` the correlation matrix without its identity row. Exact for the
    /// one-sided quantity when `m = 2`.
    pub side_a: f64,
    /// The same with rows and columns exchanged.
    pub side_b: f64,
    /// `1 - (sum of the min(m-1, n-1) smallest eigenvalues of Gamma Gamma^T)`.
    /// Kept for comparison; it exceeds `D_A` already for a Bell state.
    pub literal: f64,
}

fn sorted_eigenvalues(g: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(g).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn one_side_bound(reduced: DMatrix<f64>, keep: usize) -> f64 {
    let g = &reduced * reduced.transpose();
    let total = g.trace();
    let values = sorted_eigenvalues(g);
    let top: f64 = values.iter().rev().take(keep).sum();
    (total - top).max(0.0)
}

pub fn discord_lower_bound_parts(rho: &DensityMatrix) -> Result<DiscordLowerBound> {
    let cm = correlation_matrix(rho)?;
    let (m, n) = cm.dims;
    let gamma = cm.gamma;
    let side_a = one_side_bound(gamma.rows(1, m * m - 1).into_owned(), m - 1);
    let side_b = one_side_bound(gamma.columns(1, n * n - 1).transpose(), n - 1);
    let values = sorted_eigenvalues(&gamma * gamma.transpose());
    let count = (m - 1).min(n - 1);
    let literal = 1.0 - values.iter().take(count).sum::<f64>();
    Ok(DiscordLowerBound {
        value: side_a.max(side_b),
        side_a,
        side_b,
        literal,
    })
}

pub fn discord_lower_bound(rho: &DensityMatrix) -> Result<f64> {
    Ok(discord_lower_bound_parts(rho)?.value)
}

/// `C_A(rho|Pi) = 1 - Tr(sqrt(rho) Pi(sqrt(rho)))` for a measurement on `a`.
pub fn measurement_coherence(rho: &DensityMatrix, pi_a: &ProjectiveMeasurement) -> Result<f64> {
    let (_, n) = check_measurements(rho, pi_a, None)?;
    let u = local_unitary(pi_a, None, n);
    Ok((1.0 - block_weight(&rotate(&rho.sqrt(), &u), n)).clamp(0.0, 1.0))
}

/// `1 - A(rho, Pi(rho))`, the affinity to the measured state itself. Differs
/// from [`measurement_coherence`] in general (Bell state: `1 - 1/sqrt 2`).
pub fn measurement_affinity_coherence(rho: &DensityMatrix, pi_a: &ProjectiveMeasurement) -> Result<f64> {
    let measured = measure_local(rho, pi_a, None)?;
    Ok(1.0 - distances::affinity(rho, &measured)?)
}

/// `||sqrt(rho) - Pi(sqrt(rho))||_2^2`.
pub fn hellinger_coherence(rho: &DensityMatrix, pi_a: &ProjectiveMeasurement) -> Result<f64> {
    let (_, n) = check_measurements(rho, pi_a, None)?;
    let s = rho.sqrt();
    Ok(linalg::frobenius_sq(&(&s - pinch_local(&s, pi_a, None, n))))
}

/// `1 - sum_k <u_k|sqrt(rho_a)|u_k>^2` for a single-system state.
pub fn local_measurement_coherence(rho_a: &DensityMatrix, pi: &ProjectiveMeasurement) -> Result<f64> {
    check_dim(pi, rho_a.dim(), "local")?;
    let rotated = rotate(&rho_a.sqrt(), pi.basis());
    Ok((1.0 - diagonal_weight(&rotated)).clamp(0.0, 1.0))
}

/// `Delta_A = C_A(rho|Pi) - C_A(rho_a|Pi)`.
pub fn coherence_difference(rho: &DensityMatrix, pi: &ProjectiveMeasurement) -> Result<f64> {
    let global = measurement_coherence(rho, pi)?;
    let local = local_measurement_coherence(&partial_trace(rho, 0)?, pi)?;
    Ok(global - local)
}

/// Evaluates `objective(U)` over a family of bases on `a`, minimizing when
/// `sign = 1` and maximizing when `sign = -1`. The returned value carries the
/// sign of the objective.
fn optimize_on_a<F>(family: &MeasurementFamily, search: &Search, sign: f64, objective: F) -> Result<Estimate>
where
    F: Fn(&CMatrix) -> f64 + Sync + Send,
{
    let min = optim::minimize(search, family.parameter_count(), |x: &[f64]| {
        sign * objective(&family.unitary(x))
    })?;
    Ok(Estimate::from_minimum(sign * min.value, &min))
}

struct Prepared {
    s: CMatrix,
    sa: CMatrix,
    m: usize,
    n: usize,
}

impl Prepared {
    fn new(rho: &DensityMatrix) -> Result<Self> {
        let (m, n) = rho.bipartite_dims()?;
        Ok(Self {
            s: rho.sqrt(),
            sa: partial_trace(rho, 0)?.sqrt(),
            m,
            n,
        })
    }

    fn global(&self, u: &CMatrix) -> f64 {
        let full = linalg::kron(u, &linalg::identity(self.n));
        1.0 - block_weight(&rotate(&self.s, &full), self.n)
    }

    fn local(&self, u: &CMatrix) -> f64 {
        1.0 - diagonal_weight(&rotate(&self.sa, u))
    }

    fn difference(&self, u: &CMatrix) -> f64 {
        self.global(u) - self.local(u)
    }
}

/// `min_Pi C_A(rho|Pi)` over all projective measurements on `a`.
pub fn measurement_coherence_min(rho: &DensityMatrix, search: &Search) -> Result<Estimate> {
    let p = Prepared::new(rho)?;
    optimize_on_a(&MeasurementFamily::unconstrained(p.m), search, 1.0, |u| p.global(u))
}

/// `max_Pi C_A(rho|Pi)` over all projective measurements on `a`.
pub fn measurement_coherence_max(rho: &DensityMatrix, search: &Search) -> Result<Estimate> {
    let p = Prepared::new(rho)?;
    optimize_on_a(&MeasurementFamily::unconstrained(p.m), search, -1.0, |u| p.global(u))
}

/// `Q_A = min_Pi Delta_A` over unconstrained measurements on `a`.
pub fn correlated_coherence_q(rho: &DensityMatrix, search: &Search) -> Result<Estimate> {
    let p = Prepared::new(rho)?;
    optimize_on_a(&MeasurementFamily::unconstrained(p.m), search, 1.0, |u| p.difference(u))
}

/// `N_A = max_Pi Delta_A` over measurements on `a` that leave `rho_a`
/// invariant.
pub fn correlated_coherence_n(rho: &DensityMatrix, search: &Search) -> Result<Estimate> {
    let p = Prepared::new(rho)?;
    let family = MeasurementFamily::marginal_invariant(&partial_trace(rho, 0)?, Tolerances::DEFAULT.degeneracy);
    optimize_on_a(&family, search, -1.0, |u| p.difference(u))
}

/// `max_Pi Delta_A` without the invariance constraint.
pub fn correlated_coherence_n_unconstrained(rho: &DensityMatrix, search: &Search) -> Result<Estimate> {
    let p = Prepared::new(rho)?;
    optimize_on_a(&MeasurementFamily::unconstrained(p.m), search, -1.0, |u| p.difference(u))
}

/// Local coherence of a product and what survives as discord after the
/// controlled shift `|i, j> -> |i, i + j>`.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffCheck {
    /// `C_A(rho_a (x) rho_b)`.
    pub lhs: f64,
    /// `2 {1 - [1 - C_A(rho_a)/2][1 - C_A(rho_b)/2]}`.
    pub rhs: f64,
    /// The same with `rho_a` in both factors.
    pub rhs_literal: f64,
    /// `C_a + C_b - C_a C_b`, the exact value of `lhs`.
    pub product_exact: f64,
    /// `D_A` of the shifted product.
    pub discord_after: Estimate,
    /// The shifted product's discord without the marginal constraint.
    pub discord_after_unconstrained: Estimate,
    /// `1 - (1 - lhs)^2`, the discord weight of the computational basis.
    /// Neither discord is bounded by `lhs` itself: discord squares the
    /// diagonal overlap while `C_A` takes its square root.
    pub discord_ceiling: f64,
}

pub fn local_coherence_tradeoff_check(
    rho_a: &DensityMatrix,
    rho_b: &DensityMatrix,
    search: &Search,
) -> Result<TradeoffCheck> {
    if rho_a.dims().len() != 1 || rho_b.dims().len() != 1 || rho_a.dim() != rho_b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "controlled shift needs two single qudits of equal dimension, got {:?} and {:?}",
            rho_a.dims(),
            rho_b.dims()
        )));
    }
    let ca = coherence_affinity(rho_a);
    let cb = coherence_affinity(rho_b);
    let product = tensor(rho_a, rho_b);
    let lhs = coherence_affinity(&product);
    let shifted = apply_channel(&product, &QuantumChannel::controlled_shift(rho_a.dim()))?;
    Ok(TradeoffCheck {
        lhs,
        discord_ceiling: 1.0 - (1.0 - lhs).powi(2),
        rhs: 2.0 * (1.0 - (1.0 - ca / 2.0) * (1.0 - cb / 2.0)),
        rhs_literal: 2.0 * (1.0 - (1.0 - ca / 2.0).powi(2)),
        product_exact: ca + cb - ca * cb,
        discord_after: discord_affinity(&shifted, search)?,
        discord_after_unconstrained: discord_affinity_unconstrained(&shifted, search)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, from_real_rows};
    use crate::random;
    use nalgebra::DVector;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell() -> DensityMatrix {
        let h = FRAC_1_SQRT_2;
        let amp = DVector::from_vec(vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]);
        PureState::new(amp, &[2, 2]).unwrap().to_density()
    }

    fn quick() -> Search {
        Search::default().with_restarts(6).with_seed(3)
    }

    #[test]
    fn computational_measurement_of_bell_state() {
        let z = ProjectiveMeasurement::computational(2);
        let out = measure_local(&bell(), &z, Some(&z)).unwrap();
        let expected = from_real_rows(&[
            &[0.5, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.5],
        ]);
        assert!(linalg::max_abs_diff(out.matrix(), &expected) < 1e-14);
        assert!((measurement_coherence(&bell(), &z).unwrap() - 0.5).abs() < 1e-12);
        let literal = measurement_affinity_coherence(&bell(), &z).unwrap();
        assert!((literal - (1.0 - FRAC_1_SQRT_2)).abs() < 1e-12);
    }

    #[test]
    fn classical_states_are_fixed_points() {
        let rho = DensityMatrix::diagonal(&[0.1, 0.2, 0.3, 0.15, 0.05, 0.2], &[2, 3]).unwrap();
        let out = measure_local(&rho, &ProjectiveMeasurement::computational(2), Some(&ProjectiveMeasurement::computational(3))).unwrap();
        assert!(linalg::max_abs_diff(out.matrix(), rho.matrix()) < 1e-14);
        assert!(discord_affinity(&rho, &quick()).unwrap().value < 1e-7);
        let z = ProjectiveMeasurement::computational(2);
        assert!(coherence_difference(&rho, &z).unwrap().abs() < 1e-12);
    }

    #[test]
    fn bell_state_discord_and_bounds() {
        let d = discord_affinity(&bell(), &quick()).unwrap();
        assert!((d.value - 0.5).abs() < 1e-6, "{}", d.value);
        let lb = discord_lower_bound_parts(&bell()).unwrap();
        assert!((lb.value - 0.5).abs() < 1e-8);
        assert!((lb.literal - 0.75).abs() < 1e-8);
    }

    #[test]
    fn product_states_have_no_discord() {
        let a = random::random_density(2, 2, 1).unwrap();
        let b = random::random_density(3, 3, 2).unwrap();
        let rho = tensor(&a, &b);
        assert!(discord_affinity(&rho, &quick()).unwrap().value < 1e-7);
        assert!(discord_lower_bound(&rho).unwrap() < 1e-7);
        let q = correlated_coherence_q(&rho, &quick()).unwrap().value;
        assert!(q.abs() < 1e-7, "{q}");
    }

    #[test]
    fn pure_state_discord_matches_schmidt_formula() {
        let psi = random::random_pure(&[2, 3], 4).unwrap();
        let closed = discord_pure(&psi).unwrap();
        let opt = discord_affinity(&psi.to_density(), &quick()).unwrap().value;
        assert!((closed - opt).abs() < 1e-6);
    }

    #[test]
    fn maximally_entangled_qutrits() {
        let amp = DVector::from_fn(9, |i, _| if i % 4 == 0 { c(1.0 / 3f64.sqrt(), 0.0) } else { linalg::ZERO });
        let psi = PureState::new(amp, &[3, 3]).unwrap();
        assert!((discord_pure(&psi).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        let opt = discord_affinity(&psi.to_density(), &quick()).unwrap().value;
        assert!((opt - 2.0 / 3.0).abs() < 1e-6, "{opt}");
    }

    #[test]
    fn correlation_matrix_reconstructs_sqrt() {
        let rho = random::random_density(6, 4, 9).unwrap();
        let rho = DensityMatrix::new(rho.matrix().clone(), &[2, 3]).unwrap();
        let cm = correlation_matrix(&rho).unwrap();
        assert!(linalg::max_abs_diff(&cm.reconstruct(), &rho.sqrt()) < 1e-9);
    }

    #[test]
    fn hellinger_equals_affinity_form() {
        let mut rng = random::rng(11, 0);
        for _ in 0..20 {
            let rho = random::density_with(&mut rng, &[2, 2], 3).unwrap();
            let pi = ProjectiveMeasurement::from_unitary(random::haar_unitary(&mut rng, 2)).unwrap();
            let ca = measurement_coherence(&rho, &pi).unwrap();
            let ch = hellinger_coherence(&rho, &pi).unwrap();
            assert!((ca - ch).abs() < 1e-10);
        }
    }

    #[test]
    fn eigenbasis_measurement_has_no_local_part() {
        let rho = random::random_density(4, 4, 12).unwrap();
        let rho = DensityMatrix::new(rho.matrix().clone(), &[2, 2]).unwrap();
        let pi = ProjectiveMeasurement::eigenbasis(&partial_trace(&rho, 0).unwrap());
        let delta = coherence_difference(&rho, &pi).unwrap();
        assert!((delta - measurement_coherence(&rho, &pi).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn bell_state_correlated_coherence() {
        let q = correlated_coherence_q(&bell(), &quick()).unwrap().value;
        assert!((q - 0.5).abs() < 1e-6, "{q}");
        let cmin = measurement_coherence_min(&bell(), &quick()).unwrap().value;
        assert!((cmin - 0.5).abs() < 1e-6);
        let n = correlated_coherence_n(&bell(), &quick()).unwrap().value;
        let cmax = measurement_coherence_max(&bell(), &quick()).unwrap().value;
        assert!(n <= cmax + 1e-8);
    }

    #[test]
    fn tradeoff_with_incoherent_partner() {
        let a = random::random_density(2, 2, 5).unwrap();
        let b = DensityMatrix::diagonal(&[0.3, 0.7], &[2]).unwrap();
        let check = local_coherence_tradeoff_check(&a, &b, &quick()).unwrap();
        assert!((check.rhs - coherence_affinity(&a)).abs() < 1e-12);
        assert!((check.lhs - check.product_exact).abs() < 1e-10);
        assert!(check.discord_after_unconstrained.value <= check.discord_ceiling + 1e-6);
        assert!(check.discord_after_unconstrained.value <= check.discord_after.value + 1e-9);
        assert!(local_coherence_tradeoff_check(&a, &DensityMatrix::maximally_mixed(&[3]).unwrap(), &quick()).is_err());
    }

    #[test]
    fn dimension_checks() {
        let z3 = ProjectiveMeasurement::computational(3);
        assert!(measure_local(&bell(), &z3, None).is_err());
        let single = DensityMatrix::maximally_mixed(&[4]).unwrap();
        assert!(discord_affinity(&single, &quick()).is_err());
    }
}
