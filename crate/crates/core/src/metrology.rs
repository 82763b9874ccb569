//! Quantum Fisher information, Wigner-Yanase skew information and the
//! interferometric power of a bipartite state.

use crate::correlations::measurement_coherence;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::measurement::{check_dim, givens_parameter_count, givens_unitary, ProjectiveMeasurement};
use crate::optim::{self, Estimate, Search};
use crate::state::DensityMatrix;
use crate::tolerance::Tolerances;

fn check_observable(rho: &DensityMatrix, h: &CMatrix) -> Result<()> {
    if !h.is_square() || h.nrows() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "observable is {}x{}, state has dimension {}",
            h.nrows(),
            h.ncols(),
            rho.dim()
        )));
    }
    let deviation = linalg::hermitian_deviation(h);
    if deviation > Tolerances::DEFAULT.operator {
        return Err(Error::NotHermitianObservable { deviation });
    }
    Ok(())
}

/// SLD Fisher information with `F = 4 Var(H)` on pure states:
/// `4 sum_{k<l} (l_k - l_l)^2 / (l_k + l_l) |<k|H|l>|^2`, skipping pairs with
/// `l_k + l_l` below the cutoff.
pub fn qfi(rho: &DensityMatrix, h: &CMatrix) -> Result<f64> {
    check_observable(rho, h)?;
    Ok(qfi_unchecked(rho, h))
}

fn qfi_unchecked(rho: &DensityMatrix, h: &CMatrix) -> f64 {
    let eig = rho.eigen();
    let hk = eig.vectors.adjoint() * h * &eig.vectors;
    let lambda = &eig.values;
    let cutoff = Tolerances::DEFAULT.qfi_cutoff;
    let mut f = 0.0;
    for k in 0..lambda.len() {
        for l in (k + 1)..lambda.len() {
            let sum = lambda[k] + lambda[l];
            if sum > cutoff {
                let diff = lambda[k] - lambda[l];
                f += diff * diff / sum * hk[(k, l)].norm_sqr();
            }
        }
    }
    4.0 * f
}

/// Normalization of the skew information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SkewConvention {
    /// `-Tr([sqrt(rho), H]^2)`.
    #[default]
    Literal,
    /// Half of the literal value, the usual Wigner-Yanase normalization.
    Half,
}

/// `-Tr([sqrt(rho), H]^2)`.
pub fn skew_information(rho: &DensityMatrix, h: &CMatrix) -> Result<f64> {
    skew_information_with(rho, h, SkewConvention::Literal)
}

pub fn skew_information_with(rho: &DensityMatrix, h: &CMatrix, convention: SkewConvention) -> Result<f64> {
    check_observable(rho, h)?;
    // the commutator is anti-Hermitian, so -Tr(C^2) = ||C||_2^2
    let value = linalg::frobenius_sq(&linalg::commutator(&rho.sqrt(), h));
    Ok(match convention {
        SkewConvention::Literal => value,
        SkewConvention::Half => value / 2.0,
    })
}

/// Observable `U diag(mu) U^H` with a non-degenerate spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSpec {
    spectrum: Vec<f64>,
    generator: CMatrix,
}

impl ObservableSpec {
    pub fn new(spectrum: Vec<f64>, generator: CMatrix) -> Result<Self> {
        check_spectrum(&spectrum)?;
        if generator.nrows() != spectrum.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} eigenvalues for a {}-dimensional generator",
                spectrum.len(),
                generator.nrows()
            )));
        }
        linalg::check_unitary(&generator, Tolerances::DEFAULT.operator)?;
        Ok(Self { spectrum, generator })
    }

    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn generator(&self) -> &CMatrix {
        &self.generator
    }

    pub fn matrix(&self) -> CMatrix {
        &self.generator * linalg::diag(&self.spectrum) * self.generator.adjoint()
    }
}

/// Rejects spectra with two eigenvalues closer than the spectral gap.
pub fn check_spectrum(spectrum: &[f64]) -> Result<()> {
    let mut sorted = spectrum.to_vec();
    sorted.sort_by(f64::total_cmp);
    let gap = sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if spectrum.iter().any(|x| !x.is_finite()) || gap <= Tolerances::DEFAULT.spectral_gap {
        return Err(Error::DegenerateSpectrum { gap });
    }
    Ok(())
}

/// Equally spaced `{0, 1/(d-1), ..., 1}`.
pub fn default_spectrum(d: usize) -> Vec<f64> {
    let top = d.saturating_sub(1).max(1) as f64;
    (0..d).map(|i| i as f64 / top).collect()
}

/// `min_U F(rho, U diag(mu) U^H (x) I)` over unitaries on `a`.
pub fn interferometric_power(rho: &DensityMatrix, spectrum: &[f64], search: &Search) -> Result<Estimate> {
    let (m, n) = rho.bipartite_dims()?;
    if spectrum.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "{} eigenvalues for subsystem dimension {m}",
            spectrum.len()
        )));
    }
    check_spectrum(spectrum)?;
    let mu = linalg::diag(spectrum);
    let eye = linalg::identity(n);
    let objective = |x: &[f64]| -> f64 {
        let u = givens_unitary(m, x);
        let h = &u * &mu * u.adjoint();
        qfi_unchecked(rho, &linalg::kron(&h, &eye))
    };
    let min = optim::minimize(search, givens_parameter_count(m), objective)?;
    Ok(Estimate::from_minimum(min.value.max(0.0), &min))
}

/// Both sides of the pinching identity for a measurement on `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewIdentity {
    /// `C_A(rho|Pi) = 1 - Tr(sqrt(rho) Pi(sqrt(rho)))`.
    pub coherence: f64,
    /// `(1/2) sum_i -Tr([sqrt(rho), P_i (x) I]^2)`.
    pub skew_half: f64,
    /// `sum_i -Tr([sqrt(rho), P_i (x) I]^2)`.
    pub skew_literal: f64,
}

pub fn coherence_skew_identity_check(rho: &DensityMatrix, pi_a: &ProjectiveMeasurement) -> Result<SkewIdentity> {
    let (m, n) = rho.bipartite_dims()?;
    check_dim(pi_a, m, "subsystem a")?;
    let coherence = measurement_coherence(rho, pi_a)?;
    let eye = linalg::identity(n);
    let mut skew_literal = 0.0;
    for p in pi_a.projectors() {
        skew_literal += skew_information(rho, &linalg::kron(p, &eye))?;
    }
    Ok(SkewIdentity {
        coherence,
        skew_half: skew_literal / 2.0,
        skew_literal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::state::{tensor, PureState};
    use nalgebra::DVector;

    fn bell() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let amp = DVector::from_vec(vec![linalg::real(h), linalg::ZERO, linalg::ZERO, linalg::real(h)]);
        PureState::new(amp, &[2, 2]).unwrap().to_density()
    }

    fn random_hermitian(seed: u64, d: usize) -> CMatrix {
        let g = random::ginibre(&mut random::rng(seed, 0), d, d);
        linalg::hermitize(&g)
    }

    #[test]
    fn pure_state_fisher_is_four_variances() {
        let psi = random::random_pure(&[3], 2).unwrap();
        let h = random_hermitian(3, 3);
        let v = psi.amplitudes();
        let mean = (v.adjoint() * &h * v)[(0, 0)].re;
        let second = (v.adjoint() * &h * &h * v)[(0, 0)].re;
        let var = second - mean * mean;
        let rho = psi.to_density();
        assert!((qfi(&rho, &h).unwrap() - 4.0 * var).abs() < 1e-9);
        assert!((skew_information(&rho, &h).unwrap() - 2.0 * var).abs() < 1e-9);
    }

    #[test]
    fn commuting_observables_give_zero() {
        let rho = DensityMatrix::diagonal(&[0.2, 0.3, 0.5], &[3]).unwrap();
        let h = linalg::diag(&[1.0, -2.0, 0.5]);
        assert!(qfi(&rho, &h).unwrap() < 1e-15);
        assert!(skew_information(&rho, &h).unwrap() < 1e-15);
        let mixed = DensityMatrix::maximally_mixed(&[3]).unwrap();
        assert!(qfi(&mixed, &random_hermitian(4, 3)).unwrap() < 1e-14);
    }

    #[test]
    fn rejects_bad_observables() {
        let rho = DensityMatrix::maximally_mixed(&[2]).unwrap();
        let mut h = linalg::pauli_x();
        h[(0, 1)] = linalg::c(1.0, 0.5);
        assert!(matches!(qfi(&rho, &h), Err(Error::NotHermitianObservable { .. })));
        assert!(qfi(&rho, &linalg::identity(3)).is_err());
        assert!(check_spectrum(&[1.0, 1.0]).is_err());
    }

    #[test]
    fn interferometric_power_examples() {
        let pm = [1.0, -1.0];
        let product = tensor(
            &DensityMatrix::maximally_mixed(&[2]).unwrap(),
            &random::random_density(2, 2, 7).unwrap(),
        );
        let search = Search::default().with_restarts(4);
        assert!(interferometric_power(&product, &pm, &search).unwrap().value < 1e-12);
        let ip = interferometric_power(&bell(), &pm, &search).unwrap().value;
        assert!((ip - 4.0).abs() < 1e-8, "{ip}");
        assert!(interferometric_power(&bell(), &[1.0, 1.0], &search).is_err());
    }

    #[test]
    fn pinching_identity() {
        let mut rng = random::rng(17, 0);
        for _ in 0..20 {
            let rho = random::density_with(&mut rng, &[2, 3], 4).unwrap();
            let pi = ProjectiveMeasurement::from_unitary(random::haar_unitary(&mut rng, 2)).unwrap();
            let check = coherence_skew_identity_check(&rho, &pi).unwrap();
            assert!((check.coherence - check.skew_half).abs() < 1e-10);
        }
        let z = ProjectiveMeasurement::computational(2);
        let check = coherence_skew_identity_check(&bell(), &z).unwrap();
        assert!((check.coherence - 0.5).abs() < 1e-12);
    }

    #[test]
    fn observable_spec() {
        let u = random::random_unitary(3, 1);
        let spec = ObservableSpec::new(vec![0.0, 0.5, 1.0], u).unwrap();
        let h = spec.matrix();
        assert!(linalg::hermitian_deviation(&h) < 1e-12);
        assert!(ObservableSpec::new(vec![0.0, 0.0, 1.0], linalg::identity(3)).is_err());
        assert_eq!(default_spectrum(3), vec![0.0, 0.5, 1.0]);
    }
}
