//! Affinity and the distances it is compared against.

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, HermitianEigen};
use crate::state::DensityMatrix;
use crate::tolerance::Tolerances;

fn check_same_dims(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "states of dimension {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    Ok(())
}

/// Clamps into `[0, 1]`, failing if the excess is larger than the tolerance.
pub(crate) fn clamp_unit(value: f64, what: &str) -> Result<f64> {
    let tol = Tolerances::DEFAULT.clamp;
    if !value.is_finite() || value < -tol || value > 1.0 + tol {
        return Err(Error::InternalConsistency(format!(
            "{what} = {value} outside [0, 1]"
        )));
    }
    Ok(value.clamp(0.0, 1.0))
}

/// `Tr(sqrt(a) sqrt(b))` for PSD matrices that need not have unit trace.
pub fn affinity_psd(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let value = linalg::trace_product(&linalg::psd_sqrt(a), &linalg::psd_sqrt(b));
    real_part(value, "affinity")
}

fn real_part(value: num_complex::Complex64, what: &str) -> Result<f64> {
    if value.im.abs() > Tolerances::DEFAULT.imaginary {
        return Err(Error::InternalConsistency(format!(
            "{what} has imaginary part {:.3e}",
            value.im
        )));
    }
    Ok(value.re)
}

/// `A(rho, sigma) = Tr(sqrt(rho) sqrt(sigma))`.
pub fn affinity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_same_dims(rho, sigma)?;
    let value = linalg::trace_product(&rho.sqrt(), &sigma.sqrt());
    clamp_unit(real_part(value, "affinity")?, "affinity")
}

/// `d_A = 1 - A`.
pub fn affinity_metric(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(1.0 - affinity(rho, sigma)?)
}

/// Uhlmann fidelity `Tr sqrt(sqrt(rho) sigma sqrt(rho))`, from the spectrum of
/// the sandwiched matrix.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_same_dims(rho, sigma)?;
    let s = rho.sqrt();
    let sandwich = &s * sigma.matrix() * &s;
    let value: f64 = HermitianEigen::new(&sandwich)
        .values
        .iter()
        .map(|x| x.max(0.0).sqrt())
        .sum();
    clamp_unit(value, "fidelity")
}

/// `T = (1/2) sum |eig(rho - sigma)|`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_same_dims(rho, sigma)?;
    let value = 0.5 * linalg::trace_norm_hermitian(&(rho.matrix() - sigma.matrix()));
    clamp_unit(value, "trace distance")
}

/// Real 3-vector inside the closed unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector([f64; 3]);

impl BlochVector {
    pub fn new(r: [f64; 3]) -> Result<Self> {
        let length = norm3(&r);
        if !length.is_finite() || length > 1.0 + Tolerances::DEFAULT.bloch {
            return Err(Error::BlochOutOfBall { length });
        }
        Ok(Self(r))
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn length(&self) -> f64 {
        norm3(&self.0).min(1.0)
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// `(I + r . sigma) / 2`.
    pub fn to_density(&self) -> DensityMatrix {
        let [x, y, z] = self.0;
        let m = (linalg::identity(2)
            + linalg::pauli_x().scale(x)
            + linalg::pauli_y().scale(y)
            + linalg::pauli_z().scale(z))
        .unscale(2.0);
        DensityMatrix::new(m, &[2]).expect("Bloch ball points are states")
    }

    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "Bloch vector needs a qubit, got dimension {}",
                rho.dim()
            )));
        }
        let m = rho.matrix();
        Self::new([2.0 * m[(0, 1)].re, -2.0 * m[(0, 1)].im, (m[(0, 0)] - m[(1, 1)]).re])
    }
}

fn norm3(r: &[f64; 3]) -> f64 {
    (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt()
}

/// Single-qubit affinity from Bloch vectors:
/// `[(1 + sqrt(1-r^2))(1 + sqrt(1-s^2)) + r.s] /
///  [(sqrt(1+r) + sqrt(1-r))(sqrt(1+s) + sqrt(1-s))]`.
pub fn qubit_affinity_closed_form(r: &BlochVector, s: &BlochVector) -> f64 {
    let (lr, ls) = (r.length(), s.length());
    let numerator =
        (1.0 + (1.0 - lr * lr).max(0.0).sqrt()) * (1.0 + (1.0 - ls * ls).max(0.0).sqrt()) + r.dot(s);
    let denominator = ((1.0 + lr).sqrt() + (1.0 - lr).sqrt()) * ((1.0 + ls).sqrt() + (1.0 - ls).sqrt());
    numerator / denominator
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn zero() -> DensityMatrix {
        DensityMatrix::basis(&[2], 0).unwrap()
    }

    fn one() -> DensityMatrix {
        DensityMatrix::basis(&[2], 1).unwrap()
    }

    #[test]
    fn affinity_examples() {
        let rho = random::random_density(3, 3, 1).unwrap();
        assert!((affinity(&rho, &rho).unwrap() - 1.0).abs() < 1e-12);
        assert!(affinity(&zero(), &one()).unwrap().abs() < 1e-15);
        let mixed = DensityMatrix::maximally_mixed(&[2]).unwrap();
        assert!((affinity(&mixed, &zero()).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn metric_examples() {
        let rho = random::random_density(2, 2, 3).unwrap();
        assert!(affinity_metric(&rho, &rho).unwrap().abs() < 1e-12);
        assert!((affinity_metric(&zero(), &one()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fidelity_examples() {
        let rho = random::random_density(3, 2, 2).unwrap();
        assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-7);
        let psi = random::random_pure(&[3], 4).unwrap();
        let phi = random::random_pure(&[3], 5).unwrap();
        let overlap = psi.amplitudes().dotc(phi.amplitudes()).norm();
        let f = fidelity(&psi.to_density(), &phi.to_density()).unwrap();
        assert!((f - overlap).abs() < 1e-7, "{f} vs {overlap}");
    }

    #[test]
    fn trace_distance_examples() {
        let rho = random::random_density(3, 3, 6).unwrap();
        assert!(trace_distance(&rho, &rho).unwrap().abs() < 1e-14);
        assert!((trace_distance(&zero(), &one()).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        let a = DensityMatrix::maximally_mixed(&[2]).unwrap();
        let b = DensityMatrix::maximally_mixed(&[3]).unwrap();
        assert!(matches!(affinity(&a, &b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(fidelity(&a, &b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(trace_distance(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn bloch_closed_form_examples() {
        let r = BlochVector::new([0.3, -0.2, 0.5]).unwrap();
        assert!((qubit_affinity_closed_form(&r, &r) - 1.0).abs() < 1e-14);
        let north = BlochVector::new([0.0, 0.0, 1.0]).unwrap();
        let center = BlochVector::new([0.0, 0.0, 0.0]).unwrap();
        assert!((qubit_affinity_closed_form(&north, &center) - FRAC_1_SQRT_2).abs() < 1e-15);
        let via_matrix = affinity(&north.to_density(), &center.to_density()).unwrap();
        assert!((via_matrix - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn bloch_rejects_outside_ball() {
        assert!(matches!(
            BlochVector::new([1.0, 1.0, 0.0]),
            Err(Error::BlochOutOfBall { .. })
        ));
    }

    #[test]
    fn bloch_round_trip() {
        let r = BlochVector::new([0.1, 0.4, -0.6]).unwrap();
        let back = BlochVector::from_density(&r.to_density()).unwrap();
        for (a, b) in r.components().iter().zip(back.components()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert!(clamp_unit(1.0 + 1e-9, "x").unwrap() == 1.0);
        assert!(clamp_unit(1.0 + 1e-6, "x").is_err());
        assert!(clamp_unit(f64::NAN, "x").is_err());
    }
}
