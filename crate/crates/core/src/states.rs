//! Analytic two-party families with closed-form correlated coherence.

use nalgebra::DVector;

use crate::correlations::coherence_difference;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::measurement::ProjectiveMeasurement;
use crate::state::{DensityMatrix, PureState};
use crate::tolerance::Tolerances;

/// Bell-diagonal state `(I (x) I + sum c_i sigma_i (x) sigma_i) / 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalSpec {
    c: [f64; 3],
}

/// Weights of the four Bell projectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellEigenvalues {
    pub psi_plus: f64,
    pub psi_minus: f64,
    pub phi_plus: f64,
    pub phi_minus: f64,
}

impl BellEigenvalues {
    /// `(1 +- c1 -+ c2 + c3)/4` on the psi pair, `(1 +- c1 +- c2 - c3)/4` on
    /// the phi pair.
    pub fn from_correlations(c: [f64; 3]) -> Self {
        let [c1, c2, c3] = c;
        Self {
            psi_plus: (1.0 + c1 - c2 + c3) / 4.0,
            psi_minus: (1.0 - c1 + c2 + c3) / 4.0,
            phi_plus: (1.0 + c1 + c2 - c3) / 4.0,
            phi_minus: (1.0 - c1 - c2 - c3) / 4.0,
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.psi_plus, self.psi_minus, self.phi_plus, self.phi_minus]
    }
}

impl BellDiagonalSpec {
    pub fn new(c: [f64; 3]) -> Result<Self> {
        if let Some(bad) = c.iter().find(|x| !(x.abs() <= 1.0)) {
            return Err(Error::ParameterOutOfRange(format!("correlation coefficient {bad} outside [-1, 1]")));
        }
        let min = BellEigenvalues::from_correlations(c)
            .to_array()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -1e-12 {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        Ok(Self { c })
    }

    pub fn correlations(&self) -> [f64; 3] {
        self.c
    }

    pub fn eigenvalues(&self) -> BellEigenvalues {
        BellEigenvalues::from_correlations(self.c)
    }

    pub fn state(&self) -> DensityMatrix {
        let paulis = [linalg::pauli_x(), linalg::pauli_y(), linalg::pauli_z()];
        let mut m = linalg::identity(4);
        for (ci, p) in self.c.iter().zip(&paulis) {
            m += linalg::kron(p, p) * linalg::real(*ci);
        }
        DensityMatrix::new(m.unscale(4.0), &[2, 2]).expect("validated correlation vector")
    }

    /// `1/2 - (sqrt(l_phi+ l_phi-) + sqrt(l_psi+ l_psi-))`.
    pub fn q_closed(&self) -> f64 {
        let l = self.eigenvalues();
        let root = |a: f64, b: f64| (a.max(0.0) * b.max(0.0)).sqrt();
        0.5 - (root(l.phi_plus, l.phi_minus) + root(l.psi_plus, l.psi_minus))
    }

    /// Minimum of [`Self::q_closed`] over the three cyclic relabelings of the
    /// axes. The single expression is the value of the measurement along the
    /// third axis; the cyclic shifts cover the other two.
    pub fn q_axis_min(&self) -> f64 {
        let [a, b, c] = self.c;
        [[a, b, c], [b, c, a], [c, a, b]]
            .into_iter()
            .map(|p| Self { c: p }.q_closed())
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn bell_diagonal(c: [f64; 3]) -> Result<DensityMatrix> {
    Ok(BellDiagonalSpec::new(c)?.state())
}

pub fn bell_diagonal_q_closed(c: [f64; 3]) -> Result<f64> {
    Ok(BellDiagonalSpec::new(c)?.q_closed())
}

pub fn bell_diagonal_q_axis_min(c: [f64; 3]) -> Result<f64> {
    Ok(BellDiagonalSpec::new(c)?.q_axis_min())
}

fn check_dimension(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::ParameterOutOfRange(format!("subsystem dimension {m} below 2")));
    }
    Ok(())
}

fn check_range(name: &str, x: f64, lo: f64, hi: f64) -> Result<()> {
    if !(lo..=hi).contains(&x) {
        return Err(Error::ParameterOutOfRange(format!("{name} = {x} outside [{lo}, {hi}]")));
    }
    Ok(())
}

/// Swap operator `sum |kl><lk|` on `C^m (x) C^m`.
pub fn swap_operator(m: usize) -> CMatrix {
    let mut f = CMatrix::zeros(m * m, m * m);
    for k in 0..m {
        for l in 0..m {
            f[(k * m + l, l * m + k)] = linalg::ONE;
        }
    }
    f
}

/// `|Psi+><Psi+|` with `|Psi+> = sum |kk> / sqrt m`.
fn maximally_entangled_projector(m: usize) -> CMatrix {
    let v = DVector::from_fn(m * m, |i, _| {
        if i % (m + 1) == 0 {
            linalg::real(1.0 / (m as f64).sqrt())
        } else {
            linalg::ZERO
        }
    });
    linalg::outer(&v, &v)
}

/// Werner state `((m - x) I + (m x - 1) F) / (m^3 - m)` with `F` the swap,
/// so that `x = Tr(rho F)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerSpec {
    pub m: usize,
    pub x: f64,
}

impl WernerSpec {
    pub fn new(m: usize, x: f64) -> Result<Self> {
        check_dimension(m)?;
        check_range("Werner x", x, -1.0, 1.0)?;
        Ok(Self { m, x })
    }

    pub fn state(&self) -> DensityMatrix {
        let (m, x) = (self.m as f64, self.x);
        let mat = linalg::identity(self.m * self.m) * linalg::real(m - x)
            + swap_operator(self.m) * linalg::real(m * x - 1.0);
        DensityMatrix::new(mat.unscale(m * m * m - m), &[self.m, self.m]).expect("Werner state is valid")
    }

    /// `((m - x)/(m + 1) - sqrt((m - 1)(1 - x^2)/(m + 1))) / 2`.
    pub fn q_closed(&self) -> f64 {
        let (m, x) = (self.m as f64, self.x);
        0.5 * ((m - x) / (m + 1.0) - ((m - 1.0) * (1.0 - x * x).max(0.0) / (m + 1.0)).sqrt())
    }
}

pub fn werner(m: usize, x: f64) -> Result<DensityMatrix> {
    Ok(WernerSpec::new(m, x)?.state())
}

pub fn werner_q_closed(m: usize, x: f64) -> Result<f64> {
    Ok(WernerSpec::new(m, x)?.q_closed())
}

/// Unit-trace isotropic state
/// `((1 - x)/(m^2 - 1)) (I - |Psi+><Psi+|) + x |Psi+><Psi+|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicSpec {
    pub m: usize,
    pub x: f64,
}

impl IsotropicSpec {
    pub fn new(m: usize, x: f64) -> Result<Self> {
        check_dimension(m)?;
        check_range("isotropic x", x, 0.0, 1.0)?;
        Ok(Self { m, x })
    }

    pub fn state(&self) -> DensityMatrix {
        let d = self.m * self.m;
        let p = maximally_entangled_projector(self.m);
        let noise = (1.0 - self.x) / (d as f64 - 1.0);
        let mat = (linalg::identity(d) - &p) * linalg::real(noise) + p * linalg::real(self.x);
        DensityMatrix::new(mat, &[self.m, self.m]).expect("isotropic state is valid")
    }

    /// `(sqrt((m - 1) x) - sqrt((1 - x)/(m + 1)))^2 / m`.
    pub fn q_closed(&self) -> f64 {
        let (m, x) = (self.m as f64, self.x);
        let gap = ((m - 1.0) * x).sqrt() - ((1.0 - x) / (m + 1.0)).sqrt();
        gap * gap / m
    }
}

pub fn isotropic(m: usize, x: f64) -> Result<DensityMatrix> {
    Ok(IsotropicSpec::new(m, x)?.state())
}

pub fn isotropic_q_closed(m: usize, x: f64) -> Result<f64> {
    Ok(IsotropicSpec::new(m, x)?.q_closed())
}

fn check_schmidt(s: &[f64]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::BadSchmidtSpectrum("empty coefficient list".into()));
    }
    if let Some(bad) = s.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
        return Err(Error::BadSchmidtSpectrum(format!("coefficient {bad} is negative or not finite")));
    }
    let total: f64 = s.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::BadSchmidtSpectrum(format!("coefficients sum to {total}")));
    }
    Ok(())
}

/// `sum_i sqrt(s_i) |i>|i>` on `C^m (x) C^n`.
pub fn pure_from_schmidt(s: &[f64], dims: &[usize]) -> Result<PureState> {
    check_schmidt(s)?;
    let [m, n] = dims else {
        return Err(Error::NotBipartite(dims.len()));
    };
    if s.len() > (*m).min(*n) {
        return Err(Error::BadSchmidtSpectrum(format!(
            "{} coefficients do not fit in {m} x {n}",
            s.len()
        )));
    }
    let mut amp = DVector::from_element(m * n, linalg::ZERO);
    for (i, si) in s.iter().enumerate() {
        amp[i * n + i] = linalg::real(si.sqrt());
    }
    PureState::with_tolerances(amp, dims, &Tolerances::DEFAULT)
}

/// `((sum sqrt s_i)^2 - 1) / n`.
pub fn pure_q_closed(s: &[f64], n: usize) -> Result<f64> {
    check_schmidt(s)?;
    let root: f64 = s.iter().map(|v| v.sqrt()).sum();
    Ok((root * root - 1.0) / n as f64)
}

/// `1 - sum s_i^2`.
pub fn pure_cmin_closed(s: &[f64]) -> Result<f64> {
    check_schmidt(s)?;
    Ok(1.0 - s.iter().map(|v| v * v).sum::<f64>())
}

/// Coherence difference of the Schmidt-form state for the Fourier
/// measurement on `a`. Equals [`pure_q_closed`] with `n = dims[0]`; the true
/// minimum over measurements is generally smaller.
pub fn pure_q_fourier(s: &[f64], dims: &[usize]) -> Result<f64> {
    let rho = pure_from_schmidt(s, dims)?.to_density();
    coherence_difference(&rho, &ProjectiveMeasurement::fourier(dims[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::partial_trace;

    #[test]
    fn bell_eigenvalues_match_spectrum() {
        for c in [[0.3, -0.2, 0.1], [1.0, -1.0, 1.0], [-0.5, 0.2, 0.3], [0.0, 0.0, 0.0]] {
            let spec = BellDiagonalSpec::new(c).unwrap();
            let mut formula = spec.eigenvalues().to_array();
            formula.sort_by(f64::total_cmp);
            let rho = spec.state();
            for (a, b) in formula.iter().zip(rho.eigenvalues().iter()) {
                assert!((a - b).abs() < 1e-12, "{c:?}");
            }
        }
    }

    #[test]
    fn bell_examples() {
        assert!(bell_diagonal_q_closed([0.0; 3]).unwrap().abs() < 1e-15);
        assert!((bell_diagonal_q_closed([1.0, -1.0, 1.0]).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(bell_diagonal([0.5, 0.5, 0.5]), Err(Error::NotPsd { .. })));
        assert!(bell_diagonal([1.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn werner_examples() {
        assert!((werner_q_closed(2, 1.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        for m in 2..=4 {
            for x in [-1.0, -0.3, 0.0, 0.7, 1.0] {
                let rho = werner(m, x).unwrap();
                let f = swap_operator(m);
                assert!((linalg::trace_product(rho.matrix(), &f).re - x).abs() < 1e-12);
                let a = partial_trace(&rho, 0).unwrap();
                let target = linalg::identity(m).unscale(m as f64);
                assert!(linalg::max_abs_diff(a.matrix(), &target) < 1e-12);
            }
        }
        assert!(werner(2, 1.1).is_err());
        assert!(werner(1, 0.0).is_err());
    }

    #[test]
    fn isotropic_examples() {
        assert!((isotropic_q_closed(2, 1.0).unwrap() - 0.5).abs() < 1e-15);
        // (m - 1) x = (1 - x)/(m + 1) at x = 1/m^2
        for m in 2..=4 {
            let x = 1.0 / (m * m) as f64;
            assert!(isotropic_q_closed(m, x).unwrap().abs() < 1e-15);
            let rho = isotropic(m, 0.4).unwrap();
            let b = partial_trace(&rho, 1).unwrap();
            assert!(linalg::max_abs_diff(b.matrix(), &linalg::identity(m).unscale(m as f64)) < 1e-12);
        }
        assert!(isotropic(2, -0.1).is_err());
    }

    #[test]
    fn pure_examples() {
        assert_eq!(pure_cmin_closed(&[1.0]).unwrap(), 0.0);
        assert_eq!(pure_q_closed(&[1.0], 2).unwrap(), 0.0);
        assert!((pure_cmin_closed(&[0.5, 0.5]).unwrap() - 0.5).abs() < 1e-15);
        assert!((pure_q_closed(&[0.5, 0.5], 2).unwrap() - 0.5).abs() < 1e-15);
        assert!(pure_from_schmidt(&[0.6, 0.3], &[2, 2]).is_err());
        assert!(pure_from_schmidt(&[0.5, 0.3, 0.2], &[2, 3]).is_err());
        assert!(pure_from_schmidt(&[1.2, -0.2], &[2, 2]).is_err());
    }

    #[test]
    fn closed_pure_form_is_the_fourier_value() {
        for s in [vec![0.9, 0.1], vec![0.6, 0.3, 0.1], vec![0.25; 4]] {
            let d = s.len();
            let fourier = pure_q_fourier(&s, &[d, d]).unwrap();
            let closed = pure_q_closed(&s, d).unwrap();
            assert!((fourier - closed).abs() < 1e-12, "{s:?}: {fourier} vs {closed}");
        }
    }
}
