//! Seeded random states, unitaries and channels for Monte-Carlo checks.
//!
//! Every generator is deterministic given its seed. Streams derived with
//! [`rng`] are independent per `(seed, stream)` pair, which is what lets the
//! parallel drivers hand one stream to each trial.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, CVector};
use crate::state::{DensityMatrix, PureState};

pub type StateRng = ChaCha8Rng;

/// Independent generator for `(seed, stream)`.
pub fn rng(seed: u64, stream: u64) -> StateRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Complex standard normal with unit variance.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> num_complex::Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im).unscale(std::f64::consts::SQRT_2)
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar unitary from the QR decomposition of a Ginibre matrix, with the
/// phases of R's diagonal moved into Q.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let qr = ginibre(rng, dim, dim).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { linalg::ONE };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Induced-measure density matrix `G G^H / Tr` with `G` of shape dim x rank.
pub fn density_with<R: Rng + ?Sized>(rng: &mut R, dims: &[usize], rank: usize) -> Result<DensityMatrix> {
    let dim: usize = dims.iter().product();
    if rank == 0 || rank > dim {
        return Err(Error::BadRank { rank, dim });
    }
    let g = ginibre(rng, dim, rank);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(linalg::hermitize(&m.unscale(tr)), dims)
}

pub fn pure_with<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Result<PureState> {
    let dim: usize = dims.iter().product();
    let v = CVector::from_fn(dim, |_, _| complex_gaussian(rng));
    PureState::normalized(v, dims)
}

/// Random density matrix of the given rank on a single system.
pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    density_with(&mut rng(seed, 0), &[dim], rank)
}

pub fn random_unitary(dim: usize, seed: u64) -> CMatrix {
    haar_unitary(&mut rng(seed, 0), dim)
}

pub fn random_pure(dims: &[usize], seed: u64) -> Result<PureState> {
    pure_with(&mut rng(seed, 0), dims)
}

/// Uniform point on the probability simplex.
pub fn simplex_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut x: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln()).collect();
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= s);
    x
}

/// Uniform point in the Bloch ball.
pub fn bloch_ball_point<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let v: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let radius = rng.random::<f64>().cbrt();
    [v[0] / n * radius, v[1] / n * radius, v[2] / n * radius]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_density_is_pure() {
        for seed in 0..10 {
            let rho = random_density(2, 1, seed).unwrap();
            let ev = rho.eigenvalues();
            assert!(ev[0].abs() < 1e-10 && (ev[1] - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn unitary_is_unitary() {
        for seed in 0..10 {
            assert!(linalg::unitary_deviation(&random_unitary(4, seed)) < 1e-10);
        }
    }

    #[test]
    fn same_seed_same_output() {
        let a = random_density(3, 2, 99).unwrap();
        let b = random_density(3, 2, 99).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert_eq!(random_unitary(3, 5), random_unitary(3, 5));
        assert_eq!(random_pure(&[2, 3], 8).unwrap(), random_pure(&[2, 3], 8).unwrap());
        assert_ne!(random_unitary(3, 5), random_unitary(3, 6));
    }

    #[test]
    fn bad_rank() {
        assert!(matches!(random_density(2, 3, 0), Err(Error::BadRank { .. })));
        assert!(matches!(random_density(2, 0, 0), Err(Error::BadRank { .. })));
    }

    #[test]
    fn streams_differ() {
        let a: u64 = rng(1, 0).random();
        let b: u64 = rng(1, 1).random();
        assert_ne!(a, b);
    }
}
