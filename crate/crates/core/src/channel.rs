//! Kraus-operator channels.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::random;
use crate::state::DensityMatrix;
use crate::tolerance::Tolerances;

/// CPTP map given by Kraus operators with `sum K^H K = I`.
///
/// The `incoherent` flag is only set after each operator has been checked to
/// send every computational basis projector to a diagonal matrix.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    kraus: Vec<CMatrix>,
    incoherent: bool,
}

impl QuantumChannel {
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        Self::with_tolerances(kraus, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(kraus: Vec<CMatrix>, tol: &Tolerances) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or(Error::IncompleteKraus { deviation: 1.0 })?;
        let (rows, cols) = first.shape();
        if kraus.iter().any(|k| k.shape() != (rows, cols)) {
            return Err(Error::DimensionMismatch("Kraus operators differ in shape".into()));
        }
        let mut sum = CMatrix::zeros(cols, cols);
        for k in &kraus {
            sum += k.adjoint() * k;
        }
        let deviation = linalg::max_abs_diff(&sum, &linalg::identity(cols));
        if deviation > tol.operator {
            return Err(Error::IncompleteKraus { deviation });
        }
        Ok(Self {
            kraus,
            incoherent: false,
        })
    }

    /// Validates completeness and incoherence.
    pub fn incoherent(kraus: Vec<CMatrix>) -> Result<Self> {
        let mut channel = Self::new(kraus)?;
        let tol = Tolerances::DEFAULT.operator;
        for (index, k) in channel.kraus.iter().enumerate() {
            for j in 0..k.ncols() {
                let col = k.column(j);
                let image = &col * col.adjoint();
                let n = image.nrows();
                let off = (0..n)
                    .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
                    .map(|(a, b)| image[(a, b)].norm())
                    .fold(0.0, f64::max);
                if off > tol {
                    return Err(Error::NotIncoherent { index });
                }
            }
        }
        channel.incoherent = true;
        Ok(channel)
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn is_incoherent(&self) -> bool {
        self.incoherent
    }

    pub fn input_dim(&self) -> usize {
        self.kraus[0].ncols()
    }

    pub fn output_dim(&self) -> usize {
        self.kraus[0].nrows()
    }

    pub fn identity(d: usize) -> Self {
        Self::incoherent(vec![linalg::identity(d)]).expect("identity is incoherent")
    }

    /// Complete dephasing in the computational basis.
    pub fn full_dephasing(d: usize) -> Self {
        let kraus = (0..d)
            .map(|i| {
                let mut k = CMatrix::zeros(d, d);
                k[(i, i)] = linalg::ONE;
                k
            })
            .collect();
        Self::incoherent(kraus).expect("dephasing is incoherent")
    }

    /// Generalized CNOT `|i, j> -> |i, i + j mod d>` on two qudits.
    pub fn controlled_shift(d: usize) -> Self {
        let n = d * d;
        let mut u = CMatrix::zeros(n, n);
        for i in 0..d {
            for j in 0..d {
                u[(i * d + (i + j) % d, i * d + j)] = linalg::ONE;
            }
        }
        Self::incoherent(vec![u]).expect("permutation is incoherent")
    }

    /// Acts with `self` on subsystem `index` of a system with `dims`.
    pub fn on_subsystem(&self, dims: &[usize], index: usize) -> Result<Self> {
        if index >= dims.len() {
            return Err(Error::BadSubsystemIndex {
                index,
                count: dims.len(),
            });
        }
        if self.input_dim() != dims[index] || self.output_dim() != dims[index] {
            return Err(Error::DimensionMismatch(format!(
                "channel on dimension {} applied to subsystem of dimension {}",
                self.input_dim(),
                dims[index]
            )));
        }
        let before: usize = dims[..index].iter().product();
        let after: usize = dims[index + 1..].iter().product();
        let kraus = self
            .kraus
            .iter()
            .map(|k| {
                linalg::kron(
                    &linalg::kron(&linalg::identity(before), k),
                    &linalg::identity(after),
                )
            })
            .collect();
        Self::new(kraus)
    }

    /// Random CPTP map from a Haar isometry split into `count` Kraus blocks.
    pub fn random_cptp<R: Rng + ?Sized>(rng: &mut R, d: usize, count: usize) -> Self {
        let u = random::haar_unitary(rng, d * count);
        let kraus = (0..count)
            .map(|i| u.view((i * d, 0), (d, d)).into_owned())
            .collect();
        Self::new(kraus).expect("isometry blocks are complete")
    }

    /// Random incoherent channel: a weighted union of a strictly incoherent
    /// part (permutations times diagonals) and a measure-and-prepare part that
    /// measures in a Haar basis and prepares computational states.
    pub fn random_incoherent<R: Rng + ?Sized>(rng: &mut R, d: usize, count: usize) -> Self {
        let count = count.max(1);
        let weights = CMatrix::from_fn(count, d, |_, _| random::complex_gaussian(rng));
        let mut kraus = Vec::with_capacity(count + d);
        let keep: f64 = rng.random();
        for i in 0..count {
            let mut perm: Vec<usize> = (0..d).collect();
            for j in (1..d).rev() {
                perm.swap(j, rng.random_range(0..=j));
            }
            let mut k = CMatrix::zeros(d, d);
            for j in 0..d {
                let norm: f64 = weights.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                k[(perm[j], j)] = weights[(i, j)] / norm * keep.sqrt();
            }
            kraus.push(k);
        }
        let basis = random::haar_unitary(rng, d);
        for i in 0..d {
            let mut k = CMatrix::zeros(d, d);
            for j in 0..d {
                k[(i, j)] = basis[(j, i)].conj() * (1.0 - keep).sqrt();
            }
            kraus.push(k);
        }
        Self::incoherent(kraus).expect("construction is incoherent and complete")
    }
}

/// `sum K rho K^H`.
pub fn apply_channel(rho: &DensityMatrix, channel: &QuantumChannel) -> Result<DensityMatrix> {
    if channel.input_dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel input dimension {} for state of dimension {}",
            channel.input_dim(),
            rho.dim()
        )));
    }
    let mut out = CMatrix::zeros(channel.output_dim(), channel.output_dim());
    for k in channel.kraus() {
        out += k * rho.matrix() * k.adjoint();
    }
    let dims = output_dims(rho, channel);
    DensityMatrix::new(linalg::hermitize(&out), &dims)
}

/// Outcomes `(p_i, K_i rho K_i^H / p_i)`, dropping `p_i` below the cutoff.
pub fn selective_outcomes(
    rho: &DensityMatrix,
    channel: &QuantumChannel,
) -> Result<Vec<(f64, DensityMatrix)>> {
    if channel.input_dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel input dimension {} for state of dimension {}",
            channel.input_dim(),
            rho.dim()
        )));
    }
    let dims = output_dims(rho, channel);
    let cutoff = Tolerances::DEFAULT.outcome_probability;
    let mut outcomes = Vec::new();
    for k in channel.kraus() {
        let m = k * rho.matrix() * k.adjoint();
        let p = m.trace().re;
        if p < cutoff {
            continue;
        }
        outcomes.push((p, DensityMatrix::new(linalg::hermitize(&m.unscale(p)), &dims)?));
    }
    Ok(outcomes)
}

fn output_dims(rho: &DensityMatrix, channel: &QuantumChannel) -> Vec<usize> {
    if channel.output_dim() == rho.dim() {
        rho.dims().to_vec()
    } else {
        vec![channel.output_dim()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{from_real_rows, max_abs_diff};

    #[test]
    fn identity_leaves_state() {
        let rho = random::random_density(3, 3, 4).unwrap();
        let out = apply_channel(&rho, &QuantumChannel::identity(3)).unwrap();
        assert!(max_abs_diff(out.matrix(), rho.matrix()) < 1e-15);
    }

    #[test]
    fn dephasing_plus_gives_mixed() {
        let plus = DensityMatrix::new(from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]), &[2]).unwrap();
        let out = apply_channel(&plus, &QuantumChannel::full_dephasing(2)).unwrap();
        assert!(max_abs_diff(out.matrix(), &linalg::identity(2).unscale(2.0)) < 1e-15);
    }

    #[test]
    fn rejects_incomplete() {
        let k = linalg::identity(2).scale(0.5);
        assert!(matches!(
            QuantumChannel::new(vec![k]),
            Err(Error::IncompleteKraus { .. })
        ));
    }

    #[test]
    fn hadamard_is_not_incoherent() {
        let h = from_real_rows(&[&[1.0, 1.0], &[1.0, -1.0]]).unscale(2f64.sqrt());
        assert!(QuantumChannel::new(vec![h.clone()]).is_ok());
        assert!(matches!(
            QuantumChannel::incoherent(vec![h]),
            Err(Error::NotIncoherent { index: 0 })
        ));
    }

    #[test]
    fn random_channels_are_valid() {
        let mut r = random::rng(11, 0);
        for d in 2..=4 {
            for count in 1..=3 {
                let ch = QuantumChannel::random_cptp(&mut r, d, count);
                assert_eq!(ch.kraus().len(), count);
                let inc = QuantumChannel::random_incoherent(&mut r, d, count);
                assert!(inc.is_incoherent());
            }
        }
    }

    #[test]
    fn selective_probabilities_sum_to_one() {
        let mut r = random::rng(12, 0);
        let rho = random::density_with(&mut r, &[3], 3).unwrap();
        let ch = QuantumChannel::random_incoherent(&mut r, 3, 2);
        let total: f64 = selective_outcomes(&rho, &ch).unwrap().iter().map(|(p, _)| p).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lifted_channel_acts_on_one_factor() {
        let ch = QuantumChannel::full_dephasing(2).on_subsystem(&[3, 2], 1).unwrap();
        assert_eq!(ch.input_dim(), 6);
        assert!(QuantumChannel::full_dephasing(2).on_subsystem(&[3, 2], 0).is_err());
    }
}
