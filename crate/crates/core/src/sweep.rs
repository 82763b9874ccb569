//! Parameter sweeps comparing family closed forms with the optimizer.

use serde::Serialize;

use crate::correlations::correlated_coherence_q;
use crate::error::{Error, Result};
use crate::optim::Search;
use crate::par;
use crate::state::DensityMatrix;
use crate::states::{pure_from_schmidt, pure_q_closed, BellDiagonalSpec, IsotropicSpec, WernerSpec};

/// `points` equally spaced values from `from` to `to` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    from: f64,
    to: f64,
    points: usize,
}

impl Grid {
    pub fn new(from: f64, to: f64, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::BadGrid("a grid needs at least one point".into()));
        }
        if !from.is_finite() || !to.is_finite() {
            return Err(Error::BadGrid(format!("non-finite bounds {from}..{to}")));
        }
        if points == 1 && from != to {
            return Err(Error::BadGrid(format!("one point cannot span {from}..{to}")));
        }
        Ok(Self { from, to, points })
    }

    pub fn single(x: f64) -> Result<Self> {
        Self::new(x, x, 1)
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.points == 1 {
            return self.from;
        }
        if i + 1 == self.points {
            return self.to;
        }
        self.from + (self.to - self.from) * i as f64 / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

/// A one-parameter family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `c = t * direction`.
    BellDiagonal { direction: [f64; 3] },
    Werner { m: usize },
    Isotropic { m: usize },
    /// Two-qubit Schmidt form with coefficients `[t, 1 - t]`.
    Pure,
}

impl Family {
    /// State and closed-form `Q_A` at parameter `t`.
    pub fn member(&self, t: f64) -> Result<(DensityMatrix, f64)> {
        match *self {
            Family::BellDiagonal { direction } => {
                let spec = BellDiagonalSpec::new(direction.map(|d| t * d))?;
                Ok((spec.state(), spec.q_closed()))
            }
            Family::Werner { m } => {
                let spec = WernerSpec::new(m, t)?;
                Ok((spec.state(), spec.q_closed()))
            }
            Family::Isotropic { m } => {
                let spec = IsotropicSpec::new(m, t)?;
                Ok((spec.state(), spec.q_closed()))
            }
            Family::Pure => {
                let s = [t, 1.0 - t];
                Ok((pure_from_schmidt(&s, &[2, 2])?.to_density(), pure_q_closed(&s, 2)?))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: f64,
    pub closed_form: f64,
    pub optimizer: f64,
    pub gap: f64,
}

/// One row per grid point; a parameter outside the family's range is a
/// [`Error::BadGrid`].
pub fn sweep(family: Family, grid: &Grid, search: &Search) -> Result<Vec<SweepRow>> {
    let members = grid
        .values()
        .into_iter()
        .map(|t| {
            family
                .member(t)
                .map(|(rho, closed)| (t, rho, closed))
                .map_err(|e| Error::BadGrid(format!("parameter {t}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    par::map_indexed(members.len(), search.parallel, |i| {
        let (t, rho, closed) = &members[i];
        let optimizer = correlated_coherence_q(rho, search)?.value;
        Ok(SweepRow {
            param: *t,
            closed_form: *closed,
            optimizer,
            gap: (closed - optimizer).abs(),
        })
    })
    .into_iter()
    .collect()
}
