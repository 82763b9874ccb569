//! Every measure of the crate evaluated on one state, with the inequalities
//! that relate them.

use serde::Serialize;

use crate::coherence::{closest_incoherent_state, coherence_affinity, coherence_fidelity, coherence_trace};
use crate::correlations::{
    correlated_coherence_n, correlated_coherence_n_unconstrained, correlated_coherence_q, discord_affinity,
    discord_lower_bound_parts, measurement_coherence_max, measurement_coherence_min,
};
use crate::distances::{affinity, trace_distance};
use crate::error::Result;
use crate::metrology::{default_spectrum, interferometric_power};
use crate::optim::{Estimate, Search};
use crate::state::DensityMatrix;

/// How a panel entry was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub quantity: &'static str,
    pub method: &'static str,
    pub restarts: usize,
    pub converged_restarts: usize,
    pub evaluations: usize,
}

impl Provenance {
    fn closed(quantity: &'static str) -> Self {
        Self {
            quantity,
            method: "closed-form",
            restarts: 0,
            converged_restarts: 0,
            evaluations: 1,
        }
    }

    fn optimized(quantity: &'static str, e: &Estimate) -> Self {
        Self {
            quantity,
            method: "optimized",
            restarts: e.restarts,
            converged_restarts: e.converged_restarts,
            evaluations: e.evaluations,
        }
    }
}

/// An inequality `slack >= -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub slack: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &'static str, slack: f64, tolerance: f64) -> Self {
        Self {
            name,
            slack,
            tolerance,
            passed: slack >= -tolerance,
        }
    }
}

/// Entries that need a bipartite state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationPanel {
    pub d_affinity: f64,
    pub d_lower: f64,
    pub d_lower_literal: f64,
    pub q_corr: f64,
    pub n_corr: f64,
    pub n_corr_unconstrained: f64,
    pub c_meas_min: f64,
    pub c_meas_max: f64,
    pub ip: f64,
    pub ip_spectrum: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurePanel {
    pub dims: Vec<usize>,
    pub c_affinity: f64,
    pub c_fidelity: f64,
    pub c_trace_raw: f64,
    pub c_trace_norm: f64,
    pub correlations: Option<CorrelationPanel>,
    pub checks: Vec<Check>,
    pub provenance: Vec<Provenance>,
}

impl MeasurePanel {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanelOptions {
    pub search: Search,
    /// Generator spectrum for the interferometric power; defaults to
    /// [`default_spectrum`].
    pub spectrum: Option<Vec<f64>>,
    /// Slack allowed on optimizer-backed inequalities.
    pub tolerance: f64,
}

impl Default for PanelOptions {
    fn default() -> Self {
        Self {
            search: Search::default(),
            spectrum: None,
            tolerance: 1e-6,
        }
    }
}

pub fn measure_panel(rho: &DensityMatrix, options: &PanelOptions) -> Result<MeasurePanel> {
    let search = &options.search;
    let tol = options.tolerance;
    let c_affinity = coherence_affinity(rho);
    let cf = coherence_fidelity(rho, search)?;
    let ct = coherence_trace(rho, search)?;
    let delta = closest_incoherent_state(rho)?.to_density(rho.dims())?;
    let a = affinity(rho, &delta)?;
    let t = trace_distance(rho, &delta)?;

    let mut checks = vec![
        Check::new("sandwich_lower", c_affinity - cf.value, tol),
        Check::new("sandwich_upper", ct.normalized - c_affinity, tol),
        Check::new("sandwich_upper_raw", ct.raw - c_affinity, tol),
        Check::new("holevo_lower", t - (1.0 - a), 1e-12),
        Check::new("holevo_upper", (1.0 - a * a) - t, 1e-12),
        Check::new("holevo_upper_sqrt", (1.0 - a * a).max(0.0).sqrt() - t, 1e-12),
    ];
    let mut provenance = vec![
        Provenance::closed("c_affinity"),
        Provenance::optimized("c_fidelity", &cf),
        Provenance::optimized("c_trace", &ct.estimate),
    ];

    let correlations = if rho.dims().len() == 2 {
        let m = rho.dims()[0];
        let spectrum = options.spectrum.clone().unwrap_or_else(|| default_spectrum(m));
        let d = discord_affinity(rho, search)?;
        let lb = discord_lower_bound_parts(rho)?;
        let q = correlated_coherence_q(rho, search)?;
        let n = correlated_coherence_n(rho, search)?;
        let nu = correlated_coherence_n_unconstrained(rho, search)?;
        let cmin = measurement_coherence_min(rho, search)?;
        let cmax = measurement_coherence_max(rho, search)?;
        let ip = interferometric_power(rho, &spectrum, search)?;
        checks.extend([
            Check::new("discord_bound", d.value - lb.value, tol),
            Check::new("q_bound", cmin.value - q.value, 1e-8),
            Check::new("n_bound", cmax.value - n.value, 1e-8),
            Check::new("ip_bound", cmin.value - ip.value, tol),
        ]);
        provenance.extend([
            Provenance::optimized("d_affinity", &d),
            Provenance::closed("d_lower"),
            Provenance::optimized("q_corr", &q),
            Provenance::optimized("n_corr", &n),
            Provenance::optimized("n_corr_unconstrained", &nu),
            Provenance::optimized("c_meas_min", &cmin),
            Provenance::optimized("c_meas_max", &cmax),
            Provenance::optimized("ip", &ip),
        ]);
        Some(CorrelationPanel {
            d_affinity: d.value,
            d_lower: lb.value,
            d_lower_literal: lb.literal,
            q_corr: q.value,
            n_corr: n.value,
            n_corr_unconstrained: nu.value,
            c_meas_min: cmin.value,
            c_meas_max: cmax.value,
            ip: ip.value,
            ip_spectrum: spectrum,
        })
    } else {
        None
    };

    Ok(MeasurePanel {
        dims: rho.dims().to_vec(),
        c_affinity,
        c_fidelity: cf.value,
        c_trace_raw: ct.raw,
        c_trace_norm: ct.normalized,
        correlations,
        checks,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::PureState;
    use nalgebra::DVector;

    #[test]
    fn bell_panel() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let amp = DVector::from_vec(vec![
            crate::linalg::real(h),
            crate::linalg::ZERO,
            crate::linalg::ZERO,
            crate::linalg::real(h),
        ]);
        let rho = PureState::new(amp, &[2, 2]).unwrap().to_density();
        let options = PanelOptions {
            search: Search::default().with_restarts(6),
            ..Default::default()
        };
        let panel = measure_panel(&rho, &options).unwrap();
        let c = panel.correlations.as_ref().unwrap();
        assert!((c.c_meas_min - 0.5).abs() < 1e-6);
        assert!((c.d_affinity - 0.5).abs() < 1e-6);
        assert!((c.q_corr - 0.5).abs() < 1e-6);
        assert!(panel.check("sandwich_lower").unwrap().passed);
        assert!(panel.check("discord_bound").unwrap().passed);
        assert!(c.d_lower_literal > c.d_affinity + 0.1);
        assert!(!panel.check("ip_bound").unwrap().passed);
    }

    #[test]
    fn diagonal_product_panel() {
        let rho = DensityMatrix::diagonal(&[0.12, 0.28, 0.18, 0.42], &[2, 2]).unwrap();
        let options = PanelOptions {
            search: Search::default().with_restarts(4),
            ..Default::default()
        };
        let panel = measure_panel(&rho, &options).unwrap();
        let c = panel.correlations.unwrap();
        for v in [c.d_affinity, c.d_lower, c.q_corr, c.n_corr, c.ip] {
            assert!(v.abs() < 1e-7, "{v}");
        }
        assert!(panel.c_affinity.abs() < 1e-12);
    }
}
