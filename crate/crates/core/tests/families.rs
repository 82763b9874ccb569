//! Analytic families against the optimizers.

use affqis::correlations::{correlated_coherence_q, discord_affinity, measurement_coherence_min};
use affqis::states::{bell_diagonal, bell_diagonal_q_axis_min, pure_cmin_closed, pure_from_schmidt, pure_q_closed, pure_q_fourier};
use affqis::sweep::{sweep, Family, Grid};
use affqis::Search;

fn search() -> Search {
    Search::default().with_restarts(8).with_seed(11)
}

#[test]
fn werner_and_isotropic_grids_match() {
    for (family, from) in [(Family::Werner { m: 2 }, -1.0), (Family::Isotropic { m: 2 }, 0.0)] {
        let rows = sweep(family, &Grid::new(from, 1.0, 11).unwrap(), &search()).unwrap();
        let worst = rows.iter().map(|r| r.gap).fold(0.0, f64::max);
        assert!(worst < 1e-6, "{family:?}: {worst}");
    }
}

#[test]
fn off_axis_bell_diagonal_needs_axis_minimum() {
    let c = [0.8, -0.4, 0.2];
    let rho = bell_diagonal(c).unwrap();
    let q = correlated_coherence_q(&rho, &search()).unwrap().value;
    assert!((q - bell_diagonal_q_axis_min(c).unwrap()).abs() < 1e-7);
    let rows = sweep(Family::BellDiagonal { direction: c }, &Grid::single(1.0).unwrap(), &search()).unwrap();
    assert!(rows[0].gap > 0.1);
}

#[test]
fn pure_state_formulas() {
    let s = [0.7, 0.2, 0.1];
    let rho = pure_from_schmidt(&s, &[3, 3]).unwrap().to_density();
    let cmin = measurement_coherence_min(&rho, &search()).unwrap().value;
    assert!((cmin - pure_cmin_closed(&s).unwrap()).abs() < 1e-6);
    assert!((discord_affinity(&rho, &search()).unwrap().value - cmin).abs() < 1e-6);
    // the closed Q expression is the Fourier-basis value, not the minimum
    let q = correlated_coherence_q(&rho, &search()).unwrap().value;
    let closed = pure_q_closed(&s, 3).unwrap();
    assert!((closed - pure_q_fourier(&s, &[3, 3]).unwrap()).abs() < 1e-9);
    assert!(q < closed - 1e-3);
}
