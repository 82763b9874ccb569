//! Monte-Carlo property suites.
//!
//! Each property maps one random trial to a slack that must stay at or above
//! `-tolerance`. Trial `t` of a property draws from its own stream, so a
//! report depends only on `(seed, trials, restarts)` and never on scheduling.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::channel::{apply_channel, selective_outcomes, QuantumChannel};
use crate::coherence::{
    closest_incoherent_state, coherence_affinity, coherence_affinity_bruteforce, coherence_fidelity,
    coherence_trace, qubit_pure_affinity_coherence_scan,
};
use crate::correlations::{
    coherence_difference, correlated_coherence_n, correlated_coherence_q, discord_affinity, discord_lower_bound_parts,
    discord_pure, hellinger_coherence, local_coherence_tradeoff_check, measurement_coherence,
    measurement_coherence_max, measurement_coherence_min,
};
use crate::distances::{
    affinity, affinity_metric, affinity_psd, fidelity, qubit_affinity_closed_form, trace_distance, BlochVector,
};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::measurement::ProjectiveMeasurement;
use crate::metrology::{coherence_skew_identity_check, interferometric_power, qfi, skew_information};
use crate::optim::Search;
use crate::par;
use crate::random::{self, StateRng};
use crate::state::{partial_trace, tensor, DensityMatrix, PureState};
use crate::states::{pure_cmin_closed, pure_from_schmidt, pure_q_closed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Distances,
    Coherence,
    Correlations,
    Metrology,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Distances, Suite::Coherence, Suite::Correlations, Suite::Metrology];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Distances => "distances",
            Suite::Coherence => "coherence",
            Suite::Correlations => "correlations",
            Suite::Metrology => "metrology",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Randomness and search settings handed to one trial.
pub struct Trial {
    pub rng: StateRng,
    pub index: usize,
    pub search: Search,
}

impl Trial {
    /// Cycles through 2, 3, 4.
    fn dim(&self) -> usize {
        2 + self.index % 3
    }

    fn state(&mut self, dims: &[usize]) -> Result<DensityMatrix> {
        let d: usize = dims.iter().product();
        let rank = 1 + (self.rng.random_range_usize(d));
        random::density_with(&mut self.rng, dims, rank)
    }

    fn full_rank(&mut self, dims: &[usize]) -> Result<DensityMatrix> {
        let d: usize = dims.iter().product();
        random::density_with(&mut self.rng, dims, d)
    }

    fn pure(&mut self, dims: &[usize]) -> Result<PureState> {
        random::pure_with(&mut self.rng, dims)
    }

    fn unitary(&mut self, d: usize) -> CMatrix {
        random::haar_unitary(&mut self.rng, d)
    }

    fn measurement(&mut self, d: usize) -> ProjectiveMeasurement {
        ProjectiveMeasurement::from_unitary(self.unitary(d)).expect("Haar unitary")
    }

    fn hermitian(&mut self, d: usize) -> CMatrix {
        linalg::hermitize(&random::ginibre(&mut self.rng, d, d))
    }
}

trait RangeExt {
    fn random_range_usize(&mut self, n: usize) -> usize;
}

impl RangeExt for StateRng {
    fn random_range_usize(&mut self, n: usize) -> usize {
        use rand::Rng;
        self.random_range(0..n)
    }
}

struct Property {
    suite: Suite,
    name: &'static str,
    tolerance: f64,
    trial: fn(&mut Trial) -> Result<f64>,
}

/// Aggregate of one property over all trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub suite: Suite,
    pub property: &'static str,
    pub trials: usize,
    pub passed: usize,
    /// Trials that returned an error instead of a slack.
    pub errors: usize,
    /// Smallest slack among trials that ran; NaN when none did.
    pub worst_slack: f64,
    pub tolerance: f64,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.passed == self.trials
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    pub fn violations(&self) -> Vec<&PropertyReport> {
        self.properties.iter().filter(|p| !p.holds()).collect()
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.property == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub restarts: usize,
    pub parallel: bool,
}

impl VerifyOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            seed,
            restarts: Search::default().restarts,
            parallel: par::available(),
        }
    }
}

/// Names of the properties in `suite`, in report order.
pub fn property_names(suite: Suite) -> Vec<&'static str> {
    PROPERTIES.iter().filter(|p| p.suite == suite).map(|p| p.name).collect()
}

pub fn run(suites: &[Suite], options: &VerifyOptions) -> Result<VerifyReport> {
    let selected = PROPERTIES
        .iter()
        .enumerate()
        .filter(|(_, p)| suites.contains(&p.suite))
        .collect();
    run_selected(selected, options)
}

/// Runs the named properties, in the order given.
pub fn run_properties(names: &[&str], options: &VerifyOptions) -> Result<VerifyReport> {
    let selected = names
        .iter()
        .map(|name| {
            PROPERTIES
                .iter()
                .enumerate()
                .find(|(_, p)| p.name == *name)
                .ok_or_else(|| Error::Parse(format!("unknown property `{name}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    run_selected(selected, options)
}

fn run_selected(selected: Vec<(usize, &Property)>, options: &VerifyOptions) -> Result<VerifyReport> {
    if options.trials == 0 {
        return Err(Error::BadGrid("at least one trial is required".into()));
    }
    let properties = selected
        .into_iter()
        .map(|(id, property)| run_property(id, property, options))
        .collect();
    Ok(VerifyReport {
        seed: options.seed,
        trials: options.trials,
        properties,
    })
}

fn run_property(id: usize, property: &Property, options: &VerifyOptions) -> PropertyReport {
    let outcomes = par::map_indexed(options.trials, options.parallel, |t| {
        let stream = ((id as u64) << 32) | t as u64;
        let mut trial = Trial {
            rng: random::rng(options.seed, stream),
            index: t,
            search: Search::default()
                .with_restarts(options.restarts)
                .with_seed(options.seed ^ stream.rotate_left(17))
                .sequential(),
        };
        (property.trial)(&mut trial)
    });
    let mut passed = 0;
    let mut errors = 0;
    let mut worst = f64::INFINITY;
    for outcome in &outcomes {
        match outcome {
            Ok(slack) if slack.is_nan() => errors += 1,
            Ok(slack) => {
                worst = worst.min(*slack);
                if *slack >= -property.tolerance {
                    passed += 1;
                }
            }
            Err(_) => errors += 1,
        }
    }
    PropertyReport {
        suite: property.suite,
        property: property.name,
        trials: options.trials,
        passed,
        errors,
        worst_slack: if errors == options.trials { f64::NAN } else { worst },
        tolerance: property.tolerance,
    }
}

fn mismatch(a: f64, b: f64) -> f64 {
    -(a - b).abs()
}

fn bipartite_dims(t: &Trial) -> [usize; 2] {
    [[2, 2], [2, 3], [3, 2], [3, 3]][t.index % 4]
}

// ----- distances -----

fn a1_range_identity(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let sigma = t.state(&[d])?;
    let a = affinity(&rho, &sigma)?;
    let self_gap = mismatch(affinity(&rho, &rho)?, 1.0);
    Ok(a.min(1.0 - a).min(self_gap))
}

fn metric_symmetry(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let sigma = t.state(&[d])?;
    Ok(mismatch(affinity_metric(&rho, &sigma)?, affinity_metric(&sigma, &rho)?))
}

fn a2_unitary_invariance(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let sigma = t.state(&[d])?;
    let u = t.unitary(d);
    Ok(mismatch(affinity(&rho.conjugate(&u)?, &sigma.conjugate(&u)?)?, affinity(&rho, &sigma)?))
}

fn a3_multiplicativity(t: &mut Trial) -> Result<f64> {
    let d = 2 + t.index % 2;
    let (r1, s1) = (t.state(&[2])?, t.state(&[2])?);
    let (r2, s2) = (t.state(&[d])?, t.state(&[d])?);
    let joint = affinity(&tensor(&r1, &r2), &tensor(&s1, &s2))?;
    Ok(mismatch(joint, affinity(&r1, &s1)? * affinity(&r2, &s2)?))
}

fn a4_cptp_monotonicity(t: &mut Trial) -> Result<f64> {
    use rand::Rng;
    let d = t.dim();
    let rho = t.state(&[d])?;
    let sigma = t.state(&[d])?;
    let count = t.rng.random_range(1..=3);
    let channel = QuantumChannel::random_cptp(&mut t.rng, d, count);
    Ok(affinity(&apply_channel(&rho, &channel)?, &apply_channel(&sigma, &channel)?)? - affinity(&rho, &sigma)?)
}

fn a5_projector_additivity(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let sigma = t.state(&[d])?;
    let pi = t.measurement(d);
    let pinched_rho = pi.pinch(rho.matrix());
    let pinched_sigma = pi.pinch(sigma.matrix());
    let lhs = affinity_psd(&pinched_rho, &pinched_sigma)?;
    let mut rhs = 0.0;
    for p in pi.projectors() {
        rhs += affinity_psd(&(p * rho.matrix() * p), &(p * sigma.matrix() * p))?;
    }
    Ok(mismatch(lhs, rhs))
}

fn fidelity_dominates(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let sigma = t.state(&[d])?;
    Ok(fidelity(&rho, &sigma)? - affinity(&rho, &sigma)?)
}

fn holevo_pair(t: &mut Trial) -> Result<(f64, f64)> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let sigma = t.state(&[d])?;
    Ok((affinity(&rho, &sigma)?, trace_distance(&rho, &sigma)?))
}

fn holevo_lower(t: &mut Trial) -> Result<f64> {
    let (a, d) = holevo_pair(t)?;
    Ok(d - (1.0 - a))
}

fn holevo_upper(t: &mut Trial) -> Result<f64> {
    let (a, d) = holevo_pair(t)?;
    Ok((1.0 - a * a) - d)
}

fn holevo_upper_sqrt(t: &mut Trial) -> Result<f64> {
    let (a, d) = holevo_pair(t)?;
    Ok((1.0 - a * a).max(0.0).sqrt() - d)
}

fn qubit_closed_form(t: &mut Trial) -> Result<f64> {
    let r = BlochVector::new(random::bloch_ball_point(&mut t.rng))?;
    let s = BlochVector::new(random::bloch_ball_point(&mut t.rng))?;
    Ok(mismatch(qubit_affinity_closed_form(&r, &s), affinity(&r.to_density(), &s.to_density())?))
}

fn sqrt_reconstruction(t: &mut Trial) -> Result<f64> {
    let d = 2 + t.index % 5;
    let rho = t.state(&[d])?;
    let s = rho.sqrt();
    Ok(-linalg::max_abs_diff(&(&s * &s), rho.matrix()))
}

fn partial_trace_of_product(t: &mut Trial) -> Result<f64> {
    let [m, n] = bipartite_dims(t);
    let a = t.state(&[m])?;
    let b = t.state(&[n])?;
    let joint = tensor(&a, &b);
    let ea = linalg::max_abs_diff(partial_trace(&joint, 0)?.matrix(), a.matrix());
    let eb = linalg::max_abs_diff(partial_trace(&joint, 1)?.matrix(), b.matrix());
    Ok(-ea.max(eb))
}

// ----- coherence -----

fn closed_vs_bruteforce(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    Ok(mismatch(coherence_affinity(&rho), coherence_affinity_bruteforce(&rho, &t.search)?.value))
}

fn closest_state_optimal(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let delta = closest_incoherent_state(&rho)?.to_density(&[d])?;
    Ok(mismatch(affinity(&rho, &delta)?, 1.0 - coherence_affinity(&rho)))
}

fn sandwich_lower(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    Ok(coherence_affinity(&rho) - coherence_fidelity(&rho, &t.search)?.value)
}

fn sandwich_upper(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    Ok(coherence_trace(&rho, &t.search)?.normalized - coherence_affinity(&rho))
}

fn c1_faithfulness(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let p = random::simplex_point(&mut t.rng, d);
    let diagonal = DensityMatrix::diagonal(&p, &[d])?;
    let coherent = t.full_rank(&[d])?;
    Ok((-coherence_affinity(&diagonal)).min(coherence_affinity(&coherent)))
}

fn incoherent_channel(t: &mut Trial, d: usize) -> QuantumChannel {
    use rand::Rng;
    let count = t.rng.random_range(1..=3);
    QuantumChannel::random_incoherent(&mut t.rng, d, count)
}

fn c2_monotonicity(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let channel = incoherent_channel(t, d);
    Ok(coherence_affinity(&rho) - coherence_affinity(&apply_channel(&rho, &channel)?))
}

fn c3_selective_monotonicity(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let channel = incoherent_channel(t, d);
    let average: f64 = selective_outcomes(&rho, &channel)?
        .iter()
        .map(|(p, out)| p * coherence_affinity(out))
        .sum();
    Ok(coherence_affinity(&rho) - average)
}

fn c4_convexity(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let weights = random::simplex_point(&mut t.rng, 3);
    let states = (0..3)
        .map(|_| Ok(t.pure(&[d])?.to_density()))
        .collect::<Result<Vec<_>>>()?;
    let mixed = DensityMatrix::mixture(&weights, &states)?;
    let average: f64 = weights.iter().zip(&states).map(|(w, s)| w * coherence_affinity(s)).sum();
    Ok(average - coherence_affinity(&mixed))
}

fn qubit_scan(t: &mut Trial) -> Result<f64> {
    let psi = t.pure(&[2])?;
    let rho = psi.to_density();
    let r_z = BlochVector::from_density(&rho)?.components()[2];
    let (_, scan) = qubit_pure_affinity_coherence_scan(r_z.clamp(-1.0, 1.0))?;
    Ok(mismatch(scan, coherence_affinity(&rho)))
}

// ----- correlations -----

fn pure_discord_formula(t: &mut Trial) -> Result<f64> {
    let dims = bipartite_dims(t);
    let psi = t.pure(&dims)?;
    Ok(mismatch(discord_affinity(&psi.to_density(), &t.search)?.value, discord_pure(&psi)?))
}

fn maximally_entangled_discord(t: &mut Trial) -> Result<f64> {
    let m = 2 + t.index % 2;
    // random local unitaries keep the marginals maximally mixed
    let uniform = vec![1.0 / m as f64; m];
    let rho = pure_from_schmidt(&uniform, &[m, m])?.to_density();
    let u = linalg::kron(&t.unitary(m), &t.unitary(m));
    let rho = rho.conjugate(&u)?;
    let expected = (m as f64 - 1.0) / m as f64;
    Ok(mismatch(discord_affinity(&rho, &t.search)?.value, expected))
}

fn lower_bound_below_discord(t: &mut Trial) -> Result<f64> {
    let rho = t.state(&[2, 2])?;
    Ok(discord_affinity(&rho, &t.search)?.value - discord_lower_bound_parts(&rho)?.value)
}

fn lower_bound_literal_below_discord(t: &mut Trial) -> Result<f64> {
    let rho = t.state(&[2, 2])?;
    Ok(discord_affinity(&rho, &t.search)?.value - discord_lower_bound_parts(&rho)?.literal)
}

fn lower_bound_exact_qubit_side(t: &mut Trial) -> Result<f64> {
    let n = 2 + t.index % 2;
    let rho = t.state(&[2, n])?;
    let exact = measurement_coherence_min(&rho, &t.search)?.value;
    Ok(mismatch(discord_lower_bound_parts(&rho)?.side_a, exact))
}

fn measurement_coherence_hellinger(t: &mut Trial) -> Result<f64> {
    let dims = bipartite_dims(t);
    let rho = t.state(&dims)?;
    let pi = t.measurement(dims[0]);
    Ok(mismatch(measurement_coherence(&rho, &pi)?, hellinger_coherence(&rho, &pi)?))
}

fn delta_nonnegative(t: &mut Trial) -> Result<f64> {
    let dims = bipartite_dims(t);
    let rho = t.state(&dims)?;
    let pi = t.measurement(dims[0]);
    coherence_difference(&rho, &pi)
}

fn local_unitary_invariance(t: &mut Trial) -> Result<f64> {
    let rho = t.state(&[2, 2])?;
    let u = linalg::kron(&t.unitary(2), &t.unitary(2));
    let rotated = rho.conjugate(&u)?;
    let s = &t.search;
    let gaps = [
        mismatch(discord_affinity(&rho, s)?.value, discord_affinity(&rotated, s)?.value),
        mismatch(correlated_coherence_q(&rho, s)?.value, correlated_coherence_q(&rotated, s)?.value),
        mismatch(correlated_coherence_n(&rho, s)?.value, correlated_coherence_n(&rotated, s)?.value),
    ];
    Ok(gaps.into_iter().fold(f64::INFINITY, f64::min))
}

fn q_below_cmin(t: &mut Trial) -> Result<f64> {
    let rho = t.state(&bipartite_dims(t))?;
    Ok(measurement_coherence_min(&rho, &t.search)?.value - correlated_coherence_q(&rho, &t.search)?.value)
}

fn n_below_cmax(t: &mut Trial) -> Result<f64> {
    let rho = t.state(&bipartite_dims(t))?;
    Ok(measurement_coherence_max(&rho, &t.search)?.value - correlated_coherence_n(&rho, &t.search)?.value)
}

fn q_nonincreasing_under_b_channel(t: &mut Trial) -> Result<f64> {
    use rand::Rng;
    let rho = t.state(&[2, 2])?;
    let count = t.rng.random_range(1..=3);
    let channel = QuantumChannel::random_cptp(&mut t.rng, 2, count).on_subsystem(&[2, 2], 1)?;
    let after = apply_channel(&rho, &channel)?;
    Ok(correlated_coherence_q(&rho, &t.search)?.value - correlated_coherence_q(&after, &t.search)?.value)
}

fn entangled_pure_q_positive(t: &mut Trial) -> Result<f64> {
    let dims = bipartite_dims(t);
    let psi = t.pure(&dims)?;
    // strictly positive: report the margin above a 1e-9 floor
    Ok(correlated_coherence_q(&psi.to_density(), &t.search)?.value - 1e-9)
}

fn schmidt_state(t: &mut Trial) -> Result<(Vec<f64>, usize)> {
    let m = 2 + t.index % 2;
    let mut s = random::simplex_point(&mut t.rng, m);
    s.sort_by(|a, b| b.total_cmp(a));
    Ok((s, m))
}

fn pure_cmin_formula(t: &mut Trial) -> Result<f64> {
    let (s, m) = schmidt_state(t)?;
    let rho = pure_from_schmidt(&s, &[m, m])?.to_density();
    Ok(mismatch(measurement_coherence_min(&rho, &t.search)?.value, pure_cmin_closed(&s)?))
}

fn pure_q_formula(t: &mut Trial) -> Result<f64> {
    let (s, m) = schmidt_state(t)?;
    let rho = pure_from_schmidt(&s, &[m, m])?.to_density();
    Ok(mismatch(correlated_coherence_q(&rho, &t.search)?.value, pure_q_closed(&s, m)?))
}

fn tradeoff_pair(t: &mut Trial) -> Result<crate::correlations::TradeoffCheck> {
    let d = 2 + t.index % 2;
    let a = t.state(&[d])?;
    let b = t.state(&[d])?;
    local_coherence_tradeoff_check(&a, &b, &t.search)
}

fn tradeoff_symmetric_rhs(t: &mut Trial) -> Result<f64> {
    // closed forms only; the discord half of the check is not needed here
    let d = 2 + t.index % 2;
    let a = t.state(&[d])?;
    let b = t.state(&[d])?;
    let (ca, cb) = (coherence_affinity(&a), coherence_affinity(&b));
    let rhs = 2.0 * (1.0 - (1.0 - ca / 2.0) * (1.0 - cb / 2.0));
    Ok(rhs - coherence_affinity(&tensor(&a, &b)))
}

fn tradeoff_discord_unconstrained(t: &mut Trial) -> Result<f64> {
    let check = tradeoff_pair(t)?;
    Ok(check.lhs - check.discord_after_unconstrained.value)
}

fn tradeoff_discord_ceiling(t: &mut Trial) -> Result<f64> {
    let check = tradeoff_pair(t)?;
    Ok(check.discord_ceiling - check.discord_after_unconstrained.value)
}

fn tradeoff_discord_constrained(t: &mut Trial) -> Result<f64> {
    let check = tradeoff_pair(t)?;
    Ok(check.lhs - check.discord_after.value)
}

// ----- metrology -----

fn variance(psi: &PureState, h: &CMatrix) -> f64 {
    let v = psi.amplitudes();
    let mean = (v.adjoint() * h * v)[(0, 0)].re;
    let second = (v.adjoint() * h * h * v)[(0, 0)].re;
    second - mean * mean
}

fn qfi_pure_variance(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let psi = t.pure(&[d])?;
    let h = t.hermitian(d);
    Ok(mismatch(qfi(&psi.to_density(), &h)?, 4.0 * variance(&psi, &h)))
}

fn skew_pure_variance(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let psi = t.pure(&[d])?;
    let h = t.hermitian(d);
    Ok(mismatch(skew_information(&psi.to_density(), &h)?, 2.0 * variance(&psi, &h)))
}

fn fisher_skew(t: &mut Trial) -> Result<(f64, f64)> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let h = t.hermitian(d);
    Ok((qfi(&rho, &h)?, skew_information(&rho, &h)?))
}

fn fisher_below_twice_skew(t: &mut Trial) -> Result<f64> {
    let (f, i) = fisher_skew(t)?;
    Ok(2.0 * i - f)
}

fn fisher_below_four_skew(t: &mut Trial) -> Result<f64> {
    let (f, i) = fisher_skew(t)?;
    Ok(4.0 * i - f)
}

fn fisher_above_twice_skew(t: &mut Trial) -> Result<f64> {
    let (f, i) = fisher_skew(t)?;
    Ok(f - 2.0 * i)
}

fn unitary_covariance(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let rho = t.state(&[d])?;
    let h = t.hermitian(d);
    let u = t.unitary(d);
    let hu = &u * &h * u.adjoint();
    let rotated = rho.conjugate(&u)?;
    let f = mismatch(qfi(&rho, &h)?, qfi(&rotated, &hu)?);
    let i = mismatch(skew_information(&rho, &h)?, skew_information(&rotated, &hu)?);
    Ok(f.min(i))
}

fn qfi_convexity(t: &mut Trial) -> Result<f64> {
    let d = t.dim();
    let weights = random::simplex_point(&mut t.rng, 3);
    let states = (0..3).map(|_| t.state(&[d])).collect::<Result<Vec<_>>>()?;
    let h = t.hermitian(d);
    let mixed = DensityMatrix::mixture(&weights, &states)?;
    let mut average = 0.0;
    for (w, s) in weights.iter().zip(&states) {
        average += w * qfi(s, &h)?;
    }
    Ok(average - qfi(&mixed, &h)?)
}

const PLUS_MINUS: [f64; 2] = [1.0, -1.0];

fn ip_nonnegative(t: &mut Trial) -> Result<f64> {
    let rho = t.state(&[2, 2])?;
    Ok(interferometric_power(&rho, &PLUS_MINUS, &t.search)?.value)
}

fn ip_below_cmin(t: &mut Trial) -> Result<f64> {
    let rho = t.state(&[2, 2])?;
    let ip = interferometric_power(&rho, &PLUS_MINUS, &t.search)?.value;
    Ok(measurement_coherence_min(&rho, &t.search)?.value - ip)
}

fn ip_zero_mixed_marginal(t: &mut Trial) -> Result<f64> {
    let b = t.state(&[2])?;
    let rho = tensor(&DensityMatrix::maximally_mixed(&[2])?, &b);
    Ok(-interferometric_power(&rho, &PLUS_MINUS, &t.search)?.value)
}

fn ip_zero_classical_quantum(t: &mut Trial) -> Result<f64> {
    let p = random::simplex_point(&mut t.rng, 2);
    let s0 = t.state(&[2])?;
    let s1 = t.state(&[2])?;
    let rho = DensityMatrix::mixture(
        &p,
        &[tensor(&DensityMatrix::basis(&[2], 0)?, &s0), tensor(&DensityMatrix::basis(&[2], 1)?, &s1)],
    )?;
    Ok(-interferometric_power(&rho, &PLUS_MINUS, &t.search)?.value)
}

fn pinching_identity(t: &mut Trial) -> Result<f64> {
    let dims = bipartite_dims(t);
    let rho = t.state(&dims)?;
    let pi = t.measurement(dims[0]);
    let check = coherence_skew_identity_check(&rho, &pi)?;
    Ok(mismatch(check.coherence, check.skew_half))
}

macro_rules! property {
    ($suite:ident, $f:ident, $tol:expr) => {
        Property {
            suite: Suite::$suite,
            name: stringify!($f),
            tolerance: $tol,
            trial: $f,
        }
    };
}

static PROPERTIES: &[Property] = &[
    property!(Distances, a1_range_identity, 1e-12),
    property!(Distances, metric_symmetry, 1e-12),
    property!(Distances, a2_unitary_invariance, 1e-10),
    property!(Distances, a3_multiplicativity, 1e-9),
    property!(Distances, a4_cptp_monotonicity, 1e-9),
    property!(Distances, a5_projector_additivity, 1e-9),
    property!(Distances, fidelity_dominates, 1e-10),
    property!(Distances, holevo_lower, 1e-12),
    property!(Distances, holevo_upper, 1e-12),
    property!(Distances, holevo_upper_sqrt, 1e-12),
    property!(Distances, qubit_closed_form, 1e-9),
    property!(Distances, sqrt_reconstruction, 1e-9),
    property!(Distances, partial_trace_of_product, 1e-12),
    property!(Coherence, closed_vs_bruteforce, 1e-6),
    property!(Coherence, closest_state_optimal, 1e-10),
    property!(Coherence, sandwich_lower, 1e-6),
    property!(Coherence, sandwich_upper, 1e-6),
    property!(Coherence, c1_faithfulness, 1e-10),
    property!(Coherence, c2_monotonicity, 1e-8),
    property!(Coherence, c3_selective_monotonicity, 1e-8),
    property!(Coherence, c4_convexity, 1e-8),
    property!(Coherence, qubit_scan, 1e-8),
    property!(Correlations, pure_discord_formula, 1e-6),
    property!(Correlations, maximally_entangled_discord, 1e-6),
    property!(Correlations, lower_bound_below_discord, 1e-6),
    property!(Correlations, lower_bound_literal_below_discord, 1e-6),
    property!(Correlations, lower_bound_exact_qubit_side, 1e-6),
    property!(Correlations, measurement_coherence_hellinger, 1e-10),
    property!(Correlations, delta_nonnegative, 1e-10),
    property!(Correlations, local_unitary_invariance, 1e-6),
    property!(Correlations, q_below_cmin, 1e-8),
    property!(Correlations, n_below_cmax, 1e-8),
    property!(Correlations, q_nonincreasing_under_b_channel, 1e-6),
    property!(Correlations, entangled_pure_q_positive, 0.0),
    property!(Correlations, pure_cmin_formula, 1e-6),
    property!(Correlations, pure_q_formula, 1e-6),
    property!(Correlations, tradeoff_symmetric_rhs, 1e-12),
    property!(Correlations, tradeoff_discord_unconstrained, 1e-6),
    property!(Correlations, tradeoff_discord_constrained, 1e-6),
    property!(Correlations, tradeoff_discord_ceiling, 1e-6),
    property!(Metrology, qfi_pure_variance, 1e-9),
    property!(Metrology, skew_pure_variance, 1e-9),
    property!(Metrology, fisher_below_twice_skew, 1e-9),
    property!(Metrology, fisher_below_four_skew, 1e-9),
    property!(Metrology, fisher_above_twice_skew, 1e-9),
    property!(Metrology, unitary_covariance, 1e-9),
    property!(Metrology, qfi_convexity, 1e-8),
    property!(Metrology, ip_nonnegative, 0.0),
    property!(Metrology, ip_below_cmin, 1e-6),
    property!(Metrology, ip_zero_mixed_marginal, 1e-9),
    property!(Metrology, ip_zero_classical_quantum, 1e-9),
    property!(Metrology, pinching_identity, 1e-10),
];
