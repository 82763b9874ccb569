//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria whose stated inequality does not hold mathematically are run as
//! stated and reported as FAIL; the corrected forms follow as `info` lines.

use std::process::Command;
use std::time::{Duration, Instant};

use affqis::sweep::{sweep, Family, Grid, SweepRow};
use affqis::verify::{run_properties, PropertyReport, VerifyOptions};
use affqis::Search;

const SEED: u64 = 2024;

struct Outcome {
    passed: bool,
    lines: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            passed: true,
            lines: Vec::new(),
        }
    }

    /// A required part of the criterion.
    fn require(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.lines.push(format!("    [{}] {line}", if ok { "ok" } else { "violated" }));
    }

    /// A corrected or alternative reading, reported but not graded.
    fn info(&mut self, line: String) {
        self.lines.push(format!("    info: {line}"));
    }

    fn properties(&mut self, trials: usize, names: &[&str]) {
        for p in properties(trials, names) {
            self.require(p.holds(), describe(&p));
        }
    }

    fn info_properties(&mut self, trials: usize, names: &[&str]) {
        for p in properties(trials, names) {
            self.info(format!("{} ({})", describe(&p), if p.holds() { "holds" } else { "violated" }));
        }
    }
}

fn properties(trials: usize, names: &[&str]) -> Vec<PropertyReport> {
    run_properties(names, &VerifyOptions::new(trials, SEED))
        .expect("known properties")
        .properties
}

fn describe(p: &PropertyReport) -> String {
    format!(
        "{}: {}/{} within {:e}, worst slack {:.3e}, errors {}",
        p.property, p.passed, p.trials, p.tolerance, p.worst_slack, p.errors
    )
}

fn search() -> Search {
    Search::default().with_seed(SEED)
}

fn grid_gap(outcome: &mut Outcome, label: &str, family: Family, from: f64, to: f64, graded: bool) -> Vec<SweepRow> {
    let rows = sweep(family, &Grid::new(from, to, 21).expect("valid grid"), &search()).expect("sweep runs");
    let (worst, at) = rows
        .iter()
        .map(|r| (r.gap, r.param))
        .fold((0.0, from), |acc, x| if x.0 > acc.0 { x } else { acc });
    let line = format!("{label}: 21 points, max |closed - optimizer| = {worst:.3e} at t = {at}");
    if graded {
        outcome.require(worst <= 1e-5, line);
    } else {
        outcome.info(line);
    }
    rows
}

fn anchor(outcome: &mut Outcome, label: &str, closed: f64, optimizer: f64, expected: f64) {
    let ok = (closed - expected).abs() <= 1e-12 && (optimizer - expected).abs() <= 1e-5;
    outcome.require(
        ok,
        format!("{label}: closed {closed:.12}, optimizer {optimizer:.12}, expected {expected:.12}"),
    );
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    o.properties(300, &["closed_vs_bruteforce", "closest_state_optimal"]);
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    o.properties(300, &["sandwich_lower", "sandwich_upper"]);
    o.properties(1000, &["holevo_lower", "holevo_upper"]);
    o.info_properties(1000, &["holevo_upper_sqrt"]);
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    o.properties(1000, &["qubit_closed_form"]);
    o.properties(100, &["qubit_scan"]);
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    o.properties(
        500,
        &[
            "a1_range_identity",
            "metric_symmetry",
            "a2_unitary_invariance",
            "a3_multiplicativity",
            "a4_cptp_monotonicity",
            "a5_projector_additivity",
        ],
    );
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    o.properties(
        500,
        &["c1_faithfulness", "c2_monotonicity", "c3_selective_monotonicity", "c4_convexity"],
    );
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    o.properties(100, &["pure_discord_formula"]);
    o.properties(20, &["maximally_entangled_discord"]);
    o.properties(500, &["lower_bound_below_discord"]);
    o.properties(100, &["lower_bound_exact_qubit_side"]);
    o.info_properties(500, &["lower_bound_literal_below_discord"]);
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    o.properties(500, &["measurement_coherence_hellinger"]);
    o
}

fn criterion_8() -> Outcome {
    use affqis::correlations::correlated_coherence_q;
    use affqis::states::{BellDiagonalSpec, IsotropicSpec, WernerSpec};

    let mut o = Outcome::new();
    let s = search();
    let bell = BellDiagonalSpec::new([1.0, -1.0, 1.0]).unwrap();
    anchor(&mut o, "Bell state", bell.q_closed(), correlated_coherence_q(&bell.state(), &s).unwrap().value, 0.5);
    let w = WernerSpec::new(2, 1.0).unwrap();
    anchor(&mut o, "Werner(2, 1)", w.q_closed(), correlated_coherence_q(&w.state(), &s).unwrap().value, 1.0 / 6.0);
    let iso = IsotropicSpec::new(2, 1.0).unwrap();
    anchor(&mut o, "isotropic(2, 1)", iso.q_closed(), correlated_coherence_q(&iso.state(), &s).unwrap().value, 0.5);

    grid_gap(&mut o, "werner m=2, x in [-1, 1]", Family::Werner { m: 2 }, -1.0, 1.0, true);
    grid_gap(&mut o, "isotropic m=2, x in [0, 1]", Family::Isotropic { m: 2 }, 0.0, 1.0, true);
    grid_gap(
        &mut o,
        "bell-diagonal c = t(1, -1, 1), t in [0, 1]",
        Family::BellDiagonal { direction: [1.0, -1.0, 1.0] },
        0.0,
        1.0,
        true,
    );
    let direction = [0.8, -0.4, 0.2];
    let rows = grid_gap(
        &mut o,
        "bell-diagonal c = t(0.8, -0.4, 0.2), t in [0, 1]",
        Family::BellDiagonal { direction },
        0.0,
        1.0,
        true,
    );
    let axis_gap = rows
        .iter()
        .map(|r| {
            let c = direction.map(|d| r.param * d);
            (BellDiagonalSpec::new(c).unwrap().q_axis_min() - r.optimizer).abs()
        })
        .fold(0.0, f64::max);
    o.info(format!("bell-diagonal off-axis, minimum over axis assignments: max gap {axis_gap:.3e}"));
    let rows = grid_gap(&mut o, "pure s = (t, 1 - t), t in [0, 1]", Family::Pure, 0.0, 1.0, true);
    let fourier_gap = rows
        .iter()
        .map(|r| {
            let s = [r.param, 1.0 - r.param];
            (affqis::states::pure_q_fourier(&s, &[2, 2]).unwrap() - r.closed_form).abs()
        })
        .fold(0.0, f64::max);
    o.info(format!(
        "pure closed form vs coherence difference at the Fourier basis: max gap {fourier_gap:.3e}"
    ));
    o.properties(100, &["pure_cmin_formula", "pure_q_formula"]);
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    o.properties(500, &["fisher_below_twice_skew"]);
    o.properties(200, &["ip_below_cmin", "ip_zero_mixed_marginal"]);
    o.info_properties(500, &["fisher_below_four_skew", "fisher_above_twice_skew"]);
    o.info_properties(200, &["ip_nonnegative", "ip_zero_classical_quantum"]);
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    let run = || {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_affqis"))
            .args(["verify", "all", "100", "7"])
            .output()
            .expect("binary runs");
        (out, start.elapsed())
    };
    let (first, t1) = run();
    let (second, t2) = run();
    let code = first.status.code();
    o.require(
        !first.stdout.is_empty() && first.stdout == second.stdout && code == second.status.code(),
        format!("two runs byte-identical ({} bytes, exit {:?})", first.stdout.len(), code),
    );
    let budget = Duration::from_secs(600);
    o.require(
        t1 < budget && t2 < budget,
        format!("runtimes {:.1}s and {:.1}s under {}s", t1.as_secs_f64(), t2.as_secs_f64(), budget.as_secs()),
    );
    o.info(format!("exit code {code:?}; violated properties are listed on stderr"));
    o
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("closed-form coherence vs brute force", criterion_1),
        ("sandwich and Holevo chain", criterion_2),
        ("single-qubit closed form and scan", criterion_3),
        ("affinity axioms", criterion_4),
        ("coherence axioms", criterion_5),
        ("discord formulas and lower bound", criterion_6),
        ("measurement coherence equals Hellinger form", criterion_7),
        ("family closed forms", criterion_8),
        ("metrology chain", criterion_9),
        ("determinism and runtime", criterion_10),
    ];
    let only: Option<usize> = std::env::var("AFFQIS_CRITERION").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if only.is_some_and(|k| k != n) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        println!(
            "criterion {n:>2} {}: {title} ({:.1}s)",
            if outcome.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for line in &outcome.lines {
            println!("{line}");
        }
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("{failed} criterion(s) failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
