//! Derivative-free and quasi-Newton local minimizers plus a seeded
//! multi-restart driver.
//!
//! All searches minimize. Maximizations negate the objective at the call site.

use rand::Rng;

use crate::error::{Error, Result};
use crate::par;
use crate::random::{self, StateRng};

/// Multi-restart search settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Search {
    pub restarts: usize,
    pub seed: u64,
    /// Convergence threshold: gradient norm for BFGS, simplex value spread
    /// for Nelder-Mead.
    pub tolerance: f64,
    /// Iteration cap per local search (BFGS); Nelder-Mead scales it with
    /// the parameter count.
    pub max_iterations: usize,
    /// Run restarts on the rayon pool when available.
    pub parallel: bool,
}

impl Default for Search {
    fn default() -> Self {
        Self {
            restarts: 20,
            seed: 0,
            tolerance: 1e-9,
            max_iterations: 500,
            parallel: par::available(),
        }
    }
}

impl Search {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    /// Stream generator for restart `index`; stream 0 is left for callers.
    pub fn restart_rng(&self, index: usize) -> StateRng {
        random::rng(self.seed, 1 + index as u64)
    }
}

/// Result of a local search.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalMinimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Result of a multi-restart search.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    /// Index of the restart that produced the optimum.
    pub restart: usize,
    pub restarts: usize,
    pub converged_restarts: usize,
    pub evaluations: usize,
}

impl Minimum {
    pub fn converged(&self) -> bool {
        self.converged_restarts > 0
    }
}

/// Optimizer-backed value with search diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub restarts: usize,
    pub converged_restarts: usize,
    pub evaluations: usize,
}

impl Estimate {
    pub(crate) fn from_minimum(value: f64, m: &Minimum) -> Self {
        Self {
            value,
            restarts: m.restarts,
            converged_restarts: m.converged_restarts,
            evaluations: m.evaluations,
        }
    }
}

/// Nelder-Mead with standard coefficients. Stops when the spread of simplex
/// values falls below `tolerance` and the simplex diameter below
/// `sqrt(tolerance)`, or after `max_iterations`.
pub fn nelder_mead<F>(f: F, x0: &[f64], step: f64, tolerance: f64, max_iterations: usize) -> LocalMinimum
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    if n == 0 {
        let value = f(x0);
        return LocalMinimum {
            x: Vec::new(),
            value,
            iterations: 0,
            evaluations: 1,
            converged: value.is_finite(),
        };
    }
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| eval(p)).collect();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        iterations += 1;
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        let diameter = simplex[1..]
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread.abs() <= tolerance && diameter <= tolerance.sqrt() {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let reflected = along(-alpha);
        let fr = eval(&reflected);
        if fr < values[0] {
            let expanded = along(-alpha * gamma);
            let fe = eval(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[n] {
            let p = along(-alpha * rho);
            let v = eval(&p);
            (p, v)
        } else {
            let p = along(rho);
            let v = eval(&p);
            (p, v)
        };
        if fc < values[n].min(fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=n {
            for j in 0..n {
                simplex[i][j] = best[j] + sigma * (simplex[i][j] - best[j]);
            }
            values[i] = eval(&simplex[i]);
        }
    }
    let best = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    LocalMinimum {
        x: simplex[best].clone(),
        value: values[best],
        iterations,
        evaluations,
        converged,
    }
}

/// Central-difference gradient.
pub fn numerical_gradient<F>(f: &F, x: &[f64]) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            let h = 1e-6 * x[i].abs().max(1.0);
            let orig = probe[i];
            probe[i] = orig + h;
            let up = f(&probe);
            probe[i] = orig - h;
            let down = f(&probe);
            probe[i] = orig;
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// BFGS with central-difference gradients and Armijo backtracking.
/// Converged when the gradient norm drops below `tolerance`.
pub fn bfgs<F>(f: F, x0: &[f64], tolerance: f64, max_iterations: usize) -> LocalMinimum
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evaluations = 0usize;
    let counted = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };
    let mut x = x0.to_vec();
    let mut fx = counted(&x, &mut evaluations);
    let mut g = numerical_gradient(&f, &x);
    evaluations += 2 * n;
    let mut h_inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !fx.is_finite() {
            break;
        }
        if gnorm < tolerance {
            converged = true;
            break;
        }
        iterations += 1;
        let mut dir: Vec<f64> = (0..n)
            .map(|i| -(0..n).map(|j| h_inv[i][j] * g[j]).sum::<f64>())
            .collect();
        let mut slope: f64 = dir.iter().zip(&g).map(|(d, gi)| d * gi).sum();
        if slope >= 0.0 {
            for (i, row) in h_inv.iter_mut().enumerate() {
                row.iter_mut().enumerate().for_each(|(j, v)| *v = if i == j { 1.0 } else { 0.0 });
            }
            dir = g.iter().map(|v| -v).collect();
            slope = -gnorm * gnorm;
        }
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + t * d).collect();
            let ft = counted(&trial, &mut evaluations);
            if ft.is_finite() && ft <= fx + 1e-4 * t * slope {
                accepted = Some((trial, ft));
                break;
            }
            t *= 0.5;
        }
        let Some((x_new, f_new)) = accepted else {
            // no descent possible at numerical resolution
            converged = gnorm < tolerance.sqrt();
            break;
        };
        let g_new = numerical_gradient(&f, &x_new);
        evaluations += 2 * n;
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
        if sy > 1e-14 {
            let hy: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|j| h_inv[i][j] * y[j]).sum())
                .collect();
            let yhy: f64 = y.iter().zip(&hy).map(|(a, b)| a * b).sum();
            let r = 1.0 / sy;
            for i in 0..n {
                for j in 0..n {
                    h_inv[i][j] += (1.0 + yhy * r) * r * s[i] * s[j] - r * (hy[i] * s[j] + s[i] * hy[j]);
                }
            }
        }
        let small_step = (fx - f_new).abs() <= f64::EPSILON * fx.abs().max(1.0);
        x = x_new;
        fx = f_new;
        g = g_new;
        if small_step && g.iter().map(|v| v * v).sum::<f64>().sqrt() < tolerance.sqrt() {
            converged = true;
            break;
        }
    }
    LocalMinimum {
        x,
        value: fx,
        iterations,
        evaluations,
        converged,
    }
}

/// Runs `local` from `search.restarts` starting points and keeps the lowest
/// value, ties broken by restart index. `start(index, rng)` produces the
/// initial point of each restart.
pub fn multistart<S, L>(search: &Search, start: S, local: L) -> Result<Minimum>
where
    S: Fn(usize, &mut StateRng) -> Vec<f64> + Sync + Send,
    L: Fn(&[f64]) -> LocalMinimum + Sync + Send,
{
    let restarts = search.restarts.max(1);
    let results = par::map_indexed(restarts, search.parallel, |i| {
        let mut rng = search.restart_rng(i);
        local(&start(i, &mut rng))
    });
    let evaluations = results.iter().map(|r| r.evaluations).sum();
    let converged_restarts = results.iter().filter(|r| r.converged).count();
    let (restart, best) = results
        .iter()
        .enumerate()
        .filter(|(_, r)| r.value.is_finite())
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .ok_or_else(|| Error::OptimizationFailed("every restart diverged".into()))?;
    Ok(Minimum {
        x: best.x.clone(),
        value: best.value,
        restart,
        restarts,
        converged_restarts,
        evaluations,
    })
}

/// Multi-restart minimization over `R^n`: restart 0 starts at the origin,
/// the rest at uniform random angles. Each restart runs BFGS followed by a
/// Nelder-Mead polish, which also copes with kinks in the objective.
pub fn minimize<F>(search: &Search, n: usize, f: F) -> Result<Minimum>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    if n == 0 {
        let value = f(&[]);
        if !value.is_finite() {
            return Err(Error::OptimizationFailed("objective is not finite".into()));
        }
        return Ok(Minimum {
            x: Vec::new(),
            value,
            restart: 0,
            restarts: 1,
            converged_restarts: 1,
            evaluations: 1,
        });
    }
    multistart(
        search,
        |i, rng| if i == 0 { vec![0.0; n] } else { random_angles(rng, n) },
        |x0| {
            let coarse = bfgs(&f, x0, search.tolerance, search.max_iterations);
            let fine = nelder_mead(&f, &coarse.x, 0.05, search.tolerance * 1e-3, search.max_iterations * n);
            let evaluations = coarse.evaluations + fine.evaluations;
            let iterations = coarse.iterations + fine.iterations;
            let converged = coarse.converged || fine.converged;
            let best = if fine.value <= coarse.value { fine } else { coarse };
            LocalMinimum {
                converged,
                evaluations,
                iterations,
                ..best
            }
        },
    )
}

/// Uniform angles in `[-pi, pi)` for restart starting points.
pub fn random_angles(rng: &mut StateRng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect()
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, tolerance: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    while hi - lo > tolerance {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        }
    }
    // the bracket may have collapsed onto an endpoint
    let candidates = [(lo, f(lo)), (hi, f(hi)), (0.5 * (lo + hi), f(0.5 * (lo + hi)))];
    candidates
        .into_iter()
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosenbrock(x: &[f64]) -> f64 {
        (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)
    }

    #[test]
    fn nelder_mead_finds_rosenbrock_minimum() {
        let m = nelder_mead(rosenbrock, &[-1.2, 1.0], 0.5, 1e-14, 5000);
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-5 && (m.x[1] - 1.0).abs() < 1e-5, "{:?}", m.x);
    }

    #[test]
    fn bfgs_finds_rosenbrock_minimum() {
        let m = bfgs(rosenbrock, &[-1.2, 1.0], 1e-7, 1000);
        assert!(m.value < 1e-10, "{m:?}");
    }

    #[test]
    fn bfgs_quadratic_converges() {
        let f = |x: &[f64]| (x[0] - 3.0).powi(2) + 2.0 * (x[1] + 1.0).powi(2) + x[0] * x[1] * 0.5;
        let m = bfgs(f, &[0.0, 0.0], 1e-8, 200);
        assert!(m.converged);
        let g = numerical_gradient(&f, &m.x);
        assert!(g.iter().all(|v| v.abs() < 1e-6));
    }

    #[test]
    fn multistart_finds_global_minimum() {
        // two wells, the deeper at x = 2
        let f = |x: &[f64]| ((x[0] + 2.0).powi(2) - 0.5).min((x[0] - 2.0).powi(2) - 1.0);
        let search = Search::default().with_seed(3);
        let m = multistart(
            &search,
            |_, rng| vec![rng.random_range(-5.0..5.0)],
            |x0| nelder_mead(f, x0, 0.5, 1e-12, 1000),
        )
        .unwrap();
        assert!((m.x[0] - 2.0).abs() < 1e-5);
        assert!((m.value + 1.0).abs() < 1e-10);
    }

    #[test]
    fn multistart_is_order_independent() {
        let f = |x: &[f64]| (x[0] * 3.0).sin() + 0.1 * x[0] * x[0];
        let run = |parallel| {
            multistart(
                &Search::default().with_seed(9).parallel(parallel),
                |_, rng| vec![rng.random_range(-5.0..5.0)],
                |x0| nelder_mead(f, x0, 0.3, 1e-12, 1000),
            )
            .unwrap()
        };
        assert_eq!(run(true), run(false));
    }

    #[test]
    fn all_diverging_restarts_fail() {
        let err = multistart(
            &Search::default().with_restarts(3),
            |_, _| vec![0.0],
            |x0| LocalMinimum {
                x: x0.to_vec(),
                value: f64::NAN,
                iterations: 0,
                evaluations: 1,
                converged: false,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::OptimizationFailed(_)));
    }

    #[test]
    fn golden_section_interior_and_boundary() {
        let (x, v) = golden_section_max(|x| -(x - 0.3).powi(2), -1.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8 && v.abs() < 1e-15);
        let (x, _) = golden_section_max(|x| x, -1.0, 1.0, 1e-10);
        assert_eq!(x, 1.0);
    }
}
