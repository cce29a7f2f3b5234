//! Maximization of the GHZ payoff over equatorial measurement angles and
//! best-response certification.
//!
//! Angles live on a torus and the payoff is invariant under the phase gauge,
//! so the search runs over `(φ2, φ4, φ5, φ6)` with `φ1 = φ3 = 0`. Every
//! restart draws from its own random stream, which keeps the first `k`
//! restarts identical whatever the total count.

mod advantage;
mod best_response;
mod nelder_mead;

pub use advantage::{quantum_advantage_report, AdvantageReport};
pub use best_response::{
    best_response_check, best_response_check_game, BestResponseVerdict, PlayerImprovement, SearchMode,
    CERTIFICATION_THRESHOLD,
};
pub use nelder_mead::{nelder_mead, NelderMeadOptions, NelderMeadResult};

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{bell_expression, BellVariant};
use crate::error::{Error, Result};
use crate::game::{ConditionalDistribution, PayoffKernel, PayoffTriple, Prior, UtilityTable};
use crate::quantum::{
    gauge_canonicalize, planar_payoff, quantum_distribution, MeasurementSetting, PlanarAngles, QuantumAdvisor,
};

/// Runs whose values differ by at most this are treated as equally good;
/// the lexicographically smallest canonical angles are then reported.
pub const TIE_TOL: f64 = 1e-10;

/// Local maxima closer than this (per angle, modulo 2π) are merged.
pub const DISTINCT_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizationConfig {
    pub restarts: usize,
    /// Grid points per angle for the initial scan.
    pub grid: usize,
    /// Value spread at which a simplex run stops.
    pub tol: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        OptimizationConfig {
            restarts: 16,
            grid: 16,
            tol: 1e-12,
            max_iterations: 2000,
            seed: 0,
        }
    }
}

impl OptimizationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid < 8 {
            return Err(Error::Config(format!("grid resolution must be at least 8, got {}", self.grid)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Config(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max iterations must be at least 1".into()));
        }
        Ok(())
    }

    fn nm_options(&self, initial_step: f64) -> NelderMeadOptions {
        NelderMeadOptions {
            f_tol: self.tol,
            x_tol: self.tol.sqrt().max(1e-9),
            max_iterations: self.max_iterations,
            initial_step,
        }
    }
}

/// Function of the six planar angles being maximized.
#[derive(Debug, Clone)]
pub enum PlanarObjective {
    /// Closed-form common payoff of the built-in game.
    ClosedForm,
    /// Mean of the three players' payoffs, evaluated through the trace
    /// formula on the GHZ state.
    Game { game: UtilityTable, prior: Prior, kernel: PayoffKernel<f64> },
}

impl PlanarObjective {
    /// Uses the closed form when `game` and `prior` are the built-in ones.
    pub fn for_game(game: &UtilityTable, prior: &Prior) -> Self {
        if *game == UtilityTable::table1() && *prior == Prior::uniform() {
            PlanarObjective::ClosedForm
        } else {
            PlanarObjective::Game {
                game: game.clone(),
                prior: prior.clone(),
                kernel: PayoffKernel::new(game, prior),
            }
        }
    }

    fn game(&self) -> (UtilityTable, Prior) {
        match self {
            PlanarObjective::ClosedForm => (UtilityTable::table1(), Prior::uniform()),
            PlanarObjective::Game { game, prior, .. } => (game.clone(), prior.clone()),
        }
    }

    pub fn value(&self, angles: &PlanarAngles) -> f64 {
        match self {
            PlanarObjective::ClosedForm => planar_payoff(angles),
            PlanarObjective::Game { kernel, .. } => kernel.payoffs(&ghz_planar_distribution(angles)).total() / 3.0,
        }
    }
}

fn ghz_planar_distribution(angles: &PlanarAngles) -> ConditionalDistribution<f64> {
    quantum_distribution(&QuantumAdvisor::ghz(), &MeasurementSetting::planar(angles))
        .expect("projective measurements on a valid state give a distribution")
}

/// A local maximum in canonical gauge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalMaximum {
    pub angles: PlanarAngles,
    pub value: f64,
    /// Number of restarts that ended here.
    pub hits: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellValues {
    #[serde(rename = "V011")]
    pub v011: f64,
    #[serde(rename = "V100")]
    pub v100: f64,
}

impl BellValues {
    pub fn of(dist: &ConditionalDistribution<f64>) -> Self {
        BellValues {
            v011: bell_expression(dist, BellVariant::V011),
            v100: bell_expression(dist, BellVariant::V100),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimumReport {
    /// Canonical gauge: `φ1 = φ3 = 0`.
    pub angles: PlanarAngles,
    pub value: f64,
    pub payoffs: PayoffTriple<f64>,
    pub bell_values: BellValues,
    /// The run that produced `angles` met the tolerance before the
    /// iteration cap.
    pub converged: bool,
    /// Distinct local maxima reached, best first. Not guaranteed complete.
    pub local_maxima: Vec<LocalMaximum>,
    pub evaluations: usize,
    pub config: OptimizationConfig,
}

#[derive(Debug, Clone, Copy)]
struct Run {
    angles: PlanarAngles,
    value: f64,
    converged: bool,
    evaluations: usize,
}

fn reduced(angles: &PlanarAngles) -> [f64; 4] {
    let p = angles.as_array();
    [p[1], p[3], p[4], p[5]]
}

fn expand(r: &[f64; 4]) -> PlanarAngles {
    PlanarAngles::new([0.0, r[0], 0.0, r[1], r[2], r[3]])
}

fn lex_cmp(a: &PlanarAngles, b: &PlanarAngles) -> Ordering {
    reduced(a)
        .iter()
        .zip(reduced(b).iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn grid_coord(i: usize, r: usize) -> f64 {
    -PI + TAU * (i as f64 + 0.5) / r as f64
}

/// Grid points that are no worse than any of their 8 axis neighbours, best
/// first.
fn grid_maxima(objective: &PlanarObjective, r: usize) -> Vec<[f64; 4]> {
    let n = r * r * r * r;
    let point = |idx: usize| -> [usize; 4] { [idx / (r * r * r), (idx / (r * r)) % r, (idx / r) % r, idx % r] };
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|idx| objective.value(&expand(&point(idx).map(|i| grid_coord(i, r)))))
        .collect();
    let index = |c: [usize; 4]| ((c[0] * r + c[1]) * r + c[2]) * r + c[3];
    let mut maxima: Vec<usize> = (0..n)
        .filter(|&idx| {
            let c = point(idx);
            (0..4).all(|axis| {
                [1, r - 1].iter().all(|&step| {
                    let mut nb = c;
                    nb[axis] = (nb[axis] + step) % r;
                    values[index(nb)] <= values[idx]
                })
            })
        })
        .collect();
    maxima.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    maxima.into_iter().map(|idx| point(idx).map(|i| grid_coord(i, r))).collect()
}

fn restart_rng(seed: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}

fn local_ascent(objective: &PlanarObjective, start: [f64; 4], config: &OptimizationConfig, step: f64) -> Run {
    let f = |x: &[f64; 4]| -objective.value(&expand(x));
    let first = nelder_mead(f, start, &config.nm_options(step));
    // restart from the best vertex with a small simplex to shake off
    // premature collapse
    let second = nelder_mead(f, first.x, &config.nm_options(step.min(1e-2)));
    let best = if second.f <= first.f { second } else { first };
    let angles = expand(&best.x);
    Run {
        angles,
        value: objective.value(&angles),
        converged: first.converged && second.converged,
        evaluations: first.evaluations + second.evaluations,
    }
}

/// Multi-start maximization of `objective` in canonical gauge.
pub fn maximize_objective(objective: &PlanarObjective, config: &OptimizationConfig) -> Result<OptimumReport> {
    config.validate()?;
    let r = config.grid;
    let cell = TAU / r as f64;
    let seeds = grid_maxima(objective, r);

    let runs: Vec<Run> = (0..config.restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng = restart_rng(config.seed, k);
            let start: [f64; 4] = match seeds.get(k) {
                Some(p) => std::array::from_fn(|i| p[i] + rng.random_range(-0.25..0.25) * cell),
                None => std::array::from_fn(|_| rng.random_range(-PI..PI)),
            };
            local_ascent(objective, start, config, cell / 2.0)
        })
        .collect();

    let best_value = runs.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    let chosen = runs
        .iter()
        .filter(|r| r.value >= best_value - TIE_TOL)
        .min_by(|a, b| lex_cmp(&a.angles, &b.angles))
        .expect("at least one restart");

    let mut maxima: Vec<LocalMaximum> = Vec::new();
    for run in &runs {
        let canon = gauge_canonicalize(&run.angles);
        match maxima.iter_mut().find(|m| m.angles.distance(&canon) <= DISTINCT_TOL) {
            Some(m) => {
                m.hits += 1;
                if run.value > m.value {
                    m.value = run.value;
                    m.angles = canon;
                }
            }
            None => maxima.push(LocalMaximum {
                angles: canon,
                value: run.value,
                hits: 1,
            }),
        }
    }
    maxima.sort_by(|a, b| b.value.total_cmp(&a.value).then_with(|| lex_cmp(&a.angles, &b.angles)));

    let (game, prior) = objective.game();
    let setting = MeasurementSetting::planar(&chosen.angles);
    let dist = quantum_distribution(&QuantumAdvisor::ghz(), &setting)?;
    let payoffs = PayoffKernel::new(&game, &prior).payoffs(&dist);

    Ok(OptimumReport {
        angles: chosen.angles,
        value: best_value,
        payoffs,
        bell_values: BellValues::of(&dist),
        converged: chosen.converged,
        local_maxima: maxima,
        evaluations: r.pow(4) + runs.iter().map(|r| r.evaluations).sum::<usize>(),
        config: *config,
    })
}

/// Maximizes the common payoff of the built-in game.
pub fn maximize_planar(config: &OptimizationConfig) -> Result<OptimumReport> {
    maximize_objective(&PlanarObjective::ClosedForm, config)
}
