//! Unilateral deviation search.
//!
//! A player's payoff is affine in the Bloch vector of each of their two
//! observables, `F = c + r_0·n_0 + r_1·n_1`, so the gradient vectors `r_t`
//! are read off from payoffs at `±x̂, ±ŷ, ±ẑ` and the best response points
//! along them. A simplex polish from there guards against numerical slack.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::{nelder_mead, OptimizationConfig};
use crate::error::Result;
use crate::game::{PayoffKernel, PlayerId, Prior, UtilityTable};
use crate::quantum::{quantum_distribution, BlochObservable, MeasurementSetting, QuantumAdvisor};

/// Improvements below this certify a numerical equilibrium.
pub const CERTIFICATION_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Deviations restricted to `θ = π/2`.
    Planar,
    /// Any direction on the Bloch sphere.
    FullSphere,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlayerImprovement {
    pub player: PlayerId,
    pub current: f64,
    pub best: f64,
    /// `best − current`, never negative.
    pub improvement: f64,
    /// Observables for types 0 and 1 attaining `best`.
    pub deviation: [BlochObservable; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestResponseVerdict {
    pub mode: SearchMode,
    pub players: Vec<PlayerImprovement>,
    pub max_improvement: f64,
    pub certified: bool,
}

struct PlayerPayoff<'a> {
    kernel: &'a PayoffKernel<f64>,
    advisor: &'a QuantumAdvisor,
    base: MeasurementSetting,
    player: PlayerId,
}

impl PlayerPayoff<'_> {
    fn eval(&self, pair: [BlochObservable; 2]) -> Result<f64> {
        let setting = self.base.with_player(self.player, pair);
        let dist = quantum_distribution(self.advisor, &setting)?;
        Ok(*self.kernel.payoffs(&dist).get(self.player))
    }

    /// `r_t` for own type `t`, the other observable held at its current value.
    fn gradient(&self, t: usize) -> Result<[f64; 3]> {
        let current = self.base.player(self.player);
        let axes = [
            (BlochObservable::new(FRAC_PI_2, 0.0), BlochObservable::new(FRAC_PI_2, std::f64::consts::PI)),
            (BlochObservable::new(FRAC_PI_2, FRAC_PI_2), BlochObservable::new(FRAC_PI_2, -FRAC_PI_2)),
            (BlochObservable::new(0.0, 0.0), BlochObservable::new(std::f64::consts::PI, 0.0)),
        ];
        let mut r = [0.0; 3];
        for (k, (plus, minus)) in axes.into_iter().enumerate() {
            let mut hi = current;
            hi[t] = plus;
            let mut lo = current;
            lo[t] = minus;
            r[k] = (self.eval(hi)? - self.eval(lo)?) / 2.0;
        }
        Ok(r)
    }
}

fn pair_from_params(mode: SearchMode, x: &[f64; 4]) -> [BlochObservable; 2] {
    match mode {
        SearchMode::Planar => [BlochObservable::planar(x[1]), BlochObservable::planar(x[3])],
        SearchMode::FullSphere => [BlochObservable::new(x[0], x[1]), BlochObservable::new(x[2], x[3])],
    }
}

fn player_best_response(
    payoff: &PlayerPayoff<'_>,
    mode: SearchMode,
    config: &OptimizationConfig,
) -> Result<PlayerImprovement> {
    let current_pair = payoff.base.player(payoff.player);
    let current = payoff.eval(current_pair)?;

    let mut aligned = current_pair;
    for (t, slot) in aligned.iter_mut().enumerate() {
        let [rx, ry, rz] = payoff.gradient(t)?;
        let norm = match mode {
            SearchMode::Planar => rx.hypot(ry),
            SearchMode::FullSphere => rx.hypot(ry).hypot(rz),
        };
        if norm > f64::EPSILON {
            let phi = ry.atan2(rx);
            *slot = match mode {
                SearchMode::Planar => BlochObservable::planar(phi),
                SearchMode::FullSphere => BlochObservable::new((rz / norm).clamp(-1.0, 1.0).acos(), phi),
            };
        }
    }

    let mut best_pair = current_pair;
    let mut best = current;
    let aligned_value = payoff.eval(aligned)?;
    if aligned_value > best {
        best = aligned_value;
        best_pair = aligned;
    }

    // failed evaluations score NaN, which the simplex ranks last
    let start = [aligned[0].theta(), aligned[0].phi(), aligned[1].theta(), aligned[1].phi()];
    let polished = nelder_mead(
        |x: &[f64; 4]| payoff.eval(pair_from_params(mode, x)).map_or(f64::NAN, |v| -v),
        start,
        &config.nm_options(1e-3),
    );
    let polished_pair = pair_from_params(mode, &polished.x);
    let polished_value = payoff.eval(polished_pair)?;
    if polished_value > best {
        best = polished_value;
        best_pair = polished_pair;
    }

    Ok(PlayerImprovement {
        player: payoff.player,
        current,
        best,
        improvement: best - current,
        deviation: best_pair,
    })
}

/// For each player in turn, maximizes their own payoff over their two
/// observables with the other players held at `candidate`.
pub fn best_response_check_game(
    game: &UtilityTable,
    prior: &Prior,
    advisor: &QuantumAdvisor,
    candidate: &MeasurementSetting,
    mode: SearchMode,
    config: &OptimizationConfig,
) -> Result<BestResponseVerdict> {
    config.validate()?;
    let kernel = PayoffKernel::new(game, prior);
    let players = PlayerId::ALL
        .into_iter()
        .map(|player| {
            let payoff = PlayerPayoff {
                kernel: &kernel,
                advisor,
                base: *candidate,
                player,
            };
            player_best_response(&payoff, mode, config)
        })
        .collect::<Result<Vec<_>>>()?;
    let max_improvement = players.iter().map(|p| p.improvement).fold(0.0, f64::max);
    Ok(BestResponseVerdict {
        mode,
        players,
        max_improvement,
        certified: max_improvement < CERTIFICATION_THRESHOLD,
    })
}

/// [`best_response_check_game`] on the built-in game with the GHZ advisor.
pub fn best_response_check(
    candidate: &MeasurementSetting,
    mode: SearchMode,
    config: &OptimizationConfig,
) -> Result<BestResponseVerdict> {
    best_response_check_game(
        &UtilityTable::table1(),
        &Prior::uniform(),
        &QuantumAdvisor::ghz(),
        candidate,
        mode,
        config,
    )
}
