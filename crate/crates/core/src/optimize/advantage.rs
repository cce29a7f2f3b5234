use serde::Serialize;

use super::{maximize_objective, BellValues, OptimizationConfig, OptimumReport, PlanarObjective};
use crate::classical::{bell_form, profile_payoffs, DeterministicStrategyProfile};
use crate::error::Result;
use crate::game::{Prior, UtilityTable};
use crate::rational::Rational;

/// Margin below which the quantum and classical values count as equal.
pub const ADVANTAGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdvantageReport {
    /// Classical bound on the total payoff.
    pub classical_bound: Rational,
    pub bound_source: &'static str,
    /// `classical_bound / 3`, the most any fair classical outcome pays.
    pub classical_fair_cap: Rational,
    /// Mean payoff at the quantum optimum.
    pub quantum_value: f64,
    pub quantum_total: f64,
    /// The three quantum payoffs agree within [`ADVANTAGE_TOL`].
    pub quantum_fair: bool,
    /// `quantum_value − classical_fair_cap`.
    pub advantage: f64,
    pub beats_classical: bool,
    pub exceeds_classical_bound: bool,
    pub bell_values: BellValues,
    pub optimum: OptimumReport,
}

/// Compares the best fair classical payoff with the best payoff reachable by
/// equatorial measurements on the GHZ advisor.
pub fn quantum_advantage_report(
    game: &UtilityTable,
    prior: &Prior,
    config: &OptimizationConfig,
) -> Result<AdvantageReport> {
    let (classical_bound, bound_source) = match bell_form(game, prior) {
        Some(form) => (form.classical_bound(), "bell_form"),
        None => (
            DeterministicStrategyProfile::all()
                .map(|p| profile_payoffs(game, prior, &p).total())
                .max()
                .expect("64 profiles"),
            "deterministic_max",
        ),
    };
    let classical_fair_cap = &classical_bound * &Rational::new(1, 3);
    let optimum = maximize_objective(&PlanarObjective::for_game(game, prior), config)?;
    let quantum_value = optimum.value;
    let quantum_total = optimum.payoffs.total();
    let advantage = quantum_value - classical_fair_cap.to_f64();
    Ok(AdvantageReport {
        quantum_fair: optimum.payoffs.is_fair(ADVANTAGE_TOL),
        beats_classical: advantage > ADVANTAGE_TOL,
        exceeds_classical_bound: quantum_total > classical_bound.to_f64() + ADVANTAGE_TOL,
        bell_values: optimum.bell_values,
        classical_bound,
        bound_source,
        classical_fair_cap,
        quantum_value,
        quantum_total,
        advantage,
        optimum,
    })
}
