//! Quantum advisor: a shared three-qubit state measured locally with
//! ±1-valued observables selected by each player's type.

mod advisor;
mod matrix;
mod observable;
mod planar;

pub use advisor::{QuantumAdvisor, STATE_TOL};
pub use matrix::ComplexMatrix2;
pub use observable::{BlochObservable, MeasurementSetting};
pub use planar::{
    angle_distance, gauge_canonicalize, gauge_equivalent, gauge_transform, planar_payoff, wrap_angle,
    PlanarAngles, GAUGE_TOL,
};

use crate::classical::{bell_expression, BellVariant};
use crate::error::{Error, Result};
use crate::game::{
    ActionProfile, ConditionalDistribution, PayoffKernel, PayoffTriple, PlayerId, Prior, TypeProfile,
    UtilityTable, DEFAULT_TOL,
};

/// Tolerance when checking that a user-supplied matrix is a rank-1 projector.
pub const PROJECTOR_TOL: f64 = 1e-10;

/// `p(y|x) = Tr(ρ · P_{y_A}^{A,x_A} ⊗ P_{y_B}^{B,x_B} ⊗ P_{y_C}^{C,x_C})`,
/// validated against `tol`.
pub fn quantum_distribution_with_tolerance(
    advisor: &QuantumAdvisor,
    setting: &MeasurementSetting,
    tol: f64,
) -> Result<ConditionalDistribution<f64>> {
    let projectors: [[(ComplexMatrix2, ComplexMatrix2); 2]; 3] = std::array::from_fn(|p| {
        std::array::from_fn(|t| setting.observable(PlayerId::from_index(p), t as u8).projectors())
    });
    let pick = |p: usize, t: u8, y: u8| {
        let (p0, p1) = &projectors[p][t as usize];
        if y == 1 {
            p1
        } else {
            p0
        }
    };
    let rows = std::array::from_fn(|xi| {
        let x = TypeProfile::from_index(xi);
        std::array::from_fn(|yi| {
            let y = ActionProfile::from_index(yi);
            let ops = std::array::from_fn(|p| {
                let pl = PlayerId::from_index(p);
                pick(p, x.bit(pl), y.bit(pl))
            });
            advisor.expectation(ops).re
        })
    });
    ConditionalDistribution::with_tolerance(rows, tol)
}

pub fn quantum_distribution(
    advisor: &QuantumAdvisor,
    setting: &MeasurementSetting,
) -> Result<ConditionalDistribution<f64>> {
    quantum_distribution_with_tolerance(advisor, setting, DEFAULT_TOL)
}

pub fn quantum_payoffs(
    game: &UtilityTable,
    prior: &Prior,
    advisor: &QuantumAdvisor,
    setting: &MeasurementSetting,
) -> Result<PayoffTriple<f64>> {
    let dist = quantum_distribution(advisor, setting)?;
    Ok(PayoffKernel::<f64>::new(game, prior).payoffs(&dist))
}

pub fn quantum_bell(advisor: &QuantumAdvisor, setting: &MeasurementSetting, variant: BellVariant) -> Result<f64> {
    Ok(bell_expression(&quantum_distribution(advisor, setting)?, variant))
}

/// Probability that `party` alone observes `projector` on the advisor state.
pub fn single_party_marginal(advisor: &QuantumAdvisor, projector: &ComplexMatrix2, party: PlayerId) -> Result<f64> {
    if !projector.is_rank_one_projector(PROJECTOR_TOL) {
        return Err(Error::NotProjector(format!("{:?}", projector.0)));
    }
    let id = ComplexMatrix2::IDENTITY;
    let mut ops = [&id, &id, &id];
    ops[party.index()] = projector;
    Ok(advisor.expectation(ops).re)
}

/// On GHZ every single-qubit reduced state is `I/2`, so this is `1/2` for
/// every rank-1 projector.
pub fn ghz_single_party_marginal(projector: &ComplexMatrix2, party: PlayerId) -> Result<f64> {
    single_party_marginal(&QuantumAdvisor::ghz(), projector, party)
}
