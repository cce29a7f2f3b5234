use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bell::{bell_expression, bell_form, BellForm, BellVariant};
use super::equilibria::profile_payoffs;
use super::{
    hv_model_to_distribution, strategy_to_distribution, DeterministicStrategy,
    DeterministicStrategyProfile, HiddenComponent, HiddenVariableModel, LocalResponse,
};
use crate::game::{PayoffKernel, PayoffTriple, Prior, UtilityTable};
use crate::rational::Rational;

pub const DEFAULT_AUDIT_SEED: u64 = 0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BellExtremes {
    /// Largest `|V011|` and `|V100|` over the 64 deterministic profiles.
    pub deterministic_max_abs: [Rational; 2],
    /// Same over the sampled mixtures, if any were drawn.
    pub sampled_max_abs: Option<[Rational; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundAudit {
    /// Bound every classical total is checked against.
    pub bound: Rational,
    /// `"bell_form"` when derived from the Bell decomposition of the total
    /// payoff, `"deterministic_max"` otherwise.
    pub bound_source: &'static str,
    pub bell_form: Option<BellForm>,
    pub deterministic_max: Rational,
    pub attaining: Vec<DeterministicStrategyProfile>,
    pub deterministic_within_bound: bool,
    pub samples: usize,
    pub seed: u64,
    pub sampled_max: Option<Rational>,
    pub samples_within_bound: bool,
    /// `bound / 3`: no fair classical outcome pays more than this.
    pub fair_cap: Rational,
    pub fair_outcomes: usize,
    pub fair_cap_holds: bool,
    pub bell: BellExtremes,
}

/// A random finite mixture with 1–4 components. Responses are either
/// deterministic or stochastic with `p(1|x) ∈ {0, 1/6, …, 1}`.
pub fn random_hidden_variable_model<R: Rng>(rng: &mut R) -> HiddenVariableModel {
    let k = rng.random_range(1..=4usize);
    let raw: Vec<i64> = (0..k).map(|_| rng.random_range(1..=20)).collect();
    let total: i64 = raw.iter().sum();
    let components = raw
        .into_iter()
        .map(|w| HiddenComponent {
            weight: Rational::new(w, total),
            responses: std::array::from_fn(|_| {
                if rng.random_bool(0.5) {
                    LocalResponse::deterministic(DeterministicStrategy::ALL[rng.random_range(0..4)])
                } else {
                    LocalResponse {
                        prob_one: std::array::from_fn(|_| Rational::new(rng.random_range(0..=6), 6)),
                    }
                }
            }),
        })
        .collect();
    HiddenVariableModel::new(components).expect("generated model is valid")
}

fn max_abs(current: &mut [Rational; 2], values: [Rational; 2]) {
    for (c, v) in current.iter_mut().zip(values) {
        let v = v.abs();
        if v > *c {
            *c = v;
        }
    }
}

/// Checks the classical total-payoff bound over all deterministic profiles
/// (exactly) and over `samples` seeded random hidden-variable mixtures.
pub fn classical_bound_audit(game: &UtilityTable, prior: &Prior, samples: usize, seed: u64) -> BoundAudit {
    let totals: Vec<(DeterministicStrategyProfile, PayoffTriple<Rational>)> = DeterministicStrategyProfile::all()
        .map(|p| (p, profile_payoffs(game, prior, &p)))
        .collect();
    let deterministic_max = totals.iter().map(|(_, f)| f.total()).max().expect("64 profiles");

    let form = bell_form(game, prior);
    let (bound, bound_source) = match &form {
        Some(f) => (f.classical_bound(), "bell_form"),
        None => (deterministic_max.clone(), "deterministic_max"),
    };
    let fair_cap = &bound * &Rational::new(1, 3);

    let mut fair_outcomes = 0;
    let mut fair_cap_holds = true;
    let mut check_fair = |f: &PayoffTriple<Rational>| {
        if f.is_fair(0.0) {
            fair_outcomes += 1;
            fair_cap_holds &= f.min() <= fair_cap;
        }
    };

    let mut det_bell = [Rational::zero(), Rational::zero()];
    for (prof, f) in &totals {
        check_fair(f);
        let d = strategy_to_distribution(prof);
        max_abs(&mut det_bell, BellVariant::ALL.map(|v| bell_expression(&d, v)));
    }
    let attaining = totals
        .iter()
        .filter(|(_, f)| f.total() == deterministic_max)
        .map(|(p, _)| *p)
        .collect();

    let kernel = PayoffKernel::new(game, prior);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled_max: Option<Rational> = None;
    let mut sampled_bell = [Rational::zero(), Rational::zero()];
    for _ in 0..samples {
        let model = random_hidden_variable_model(&mut rng);
        let d = hv_model_to_distribution(&model);
        let f = kernel.payoffs(&d);
        check_fair(&f);
        let t = f.total();
        if sampled_max.as_ref().is_none_or(|m| t > *m) {
            sampled_max = Some(t);
        }
        max_abs(&mut sampled_bell, BellVariant::ALL.map(|v| bell_expression(&d, v)));
    }

    BoundAudit {
        deterministic_within_bound: deterministic_max <= bound,
        samples_within_bound: sampled_max.as_ref().is_none_or(|m| *m <= bound),
        bound,
        bound_source,
        bell_form: form,
        deterministic_max,
        attaining,
        samples,
        seed,
        sampled_max,
        fair_cap,
        fair_outcomes,
        fair_cap_holds,
        bell: BellExtremes {
            deterministic_max_abs: det_bell,
            sampled_max_abs: (samples > 0).then_some(sampled_bell),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_bound_is_nine_quarters() {
        let audit = classical_bound_audit(&UtilityTable::table1(), &Prior::uniform(), 50, 7);
        assert_eq!(audit.bound, Rational::new(9, 4));
        assert_eq!(audit.bound_source, "bell_form");
        assert_eq!(audit.deterministic_max, Rational::new(9, 4));
        assert!(audit.deterministic_within_bound && audit.samples_within_bound);
        assert_eq!(audit.fair_cap, Rational::new(3, 4));
        assert!(audit.fair_cap_holds);
        assert_eq!(audit.bell.deterministic_max_abs, [Rational::integer(2), Rational::integer(2)]);
    }

    #[test]
    fn zero_samples_still_audits() {
        let audit = classical_bound_audit(&UtilityTable::table1(), &Prior::uniform(), 0, 0);
        assert_eq!(audit.sampled_max, None);
        assert!(audit.samples_within_bound);
        assert!(audit.bell.sampled_max_abs.is_none());
        assert_eq!(audit.attaining.len(), 16);
    }

    #[test]
    fn seeded_audit_is_reproducible() {
        let g = UtilityTable::table1();
        let a = classical_bound_audit(&g, &Prior::uniform(), 30, 11);
        let b = classical_bound_audit(&g, &Prior::uniform(), 30, 11);
        assert_eq!(a, b);
    }
}
