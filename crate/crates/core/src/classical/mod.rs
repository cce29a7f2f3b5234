//! Local hidden-variable (classical advisor) strategies.

mod audit;
mod bell;
mod equilibria;

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

pub use audit::{classical_bound_audit, random_hidden_variable_model, BellExtremes, BoundAudit, DEFAULT_AUDIT_SEED};
pub use bell::{bell_expression, bell_form, bell_value, BellExpression, BellForm, BellVariant};
pub use equilibria::{
    enumerate_deterministic_equilibria, is_nash, profile_payoffs, Deviation, EquilibriumReport,
    NashVerdict,
};

use crate::error::{Error, Result};
use crate::game::{ActionProfile, ConditionalDistribution, PlayerId, TypeProfile};
use crate::rational::Rational;

/// A player's action as a function of their own type, `(y(0), y(1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeterministicStrategy {
    pub on_zero: u8,
    pub on_one: u8,
}

impl DeterministicStrategy {
    /// `(0,0), (0,1), (1,0), (1,1)`.
    pub const ALL: [DeterministicStrategy; 4] = [
        DeterministicStrategy::new(0, 0),
        DeterministicStrategy::new(0, 1),
        DeterministicStrategy::new(1, 0),
        DeterministicStrategy::new(1, 1),
    ];

    pub const fn new(on_zero: u8, on_one: u8) -> Self {
        assert!(on_zero < 2 && on_one < 2);
        DeterministicStrategy { on_zero, on_one }
    }

    pub fn respond(self, own_type: u8) -> u8 {
        if own_type == 0 {
            self.on_zero
        } else {
            self.on_one
        }
    }

    pub fn index(self) -> usize {
        (2 * self.on_zero + self.on_one) as usize
    }
}

impl fmt::Display for DeterministicStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.on_zero, self.on_one)
    }
}

impl Serialize for DeterministicStrategy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.on_zero, self.on_one].serialize(s)
    }
}

/// One deterministic strategy per player; 64 in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeterministicStrategyProfile(pub [DeterministicStrategy; 3]);

impl DeterministicStrategyProfile {
    pub fn new(a: DeterministicStrategy, b: DeterministicStrategy, c: DeterministicStrategy) -> Self {
        DeterministicStrategyProfile([a, b, c])
    }

    /// Shorthand from `(y(0), y(1))` pairs.
    pub fn from_pairs(a: (u8, u8), b: (u8, u8), c: (u8, u8)) -> Self {
        Self::new(
            DeterministicStrategy::new(a.0, a.1),
            DeterministicStrategy::new(b.0, b.1),
            DeterministicStrategy::new(c.0, c.1),
        )
    }

    /// All 64 profiles, A-major.
    pub fn all() -> impl Iterator<Item = Self> {
        (0..64).map(|i| {
            Self::new(
                DeterministicStrategy::ALL[i / 16],
                DeterministicStrategy::ALL[(i / 4) % 4],
                DeterministicStrategy::ALL[i % 4],
            )
        })
    }

    pub fn strategy(&self, p: PlayerId) -> DeterministicStrategy {
        self.0[p.index()]
    }

    pub fn with(mut self, p: PlayerId, s: DeterministicStrategy) -> Self {
        self.0[p.index()] = s;
        self
    }

    pub fn actions(&self, x: TypeProfile) -> ActionProfile {
        let [a, b, c] = PlayerId::ALL.map(|p| self.strategy(p).respond(x.bit(p)));
        ActionProfile::new(a, b, c)
    }

    /// Profile of the relabelled game: player `τ(i)` plays `s_i`.
    pub fn transposed(&self, t: crate::game::Transposition) -> Self {
        let mut out = *self;
        for p in PlayerId::ALL {
            out.0[t.apply(p).index()] = self.strategy(p);
        }
        out
    }
}

impl fmt::Display for DeterministicStrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "A={a} B={b} C={c}")
    }
}

impl Serialize for DeterministicStrategyProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        for p in PlayerId::ALL {
            m.serialize_entry(&p, &self.strategy(p))?;
        }
        m.end()
    }
}

/// `p(y = 1 | x, λ)` for a single player, indexed by own type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalResponse {
    pub prob_one: [Rational; 2],
}

impl LocalResponse {
    pub fn new(prob_one: [Rational; 2]) -> Result<Self> {
        for (t, p) in prob_one.iter().enumerate() {
            if p.is_negative() || *p > Rational::one() {
                return Err(Error::HiddenVariable(format!(
                    "response row for type {t} has p(1) = {p} outside [0, 1]"
                )));
            }
        }
        Ok(LocalResponse { prob_one })
    }

    pub fn deterministic(s: DeterministicStrategy) -> Self {
        LocalResponse {
            prob_one: [Rational::integer(s.on_zero as i64), Rational::integer(s.on_one as i64)],
        }
    }

    pub fn prob(&self, own_type: u8, action: u8) -> Rational {
        let p1 = &self.prob_one[own_type as usize];
        if action == 1 {
            p1.clone()
        } else {
            Rational::one() - p1
        }
    }
}

/// One value of the hidden variable: its weight and each player's response.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiddenComponent {
    pub weight: Rational,
    pub responses: [LocalResponse; 3],
}

/// Finite mixture `Σ_λ ρ(λ) p_A(y_A|x_A,λ) p_B(y_B|x_B,λ) p_C(y_C|x_C,λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiddenVariableModel {
    components: Vec<HiddenComponent>,
}

impl HiddenVariableModel {
    pub fn new(components: Vec<HiddenComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::HiddenVariable("no components".into()));
        }
        if let Some(c) = components.iter().find(|c| c.weight.is_negative()) {
            return Err(Error::HiddenVariable(format!("negative weight {}", c.weight)));
        }
        let total: Rational = components.iter().map(|c| &c.weight).sum();
        if total != Rational::one() {
            return Err(Error::HiddenVariable(format!("weights sum to {total}, expected 1")));
        }
        for c in &components {
            for r in &c.responses {
                LocalResponse::new(r.prob_one.clone())?;
            }
        }
        Ok(HiddenVariableModel { components })
    }

    pub fn point_mass(profile: DeterministicStrategyProfile) -> Self {
        HiddenVariableModel {
            components: vec![HiddenComponent {
                weight: Rational::one(),
                responses: profile.0.map(LocalResponse::deterministic),
            }],
        }
    }

    /// Three-bit advice `λ = (λ_A, λ_B, λ_C)` with `ρ` indexed like a type
    /// profile; player `i` looks only at `λ_i` and uses `responses[i][λ_i]`.
    pub fn three_bit(rho: [Rational; 8], responses: [[LocalResponse; 2]; 3]) -> Result<Self> {
        let components = TypeProfile::all()
            .map(|lambda| HiddenComponent {
                weight: rho[lambda.index()].clone(),
                responses: PlayerId::ALL
                    .map(|p| responses[p.index()][lambda.bit(p) as usize].clone()),
            })
            .collect();
        Self::new(components)
    }

    pub fn components(&self) -> &[HiddenComponent] {
        &self.components
    }
}

/// `p(y|x) = δ_{y_A, s_A(x_A)} δ_{y_B, s_B(x_B)} δ_{y_C, s_C(x_C)}`.
pub fn strategy_to_distribution(profile: &DeterministicStrategyProfile) -> ConditionalDistribution<Rational> {
    ConditionalDistribution::from_fn(|x, y| {
        if profile.actions(x) == y {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
    .expect("deterministic rows are normalized")
}

pub fn hv_model_to_distribution(model: &HiddenVariableModel) -> ConditionalDistribution<Rational> {
    ConditionalDistribution::from_fn(|x, y| {
        model
            .components
            .iter()
            .map(|c| {
                PlayerId::ALL.iter().fold(c.weight.clone(), |acc, &p| {
                    acc * c.responses[p.index()].prob(x.bit(p), y.bit(p))
                })
            })
            .sum()
    })
    .expect("mixtures of normalized products are normalized")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::check_no_signalling;

    #[test]
    fn sixty_four_distinct_profiles() {
        let all: std::collections::BTreeSet<_> = DeterministicStrategyProfile::all().collect();
        assert_eq!(all.len(), 64);
    }

    #[test]
    fn copy_own_type_for_a_only() {
        let prof = DeterministicStrategyProfile::from_pairs((0, 1), (0, 0), (0, 0));
        let d = strategy_to_distribution(&prof);
        for x in TypeProfile::all() {
            for y in ActionProfile::all() {
                let expected = y == ActionProfile::new(x.bit(PlayerId::A), 0, 0);
                assert_eq!(d.prob(y, x).is_one(), expected);
                assert_eq!(d.prob(y, x).is_zero(), !expected);
            }
        }
    }

    #[test]
    fn constant_zero_profile() {
        let prof = DeterministicStrategyProfile::from_pairs((0, 0), (0, 0), (0, 0));
        let d = strategy_to_distribution(&prof);
        for x in TypeProfile::all() {
            assert!(d.prob(ActionProfile::new(0, 0, 0), x).is_one());
        }
    }

    #[test]
    fn identity_profile_is_a_permutation() {
        let prof = DeterministicStrategyProfile::from_pairs((0, 1), (0, 1), (0, 1));
        let d = strategy_to_distribution(&prof);
        for x in TypeProfile::all() {
            let ones = ActionProfile::all().filter(|&y| d.prob(y, x).is_one()).count();
            assert_eq!(ones, 1);
            assert!(d.prob(ActionProfile::from_index(x.index()), x).is_one());
        }
    }

    #[test]
    fn point_mass_equals_strategy() {
        for prof in DeterministicStrategyProfile::all() {
            let a = hv_model_to_distribution(&HiddenVariableModel::point_mass(prof));
            assert_eq!(a, strategy_to_distribution(&prof));
            assert!(check_no_signalling(&a, 0.0).is_empty());
        }
    }

    #[test]
    fn two_point_mixture_of_constants() {
        let half = Rational::new(1, 2);
        let zeros = DeterministicStrategyProfile::from_pairs((0, 0), (0, 0), (0, 0));
        let ones = DeterministicStrategyProfile::from_pairs((1, 1), (1, 1), (1, 1));
        let model = HiddenVariableModel::new(vec![
            HiddenComponent {
                weight: half.clone(),
                responses: zeros.0.map(LocalResponse::deterministic),
            },
            HiddenComponent {
                weight: half.clone(),
                responses: ones.0.map(LocalResponse::deterministic),
            },
        ])
        .unwrap();
        let d = hv_model_to_distribution(&model);
        for x in TypeProfile::all() {
            assert_eq!(*d.prob(ActionProfile::new(0, 0, 0), x), half);
            assert_eq!(*d.prob(ActionProfile::new(1, 1, 1), x), half);
        }
    }

    #[test]
    fn malformed_models_rejected() {
        let s = DeterministicStrategy::new(0, 1);
        let comp = |w: Rational| HiddenComponent {
            weight: w,
            responses: [s, s, s].map(LocalResponse::deterministic),
        };
        assert!(HiddenVariableModel::new(vec![]).is_err());
        assert!(HiddenVariableModel::new(vec![comp(Rational::new(1, 2))]).is_err());
        assert!(HiddenVariableModel::new(vec![comp(Rational::new(3, 2)), comp(Rational::new(-1, 2))]).is_err());
        let bad = HiddenComponent {
            weight: Rational::one(),
            responses: [
                LocalResponse { prob_one: [Rational::new(3, 2), Rational::zero()] },
                LocalResponse::deterministic(s),
                LocalResponse::deterministic(s),
            ],
        };
        assert!(HiddenVariableModel::new(vec![bad]).is_err());
    }
}
