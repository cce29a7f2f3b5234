use num_traits::Zero;
use serde::Serialize;

use super::{DeterministicStrategy, DeterministicStrategyProfile};
use crate::game::{PayoffTriple, PlayerId, Prior, TypeProfile, UtilityTable};
use crate::rational::Rational;

/// Exact payoffs of a deterministic profile.
pub fn profile_payoffs(
    game: &UtilityTable,
    prior: &Prior,
    profile: &DeterministicStrategyProfile,
) -> PayoffTriple<Rational> {
    let mut f = [Rational::zero(), Rational::zero(), Rational::zero()];
    for x in TypeProfile::all() {
        let y = profile.actions(x);
        let px = prior.prob(x);
        for p in PlayerId::ALL {
            f[p.index()] += &(px * game.get(p, x, y));
        }
    }
    PayoffTriple::from_array(f)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub profile: DeterministicStrategyProfile,
    pub payoffs: PayoffTriple<Rational>,
    pub fair: bool,
    /// Total payoff equals the classical bound (largest deterministic total).
    pub saturates_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub player: PlayerId,
    pub strategy: DeterministicStrategy,
    pub current: Rational,
    pub deviating: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NashVerdict {
    pub is_equilibrium: bool,
    /// First player (in A, B, C order) with a strictly profitable deviation,
    /// together with their best one.
    pub deviation: Option<Deviation>,
}

// Deviations range over the four deterministic strategies only. A player's
// payoff is affine in their own response rows p_i(y_i|x_i) once the others
// are fixed, so its maximum over that convex set sits at a vertex, i.e. a
// deterministic strategy.
fn best_deviation(
    game: &UtilityTable,
    prior: &Prior,
    profile: &DeterministicStrategyProfile,
    player: PlayerId,
) -> (DeterministicStrategy, Rational) {
    DeterministicStrategy::ALL
        .into_iter()
        .map(|s| {
            let f = profile_payoffs(game, prior, &profile.with(player, s));
            (s, f.get(player).clone())
        })
        .fold(None::<(DeterministicStrategy, Rational)>, |best, (s, v)| match best {
            Some((_, ref bv)) if *bv >= v => best,
            _ => Some((s, v)),
        })
        .expect("four strategies")
}

/// Weak Nash test: only a strictly better unilateral deviation disqualifies.
pub fn is_nash(game: &UtilityTable, prior: &Prior, profile: &DeterministicStrategyProfile) -> NashVerdict {
    let current = profile_payoffs(game, prior, profile);
    for p in PlayerId::ALL {
        let (s, v) = best_deviation(game, prior, profile, p);
        if v > *current.get(p) {
            return NashVerdict {
                is_equilibrium: false,
                deviation: Some(Deviation {
                    player: p,
                    strategy: s,
                    current: current.get(p).clone(),
                    deviating: v,
                }),
            };
        }
    }
    NashVerdict {
        is_equilibrium: true,
        deviation: None,
    }
}

/// Scans all 64 deterministic profiles; returns the equilibria in canonical
/// (A-major) profile order.
pub fn enumerate_deterministic_equilibria(game: &UtilityTable, prior: &Prior) -> Vec<EquilibriumReport> {
    let payoffs: Vec<_> = DeterministicStrategyProfile::all()
        .map(|prof| (prof, profile_payoffs(game, prior, &prof)))
        .collect();
    let bound = payoffs
        .iter()
        .map(|(_, f)| f.total())
        .max()
        .expect("64 profiles");

    let lookup = |prof: &DeterministicStrategyProfile| -> &PayoffTriple<Rational> {
        let [a, b, c] = prof.0.map(|s| s.index());
        &payoffs[16 * a + 4 * b + c].1
    };

    payoffs
        .iter()
        .filter(|(prof, f)| {
            PlayerId::ALL.into_iter().all(|p| {
                DeterministicStrategy::ALL
                    .into_iter()
                    .all(|s| lookup(&prof.with(p, s)).get(p) <= f.get(p))
            })
        })
        .map(|(prof, f)| EquilibriumReport {
            profile: *prof,
            payoffs: f.clone(),
            fair: f.is_fair(0.0),
            saturates_bound: f.total() == bound,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::strategy_to_distribution;
    use crate::game::expected_payoffs;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn direct_payoffs_match_distribution_route() {
        let g = UtilityTable::table1();
        let prior = Prior::uniform();
        for prof in DeterministicStrategyProfile::all() {
            let direct = profile_payoffs(&g, &prior, &prof);
            let via = expected_payoffs(&g, &prior, &strategy_to_distribution(&prof));
            assert_eq!(direct, via);
        }
    }

    #[test]
    fn first_published_row() {
        let prof = DeterministicStrategyProfile::from_pairs((0, 1), (0, 0), (0, 0));
        let f = profile_payoffs(&UtilityTable::table1(), &Prior::uniform(), &prof);
        assert_eq!(f, PayoffTriple::from_array([r(5, 8), r(13, 16), r(13, 16)]));
        assert!(is_nash(&UtilityTable::table1(), &Prior::uniform(), &prof).is_equilibrium);
    }

    #[test]
    fn all_zero_profile_is_not_nash() {
        // A's four deviations pay (0,0): 1/2, (0,1): 5/8, (1,0): 0, (1,1): 1/8.
        let prof = DeterministicStrategyProfile::from_pairs((0, 0), (0, 0), (0, 0));
        let v = is_nash(&UtilityTable::table1(), &Prior::uniform(), &prof);
        assert!(!v.is_equilibrium);
        let d = v.deviation.unwrap();
        assert_eq!(d.player, PlayerId::A);
        assert_eq!(d.strategy, DeterministicStrategy::new(0, 1));
        assert_eq!(d.current, r(1, 2));
        assert_eq!(d.deviating, r(5, 8));
    }

    #[test]
    fn constant_game_everything_is_equilibrium() {
        let g = UtilityTable::constant(r(2, 3));
        let eqs = enumerate_deterministic_equilibria(&g, &Prior::uniform());
        assert_eq!(eqs.len(), 64);
        assert!(eqs.iter().all(|e| e.fair && e.saturates_bound));
        let prof = DeterministicStrategyProfile::from_pairs((1, 0), (0, 1), (1, 1));
        assert!(is_nash(&g, &Prior::uniform(), &prof).is_equilibrium);
    }
}
