//! Tripartite Bell expressions over triple correlators.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::game::{
    ActionProfile, ConditionalDistribution, PlayerId, Prior, Scalar, TypeProfile, UtilityTable,
};
use crate::rational::Rational;

/// The two inequalities the example game is built on. Both are bounded by 2
/// in absolute value for every local hidden-variable distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellVariant {
    /// `⟨A0B1C1⟩ + ⟨A1B0C1⟩ + ⟨A1B1C0⟩ − ⟨A0B0C0⟩`
    V011,
    /// `⟨A1B0C0⟩ + ⟨A0B1C0⟩ + ⟨A0B0C1⟩ − ⟨A1B1C1⟩`
    V100,
}

impl BellVariant {
    pub const ALL: [BellVariant; 2] = [BellVariant::V011, BellVariant::V100];
}

/// Signed sum of four triple correlators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BellExpression {
    pub terms: [(TypeProfile, i8); 4],
}

impl BellExpression {
    pub fn of(variant: BellVariant) -> Self {
        let t = TypeProfile::new;
        let terms = match variant {
            BellVariant::V011 => [(t(0, 1, 1), 1), (t(1, 0, 1), 1), (t(1, 1, 0), 1), (t(0, 0, 0), -1)],
            BellVariant::V100 => [(t(1, 0, 0), 1), (t(0, 1, 0), 1), (t(0, 0, 1), 1), (t(1, 1, 1), -1)],
        };
        BellExpression { terms }
    }

    /// Swaps the two measurement settings (`0 ↔ 1`) of every flagged player.
    /// Flipping all three turns `V011` into `V100`.
    pub fn relabeled(self, flip: [bool; 3]) -> Self {
        BellExpression {
            terms: self.terms.map(|(x, s)| {
                let x = PlayerId::ALL
                    .into_iter()
                    .filter(|p| flip[p.index()])
                    .fold(x, |x, p| x.flipped(p));
                (x, s)
            }),
        }
    }

    /// The eight inequalities reachable from `V011` by relabeling.
    pub fn family() -> Vec<BellExpression> {
        (0..8)
            .map(|m| {
                let x = TypeProfile::from_index(m);
                Self::of(BellVariant::V011).relabeled(x.bits().map(|b| b == 1))
            })
            .collect()
    }
}

pub fn bell_value<T: Scalar>(dist: &ConditionalDistribution<T>, expr: &BellExpression) -> T {
    expr.terms.iter().fold(T::zero(), |acc, &(x, sign)| {
        let c = dist.correlator(x);
        if sign > 0 {
            acc + c
        } else {
            acc - c
        }
    })
}

pub fn bell_expression<T: Scalar>(dist: &ConditionalDistribution<T>, variant: BellVariant) -> T {
    bell_value(dist, &BellExpression::of(variant))
}

/// Total payoff written as `constant + v011·V011 + v100·V100`, valid for
/// every normalized distribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BellForm {
    pub constant: Rational,
    pub v011: Rational,
    pub v100: Rational,
}

impl BellForm {
    /// Largest total any local hidden-variable distribution can reach,
    /// given `|V011|, |V100| ≤ 2`.
    pub fn classical_bound(&self) -> Rational {
        &self.constant + &(Rational::integer(2) * (self.v011.abs() + self.v100.abs()))
    }

    pub fn total(&self, v011: f64, v100: f64) -> f64 {
        self.constant.to_f64() + self.v011.to_f64() * v011 + self.v100.to_f64() * v100
    }
}

/// Decomposes `F_A + F_B + F_C` in the ±1 outcome basis. Returns `None` when
/// single- or two-party correlators contribute, or the triple-correlator
/// weights are not the `V011`/`V100` sign pattern.
pub fn bell_form(game: &UtilityTable, prior: &Prior) -> Option<BellForm> {
    let eighth = Rational::new(1, 8);
    let mut constant = Rational::zero();
    let mut triple = Vec::with_capacity(8);
    for x in TypeProfile::all() {
        let weight = |y: ActionProfile| -> Rational {
            let s: Rational = PlayerId::ALL.iter().map(|&p| game.get(p, x, y)).sum();
            prior.prob(x) * &s
        };
        // Fourier coefficient for every subset of players (bitmask over A, B, C).
        for mask in 0u8..8 {
            let coeff: Rational = ActionProfile::all()
                .map(|y| {
                    let w = weight(y);
                    let parity = PlayerId::ALL
                        .iter()
                        .filter(|p| mask >> (2 - p.index()) & 1 == 1 && y.bit(**p) == 0)
                        .count();
                    if parity % 2 == 1 {
                        -w
                    } else {
                        w
                    }
                })
                .sum::<Rational>()
                * &eighth;
            match mask {
                0 => constant += &coeff,
                7 => triple.push(coeff),
                _ if !coeff.is_zero() => return None,
                _ => {}
            }
        }
    }
    let w = |x: TypeProfile| &triple[x.index()];
    let pattern = |variant: BellVariant| -> Option<Rational> {
        let expr = BellExpression::of(variant);
        let (x0, s0) = expr.terms[0];
        let a = if s0 > 0 { w(x0).clone() } else { -w(x0).clone() };
        expr.terms
            .iter()
            .all(|&(x, s)| if s > 0 { *w(x) == a } else { *w(x) == -a.clone() })
            .then_some(a)
    };
    Some(BellForm {
        constant,
        v011: pattern(BellVariant::V011)?,
        v100: pattern(BellVariant::V100)?,
    })
}
