//! The three-player Bayesian game: types, actions, utilities and prior.
//!
//! All values here are immutable after construction. Utilities are exact
//! rationals; expected payoffs are exact whenever the distribution is.

mod distribution;
pub mod file;
mod profile;
mod table1;

use num_traits::One;
use serde::{Deserialize, Serialize};

pub use distribution::{
    check_no_signalling, max_signalling_residual, ConditionalDistribution, Scalar,
    SignallingViolation, DEFAULT_TOL,
};
pub use profile::{ActionProfile, PlayerId, Transposition, TypeProfile};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Probability of each type profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prior {
    probs: [Rational; 8],
}

impl Prior {
    pub fn new(probs: [Rational; 8]) -> Result<Self> {
        if let Some(x) = TypeProfile::all().find(|x| probs[x.index()].is_negative()) {
            return Err(Error::Prior(format!(
                "entry {x} is negative ({})",
                probs[x.index()]
            )));
        }
        let sum: Rational = probs.iter().sum();
        if sum != Rational::one() {
            return Err(Error::Prior(format!("entries sum to {sum}, expected 1/1")));
        }
        Ok(Prior { probs })
    }

    /// Every type profile with probability 1/8.
    pub fn uniform() -> Self {
        Prior {
            probs: std::array::from_fn(|_| Rational::new(1, 8)),
        }
    }

    pub fn prob(&self, x: TypeProfile) -> &Rational {
        &self.probs[x.index()]
    }

    pub fn probs(&self) -> &[Rational; 8] {
        &self.probs
    }

    pub fn transposed(&self, t: Transposition) -> Self {
        let mut probs = self.probs.clone();
        for x in TypeProfile::all() {
            probs[x.transposed(t).index()] = self.probs[x.index()].clone();
        }
        Prior { probs }
    }
}

/// Dense table of `u_i(x, y)` for every player, type profile and action
/// profile (3 × 8 × 8 entries).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityTable {
    u: [[[Rational; 8]; 8]; 3],
}

impl UtilityTable {
    pub fn from_fn(mut f: impl FnMut(PlayerId, TypeProfile, ActionProfile) -> Rational) -> Self {
        UtilityTable {
            u: std::array::from_fn(|p| {
                std::array::from_fn(|x| {
                    std::array::from_fn(|y| {
                        f(
                            PlayerId::from_index(p),
                            TypeProfile::from_index(x),
                            ActionProfile::from_index(y),
                        )
                    })
                })
            }),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_fn(|_, _, _| c.clone())
    }

    /// The example game whose utilities are tabulated block-wise in the
    /// original publication.
    pub fn table1() -> Self {
        table1::table1()
    }

    pub fn get(&self, player: PlayerId, x: TypeProfile, y: ActionProfile) -> &Rational {
        &self.u[player.index()][x.index()][y.index()]
    }

    pub fn set(&mut self, player: PlayerId, x: TypeProfile, y: ActionProfile, value: Rational) {
        self.u[player.index()][x.index()][y.index()] = value;
    }

    /// `u'_{τ(i)}(τx, τy) = u_i(x, y)`: relabels the players.
    pub fn transposed(&self, t: Transposition) -> Self {
        let mut out = self.clone();
        for p in PlayerId::ALL {
            for x in TypeProfile::all() {
                for y in ActionProfile::all() {
                    out.set(
                        t.apply(p),
                        x.transposed(t),
                        y.transposed(t),
                        self.get(p, x, y).clone(),
                    );
                }
            }
        }
        out
    }

    pub fn min_entry(&self) -> Rational {
        self.entries().min().cloned().expect("non-empty table")
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.u.iter().flatten().flatten()
    }
}

/// Maps every utility to `alpha·u + beta`. Positive `alpha` keeps every
/// player's preference order, so the equilibrium set is unchanged.
pub fn affine_transform(game: &UtilityTable, alpha: &Rational, beta: &Rational) -> Result<UtilityTable> {
    if !alpha.is_positive() {
        return Err(Error::NonPositiveScale(alpha.to_string()));
    }
    Ok(UtilityTable::from_fn(|p, x, y| alpha * game.get(p, x, y) + beta))
}

/// A failed permutation relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryViolation {
    pub transposition: Transposition,
    /// Player whose utility appears on the left-hand side.
    pub player: PlayerId,
    pub types: String,
    pub actions: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Verifies, for each player transposition `(i j)` with fixed player `k`,
///
/// * `u_i(x, y) = u_j(τx, τy)` and
/// * `u_k(x, y) = u_k(τx, τy)`
///
/// for all profiles. Returns every failing relation, transpositions in the
/// order A↔B, A↔C, B↔C.
pub fn check_player_symmetry(game: &UtilityTable) -> Vec<SymmetryViolation> {
    let mut out = Vec::new();
    for t in Transposition::ALL {
        let k = t.fixed();
        for x in TypeProfile::all() {
            for y in ActionProfile::all() {
                let (tx, ty) = (x.transposed(t), y.transposed(t));
                for (lhs_player, rhs_player) in [(t.0, t.1), (k, k)] {
                    let lhs = game.get(lhs_player, x, y);
                    let rhs = game.get(rhs_player, tx, ty);
                    if lhs != rhs {
                        out.push(SymmetryViolation {
                            transposition: t,
                            player: lhs_player,
                            types: x.to_string(),
                            actions: y.to_string(),
                            lhs: lhs.clone(),
                            rhs: rhs.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

/// `(F_A, F_B, F_C)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PayoffTriple<T> {
    #[serde(rename = "A")]
    pub a: T,
    #[serde(rename = "B")]
    pub b: T,
    #[serde(rename = "C")]
    pub c: T,
}

impl<T: Scalar> PayoffTriple<T> {
    pub fn from_array([a, b, c]: [T; 3]) -> Self {
        PayoffTriple { a, b, c }
    }

    pub fn get(&self, p: PlayerId) -> &T {
        match p {
            PlayerId::A => &self.a,
            PlayerId::B => &self.b,
            PlayerId::C => &self.c,
        }
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn total(&self) -> T {
        self.a.clone() + self.b.clone() + self.c.clone()
    }

    /// Equal payoffs, exactly for rationals or within `tol` for reals.
    pub fn is_fair(&self, tol: f64) -> bool {
        self.a.approx_eq(&self.b, tol) && self.b.approx_eq(&self.c, tol)
    }

    pub fn min(&self) -> T {
        let mut m = self.a.clone();
        for v in [&self.b, &self.c] {
            if *v < m {
                m = v.clone();
            }
        }
        m
    }

    pub fn to_f64(&self) -> PayoffTriple<f64> {
        PayoffTriple {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
            c: self.c.to_f64(),
        }
    }

    /// Payoffs of the relabelled game: `F'_{τ(i)} = F_i`.
    pub fn transposed(&self, t: Transposition) -> Self {
        let mut out = self.to_array();
        for p in PlayerId::ALL {
            out[t.apply(p).index()] = self.get(p).clone();
        }
        Self::from_array(out)
    }
}

/// Precomputed `P(x)·u_i(x, y)` in a chosen scalar type, so that repeated
/// payoff evaluations skip the rational conversions.
#[derive(Debug, Clone)]
pub struct PayoffKernel<T> {
    weights: [[[T; 8]; 8]; 3],
}

impl<T: Scalar> PayoffKernel<T> {
    pub fn new(game: &UtilityTable, prior: &Prior) -> Self {
        PayoffKernel {
            weights: std::array::from_fn(|p| {
                std::array::from_fn(|x| {
                    let px = prior.probs[x].clone();
                    std::array::from_fn(|y| T::from_rational(&(&px * &game.u[p][x][y])))
                })
            }),
        }
    }

    /// `F_i = Σ_{x,y} P(x) p(y|x) u_i(x, y)`.
    pub fn payoffs(&self, dist: &ConditionalDistribution<T>) -> PayoffTriple<T> {
        let rows = dist.rows();
        PayoffTriple::from_array(std::array::from_fn(|p| {
            let mut acc = T::zero();
            for (w_row, p_row) in self.weights[p].iter().zip(rows.iter()) {
                for (w, prob) in w_row.iter().zip(p_row.iter()) {
                    acc = acc + w.clone() * prob.clone();
                }
            }
            acc
        }))
    }
}

/// Expected payoff of each player under `dist`. Exact for rational inputs.
pub fn expected_payoffs<T: Scalar>(
    game: &UtilityTable,
    prior: &Prior,
    dist: &ConditionalDistribution<T>,
) -> PayoffTriple<T> {
    PayoffKernel::new(game, prior).payoffs(dist)
}

impl Default for Prior {
    fn default() -> Self {
        Prior::uniform()
    }
}

/// Sum of all 64 utilities of each player, scaled by 1/64.
pub fn mean_utilities(game: &UtilityTable) -> PayoffTriple<Rational> {
    let n = Rational::new(1, 64);
    PayoffTriple::from_array(std::array::from_fn(|p| {
        let s: Rational = game.u[p].iter().flatten().sum();
        s * &n
    }))
}
