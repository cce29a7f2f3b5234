//! Conditional action distributions `p(y|x)`.
//!
//! Classical sources produce exact [`Rational`] tables; the quantum source
//! produces `f64` tables validated against an absolute tolerance.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use super::profile::{ActionProfile, PlayerId, Transposition, TypeProfile};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default absolute tolerance for validating real-valued distributions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Number type a distribution or payoff can be expressed in.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Equality up to `tol`; exact types ignore the tolerance.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    fn is_below_zero(&self, tol: f64) -> bool;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn is_below_zero(&self, _tol: f64) -> bool {
        self.is_negative()
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn is_below_zero(&self, tol: f64) -> bool {
        *self < -tol
    }
}

/// Row-stochastic 8×8 table: row = type profile, column = action profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalDistribution<T> {
    rows: [[T; 8]; 8],
}

impl<T: Scalar> ConditionalDistribution<T> {
    /// Validates against [`DEFAULT_TOL`] (ignored for exact scalars).
    pub fn new(rows: [[T; 8]; 8]) -> Result<Self> {
        Self::with_tolerance(rows, DEFAULT_TOL)
    }

    pub fn with_tolerance(rows: [[T; 8]; 8], tol: f64) -> Result<Self> {
        for x in TypeProfile::all() {
            let row = &rows[x.index()];
            if let Some(y) = ActionProfile::all().find(|y| row[y.index()].is_below_zero(tol)) {
                return Err(Error::Distribution {
                    row: x.to_string(),
                    reason: format!("negative entry {:?} at y={y}", row[y.index()]),
                });
            }
            let sum = row.iter().cloned().fold(T::zero(), |a, b| a + b);
            if !sum.approx_eq(&T::one(), tol) {
                return Err(Error::Distribution {
                    row: x.to_string(),
                    reason: format!("row sums to {sum:?}, expected 1"),
                });
            }
        }
        Ok(ConditionalDistribution { rows })
    }

    pub fn from_fn(mut f: impl FnMut(TypeProfile, ActionProfile) -> T) -> Result<Self> {
        let rows = std::array::from_fn(|xi| {
            std::array::from_fn(|yi| f(TypeProfile::from_index(xi), ActionProfile::from_index(yi)))
        });
        Self::new(rows)
    }

    /// `p(y|x) = 1/8` everywhere.
    pub fn uniform() -> Self {
        let eighth = T::from_rational(&Rational::new(1, 8));
        ConditionalDistribution {
            rows: std::array::from_fn(|_| std::array::from_fn(|_| eighth.clone())),
        }
    }

    pub fn prob(&self, y: ActionProfile, x: TypeProfile) -> &T {
        &self.rows[x.index()][y.index()]
    }

    pub fn rows(&self) -> &[[T; 8]; 8] {
        &self.rows
    }

    /// `p'(τy|τx) = p(y|x)`.
    pub fn transposed(&self, t: Transposition) -> Self {
        let mut rows = self.rows.clone();
        for x in TypeProfile::all() {
            for y in ActionProfile::all() {
                rows[x.transposed(t).index()][y.transposed(t).index()] =
                    self.rows[x.index()][y.index()].clone();
            }
        }
        ConditionalDistribution { rows }
    }

    pub fn to_f64(&self) -> ConditionalDistribution<f64> {
        ConditionalDistribution {
            rows: std::array::from_fn(|x| std::array::from_fn(|y| self.rows[x][y].to_f64())),
        }
    }

    /// `⟨A_{x_A} B_{x_B} C_{x_C}⟩` with outcome `y = 1 ↦ +1`, `y = 0 ↦ −1`.
    pub fn correlator(&self, x: TypeProfile) -> T {
        ActionProfile::all().fold(T::zero(), |acc, y| {
            let p = self.rows[x.index()][y.index()].clone();
            if y.count_zeros() % 2 == 1 {
                acc - p
            } else {
                acc + p
            }
        })
    }

    /// Joint distribution of everyone but `remote`, with `remote`'s action
    /// summed out.
    fn marginal_without(&self, remote: PlayerId, x: TypeProfile, kept: ActionProfile) -> T {
        let y0 = kept.with(remote, 0);
        let y1 = kept.with(remote, 1);
        self.rows[x.index()][y0.index()].clone() + self.rows[x.index()][y1.index()].clone()
    }
}

/// A no-signalling failure: the marginal of the two players other than
/// `remote` changes when `remote`'s type is flipped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignallingViolation {
    pub remote: PlayerId,
    /// Types of the two other players (the `remote` slot is set to 0).
    pub types: String,
    /// Actions of the two other players (the `remote` slot is set to 0).
    pub actions: String,
    pub marginal_at_0: f64,
    pub marginal_at_1: f64,
}

impl SignallingViolation {
    pub fn residual(&self) -> f64 {
        (self.marginal_at_0 - self.marginal_at_1).abs()
    }
}

/// Checks, for each player, that summing out their action leaves a joint
/// distribution of the other two independent of that player's type.
pub fn check_no_signalling<T: Scalar>(
    dist: &ConditionalDistribution<T>,
    tol: f64,
) -> Vec<SignallingViolation> {
    let mut out = Vec::new();
    for remote in PlayerId::ALL {
        for x in TypeProfile::all().filter(|x| x.bit(remote) == 0) {
            for kept in ActionProfile::all().filter(|y| y.bit(remote) == 0) {
                let m0 = dist.marginal_without(remote, x, kept);
                let m1 = dist.marginal_without(remote, x.with(remote, 1), kept);
                if !m0.approx_eq(&m1, tol) {
                    out.push(SignallingViolation {
                        remote,
                        types: x.to_string(),
                        actions: kept.to_string(),
                        marginal_at_0: m0.to_f64(),
                        marginal_at_1: m1.to_f64(),
                    });
                }
            }
        }
    }
    out
}

/// Largest no-signalling residual over all players and contexts.
pub fn max_signalling_residual(dist: &ConditionalDistribution<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for remote in PlayerId::ALL {
        for x in TypeProfile::all().filter(|x| x.bit(remote) == 0) {
            for kept in ActionProfile::all().filter(|y| y.bit(remote) == 0) {
                let m0 = dist.marginal_without(remote, x, kept);
                let m1 = dist.marginal_without(remote, x.with(remote, 1), kept);
                worst = worst.max((m0 - m1).abs());
            }
        }
    }
    worst
}
