//! Three-player conflicting-interest Bayesian game with classical
//! (local hidden-variable) and quantum (GHZ) advisors.
//!
//! * [`game`]: utilities, prior, conditional distributions, payoffs.
//! * [`classical`]: deterministic strategies, hidden-variable mixtures,
//!   equilibrium enumeration, Bell expressions and the classical bound.
//! * [`quantum`]: Bloch observables, projectors, the GHZ advisor and the
//!   closed-form payoff on the equatorial family.
//! * [`optimize`]: payoff maximization over measurement angles and
//!   best-response certification.

pub mod error;
pub mod classical;
pub mod game;
pub mod optimize;
pub mod quantum;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;

/// Crate version, recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
