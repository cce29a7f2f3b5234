//! Equatorial measurements on the GHZ state: closed-form payoff and the
//! three-parameter phase gauge.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `χ1 + χ2 + χ3 ≡ 0 (mod 2π)`.
pub const GAUGE_TOL: f64 = 1e-12;

/// Maps an angle into `(−π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Azimuths `(φ1, …, φ6)`: A uses `φ1, φ2` for types 0, 1; B uses `φ3, φ4`;
/// C uses `φ5, φ6`. Stored in `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 6]", try_from = "[f64; 6]")]
pub struct PlanarAngles([f64; 6]);

impl PlanarAngles {
    pub fn new(phi: [f64; 6]) -> Self {
        assert!(phi.iter().all(|p| p.is_finite()), "angles must be finite");
        PlanarAngles(phi.map(wrap_angle))
    }

    /// Reported optimum `(0, −π/2, 0, −π/2, 2.1588, 0.5880)`.
    pub fn reference_optimum() -> Self {
        Self::new([0.0, -FRAC_PI_2, 0.0, -FRAC_PI_2, 2.1588, 0.5880])
    }

    pub fn as_array(&self) -> [f64; 6] {
        self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    /// Largest per-angle circular distance.
    pub fn distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| angle_distance(a, b))
            .fold(0.0, f64::max)
    }
}

impl From<PlanarAngles> for [f64; 6] {
    fn from(p: PlanarAngles) -> Self {
        p.0
    }
}

impl TryFrom<[f64; 6]> for PlanarAngles {
    type Error = Error;

    fn try_from(phi: [f64; 6]) -> Result<Self> {
        if let Some(i) = phi.iter().position(|p| !p.is_finite()) {
            return Err(Error::Angle {
                name: format!("phi{}", i + 1),
                value: phi[i],
            });
        }
        Ok(PlanarAngles::new(phi))
    }
}

/// Common payoff of every player for equatorial measurements on GHZ with the
/// uniform prior of the example game.
pub fn planar_payoff(angles: &PlanarAngles) -> f64 {
    let [p1, p2, p3, p4, p5, p6] = angles.0;
    let s = |a: f64, b: f64, c: f64| (a + b + c).sin();
    (26.0 + 3.0 * s(p1, p3, p5) + 2.0 * s(p2, p3, p5) + 2.0 * s(p1, p4, p5) - 3.0 * s(p2, p4, p5)
        + 2.0 * s(p1, p3, p6)
        - 3.0 * s(p2, p3, p6)
        - 3.0 * s(p1, p4, p6)
        - 2.0 * s(p2, p4, p6))
        / 48.0
}

/// Shifts A's pair by `χ1`, B's by `χ2`, C's by `χ3`. Requires
/// `χ1 + χ2 + χ3 ≡ 0 (mod 2π)`.
pub fn gauge_transform(angles: &PlanarAngles, chi: [f64; 3]) -> Result<PlanarAngles> {
    let sum = chi[0] + chi[1] + chi[2];
    let residue = sum - TAU * (sum / TAU).round();
    if !sum.is_finite() || residue.abs() > GAUGE_TOL {
        return Err(Error::Gauge { sum });
    }
    let p = angles.0;
    Ok(PlanarAngles::new(std::array::from_fn(|i| p[i] + chi[i / 2])))
}

/// Representative of the gauge orbit with `φ1 = φ3 = 0`.
pub fn gauge_canonicalize(angles: &PlanarAngles) -> PlanarAngles {
    let p = angles.0;
    let mut out = [0.0, p[1] - p[0], 0.0, p[3] - p[2], p[4] + p[0] + p[2], p[5] + p[0] + p[2]];
    out = out.map(wrap_angle);
    out[0] = 0.0;
    out[2] = 0.0;
    PlanarAngles(out)
}

/// Same gauge orbit, up to `tol` per angle.
pub fn gauge_equivalent(a: &PlanarAngles, b: &PlanarAngles, tol: f64) -> bool {
    gauge_canonicalize(a).distance(&gauge_canonicalize(b)) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_is_half_open() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 2.0) + FRAC_PI_2).abs() < 1e-15);
        assert_eq!(wrap_angle(0.0), 0.0);
    }

    #[test]
    fn reference_optimum_value() {
        let v = planar_payoff(&PlanarAngles::reference_optimum());
        assert!((v - 0.84213).abs() < 1e-4, "{v}");
    }

    #[test]
    fn all_zero_angles_give_base_value() {
        // three sin(0) terms vanish, leaving 26/48
        assert!((planar_payoff(&PlanarAngles::new([0.0; 6])) - 26.0 / 48.0).abs() < 1e-15);
    }

    #[test]
    fn gauge_rejects_bad_sum() {
        let p = PlanarAngles::reference_optimum();
        assert!(gauge_transform(&p, [0.1, 0.2, 0.3]).is_err());
        let q = gauge_transform(&p, [PI, PI, 0.0]).unwrap();
        assert!((planar_payoff(&p) - planar_payoff(&q)).abs() < 1e-14);
    }

    #[test]
    fn canonical_form_of_reference() {
        let c = gauge_canonicalize(&PlanarAngles::reference_optimum());
        assert_eq!(c.get(0), 0.0);
        assert_eq!(c.get(2), 0.0);
        assert!((c.get(1) + FRAC_PI_2).abs() < 1e-15);
        assert!(gauge_equivalent(&c, &PlanarAngles::reference_optimum(), 1e-12));
    }
}
