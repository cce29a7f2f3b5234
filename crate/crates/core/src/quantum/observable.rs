//! ±1-valued qubit observables `n̂·σ⃗` and measurement settings.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix2;
use super::planar::{wrap_angle, PlanarAngles};
use crate::error::{Error, Result};
use crate::game::PlayerId;

/// Direction on the Bloch sphere, `θ ∈ [0, π]`, `φ ∈ (−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochObservable {
    theta: f64,
    phi: f64,
}

impl BlochObservable {
    /// Any finite pair is accepted and mapped to the canonical range
    /// describing the same direction.
    pub fn new(theta: f64, phi: f64) -> Self {
        assert!(theta.is_finite() && phi.is_finite(), "angles must be finite");
        let mut t = theta.rem_euclid(2.0 * PI);
        let mut p = phi;
        if t > PI {
            t = 2.0 * PI - t;
            p += PI;
        }
        BlochObservable {
            theta: t,
            phi: wrap_angle(p),
        }
    }

    /// Equatorial direction, `θ = π/2`.
    pub fn planar(phi: f64) -> Self {
        Self::new(FRAC_PI_2, phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn direction(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `n̂·σ⃗`.
    pub fn matrix(&self) -> ComplexMatrix2 {
        let [nx, ny, nz] = self.direction();
        ComplexMatrix2::PAULI_X.scale(nx) + ComplexMatrix2::PAULI_Y.scale(ny) + ComplexMatrix2::PAULI_Z.scale(nz)
    }

    /// `(P0, P1)` with `P1 = (I + M)/2` for outcome `y = 1` (eigenvalue +1)
    /// and `P0 = (I − M)/2` for `y = 0` (eigenvalue −1).
    pub fn projectors(&self) -> (ComplexMatrix2, ComplexMatrix2) {
        let m = self.matrix();
        let i = ComplexMatrix2::IDENTITY;
        ((i - m).scale(0.5), (i + m).scale(0.5))
    }

    pub fn projector(&self, outcome: u8) -> ComplexMatrix2 {
        let (p0, p1) = self.projectors();
        if outcome == 1 {
            p1
        } else {
            p0
        }
    }
}

/// Two observables per player, indexed by the player's type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SettingDocument", into = "SettingDocument")]
pub struct MeasurementSetting {
    observables: [[BlochObservable; 2]; 3],
}

impl MeasurementSetting {
    pub fn new(observables: [[BlochObservable; 2]; 3]) -> Self {
        MeasurementSetting { observables }
    }

    pub fn uniform(obs: BlochObservable) -> Self {
        Self::new([[obs; 2]; 3])
    }

    pub fn planar(angles: &PlanarAngles) -> Self {
        let p = angles.as_array();
        Self::new(std::array::from_fn(|i| {
            [BlochObservable::planar(p[2 * i]), BlochObservable::planar(p[2 * i + 1])]
        }))
    }

    pub fn observable(&self, player: PlayerId, own_type: u8) -> &BlochObservable {
        &self.observables[player.index()][own_type as usize]
    }

    pub fn with_player(mut self, player: PlayerId, pair: [BlochObservable; 2]) -> Self {
        self.observables[player.index()] = pair;
        self
    }

    pub fn player(&self, player: PlayerId) -> [BlochObservable; 2] {
        self.observables[player.index()]
    }

    /// All θ equal to π/2 within `tol`.
    pub fn is_planar(&self, tol: f64) -> bool {
        self.observables
            .iter()
            .flatten()
            .all(|o| (o.theta - FRAC_PI_2).abs() <= tol)
    }

    /// Azimuths in planar order `(φ_A0, φ_A1, φ_B0, φ_B1, φ_C0, φ_C1)`.
    pub fn planar_angles(&self) -> PlanarAngles {
        let o = &self.observables;
        PlanarAngles::new([o[0][0].phi, o[0][1].phi, o[1][0].phi, o[1][1].phi, o[2][0].phi, o[2][1].phi])
    }
}

/// Serialized form: twelve angles in radians. The six `theta_*` keys may be
/// omitted, in which case they default to π/2.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SettingDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    #[serde(rename = "theta_A0")]
    theta_a0: Option<f64>,
    #[serde(rename = "phi_A0")]
    phi_a0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    #[serde(rename = "theta_A1")]
    theta_a1: Option<f64>,
    #[serde(rename = "phi_A1")]
    phi_a1: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    #[serde(rename = "theta_B0")]
    theta_b0: Option<f64>,
    #[serde(rename = "phi_B0")]
    phi_b0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    #[serde(rename = "theta_B1")]
    theta_b1: Option<f64>,
    #[serde(rename = "phi_B1")]
    phi_b1: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    #[serde(rename = "theta_C0")]
    theta_c0: Option<f64>,
    #[serde(rename = "phi_C0")]
    phi_c0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    #[serde(rename = "theta_C1")]
    theta_c1: Option<f64>,
    #[serde(rename = "phi_C1")]
    phi_c1: f64,
}

// Keys are written theta_A0 .. phi_C1 on the wire.
mod wire_names {
    pub const KEYS: [&str; 12] = [
        "theta_A0", "phi_A0", "theta_A1", "phi_A1", "theta_B0", "phi_B0", "theta_B1", "phi_B1", "theta_C0",
        "phi_C0", "theta_C1", "phi_C1",
    ];
}

impl SettingDocument {
    fn pairs(&self) -> [(Option<f64>, f64); 6] {
        [
            (self.theta_a0, self.phi_a0),
            (self.theta_a1, self.phi_a1),
            (self.theta_b0, self.phi_b0),
            (self.theta_b1, self.phi_b1),
            (self.theta_c0, self.phi_c0),
            (self.theta_c1, self.phi_c1),
        ]
    }
}

impl TryFrom<SettingDocument> for MeasurementSetting {
    type Error = Error;

    fn try_from(doc: SettingDocument) -> Result<Self> {
        let pairs = doc.pairs();
        let mut obs = [[BlochObservable::planar(0.0); 2]; 3];
        for (k, (theta, phi)) in pairs.into_iter().enumerate() {
            let theta = theta.unwrap_or(FRAC_PI_2);
            for (value, name) in [(theta, wire_names::KEYS[2 * k]), (phi, wire_names::KEYS[2 * k + 1])] {
                if !value.is_finite() {
                    return Err(Error::Angle {
                        name: name.to_string(),
                        value,
                    });
                }
            }
            obs[k / 2][k % 2] = BlochObservable::new(theta, phi);
        }
        Ok(MeasurementSetting::new(obs))
    }
}

impl From<MeasurementSetting> for SettingDocument {
    fn from(s: MeasurementSetting) -> Self {
        let o = |p: usize, t: usize| s.observables[p][t];
        SettingDocument {
            theta_a0: Some(o(0, 0).theta),
            phi_a0: o(0, 0).phi,
            theta_a1: Some(o(0, 1).theta),
            phi_a1: o(0, 1).phi,
            theta_b0: Some(o(1, 0).theta),
            phi_b0: o(1, 0).phi,
            theta_b1: Some(o(1, 1).theta),
            phi_b1: o(1, 1).phi,
            theta_c0: Some(o(2, 0).theta),
            phi_c0: o(2, 0).phi,
            theta_c1: Some(o(2, 1).theta),
            phi_c1: o(2, 1).phi,
        }
    }
}

impl MeasurementSetting {
    /// Parses the twelve-angle (or six-azimuth planar) JSON document, keys
    /// `theta_A0, phi_A0, …, theta_C1, phi_C1`.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::format("setting", "expected a JSON object"))?;
        for (k, val) in obj {
            if !wire_names::KEYS.contains(&k.as_str()) {
                return Err(Error::format(format!("setting.{k}"), "unknown key"));
            }
            if !val.is_number() {
                return Err(Error::format(format!("setting.{k}"), "expected a number of radians"));
            }
        }
        for k in wire_names::KEYS.iter().filter(|k| k.starts_with("phi")) {
            if !obj.contains_key(*k) {
                return Err(Error::format(format!("setting.{k}"), "missing"));
            }
        }
        let doc: SettingDocument = serde_json::from_value(v)?;
        MeasurementSetting::try_from(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("setting serializes")
    }
}
