use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use bellgame::classical::{
    bell_expression, bell_form, classical_bound_audit, enumerate_deterministic_equilibria, profile_payoffs,
    strategy_to_distribution, BellVariant, DeterministicStrategyProfile,
};
use bellgame::game::file::GameDefinition;
use bellgame::game::{check_no_signalling, check_player_symmetry, max_signalling_residual, PayoffKernel};
use bellgame::optimize::{
    best_response_check_game, quantum_advantage_report, BellValues, OptimizationConfig, SearchMode,
};
use bellgame::quantum::{quantum_distribution, MeasurementSetting, QuantumAdvisor};
use bellgame::Rational;
use serde_json::{json, Value};

use crate::report::sha256_hex;

/// No-signalling tolerance applied to quantum distributions.
const SIGNALLING_TOL: f64 = 1e-12;

#[derive(Debug)]
pub enum CliError {
    /// Malformed or invalid input.
    Validation(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<bellgame::Error> for CliError {
    fn from(e: bellgame::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub converged: bool,
}

impl Outcome {
    fn done(inputs: Value, results: Value) -> Self {
        Outcome {
            inputs,
            results,
            converged: true,
        }
    }
}

pub struct LoadedGame {
    pub source: String,
    pub definition: GameDefinition,
    pub digest: String,
}

impl LoadedGame {
    fn inputs(&self) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        m.insert("game".into(), json!(self.source));
        m.insert("game_sha256".into(), json!(self.digest));
        m
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

/// Loads `builtin:table1` or a game file, warning on stderr about any
/// player-symmetry violation.
pub fn load_game(source: &str) -> Result<LoadedGame, CliError> {
    let definition = match source.strip_prefix("builtin:") {
        Some("table1") => GameDefinition::table1(),
        Some(other) => return Err(CliError::Validation(format!("unknown builtin game {other:?}"))),
        None => {
            let text = read(Path::new(source))?;
            GameDefinition::from_json(&text).map_err(|e| CliError::Validation(format!("{source}: {e}")))?
        }
    };
    let violations = check_player_symmetry(&definition.game);
    if let Some(v) = violations.first() {
        eprintln!(
            "warning: game is not player-symmetric ({} violations), first: {} for player {} at x={}, y={}: {} != {}",
            violations.len(),
            v.transposition,
            v.player,
            v.types,
            v.actions,
            v.lhs,
            v.rhs
        );
    }
    let digest = sha256_hex(definition.to_json().as_bytes());
    Ok(LoadedGame {
        source: source.to_string(),
        definition,
        digest,
    })
}

fn load_setting(path: &Path) -> Result<(MeasurementSetting, String), CliError> {
    let text = read(path)?;
    let setting = MeasurementSetting::from_json(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let digest = sha256_hex(setting.to_json().as_bytes());
    Ok((setting, digest))
}

pub fn equilibria(game: &LoadedGame) -> Result<Outcome, CliError> {
    let GameDefinition { game: g, prior } = &game.definition;
    let found = enumerate_deterministic_equilibria(g, prior);
    let bound = DeterministicStrategyProfile::all()
        .map(|p| profile_payoffs(g, prior, &p).total())
        .max()
        .expect("64 profiles");
    let results = json!({
        "count": found.len(),
        "fair": found.iter().filter(|e| e.fair).count(),
        "max_deterministic_total": bound,
        "equilibria": found,
    });
    Ok(Outcome::done(Value::Object(game.inputs()), results))
}

pub fn audit(game: &LoadedGame, samples: usize, seed: u64) -> Result<Outcome, CliError> {
    let GameDefinition { game: g, prior } = &game.definition;
    let audit = classical_bound_audit(g, prior, samples, seed);
    let mut inputs = game.inputs();
    inputs.insert("samples".into(), json!(samples));
    inputs.insert("seed".into(), json!(seed));
    Ok(Outcome::done(Value::Object(inputs), to_value(&audit)))
}

pub fn bell(game: &LoadedGame, setting: Option<&Path>) -> Result<Outcome, CliError> {
    let GameDefinition { game: g, prior } = &game.definition;
    let two = Rational::integer(2);
    let mut max_abs = [Rational::integer(0), Rational::integer(0)];
    let profiles: Vec<Value> = DeterministicStrategyProfile::all()
        .map(|p| {
            let d = strategy_to_distribution(&p);
            let v = BellVariant::ALL.map(|var| bell_expression(&d, var));
            for (m, x) in max_abs.iter_mut().zip(v.iter()) {
                if x.abs() > *m {
                    *m = x.abs();
                }
            }
            let [v011, v100] = v;
            json!({"profile": p, "V011": v011, "V100": v100})
        })
        .collect();
    let form = bell_form(g, prior);
    let mut inputs = game.inputs();
    let quantum = match setting {
        Some(path) => {
            let (s, digest) = load_setting(path)?;
            inputs.insert("setting".into(), json!(path.display().to_string()));
            inputs.insert("setting_sha256".into(), json!(digest));
            let d = quantum_distribution(&QuantumAdvisor::ghz(), &s)?;
            let b = BellValues::of(&d);
            Some(json!({
                "setting": s,
                "bell_values": b,
                "total_payoff": form.as_ref().map(|f| f.total(b.v011, b.v100)),
            }))
        }
        None => None,
    };
    let [m011, m100] = max_abs;
    let results = json!({
        "classical_limit": two,
        "max_abs": {"V011": m011, "V100": m100},
        "within_limit": m011 <= two && m100 <= two,
        "limit_attained": m011 == two || m100 == two,
        "bell_form": form,
        "classical_bound": form.as_ref().map(|f| f.classical_bound()),
        "profiles": profiles,
        "quantum": quantum,
    });
    Ok(Outcome::done(Value::Object(inputs), results))
}

pub fn optimize(game: &LoadedGame, config: &OptimizationConfig) -> Result<Outcome, CliError> {
    let GameDefinition { game: g, prior } = &game.definition;
    let report = quantum_advantage_report(g, prior, config)?;
    let mut inputs = game.inputs();
    inputs.insert("config".into(), to_value(config));
    Ok(Outcome {
        inputs: Value::Object(inputs),
        converged: report.optimum.converged,
        results: to_value(&report),
    })
}

pub fn check(
    game: &LoadedGame,
    setting_path: &Path,
    mode: SearchMode,
    config: &OptimizationConfig,
) -> Result<Outcome, CliError> {
    let GameDefinition { game: g, prior } = &game.definition;
    let (setting, digest) = load_setting(setting_path)?;
    let ghz = QuantumAdvisor::ghz();
    let dist = quantum_distribution(&ghz, &setting)?;
    let payoffs = PayoffKernel::<f64>::new(g, prior).payoffs(&dist);
    let verdict = best_response_check_game(g, prior, &ghz, &setting, mode, config)?;
    let planar = setting.is_planar(1e-12);

    let table: BTreeMap<String, BTreeMap<String, f64>> = bellgame::game::TypeProfile::all()
        .map(|x| {
            let row = bellgame::game::ActionProfile::all()
                .map(|y| (y.to_string(), *dist.prob(y, x)))
                .collect();
            (x.to_string(), row)
        })
        .collect();

    let mut results = json!({
        "setting": setting,
        "planar": planar,
        "distribution": table,
        "no_signalling": {
            "tolerance": SIGNALLING_TOL,
            "max_residual": max_signalling_residual(&dist),
            "violations": check_no_signalling(&dist, SIGNALLING_TOL).len(),
        },
        "bell_values": BellValues::of(&dist),
        "payoffs": payoffs,
        "best_response": verdict,
    });
    if planar {
        results["fair"] = json!(payoffs.is_fair(1e-10));
    }

    let mut inputs = game.inputs();
    inputs.insert("setting".into(), json!(setting_path.display().to_string()));
    inputs.insert("setting_sha256".into(), json!(digest));
    inputs.insert("mode".into(), to_value(&mode));
    inputs.insert("config".into(), to_value(config));
    Ok(Outcome::done(Value::Object(inputs), results))
}
