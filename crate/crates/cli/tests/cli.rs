use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bellgame::classical::{hv_model_to_distribution, HiddenComponent, HiddenVariableModel, LocalResponse};
use bellgame::game::file::{GameDefinition, TABLE1_JSON};
use bellgame::game::{expected_payoffs, Prior, UtilityTable};
use bellgame::Rational;
use serde_json::Value;
use tempfile::TempDir;

fn bellgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bellgame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn rational(v: &Value) -> Rational {
    v.as_str().expect("rational string").parse().unwrap()
}

#[test]
fn builtin_equilibria_match_published_payoffs() {
    let report = json_of(&bellgame(&["equilibria"]));
    assert_eq!(report["command"], "equilibria");
    assert_eq!(report["inputs"]["game"], "builtin:table1");
    assert_eq!(report["inputs"]["game_sha256"].as_str().unwrap().len(), 64);
    let results = &report["results"];
    assert_eq!(results["count"], 9);
    assert_eq!(results["fair"], 3);
    assert_eq!(rational(&results["max_deterministic_total"]), Rational::new(9, 4));
    let mut triples: Vec<[Rational; 3]> = results["equilibria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| ["A", "B", "C"].map(|p| rational(&e["payoffs"][p])))
        .collect();
    triples.sort();
    let r = Rational::new;
    let mut expected = vec![
        [r(5, 8), r(13, 16), r(13, 16)],
        [r(13, 16), r(5, 8), r(13, 16)],
        [r(13, 16), r(13, 16), r(5, 8)],
        [r(11, 8), r(7, 16), r(7, 16)],
        [r(7, 16), r(11, 8), r(7, 16)],
        [r(7, 16), r(7, 16), r(11, 8)],
        [r(3, 4), r(3, 4), r(3, 4)],
        [r(3, 4), r(3, 4), r(3, 4)],
        [r(3, 4), r(3, 4), r(3, 4)],
    ];
    expected.sort();
    assert_eq!(triples, expected);
    assert!(report.get("wall_time_s").is_none());
}

#[test]
fn bundled_file_matches_builtin() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "table1.json", TABLE1_JSON);
    let from_file = json_of(&bellgame(&["equilibria", "--game", s(&path)]));
    let builtin = json_of(&bellgame(&["equilibria"]));
    assert_eq!(from_file["results"], builtin["results"]);
    assert_eq!(from_file["inputs"]["game_sha256"], builtin["inputs"]["game_sha256"]);
}

#[test]
fn constant_game_has_sixty_four_equilibria() {
    let dir = TempDir::new().unwrap();
    let def = GameDefinition {
        game: UtilityTable::constant(Rational::new(1, 2)),
        prior: Prior::uniform(),
    };
    let path = write(&dir, "constant.json", &def.to_json());
    let report = json_of(&bellgame(&["equilibria", "--game", s(&path)]));
    assert_eq!(report["results"]["count"], 64);
}

#[test]
fn prior_not_summing_to_one_is_rejected() {
    let dir = TempDir::new().unwrap();
    let mut doc: Value = serde_json::from_str(TABLE1_JSON).unwrap();
    doc["prior"]["000"] = Value::from("1/40");
    let path = write(&dir, "bad.json", &doc.to_string());
    let out = bellgame(&["equilibria", "--game", s(&path)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("prior") && err.contains("9/10"), "{err}");
}

#[test]
fn bad_utility_entry_names_its_field() {
    let dir = TempDir::new().unwrap();
    let mut doc: Value = serde_json::from_str(TABLE1_JSON).unwrap();
    doc["utilities"]["B"][2][5] = Value::from("3/0");
    let path = write(&dir, "bad.json", &doc.to_string());
    let out = bellgame(&["equilibria", "--game", s(&path)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("utilities.B[2][5]"), "{err}");
}

#[test]
fn asymmetric_game_warns_but_runs() {
    let dir = TempDir::new().unwrap();
    let mut doc: Value = serde_json::from_str(TABLE1_JSON).unwrap();
    doc["utilities"]["A"][0][0] = Value::from("7/1");
    let path = write(&dir, "asym.json", &doc.to_string());
    let out = bellgame(&["equilibria", "--game", s(&path)]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not player-symmetric"));
}

#[test]
fn missing_file_is_an_io_error() {
    let out = bellgame(&["equilibria", "--game", "/nonexistent/game.json"]);
    assert_eq!(out.status.code(), Some(4));
    let out = bellgame(&["equilibria", "--game", "builtin:nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn audit_is_reproducible_to_the_byte() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = bellgame(&["audit-bound", "--samples", "200", "--seed", "5", "--out", s(p)]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let report: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(report["results"]["deterministic_max"], "9/4");
    assert_eq!(report["results"]["bell"]["deterministic_max_abs"][0], "2/1");
    assert_eq!(report["results"]["samples_within_bound"], true);
}

#[test]
fn audit_without_samples_runs() {
    let report = json_of(&bellgame(&["audit-bound", "--samples", "0"]));
    assert_eq!(report["results"]["sampled_max"], Value::Null);
    assert_eq!(report["results"]["bound"], "9/4");
}

#[test]
fn bell_reports_classical_extremes() {
    let report = json_of(&bellgame(&["bell"]));
    let r = &report["results"];
    assert_eq!(r["max_abs"]["V011"], "2/1");
    assert_eq!(r["limit_attained"], true);
    assert_eq!(r["profiles"].as_array().unwrap().len(), 64);
    assert_eq!(r["bell_form"]["v011"], "3/16");
    assert_eq!(r["quantum"], Value::Null);
}

#[test]
fn optimize_defaults_reach_reported_value() {
    let report = json_of(&bellgame(&["optimize"]));
    let r = &report["results"];
    let value = r["quantum_value"].as_f64().unwrap();
    assert!((value - 0.842).abs() < 1e-3);
    assert_eq!(r["classical_fair_cap"], "3/4");
    assert_eq!(r["beats_classical"], true);
    assert!((r["advantage"].as_f64().unwrap() - 0.092).abs() < 1e-3);
    assert_eq!(r["optimum"]["converged"], true);
    assert_eq!(r["optimum"]["angles"][0].as_f64(), Some(0.0));
    assert_eq!(report["inputs"]["config"]["restarts"], 16);
}

#[test]
fn optimize_seeds_agree_on_value() {
    let v = |seed: &str| {
        json_of(&bellgame(&["optimize", "--seed", seed]))["results"]["quantum_value"]
            .as_f64()
            .unwrap()
    };
    assert!((v("1") - v("2")).abs() < 1e-6);
}

#[test]
fn degraded_optimize_config_still_reports() {
    let out = bellgame(&["optimize", "--restarts", "1", "--grid", "8"]);
    assert!(matches!(out.status.code(), Some(0) | Some(3)));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["results"]["optimum"]["converged"].is_boolean());

    let out = bellgame(&["optimize", "--restarts", "1", "--grid", "8", "--max-iterations", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["optimum"]["converged"], false);

    assert_eq!(bellgame(&["optimize", "--grid", "4"]).status.code(), Some(2));
}

#[test]
fn check_certifies_reported_optimum() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "opt.json",
        r#"{"phi_A0": 0, "phi_A1": -1.5707963267948966, "phi_B0": 0,
            "phi_B1": -1.5707963267948966, "phi_C0": 2.1588, "phi_C1": 0.5880}"#,
    );
    let report = json_of(&bellgame(&["check", s(&path)]));
    let r = &report["results"];
    for p in ["A", "B", "C"] {
        assert!((r["payoffs"][p].as_f64().unwrap() - 0.842).abs() < 1e-3);
    }
    assert_eq!(r["fair"], true);
    assert_eq!(r["planar"], true);
    assert_eq!(r["best_response"]["certified"], true);
    assert_eq!(r["no_signalling"]["violations"], 0);
    assert_eq!(report["inputs"]["mode"], "planar");

    let full = json_of(&bellgame(&["check", s(&path), "--mode", "full"]));
    assert_eq!(full["results"]["best_response"]["mode"], "full_sphere");
}

#[test]
fn pauli_z_setting_matches_classical_two_point_mixture() {
    let dir = TempDir::new().unwrap();
    let z = r#"{"theta_A0": 0, "phi_A0": 0, "theta_A1": 0, "phi_A1": 0,
                "theta_B0": 0, "phi_B0": 0, "theta_B1": 0, "phi_B1": 0,
                "theta_C0": 0, "phi_C0": 0, "theta_C1": 0, "phi_C1": 0}"#;
    let path = write(&dir, "z.json", z);
    let report = json_of(&bellgame(&["check", s(&path)]));

    // everyone answers 0, or everyone answers 1, with probability 1/2
    let constant = |bit: i64| LocalResponse::new([Rational::integer(bit), Rational::integer(bit)]).unwrap();
    let model = HiddenVariableModel::new(
        [0, 1]
            .map(|b| HiddenComponent {
                weight: Rational::new(1, 2),
                responses: [constant(b), constant(b), constant(b)],
            })
            .to_vec(),
    )
    .unwrap();
    let classical = expected_payoffs(&UtilityTable::table1(), &Prior::uniform(), &hv_model_to_distribution(&model));
    for (p, want) in ["A", "B", "C"].iter().zip(classical.to_array()) {
        let got = report["results"]["payoffs"][*p].as_f64().unwrap();
        assert!((got - want.to_f64()).abs() < 1e-10, "{p}: {got} vs {want}");
    }
    assert_eq!(report["results"]["planar"], false);
    assert!(report["results"].get("fair").is_none());
}

#[test]
fn general_setting_reports_three_payoffs() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "tilted.json",
        r#"{"theta_A0": 0.4, "phi_A0": 0.1, "phi_A1": 1.0, "phi_B0": -0.3,
            "phi_B1": 2.0, "theta_C0": 2.2, "phi_C0": 0.7, "phi_C1": -1.1}"#,
    );
    let report = json_of(&bellgame(&["check", s(&path)]));
    let r = &report["results"];
    assert!(["A", "B", "C"].iter().all(|p| r["payoffs"][*p].is_f64()));
    assert!(r.get("fair").is_none());
    assert_eq!(r["no_signalling"]["violations"], 0);
}

#[test]
fn malformed_setting_is_rejected() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.json", r#"{"phi_A0": 0, "phi_A1": "x"}"#);
    let out = bellgame(&["check", s(&path)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("phi_A1"));
}

#[test]
fn timing_is_opt_in() {
    let report = json_of(&bellgame(&["bell", "--timing"]));
    assert!(report["wall_time_s"].is_f64());
}

#[test]
fn reals_carry_at_most_twelve_significant_digits() {
    let report = json_of(&bellgame(&["optimize"]));
    let v = report["results"]["quantum_value"].as_f64().unwrap();
    let rounded: f64 = format!("{v:.11e}").parse().unwrap();
    assert_eq!(v, rounded);
}
