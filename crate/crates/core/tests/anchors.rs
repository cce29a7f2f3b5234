use bellgame::classical::{bell_form, hv_model_to_distribution, HiddenVariableModel, LocalResponse};
use bellgame::game::{
    affine_transform, check_player_symmetry, expected_payoffs, ConditionalDistribution, PlayerId, Prior,
    UtilityTable,
};
use bellgame::optimize::{
    best_response_check, maximize_planar, quantum_advantage_report, OptimizationConfig, SearchMode,
};
use bellgame::quantum::{
    gauge_equivalent, planar_payoff, quantum_payoffs, MeasurementSetting, PlanarAngles, QuantumAdvisor,
};
use bellgame::Rational;

fn analytic_optimum() -> f64 {
    (13.0 + 2.0 * 13f64.sqrt()) / 24.0
}

#[test]
fn table1_is_player_symmetric() {
    assert!(check_player_symmetry(&UtilityTable::table1()).is_empty());
}

#[test]
fn uniform_distribution_pays_mean_utility() {
    let game = UtilityTable::table1();
    // oracle: average of the 64 entries of each player's table
    let oracle: Vec<Rational> = PlayerId::ALL
        .iter()
        .map(|&p| {
            let mut s = Rational::integer(0);
            for x in bellgame::game::TypeProfile::all() {
                for y in bellgame::game::ActionProfile::all() {
                    s += game.get(p, x, y);
                }
            }
            s * Rational::new(1, 64)
        })
        .collect();
    let f = expected_payoffs(&game, &Prior::uniform(), &ConditionalDistribution::<Rational>::uniform());
    for p in PlayerId::ALL {
        assert_eq!(*f.get(p), oracle[p.index()]);
        assert_eq!(*f.get(p), Rational::new(13, 24));
    }
    // a hidden variable that ignores types and flips fair coins is the same
    let coin = LocalResponse::new([Rational::new(1, 2), Rational::new(1, 2)]).unwrap();
    let model = HiddenVariableModel::three_bit(
        std::array::from_fn(|i| if i == 0 { Rational::integer(1) } else { Rational::integer(0) }),
        [[coin.clone(), coin.clone()], [coin.clone(), coin.clone()], [coin.clone(), coin]],
    )
    .unwrap();
    assert_eq!(
        expected_payoffs(&game, &Prior::uniform(), &hv_model_to_distribution(&model)).total(),
        Rational::new(13, 8)
    );
}

#[test]
fn maximally_mixed_advisor_pays_mean_utility() {
    let f = quantum_payoffs(
        &UtilityTable::table1(),
        &Prior::uniform(),
        &QuantumAdvisor::maximally_mixed(),
        &MeasurementSetting::planar(&PlanarAngles::reference_optimum()),
    )
    .unwrap();
    for v in f.to_array() {
        assert!((v - 13.0 / 24.0).abs() < 1e-12);
    }
}

#[test]
fn shift_to_nonnegative_utilities() {
    let g = affine_transform(&UtilityTable::table1(), &Rational::integer(6), &Rational::integer(20)).unwrap();
    assert_eq!(UtilityTable::table1().min_entry(), Rational::new(-19, 6));
    assert_eq!(g.min_entry(), Rational::integer(1));
    assert!(affine_transform(&UtilityTable::table1(), &Rational::integer(0), &Rational::integer(1)).is_err());
}

#[test]
fn reference_angles_reach_reported_value() {
    let v = planar_payoff(&PlanarAngles::reference_optimum());
    assert!((v - 0.842).abs() < 1e-3);
    assert!((v - analytic_optimum()).abs() < 1e-8);
}

#[test]
fn optimizer_is_deterministic_and_consistent() {
    let config = OptimizationConfig::default();
    let a = maximize_planar(&config).unwrap();
    let b = maximize_planar(&config).unwrap();
    assert_eq!(a, b);
    assert!((a.value - planar_payoff(&a.angles)).abs() <= 1e-10);
    assert_eq!(a.angles.get(0), 0.0);
    assert_eq!(a.angles.get(2), 0.0);
    assert!(a.converged);
    assert!(a.payoffs.is_fair(1e-12));
}

#[test]
fn more_restarts_never_lower_the_value() {
    let mut last = f64::NEG_INFINITY;
    for restarts in 1..=10 {
        let r = maximize_planar(&OptimizationConfig {
            restarts,
            grid: 8,
            ..Default::default()
        })
        .unwrap();
        assert!(r.value >= last, "restarts {restarts}: {} < {last}", r.value);
        last = r.value;
    }
}

#[test]
fn seeds_agree_up_to_gauge_or_value() {
    let base = maximize_planar(&OptimizationConfig::default()).unwrap();
    for seed in 1..5 {
        let r = maximize_planar(&OptimizationConfig {
            seed,
            ..Default::default()
        })
        .unwrap();
        assert!(gauge_equivalent(&r.angles, &base.angles, 1e-4) || (r.value - base.value).abs() < 1e-6);
        assert!((r.value - analytic_optimum()).abs() < 1e-6);
    }
}

#[test]
fn coarse_single_restart_is_close() {
    let r = maximize_planar(&OptimizationConfig {
        restarts: 1,
        grid: 8,
        ..Default::default()
    })
    .unwrap();
    assert!(r.value > analytic_optimum() - 0.05);
}

#[test]
fn two_mirror_maxima_are_reported() {
    let r = maximize_planar(&OptimizationConfig::default()).unwrap();
    assert!(r.local_maxima.len() >= 2);
    let top: Vec<_> = r
        .local_maxima
        .iter()
        .filter(|m| (m.value - analytic_optimum()).abs() < 1e-9)
        .collect();
    assert_eq!(top.len(), 2);
    assert!(top
        .iter()
        .any(|m| gauge_equivalent(&m.angles, &PlanarAngles::reference_optimum(), 1e-3)));
    // the other one is (π/2, π/2, π − φ5, π − φ6) in canonical gauge
    let mirror = PlanarAngles::new([
        0.0,
        std::f64::consts::FRAC_PI_2,
        0.0,
        std::f64::consts::FRAC_PI_2,
        std::f64::consts::PI - 2.1588,
        std::f64::consts::PI - 0.5880,
    ]);
    assert!(top.iter().any(|m| gauge_equivalent(&m.angles, &mirror, 1e-3)));
}

#[test]
fn bell_values_at_optimum() {
    let r = maximize_planar(&OptimizationConfig::default()).unwrap();
    let b = r.bell_values;
    assert!(b.v011 - b.v100 > 4.0);
    // regression anchor
    assert!((b.v011 - b.v100 - 5.547002).abs() < 1e-5, "{}", b.v011 - b.v100);
    let form = bell_form(&UtilityTable::table1(), &Prior::uniform()).unwrap();
    assert!((form.total(b.v011, b.v100) - 3.0 * r.value).abs() < 1e-10);
}

#[test]
fn advantage_over_classical_fair_cap() {
    let rep = quantum_advantage_report(&UtilityTable::table1(), &Prior::uniform(), &OptimizationConfig::default())
        .unwrap();
    assert_eq!(rep.classical_fair_cap, Rational::new(3, 4));
    assert_eq!(rep.classical_bound, Rational::new(9, 4));
    assert!((rep.quantum_value - 0.842).abs() < 1e-3);
    assert!((rep.advantage - 0.092).abs() < 1e-3);
    assert!((rep.quantum_total - 2.526).abs() < 1e-3);
    assert!(rep.beats_classical && rep.exceeds_classical_bound && rep.quantum_fair);
}

#[test]
fn zero_angles_admit_a_profitable_deviation() {
    let s = MeasurementSetting::planar(&PlanarAngles::new([0.0; 6]));
    let v = best_response_check(&s, SearchMode::Planar, &OptimizationConfig::default()).unwrap();
    assert!(!v.certified);
    assert!(v.max_improvement > 0.0);
}

#[test]
fn reference_optimum_is_certified_in_plane() {
    let s = MeasurementSetting::planar(&PlanarAngles::reference_optimum());
    let v = best_response_check(&s, SearchMode::Planar, &OptimizationConfig::default()).unwrap();
    assert!(v.certified, "{:?}", v.players);
}

#[test]
fn leaving_the_plane_does_not_help_at_the_optimum() {
    // exploratory anchor: the linear response of each player has no
    // out-of-plane component on GHZ, so full-sphere gains stay at round-off
    let r = maximize_planar(&OptimizationConfig::default()).unwrap();
    let v = best_response_check(
        &MeasurementSetting::planar(&r.angles),
        SearchMode::FullSphere,
        &OptimizationConfig::default(),
    )
    .unwrap();
    assert_eq!(v.mode, SearchMode::FullSphere);
    assert!(v.max_improvement < 1e-9, "{}", v.max_improvement);
}
