//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Criteria 3 and 4 pin the closed-form byproduct string of the measured
//! lattice cell against the quadrature oracle. The dual numeric routes agree
//! with each other, but the closed-form string itself does not reproduce the
//! integral (an exact finite-dimensional cross-check reaches the same
//! verdict), so those two tests fail and are expected to stay red until the
//! cell rewrite itself is revised; the `theorem-cell` scenario prints the
//! measured fidelities. Run with `--nocapture` to see every line.

use std::time::Instant;

use hypercv::scenarios::{run_scenario, ScenarioConfig, ScenarioReport};

fn report(criterion: &str, rep: &ScenarioReport, elapsed_s: f64) -> bool {
    let ok = rep.passed();
    println!(
        "criterion {criterion}: {} ({:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed_s
    );
    println!("{rep}");
    ok
}

fn run(criterion: &str, scenario: &str, cfg: &ScenarioConfig) -> bool {
    let start = Instant::now();
    let rep = run_scenario(scenario, cfg).expect("scenario runs");
    report(criterion, &rep, start.elapsed().as_secs_f64())
}

#[test]
fn criterion_1_nullifier_algebra() {
    assert!(
        run("1 (nullifier algebra)", "nullifier-random", &ScenarioConfig::default()),
        "annihilation / commutator / decomposition checks failed"
    );
}

#[test]
fn criterion_2_position_measurement_oracle() {
    assert!(
        run("2 (q-measurement oracle)", "lemma1-oracle", &ScenarioConfig::default()),
        "projection oracle disagreed with the symbolic rewrite beyond 1e-4"
    );
}

#[test]
fn criterion_3_cell_identity() {
    let cfg = ScenarioConfig {
        r: Some(2.0),
        grid_n: Some(128),
        quad_steps: Some(2048),
        ..ScenarioConfig::default()
    };
    assert!(
        run("3 (cell closed form)", "theorem-cell", &cfg),
        "the closed-form cell string does not reproduce the quadrature oracle; \
         see the scenario output and the repository README"
    );
}

#[test]
fn criterion_4_general_corner_outcome() {
    let cfg = ScenarioConfig {
        r: Some(2.0),
        grid_n: Some(128),
        quad_steps: Some(2048),
        ..ScenarioConfig::default()
    };
    assert!(
        run("4 (corner-scaled cell)", "teleport-general-t", &cfg),
        "the scaled cell string does not reproduce the quadrature oracle; \
         see the scenario output and the repository README"
    );
}

#[test]
fn criterion_5_cubic_phase_gate() {
    assert!(
        run("5 (cubic phase gate)", "cubic-gate", &ScenarioConfig::default()),
        "cubic gate pipeline failed its oracle checks"
    );
}

#[test]
fn criterion_6_lattice_conversion() {
    assert!(
        run("6 (lattice conversion)", "lattice-cluster", &ScenarioConfig::default()),
        "lattice conversion did not match the frozen cluster adjacency"
    );
}

#[test]
fn criterion_7_nullifier_variance_scaling() {
    assert!(
        run("7 (nullifier variance)", "nullifier-variance", &ScenarioConfig::default()),
        "realized nullifier variances drifted from e^(-2r)/2"
    );
}

#[test]
fn criterion_8_determinism_and_round_trips() {
    // CLI byte-determinism is covered by the CLI crate's integration tests;
    // this covers serialization and transform round trips.
    assert!(
        run("8 (round trips)", "roundtrips", &ScenarioConfig::default()),
        "serialization or Fourier round trips degraded"
    );
}

#[test]
fn measurement_exactness_profile() {
    // Companion check: the linear reduction is oracle-exact with one
    // remaining mode and envelope-limited (2*sqrt(2)/3) with two; both
    // values are pinned.
    assert!(
        run("A (reduction exactness profile)", "reduce-exactness", &ScenarioConfig::default()),
        "reduction exactness profile moved away from its pinned values"
    );
}

#[test]
fn lemma1_basic_smoke() {
    assert!(
        run("B (single-slice smoke)", "lemma1-basic", &ScenarioConfig::default()),
        "basic projection smoke test failed"
    );
}
