//! Named verification scenarios: each one exercises a symbolic rewrite
//! against the numeric oracle (or an exact symbolic expectation) and reports
//! per-check pass/fail results. The CLI `verify` subcommand and the
//! acceptance test suite share these runners.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{build_3cluster, example_graph_compact, lattice_layout, Hypergraph, LatticeSpec};
use crate::measurement::{measure_p, measure_q, reduce_integral, Basis};
use crate::nullifier::{check_annihilation, commutator, decompose, nullifier, Annihilation};
use crate::numerics::{realize, realize_integral, Bindings, GridSpec, Quadrature, WaveFunction, Wavepacket};
use crate::poly::EPS_WEIGHT;
use crate::protocols::{cubic_phase_gate, lattice_to_cluster, prepare_cubic_ancilla, unit_cell, CubicRoute, SqueezeClass};
use crate::state::StateExpr;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CheckKind {
    AtLeast,
    AtMost,
    Within(f64),
}

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub value: f64,
    pub target: f64,
    pub kind: CheckKind,
}

impl Check {
    pub fn passed(&self) -> bool {
        match self.kind {
            CheckKind::AtLeast => self.value >= self.target,
            CheckKind::AtMost => self.value <= self.target,
            CheckKind::Within(tol) => (self.value - self.target).abs() <= tol,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { " ok " } else { "FAIL" };
        match self.kind {
            CheckKind::AtLeast => write!(
                f,
                "  [{status}] {} (>= {:.6}): {:.6}",
                self.label, self.target, self.value
            ),
            CheckKind::AtMost => write!(
                f,
                "  [{status}] {} (<= {:.6}): {:.6}",
                self.label, self.target, self.value
            ),
            CheckKind::Within(tol) => write!(
                f,
                "  [{status}] {} (within {:.6} of {:.6}): {:.6}",
                self.label, tol, self.target, self.value
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScenarioReport {
    pub name: String,
    pub checks: Vec<Check>,
    pub csv: Option<String>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario: {}", self.name)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ScenarioConfig {
    pub r: Option<f64>,
    pub grid_n: Option<usize>,
    pub grid_l: Option<f64>,
    pub quad_steps: Option<usize>,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self { r: None, grid_n: None, grid_l: None, quad_steps: None, seed: 7 }
    }
}

pub const SCENARIOS: &[&str] = &[
    "nullifier-random",
    "lemma1-basic",
    "lemma1-oracle",
    "reduce-exactness",
    "theorem-cell",
    "teleport-general-t",
    "cubic-gate",
    "lattice-cluster",
    "nullifier-variance",
    "roundtrips",
];

pub fn run_scenario(name: &str, cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    match name {
        "nullifier-random" => nullifier_random(cfg),
        "lemma1-basic" => lemma1_basic(cfg),
        "lemma1-oracle" => lemma1_oracle(cfg),
        "reduce-exactness" => reduce_exactness(cfg),
        "theorem-cell" => theorem_cell(cfg),
        "teleport-general-t" => teleport_general_t(cfg),
        "cubic-gate" => cubic_gate(cfg),
        "lattice-cluster" => lattice_cluster(cfg),
        "nullifier-variance" => nullifier_variance_scenario(cfg),
        "roundtrips" => roundtrips(cfg),
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

fn no_bindings() -> Bindings {
    Bindings::new()
}

fn psi_bindings() -> Bindings {
    let mut b = Bindings::new();
    b.insert("psi".to_string(), Wavepacket::Vacuum);
    b
}

fn bool_check(label: &str, ok: bool) -> Check {
    Check {
        label: label.to_string(),
        value: if ok { 1.0 } else { 0.0 },
        target: 1.0,
        kind: CheckKind::AtLeast,
    }
}

/// 200 seeded random weighted hypergraphs: the annihilation identity, all
/// pairwise commutators and the unit-vector decomposition, exactly.
fn nullifier_random(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let total = 200;
    let mut annihilation_passes = 0usize;
    let mut decompose_passes = 0usize;
    let mut max_commutator = 0.0f64;
    for _ in 0..total {
        let g = Hypergraph::random(&mut rng, 8, 12, 4);
        if check_annihilation(&g) == Annihilation::Pass {
            annihilation_passes += 1;
        }
        let nulls: Vec<_> = (0..g.n_modes()).map(|i| nullifier(&g, i).unwrap()).collect();
        for i in 0..nulls.len() {
            for j in (i + 1)..nulls.len() {
                let c = commutator(&nulls[i], &nulls[j]).unwrap();
                let mag = c
                    .terms()
                    .map(|(_, w)| w.abs())
                    .fold(c.constant.abs(), f64::max);
                max_commutator = max_commutator.max(mag);
            }
        }
        let pick = rng.gen_range(0..g.n_modes());
        match decompose(&[(pick, 1.0)], &nulls[pick].qpart, &g) {
            Ok(c) => {
                let unit = c
                    .iter()
                    .enumerate()
                    .all(|(k, &v)| (v - if k == pick { 1.0 } else { 0.0 }).abs() <= EPS_WEIGHT);
                if unit {
                    decompose_passes += 1;
                }
            }
            Err(_) => {}
        }
    }
    Ok(ScenarioReport {
        name: "nullifier-random".into(),
        checks: vec![
            Check {
                label: format!("annihilation pass rate over {total} graphs"),
                value: annihilation_passes as f64 / total as f64,
                target: 1.0,
                kind: CheckKind::AtLeast,
            },
            Check {
                label: "largest pairwise commutator coefficient".into(),
                value: max_commutator,
                target: 1e-12,
                kind: CheckKind::AtMost,
            },
            Check {
                label: format!("unit-vector decomposition rate over {total} graphs"),
                value: decompose_passes as f64 / total as f64,
                target: 1.0,
                kind: CheckKind::AtLeast,
            },
        ],
        csv: None,
    })
}

/// The worked example graph: position measurement against the full-state
/// projection oracle on a shared grid plane.
fn lemma1_basic(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let r = cfg.r.unwrap_or(1.5);
    let n = cfg.grid_n.unwrap_or(64);
    let grid4 = match cfg.grid_l {
        Some(l) => GridSpec::new(4, n, l)?,
        None => GridSpec::self_dual(4, n)?,
    };
    let st = StateExpr::from_hypergraph(&example_graph_compact());
    let m = grid4.position(grid4.points / 2 + grid4.points / 16);
    let full = realize(&st, r, &grid4, &no_bindings())?;
    let direct = full.project_homodyne(2, Basis::Q, m)?;
    let symbolic = measure_q(&st, 2, m)?;
    let reduced = realize(&symbolic, r, &grid4.with_modes(3)?, &no_bindings())?;
    let f = direct.fidelity(&reduced)?;
    let csv = reduced.marginals_csv()?;
    Ok(ScenarioReport {
        name: "lemma1-basic".into(),
        checks: vec![Check {
            label: format!("projection vs rewrite fidelity at q={m:.4}"),
            value: f,
            target: 1.0 - 1e-4,
            kind: CheckKind::AtLeast,
        }],
        csv: Some(csv),
    })
}

/// The example graph plus 20 random weighted 3-edges on three modes:
/// q-measurement rewrite vs the projection oracle, fidelity >= 1 - 1e-4.
fn lemma1_oracle(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let r = cfg.r.unwrap_or(2.0);
    let mut min_f = f64::INFINITY;

    // four-mode example at its memory-bound resolution
    let grid4 = GridSpec::self_dual(4, 64)?;
    let st = StateExpr::from_hypergraph(&example_graph_compact());
    let m = grid4.position(grid4.points / 2 + 5);
    let full = realize(&st, r, &grid4, &no_bindings())?;
    let direct = full.project_homodyne(2, Basis::Q, m)?;
    let reduced = realize(&measure_q(&st, 2, m)?, r, &grid4.with_modes(3)?, &no_bindings())?;
    min_f = min_f.min(direct.fidelity(&reduced)?);

    // random weighted 3-edges, three modes realized in full
    let n = cfg.grid_n.unwrap_or(256);
    let grid3 = GridSpec::self_dual(3, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x1e44a);
    for _ in 0..20 {
        let mut w = 0.0f64;
        while w.abs() < 0.05 {
            w = rng.gen_range(-2.0..2.0);
        }
        let g = Hypergraph::new(3).with_edge(&[0, 1, 2], w)?;
        let st = StateExpr::from_hypergraph(&g);
        let vertex = rng.gen_range(0..3);
        let offset = rng.gen_range(-12i64..=12) as f64;
        let m = offset * grid3.dx();
        let full = realize(&st, r, &grid3, &no_bindings())?;
        let direct = full.project_homodyne(vertex, Basis::Q, m)?;
        let reduced = realize(&measure_q(&st, vertex, m)?, r, &grid3.with_modes(2)?, &no_bindings())?;
        min_f = min_f.min(direct.fidelity(&reduced)?);
    }
    Ok(ScenarioReport {
        name: "lemma1-oracle".into(),
        checks: vec![Check {
            label: "minimum projection-vs-rewrite fidelity (example + 20 random)".into(),
            value: min_f,
            target: 1.0 - 1e-4,
            kind: CheckKind::AtLeast,
        }],
        csv: None,
    })
}

/// Exactness of the linear reduction rule at finite squeezing: exact when a
/// single mode remains; capped at 2*sqrt(2)/3 for the two-mode relay, whose
/// measured value is pinned against that derived constant.
fn reduce_exactness(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let r = cfg.r.unwrap_or(2.0);
    let mut checks = Vec::new();

    // single remaining mode: one 2-edge, momentum measurement on one end
    let grid1 = GridSpec::self_dual(1, 512)?;
    let g = Hypergraph::new(2).with_edge(&[0, 1], 1.0)?;
    let st = StateExpr::from_hypergraph(&g);
    for m in [0.0, 0.5, 1.0] {
        let is = measure_p(&st, 1, m)?;
        let quad = Quadrature::auto(r, cfg.quad_steps.unwrap_or(1201));
        let direct = realize_integral(&is, r, &grid1, &quad, &no_bindings())?;
        let reduced = reduce_integral(&is).reduced()?;
        let symbolic = realize(&reduced, r, &grid1, &no_bindings())?;
        checks.push(Check {
            label: format!("one-mode teleport fidelity, m={m}"),
            value: direct.fidelity(&symbolic)?,
            target: 1.0 - 1e-4,
            kind: CheckKind::AtLeast,
        });
    }

    // two remaining modes: the 0-1-2 relay; envelope-limited constant
    let grid2 = GridSpec::self_dual(2, 256)?;
    let path = Hypergraph::new(3)
        .with_edge(&[0, 1], 1.0)?
        .with_edge(&[1, 2], 1.0)?;
    let pst = StateExpr::from_hypergraph(&path);
    let is = measure_p(&pst, 1, 0.0)?;
    let quad = Quadrature::auto(r, cfg.quad_steps.unwrap_or(1201));
    let direct = realize_integral(&is, r, &grid2, &quad, &no_bindings())?;
    let symbolic = realize(&reduce_integral(&is).reduced()?, r, &grid2, &no_bindings())?;
    checks.push(Check {
        label: "two-mode relay fidelity vs derived envelope constant 2*sqrt(2)/3".into(),
        value: direct.fidelity(&symbolic)?,
        target: 2.0 * 2.0f64.sqrt() / 3.0,
        kind: CheckKind::Within(0.01),
    });

    Ok(ScenarioReport { name: "reduce-exactness".into(), checks, csv: None })
}

fn cell_integral_vs_string(
    t: f64,
    m: f64,
    r: f64,
    n: usize,
    steps: usize,
) -> Result<(f64, WaveFunction)> {
    let (graph, cell) = unit_cell();
    let st = StateExpr::from_hypergraph(&graph);
    let after_corner = measure_q(&st, cell.corner, t)?;
    let is = measure_p(&after_corner, cell.center, m)?;
    let grid3 = GridSpec::self_dual(3, n)?;
    let quad = Quadrature::auto(r, steps);
    let direct = realize_integral(&is, r, &grid3, &quad, &no_bindings())?;
    let reduced = reduce_integral(&is).reduced()?;
    let symbolic = realize(&reduced, r, &grid3, &no_bindings())?;
    Ok((direct.fidelity(&symbolic)?, direct))
}

/// The measured cell against its closed-form byproduct string. The dual
/// numeric routes (quadrature vs momentum slice) agree; the closed-form
/// string itself does not reproduce the integral, so those checks fail and
/// stay red. See the project notes on the cell rewrite.
fn theorem_cell(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let r = cfg.r.unwrap_or(2.0);
    let n = cfg.grid_n.unwrap_or(128);
    let steps = cfg.quad_steps.unwrap_or(2048);
    let mut checks = Vec::new();
    let mut csv = None;

    // engine integrity: two independent numeric routes for the same state
    {
        let (graph, cell) = unit_cell();
        let st = StateExpr::from_hypergraph(&graph);
        let after_corner = measure_q(&st, cell.corner, 1.0)?;
        let grid4 = GridSpec::self_dual(4, 32)?;
        let full = realize(&after_corner, 1.0, &grid4, &no_bindings())?;
        let sliced = full.project_homodyne(3, Basis::P, 0.0)?;
        let is = measure_p(&after_corner, cell.center, 0.0)?;
        let quad = Quadrature::auto(1.0, 1201);
        let by_quadrature =
            realize_integral(&is, 1.0, &grid4.with_modes(3)?, &quad, &no_bindings())?;
        checks.push(Check {
            label: "dual-route consistency (quadrature vs momentum slice), m=0".into(),
            value: sliced.fidelity(&by_quadrature)?,
            target: 1.0 - 1e-4,
            kind: CheckKind::AtLeast,
        });
    }

    for m in [0.0, 1.0, -1.0] {
        let (f, direct) = cell_integral_vs_string(1.0, m, r, n, steps)?;
        if m == 0.0 {
            csv = Some(direct.marginals_csv()?);
        }
        checks.push(Check {
            label: format!("cell integral vs closed-form string, m={m}"),
            value: f,
            target: 1.0 - 1e-4,
            kind: CheckKind::AtLeast,
        });
    }

    Ok(ScenarioReport { name: "theorem-cell".into(), checks, csv })
}

/// The corner-outcome-scaled cell reduction: the emitted string carries a
/// weight-1/t edge (checked symbolically); its oracle fidelity shares the
/// cell gap and stays red.
fn teleport_general_t(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let r = cfg.r.unwrap_or(2.0);
    let n = cfg.grid_n.unwrap_or(128);
    let steps = cfg.quad_steps.unwrap_or(2048);
    let mut checks = Vec::new();
    for t in [0.5, 2.0] {
        let (graph, cell) = unit_cell();
        let st = StateExpr::from_hypergraph(&graph);
        let out = crate::protocols::teleport_3edge(&st, &cell, t, 0.0)?;
        let mut key = vec![cell.targets.0, cell.targets.1, cell.targets.2];
        key.sort_unstable();
        checks.push(Check {
            label: format!("teleported edge weight equals 1/t, t={t}"),
            value: out.phase.coeff(&key),
            target: 1.0 / t,
            kind: CheckKind::Within(1e-12),
        });
        let (f, _) = cell_integral_vs_string(t, 0.0, r, n, steps)?;
        checks.push(Check {
            label: format!("cell integral vs scaled string, t={t}, m=0"),
            value: f,
            target: 1.0 - 1e-4,
            kind: CheckKind::AtLeast,
        });
    }
    Ok(ScenarioReport { name: "teleport-general-t".into(), checks, csv: None })
}

fn swap_axes_12(wf: &WaveFunction) -> WaveFunction {
    let n = wf.grid.points;
    let mut out = wf.clone();
    for i0 in 0..n {
        for i1 in 0..n {
            for i2 in 0..n {
                out.amps[(i0 * n + i1) * n + i2] = wf.amps[(i0 * n + i2) * n + i1];
            }
        }
    }
    out
}

/// The cubic gate: symbolic output against the analytic target, the
/// displacement-orientation oracle, the ancilla closed form, and the chain
/// asymmetry constant of the finite-squeezing preparation.
fn cubic_gate(_cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let mut checks = Vec::new();
    let gamma = 0.1;

    // symbolic pipeline output vs analytic single-mode target
    let grid1 = GridSpec::self_dual(1, 1024)?;
    for (m, n) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, -0.5)] {
        let out = cubic_phase_gate("psi", gamma, m, n, CubicRoute::DirectEdge)?;
        if m == 0.0 && n == 0.0 {
            checks.push(bool_check(
                "zero outcomes leave no displacement byproduct",
                out.byproducts.is_empty(),
            ));
        }
        let realized = realize(&out, 1.0, &grid1, &psi_bindings())?;
        let disp = gamma * m + n;
        let target = WaveFunction::from_fn(grid1, |x| {
            Complex64::from_polar(
                (-x[0] * x[0] / 2.0).exp(),
                gamma * x[0].powi(3) - disp * x[0],
            )
        });
        checks.push(Check {
            label: format!("gate output vs Z({disp:.2}) e^{{i {gamma} q^3}} psi, (m,n)=({m},{n})"),
            value: realized.fidelity(&target)?,
            target: 1.0 - 1e-4,
            kind: CheckKind::AtLeast,
        });
    }

    // orientation oracle: run the grid pipeline at gamma = 1 (squeeze-free)
    let r = 1.0;
    let grid3 = GridSpec::self_dual(3, 128)?;
    let prep = prepare_cubic_ancilla("psi", 1.0)?;
    let mut pipeline = realize(&prep, r, &grid3, &psi_bindings())?;
    let prep_wf = pipeline.clone();
    let mut edge = crate::poly::PhasePolynomial::new();
    edge.add_term(&[0, 1, 2], 1.0);
    pipeline.apply_phase_poly(&edge);
    let snap = grid3.dual_position(grid3.points / 2 + 5);
    for (m, n) in [(snap, 0.0), (0.0, snap)] {
        let after_m = pipeline.project_homodyne(1, Basis::P, m)?;
        let out = after_m.project_homodyne(1, Basis::P, n)?;
        let disp = m + n; // gamma = 1
        let target_z = WaveFunction::from_fn(grid3.with_modes(1)?, |x| {
            Complex64::from_polar((-x[0] * x[0] / 2.0).exp(), x[0].powi(3) - disp * x[0])
        });
        let mut target_x = WaveFunction::from_fn(grid3.with_modes(1)?, |x| {
            Complex64::from_polar((-x[0] * x[0] / 2.0).exp(), x[0].powi(3))
        });
        target_x.xdisp_axis(0, disp)?;
        let f_z = out.fidelity(&target_z)?;
        let f_x = out.fidelity(&target_x)?;
        checks.push(Check {
            label: format!("orientation: Z-target fidelity, (m,n)=({m:.3},{n:.3})"),
            value: f_z,
            target: 0.9,
            kind: CheckKind::AtLeast,
        });
        checks.push(Check {
            label: format!("orientation: Z beats X by margin, (m,n)=({m:.3},{n:.3})"),
            value: f_z - f_x,
            target: 0.25,
            kind: CheckKind::AtLeast,
        });
    }

    // the chain preparation is asymmetric at finite squeezing by a constant
    let f_swap = swap_axes_12(&prep_wf).fidelity(&prep_wf)?;
    checks.push(Check {
        label: "ancilla chain swap fidelity vs derived constant 0.8".into(),
        value: f_swap,
        target: 0.8,
        kind: CheckKind::Within(0.015),
    });

    // ancilla closed form at gamma = 0.5 against an independent analytic state
    {
        let r = 0.8;
        let gam = 0.5;
        let gridp = GridSpec::self_dual(3, 256)?;
        let prep = prepare_cubic_ancilla("psi", gam)?;
        let op_route = realize(&prep, r, &gridp, &psi_bindings())?;
        let ghat = move |k: f64| (-k * k * (2.0 * r).exp() / 2.0).exp();
        let analytic = WaveFunction::from_fn(gridp, move |x| {
            let (z1, z2, z3) = (x[0], x[1], x[2]);
            Complex64::new(
                (-z1 * z1 / 2.0).exp() * ghat(z2 / gam - z1) * ghat(z3 - z2 / gam),
                0.0,
            )
        });
        checks.push(Check {
            label: "ancilla preparation vs analytic closed form, gamma=0.5".into(),
            value: op_route.fidelity(&analytic)?,
            target: 1.0 - 1e-4,
            kind: CheckKind::AtLeast,
        });
    }

    let out = cubic_phase_gate("psi", gamma, 1.0, -0.5, CubicRoute::DirectEdge)?;
    let realized = realize(&out, 1.0, &grid1, &psi_bindings())?;
    Ok(ScenarioReport {
        name: "cubic-gate".into(),
        checks,
        csv: Some(realized.marginals_csv()?),
    })
}

/// Exact symbolic checks of the lattice conversion.
fn lattice_cluster(_cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let spec = LatticeSpec::new(2, 2)?;
    let g = build_3cluster(&spec);
    let st = StateExpr::from_hypergraph(&g);
    let layout = lattice_layout(&spec);
    let mut checks = Vec::new();

    let expected: Vec<[usize; 2]> = vec![
        [0, 1], [0, 4], [1, 5], [2, 3], [2, 6], [3, 7], [4, 5], [5, 6],
        [5, 9], [6, 7], [6, 10], [7, 8], [7, 11], [8, 12], [9, 10], [11, 12],
    ];

    let unit: BTreeMap<usize, f64> = layout.centers.iter().map(|&c| (c, 1.0)).collect();
    let (out, report) = lattice_to_cluster(&st, &spec, &unit)?;
    let cluster = Hypergraph::from_polynomial(g.n_modes(), &out.phase)?;
    let adjacency_ok = cluster.edge_count() == expected.len()
        && expected.iter().all(|e| (cluster.weight(e) - 1.0).abs() <= EPS_WEIGHT)
        && cluster.is_uniform(2);
    checks.push(bool_check("unit outcomes give the exact square-lattice cluster", adjacency_ok));
    checks.push(bool_check(
        "unit outcomes classify as unit squeezing",
        report.entries.values().all(|(_, c)| *c == SqueezeClass::Unit),
    ));
    checks.push(bool_check(
        "cluster vertices are exactly the corners",
        cluster.edges().all(|(k, _)| k.iter().all(|&v| v < layout.corner_count)),
    ));

    let mut one_zero = unit.clone();
    one_zero.insert(layout.centers[0], 0.0);
    let (out0, report0) = lattice_to_cluster(&st, &spec, &one_zero)?;
    let cluster0 = Hypergraph::from_polynomial(g.n_modes(), &out0.phase)?;
    checks.push(bool_check(
        "outcome 0 removes exactly the four edges of its cell",
        cluster0.edge_count() == expected.len() - 4
            && report0.entries[&layout.centers[0]].1 == SqueezeClass::Disconnect,
    ));

    let twos: BTreeMap<usize, f64> = layout.centers.iter().map(|&c| (c, 2.0)).collect();
    let (out2, report2) = lattice_to_cluster(&st, &spec, &twos)?;
    let cluster2 = Hypergraph::from_polynomial(g.n_modes(), &out2.phase)?;
    checks.push(bool_check(
        "outcome 2 doubles every edge weight and anti-squeezes",
        cluster2.edges().all(|(_, w)| (w - 2.0).abs() <= EPS_WEIGHT)
            && report2.entries.values().all(|(_, c)| *c == SqueezeClass::AntiSqueeze),
    ));

    Ok(ScenarioReport { name: "lattice-cluster".into(), checks, csv: None })
}

/// Nullifier variance of the realized 2-mode edge state: `e^{-2r}/2` within
/// 10% and monotone in the squeezing.
fn nullifier_variance_scenario(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let n = cfg.grid_n.unwrap_or(512);
    let grid = GridSpec::self_dual(2, n)?;
    let g = Hypergraph::new(2).with_edge(&[0, 1], 1.0)?;
    let st = StateExpr::from_hypergraph(&g);
    let mut checks = Vec::new();
    let mut values = Vec::new();
    for r in [0.5, 1.0, 2.0] {
        let wf = realize(&st, r, &grid, &no_bindings())?;
        let target = (-2.0 * r).exp() / 2.0;
        let mut worst: f64 = 0.0;
        for mode in 0..2 {
            let h = nullifier(&g, mode)?;
            let v = wf.nullifier_variance(&h)?;
            worst = worst.max((v / target - 1.0).abs());
            if mode == 0 {
                values.push(v);
            }
        }
        checks.push(Check {
            label: format!("variance ratio deviation at r={r}"),
            value: worst,
            target: 0.1,
            kind: CheckKind::AtMost,
        });
    }
    checks.push(bool_check(
        "variance decreases monotonically in r",
        values.windows(2).all(|w| w[1] < w[0]),
    ));
    Ok(ScenarioReport { name: "nullifier-variance".into(), checks, csv: None })
}

/// Serialization round trips on 100 random graphs and the exactness of the
/// Fourier round trip on a self-dual grid.
fn roundtrips(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5e71a);
    let total = 100;
    let mut passes = 0;
    for _ in 0..total {
        let g = Hypergraph::random(&mut rng, 8, 12, 4);
        if Hypergraph::from_json(&g.to_json())?.approx_eq(&g, EPS_WEIGHT) {
            passes += 1;
        }
    }
    let grid = GridSpec::self_dual(1, 256)?;
    let mut wf = WaveFunction::from_fn(grid, |x| {
        Complex64::from_polar((-x[0] * x[0] / 6.0).exp(), 0.4 * x[0] * x[0] - 0.8 * x[0])
    });
    wf.normalize()?;
    let reference = wf.clone();
    wf.fourier_axis(0, false)?;
    wf.fourier_axis(0, true)?;
    let f = wf.fidelity(&reference)?;
    Ok(ScenarioReport {
        name: "roundtrips".into(),
        checks: vec![
            Check {
                label: format!("serialization round-trip rate over {total} graphs"),
                value: passes as f64 / total as f64,
                target: 1.0,
                kind: CheckKind::AtLeast,
            },
            Check {
                label: "Fourier round-trip fidelity".into(),
                value: f,
                target: 1.0 - 1e-10,
                kind: CheckKind::AtLeast,
            },
        ],
        csv: None,
    })
}
