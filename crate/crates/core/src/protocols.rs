//! End-to-end pipelines: 3-edge teleportation through a lattice cell, the
//! cubic phase gate on an external input, and conversion of a 3-edge lattice
//! into a standard 2-edge cluster.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::{build_3cluster, lattice_layout, Hypergraph, LatticeSpec};
use crate::measurement::{measure_p, measure_q, reduce_integral};
use crate::poly::EPS_WEIGHT;
use crate::state::{GaussianOp, ModeBase, StateExpr};

/// One teleportation cell: the q-measured corner, the p-measured center and
/// the three target corners in cyclic order. The underlying state must carry
/// the four weight-1 3-edges {center, corner, a}, {center, a, b},
/// {center, b, c}, {center, c, corner}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellRef {
    pub corner: usize,
    pub center: usize,
    pub targets: (usize, usize, usize),
}

impl CellRef {
    pub fn required_edges(&self) -> [[usize; 3]; 4] {
        let (a, b, c) = self.targets;
        [
            [self.center, self.corner, a],
            [self.center, a, b],
            [self.center, b, c],
            [self.center, c, self.corner],
        ]
    }

    pub fn validate(&self, st: &StateExpr) -> Result<()> {
        let (a, b, c) = self.targets;
        let mut all = vec![self.corner, self.center, a, b, c];
        all.sort_unstable();
        all.dedup();
        if all.len() != 5 {
            return Err(Error::CellMismatch("cell vertices must be distinct".into()));
        }
        for v in [self.corner, self.center, a, b, c] {
            if v >= st.n_modes() {
                return Err(Error::VertexOutOfRange { vertex: v, modes: st.n_modes() });
            }
            if st.is_detached(v) {
                return Err(Error::DetachedMode(v));
            }
        }
        for edge in self.required_edges() {
            let mut key = edge.to_vec();
            key.sort_unstable();
            let w = st.phase.coeff(&key);
            if (w - 1.0).abs() > EPS_WEIGHT {
                return Err(Error::CellMismatch(format!(
                    "edge {key:?} has weight {w}, expected 1"
                )));
            }
        }
        Ok(())
    }
}

/// The single-cell lattice and its canonical cell: corner 0 (upper left),
/// center 4, targets (1, 3, 2) in cyclic order around the square.
pub fn unit_cell() -> (Hypergraph, CellRef) {
    let g = build_3cluster(&LatticeSpec::new(1, 1).expect("1x1 is valid"));
    (g, CellRef { corner: 0, center: 4, targets: (1, 3, 2) })
}

/// Teleports a 3-edge onto the cell's target corners: measures `q` on the
/// corner (outcome `t`), `p` on the center (outcome `m`) and rewrites the
/// integral. The result carries a weight-`1/t` 3-edge on the targets plus
/// the cell byproducts.
pub fn teleport_3edge(st: &StateExpr, cell: &CellRef, t: f64, m: f64) -> Result<StateExpr> {
    if t.abs() <= EPS_WEIGHT {
        return Err(Error::TeleportDegenerate);
    }
    cell.validate(st)?;
    let after_corner = measure_q(st, cell.corner, t)?;
    let integral = measure_p(&after_corner, cell.center, m)?;
    reduce_integral(&integral).reduced()
}

/// Prepares the three-mode cubic ancilla carrying `int dx psi(x)
/// |x, gamma x, x>_q`: a CZ/Fourier relay chain copies the input position
/// onto both ancillas and a final squeeze scales the middle mode by `gamma`.
pub fn prepare_cubic_ancilla(label: &str, gamma: f64) -> Result<StateExpr> {
    if gamma <= 0.0 {
        return Err(Error::NonPositiveGamma(gamma));
    }
    let mut st = StateExpr::with_bases(vec![
        ModeBase::External(label.to_string()),
        ModeBase::ZeroMomentum,
        ModeBase::ZeroMomentum,
    ]);
    let mut ops = Vec::new();
    if (gamma - 1.0).abs() > EPS_WEIGHT {
        ops.push(GaussianOp::Squeeze(1, gamma));
    }
    ops.extend([
        GaussianOp::FourierInv(2),
        GaussianOp::Cz2(1, 2, 1.0),
        GaussianOp::FourierInv(1),
        GaussianOp::Cz2(0, 1, 1.0),
    ]);
    st.byproducts = ops;
    Ok(st)
}

/// How the cubic gate obtains its 3-edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CubicRoute {
    /// Apply the entangler directly on the prepared ancilla.
    DirectEdge,
    /// Run an actual teleportation cell on raw modes first; its feed-forward
    /// corrections are applied and the teleported weight (`1/t`) is used.
    TeleportedEdge { t: f64, center_outcome: f64 },
}

/// Orientation of the cubic gate's displacement byproduct, fixed once by the
/// numeric oracle (see the `cubic-gate` verification scenario): the residual
/// measurement phase `e^{-i(gamma m + n)x}` is diagonal in position, i.e. a
/// `Z` displacement.
pub const CUBIC_DISPLACEMENT_IS_Z: bool = true;

/// Implements `Z(gamma m + n) e^{i gamma q^3}` on the external input via the
/// ancilla construction: prepare `int psi(x)|x, gamma x, x>`, apply the
/// 3-edge (weight `w`), read the product phase `e^{i w gamma x^3}`, then
/// project both ancillas in `p` (outcome `m` on the `gamma x` mode, `n` on
/// the other), which leaves `e^{-i(gamma m + n)x}` behind.
pub fn cubic_phase_gate(
    label: &str,
    gamma: f64,
    m: f64,
    n: f64,
    route: CubicRoute,
) -> Result<StateExpr> {
    if gamma <= 0.0 {
        return Err(Error::NonPositiveGamma(gamma));
    }
    let edge_weight = match route {
        CubicRoute::DirectEdge => 1.0,
        CubicRoute::TeleportedEdge { t, center_outcome } => {
            let (graph, cell) = unit_cell();
            let raw = StateExpr::from_hypergraph(&graph);
            let teleported = teleport_3edge(&raw, &cell, t, center_outcome)?;
            // feed-forward: undo the recorded byproducts exactly
            let corrected = teleported.cleared_byproducts();
            let mut key = vec![cell.targets.0, cell.targets.1, cell.targets.2];
            key.sort_unstable();
            corrected.phase.coeff(&key)
        }
    };
    let mut out = StateExpr::with_bases(vec![ModeBase::External(label.to_string())]);
    out.phase.add_term(&[0, 0, 0], edge_weight * gamma);
    let disp = gamma * m + n;
    if disp.abs() > EPS_WEIGHT {
        out.byproducts = vec![GaussianOp::ZDisp(0, disp)];
    }
    Ok(out)
}

/// Classification of a center measurement outcome by its effect on the
/// squeezing of the neighboring cluster modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqueezeClass {
    AntiSqueeze,
    Enhance,
    Disconnect,
    Negative,
    Unit,
}

impl SqueezeClass {
    pub fn of(outcome: f64) -> Self {
        if outcome < 0.0 {
            SqueezeClass::Negative
        } else if outcome == 0.0 {
            SqueezeClass::Disconnect
        } else if outcome < 1.0 {
            SqueezeClass::Enhance
        } else if outcome == 1.0 {
            SqueezeClass::Unit
        } else {
            SqueezeClass::AntiSqueeze
        }
    }
}

impl fmt::Display for SqueezeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SqueezeClass::AntiSqueeze => "anti_squeeze",
            SqueezeClass::Enhance => "enhance",
            SqueezeClass::Disconnect => "disconnect",
            SqueezeClass::Negative => "negative",
            SqueezeClass::Unit => "unit",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SqueezeReport {
    pub entries: BTreeMap<usize, (f64, SqueezeClass)>,
}

impl fmt::Display for SqueezeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (center, (m, class)) in &self.entries {
            writeln!(f, "center {center}: m={m} {class}")?;
        }
        Ok(())
    }
}

/// Measures `q` on every center of a 3-edge lattice, leaving the weighted
/// square-lattice cluster on the corners, and classifies each outcome.
pub fn lattice_to_cluster(
    st: &StateExpr,
    spec: &LatticeSpec,
    outcomes: &BTreeMap<usize, f64>,
) -> Result<(StateExpr, SqueezeReport)> {
    let layout = lattice_layout(spec);
    let mut cur = st.clone();
    let mut report = SqueezeReport::default();
    for &center in &layout.centers {
        let m = *outcomes.get(&center).ok_or(Error::MissingOutcome(center))?;
        cur = measure_q(&cur, center, m)?;
        report.entries.insert(center, (m, SqueezeClass::of(m)));
    }
    Ok((cur, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::lattice_layout;

    #[test]
    fn unit_cell_teleports_the_edge() {
        let (graph, cell) = unit_cell();
        let st = StateExpr::from_hypergraph(&graph);
        let out = teleport_3edge(&st, &cell, 1.0, 0.5).unwrap();
        assert_eq!(
            out.byproducts,
            vec![
                GaussianOp::Cx(2, 1, 1.0),
                GaussianOp::Fourier(1),
                GaussianOp::Cz2(1, 2, 1.0),
                GaussianOp::ZDisp(1, 0.5),
            ]
        );
        assert!((out.phase.coeff(&[1, 2, 3]) - 1.0).abs() < EPS_WEIGHT);
        assert_eq!(out.base(0), &ModeBase::QEigen(1.0));
        assert_eq!(out.base(4), &ModeBase::PEigen(0.5));
        assert_eq!(
            out.to_string(),
            "e^{ip2q1} F1 CZ(1,2) Z1(0.5) · exp(i[q1q2q3]) |q=1,0p,0p,0p,p=0.5⟩"
        );
    }

    #[test]
    fn teleport_scales_with_corner_outcome() {
        let (graph, cell) = unit_cell();
        let st = StateExpr::from_hypergraph(&graph);
        let out = teleport_3edge(&st, &cell, 2.0, 0.0).unwrap();
        assert!((out.phase.coeff(&[1, 2, 3]) - 0.5).abs() < EPS_WEIGHT);
        assert_eq!(
            out.byproducts,
            vec![
                GaussianOp::Cx(2, 1, 1.0),
                GaussianOp::Fourier(1),
                GaussianOp::Cz2(1, 2, 1.0),
            ]
        );
        assert!(matches!(
            teleport_3edge(&st, &cell, 0.0, 0.0),
            Err(Error::TeleportDegenerate)
        ));
    }

    #[test]
    fn cell_validation_catches_wrong_structure() {
        let (graph, cell) = unit_cell();
        let mut broken = graph.clone();
        broken.add_edge(&[4, 0, 1], -1.0).unwrap(); // removes one cell edge
        let st = StateExpr::from_hypergraph(&broken);
        assert!(matches!(
            teleport_3edge(&st, &cell, 1.0, 0.0),
            Err(Error::CellMismatch(_))
        ));
    }

    #[test]
    fn ancilla_preparation_string_is_frozen() {
        let st = prepare_cubic_ancilla("ψ", 0.5).unwrap();
        assert_eq!(
            st.to_string(),
            "S1(0.5) F2† CZ(1,2) F1† CZ(0,1) · exp(i[0]) |ψ,0p,0p⟩"
        );
        assert!(st.phase.is_zero());
        let unit = prepare_cubic_ancilla("ψ", 1.0).unwrap();
        assert_eq!(unit.byproducts.len(), 4, "S(1) is the identity and is dropped");
        assert!(prepare_cubic_ancilla("ψ", 0.0).is_err());
        assert!(prepare_cubic_ancilla("ψ", -0.3).is_err());
    }

    #[test]
    fn cubic_gate_output_shape() {
        for (m, n) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, -0.5)] {
            let st = cubic_phase_gate("ψ", 0.1, m, n, CubicRoute::DirectEdge).unwrap();
            assert_eq!(st.phase.term_count(), 1);
            assert!((st.phase.coeff(&[0, 0, 0]) - 0.1).abs() < EPS_WEIGHT);
            let disp = 0.1 * m + n;
            if disp.abs() <= EPS_WEIGHT {
                assert!(st.byproducts.is_empty());
            } else {
                assert_eq!(st.byproducts, vec![GaussianOp::ZDisp(0, disp)]);
            }
        }
        assert!(cubic_phase_gate("ψ", 0.0, 0.0, 0.0, CubicRoute::DirectEdge).is_err());
    }

    #[test]
    fn cubic_routes_agree() {
        let direct = cubic_phase_gate("ψ", 0.1, 1.0, -0.5, CubicRoute::DirectEdge).unwrap();
        let teleported = cubic_phase_gate(
            "ψ",
            0.1,
            1.0,
            -0.5,
            CubicRoute::TeleportedEdge { t: 1.0, center_outcome: 0.7 },
        )
        .unwrap();
        assert!(direct.approx_eq(&teleported, EPS_WEIGHT));

        // a rescaling corner outcome scales the cubic coefficient by 1/t
        let scaled = cubic_phase_gate(
            "ψ",
            0.1,
            0.0,
            0.0,
            CubicRoute::TeleportedEdge { t: 2.0, center_outcome: 0.0 },
        )
        .unwrap();
        assert!((scaled.phase.coeff(&[0, 0, 0]) - 0.05).abs() < EPS_WEIGHT);
    }

    #[test]
    fn lattice_conversion_unit_outcomes() {
        let spec = LatticeSpec::new(2, 2).unwrap();
        let g = build_3cluster(&spec);
        let st = StateExpr::from_hypergraph(&g);
        let layout = lattice_layout(&spec);
        let outcomes: BTreeMap<usize, f64> =
            layout.centers.iter().map(|&c| (c, 1.0)).collect();
        let (out, report) = lattice_to_cluster(&st, &spec, &outcomes).unwrap();

        // frozen square-lattice cluster adjacency of the 2x2 lattice
        let expected: Vec<[usize; 2]> = vec![
            [0, 1], [0, 4], [1, 5], [2, 3], [2, 6], [3, 7], [4, 5], [5, 6],
            [5, 9], [6, 7], [6, 10], [7, 8], [7, 11], [8, 12], [9, 10], [11, 12],
        ];
        let graph = Hypergraph::from_polynomial(g.n_modes(), &out.phase).unwrap();
        assert_eq!(graph.edge_count(), expected.len());
        for e in &expected {
            assert!((graph.weight(e) - 1.0).abs() < EPS_WEIGHT, "missing edge {e:?}");
        }
        assert!(graph.is_uniform(2));
        assert!(report
            .entries
            .values()
            .all(|(_, class)| *class == SqueezeClass::Unit));
    }

    #[test]
    fn lattice_conversion_special_outcomes() {
        let spec = LatticeSpec::new(2, 2).unwrap();
        let g = build_3cluster(&spec);
        let st = StateExpr::from_hypergraph(&g);
        let layout = lattice_layout(&spec);

        // outcome 0 at the first center removes exactly its four edges
        let mut outcomes: BTreeMap<usize, f64> =
            layout.centers.iter().map(|&c| (c, 1.0)).collect();
        outcomes.insert(13, 0.0);
        let (out, report) = lattice_to_cluster(&st, &spec, &outcomes).unwrap();
        let graph = Hypergraph::from_polynomial(g.n_modes(), &out.phase).unwrap();
        assert_eq!(graph.edge_count(), 12);
        assert_eq!(report.entries[&13], (0.0, SqueezeClass::Disconnect));
        for e in [[0usize, 1], [0, 4], [1, 5], [4, 5]] {
            assert_eq!(graph.weight(&e), 0.0, "edge {e:?} should be gone");
        }

        // outcome 2 everywhere doubles every weight and anti-squeezes
        let outcomes2: BTreeMap<usize, f64> =
            layout.centers.iter().map(|&c| (c, 2.0)).collect();
        let (out2, report2) = lattice_to_cluster(&st, &spec, &outcomes2).unwrap();
        let graph2 = Hypergraph::from_polynomial(g.n_modes(), &out2.phase).unwrap();
        assert!(graph2.edges().all(|(_, w)| (w - 2.0).abs() < EPS_WEIGHT));
        assert!(report2
            .entries
            .values()
            .all(|(_, class)| *class == SqueezeClass::AntiSqueeze));

        // a missing outcome is an error
        let mut missing = outcomes2.clone();
        missing.remove(&14);
        assert!(matches!(
            lattice_to_cluster(&st, &spec, &missing),
            Err(Error::MissingOutcome(14))
        ));
    }

    #[test]
    fn squeeze_classification() {
        assert_eq!(SqueezeClass::of(2.0), SqueezeClass::AntiSqueeze);
        assert_eq!(SqueezeClass::of(0.5), SqueezeClass::Enhance);
        assert_eq!(SqueezeClass::of(0.0), SqueezeClass::Disconnect);
        assert_eq!(SqueezeClass::of(-1.0), SqueezeClass::Negative);
        assert_eq!(SqueezeClass::of(1.0), SqueezeClass::Unit);
    }
}
