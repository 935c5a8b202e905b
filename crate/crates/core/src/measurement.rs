//! Homodyne measurement rewrites.
//!
//! A `q` measurement stays inside the symbolic class: every occurrence of the
//! measured position is replaced by the outcome, each affected hyperedge
//! drops one order and picks up the outcome as a weight factor, and the
//! vertex detaches into a position eigenstate.
//!
//! A `p` measurement expands the projector over position,
//! `<m|_p = (2pi)^{-1/2} int dx e^{-imx} <x|_q`, and produces an
//! [`IntegralState`]: `byproducts * int dx e^{-imx} e^{ixQ(q)} e^{iP(q)}
//! |bases>` where `Q` collects the reduced edges through the measured vertex.
//! [`reduce_integral`] rewrites that back into a [`StateExpr`] when one of
//! its closed-form rules applies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{PhasePolynomial, EPS_WEIGHT};
use crate::state::{GaussianOp, ModeBase, StateExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Q,
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    #[serde(rename = "v")]
    pub vertex: usize,
    pub basis: Basis,
    #[serde(rename = "m")]
    pub outcome: f64,
}

/// Post-p-measurement form: `byproducts * int dx e^{-imx} e^{ix coupling(q)}
/// e^{i residual(q)} |bases>`. The measured slot keeps `PEigen(outcome)` so
/// mode indices stay stable; `measured_base` remembers what sat there before
/// the measurement (the numeric oracle needs its position amplitude).
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralState {
    pub measured_vertex: usize,
    pub outcome: f64,
    pub coupling: PhasePolynomial,
    pub residual: PhasePolynomial,
    pub bases: Vec<ModeBase>,
    pub byproducts: Vec<GaussianOp>,
    pub measured_base: ModeBase,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ReduceOutcome {
    Reduced(StateExpr),
    Irreducible(String),
}

impl ReduceOutcome {
    pub fn reduced(self) -> Result<StateExpr> {
        match self {
            ReduceOutcome::Reduced(st) => Ok(st),
            ReduceOutcome::Irreducible(reason) => Err(Error::Irreducible(reason)),
        }
    }
}

fn check_measurable(st: &StateExpr, vertex: usize) -> Result<()> {
    if vertex >= st.n_modes() {
        return Err(Error::VertexOutOfRange { vertex, modes: st.n_modes() });
    }
    if st.is_detached(vertex) {
        return Err(Error::DetachedMode(vertex));
    }
    for op in &st.byproducts {
        if op.modes().contains(&vertex) && !op.is_diagonal_on(vertex) {
            return Err(Error::PendingByproduct(vertex));
        }
    }
    Ok(())
}

/// Measures `q_v` with outcome `m`. Byproducts that touch the vertex only
/// through `q_v` commute with the projector and have the outcome substituted
/// in place; the phase polynomial substitutes directly.
pub fn measure_q(st: &StateExpr, vertex: usize, m: f64) -> Result<StateExpr> {
    check_measurable(st, vertex)?;
    let mut out = st.clone();
    let mut byproducts = Vec::with_capacity(out.byproducts.len());
    for op in &out.byproducts {
        if !op.modes().contains(&vertex) {
            byproducts.push(op.clone());
            continue;
        }
        match *op {
            GaussianOp::Cz2(i, j, s) => {
                let other = if i == vertex { j } else { i };
                let t = -s * m; // e^{is m q_other} = Z_other(-s m)
                if t.abs() > EPS_WEIGHT {
                    byproducts.push(GaussianOp::ZDisp(other, t));
                }
            }
            GaussianOp::ZDisp(_, s) => {
                out.phase.constant += -s * m;
            }
            GaussianOp::Cx(i, _, s) => {
                let t = s * m; // e^{is m p_i} = X_i(s m)
                if t.abs() > EPS_WEIGHT {
                    byproducts.push(GaussianOp::XDisp(i, t));
                }
            }
            _ => unreachable!("non-diagonal byproducts were rejected"),
        }
    }
    out.byproducts = byproducts;
    out.phase = out.phase.substitute(vertex, m);
    out.set_base(vertex, ModeBase::QEigen(m));
    Ok(out)
}

/// Canonical q-measurement form: measure `q_v`, then rewrite every freshly
/// weighted edge of order >= 2 with a positive weight into its unit-weight
/// squeeze form. Reduced 1-edges stay weighted displacements. The pivot is
/// the highest-index vertex of each reduced edge.
pub fn measure_q_canonical(st: &StateExpr, vertex: usize, m: f64) -> Result<StateExpr> {
    let affected: Vec<Vec<usize>> = st
        .phase
        .terms()
        .filter(|(k, _)| k.contains(&vertex) && k.len() >= 3)
        .map(|(k, _)| k.iter().copied().filter(|&v| v != vertex).collect())
        .collect();
    let mut out = measure_q(st, vertex, m)?;
    for edge in affected {
        let w = out.phase.coeff(&edge);
        if w.abs() <= EPS_WEIGHT || (w - 1.0).abs() <= EPS_WEIGHT || w < 0.0 {
            continue;
        }
        let pivot = *edge.iter().max().expect("reduced edge is nonempty");
        if out.base(pivot) != &ModeBase::ZeroMomentum {
            continue;
        }
        out = out.weight_to_squeeze(&edge, pivot)?;
    }
    Ok(out)
}

/// Measures `p_v` with outcome `m`, producing the integral form.
pub fn measure_p(st: &StateExpr, vertex: usize, m: f64) -> Result<IntegralState> {
    check_measurable(st, vertex)?;
    if st.phase.max_multiplicity(vertex) > 1 {
        return Err(Error::NonlinearMeasurement(vertex));
    }
    let mut coupling = PhasePolynomial::new();
    let mut residual = PhasePolynomial::from_constant(st.phase.constant);
    for (k, w) in st.phase.terms() {
        if k.contains(&vertex) {
            let reduced: Vec<usize> = k.iter().copied().filter(|&v| v != vertex).collect();
            coupling.add_term(&reduced, w);
        } else {
            residual.add_term(k, w);
        }
    }
    let mut byproducts = Vec::with_capacity(st.byproducts.len());
    for op in &st.byproducts {
        if !op.modes().contains(&vertex) {
            byproducts.push(op.clone());
            continue;
        }
        match *op {
            GaussianOp::Cz2(i, j, s) => {
                let other = if i == vertex { j } else { i };
                coupling.add_term(&[other], s);
            }
            GaussianOp::ZDisp(_, s) => coupling.constant += -s,
            // e^{is p_i q_v} turns into an x-dependent displacement of mode i,
            // which the integral form cannot hold.
            GaussianOp::Cx(..) => return Err(Error::PendingByproduct(vertex)),
            _ => unreachable!("non-diagonal byproducts were rejected"),
        }
    }
    if coupling.has_no_variables() {
        let reason = if (m - coupling.constant).abs() <= EPS_WEIGHT {
            "improper flat projection (no coupling to the remaining modes)".to_string()
        } else {
            format!("zero-amplitude outcome {m} for constant coupling {}", coupling.constant)
        };
        return Err(Error::DegenerateProjection { vertex, reason });
    }
    let mut bases = st.bases().to_vec();
    let measured_base = std::mem::replace(&mut bases[vertex], ModeBase::PEigen(m));
    Ok(IntegralState {
        measured_vertex: vertex,
        outcome: m,
        coupling,
        residual,
        bases,
        byproducts,
        measured_base,
    })
}

/// Linear-coupling data extracted for rule R1.
struct LinearCoupling {
    terms: Vec<(usize, f64)>,
    constant: f64,
}

fn linear_coupling(q: &PhasePolynomial) -> Option<LinearCoupling> {
    let mut terms = Vec::new();
    for (k, w) in q.terms() {
        if k.len() != 1 {
            return None;
        }
        terms.push((k[0], w));
    }
    Some(LinearCoupling { terms, constant: q.constant })
}

/// Cell-pattern data extracted for rule R2: `Q = q_a q_b + q_b q_c +
/// t q_a + t q_c` with unit quadratic weights and equal linear weights.
struct CellCoupling {
    a: usize,
    b: usize,
    c: usize,
    t: f64,
}

fn cell_coupling(q: &PhasePolynomial) -> Option<CellCoupling> {
    if q.constant.abs() > EPS_WEIGHT {
        return None;
    }
    let mut pairs = Vec::new();
    let mut singles = Vec::new();
    for (k, w) in q.terms() {
        match k.len() {
            1 => singles.push((k[0], w)),
            2 if k[0] != k[1] => pairs.push((k.clone(), w)),
            _ => return None,
        }
    }
    if pairs.len() != 2 || singles.len() != 2 {
        return None;
    }
    if pairs.iter().any(|(_, w)| (w - 1.0).abs() > EPS_WEIGHT) {
        return None;
    }
    let shared: Vec<usize> =
        pairs[0].0.iter().copied().filter(|v| pairs[1].0.contains(v)).collect();
    if shared.len() != 1 {
        return None;
    }
    let b = shared[0];
    let mut ends: Vec<usize> = pairs
        .iter()
        .flat_map(|(k, _)| k.iter().copied())
        .filter(|&v| v != b)
        .collect();
    ends.sort_unstable();
    if ends.len() != 2 || ends[0] == ends[1] {
        return None;
    }
    let (a, c) = (ends[0], ends[1]);
    let mut t_a = None;
    let mut t_c = None;
    for (v, w) in singles {
        if v == a {
            t_a = Some(w);
        } else if v == c {
            t_c = Some(w);
        } else {
            return None;
        }
    }
    let (ta, tc) = (t_a?, t_c?);
    if (ta - tc).abs() > EPS_WEIGHT || ta.abs() <= EPS_WEIGHT {
        return None;
    }
    Some(CellCoupling { a, b, c, t: ta })
}

/// Rewrites an [`IntegralState`] into closed form.
///
/// R1 (linear coupling): absorb `e^{ix a_p q_p}` onto the lowest squeezed
/// pivot, re-express the other linear factors as `CX(pivot -> l, a_l/a_p)`,
/// turn `e^{-i(m-c)x}` into a pivot displacement and relabel the pivot back
/// to `|0>_p` through an inverse Fourier (plus a squeeze when `|a_p| != 1`).
///
/// R2 (cell pattern): emits the cell factorization
/// `CX(c->a) F_a CZ(a,c) Z_a(m/t)` over a weight-`1/t` 3-edge `{a,b,c}`;
/// for `t = 1` this is the classic string. The numeric oracle measures a
/// finite-squeezing gap for this rule; the `theorem-cell` scenario reports it.
///
/// Anything else is `Irreducible` with the first failing condition named.
pub fn reduce_integral(is: &IntegralState) -> ReduceOutcome {
    let m = is.outcome;
    if let Some(lin) = linear_coupling(&is.coupling) {
        let pivot = lin
            .terms
            .iter()
            .filter(|&&(v, w)| w.abs() > EPS_WEIGHT && is.bases[v] == ModeBase::ZeroMomentum)
            .map(|&(v, _)| v)
            .min();
        let Some(pivot) = pivot else {
            return ReduceOutcome::Irreducible(
                "linear coupling but no squeezed pivot available".into(),
            );
        };
        let a_p = lin.terms.iter().find(|&&(v, _)| v == pivot).unwrap().1;
        let mut ops = Vec::new();
        for &(v, a) in lin.terms.iter().filter(|&&(v, _)| v != pivot) {
            if (a / a_p).abs() > EPS_WEIGHT {
                ops.push(GaussianOp::Cx(pivot, v, a / a_p));
            }
        }
        let disp = (lin.constant - m) / a_p;
        if disp.abs() > EPS_WEIGHT {
            ops.push(GaussianOp::XDisp(pivot, disp));
        }
        ops.push(GaussianOp::FourierInv(pivot));
        if (a_p.abs() - 1.0).abs() > EPS_WEIGHT {
            ops.push(GaussianOp::Squeeze(pivot, 1.0 / a_p.abs()));
        }
        let mut byproducts = is.byproducts.clone();
        byproducts.extend(ops);
        let mut st = StateExpr::with_bases(is.bases.clone());
        st.phase = is.residual.clone();
        st.byproducts = byproducts;
        return ReduceOutcome::Reduced(st);
    }
    if let Some(cell) = cell_coupling(&is.coupling) {
        let CellCoupling { a, b, c, t } = cell;
        if [a, b, c].iter().any(|&v| is.bases[v] != ModeBase::ZeroMomentum) {
            return ReduceOutcome::Irreducible(
                "cell pattern with a non-squeezed target mode".into(),
            );
        }
        let mut ops = vec![
            GaussianOp::Cx(c, a, 1.0),
            GaussianOp::Fourier(a),
            GaussianOp::Cz2(a, c, 1.0),
        ];
        if (m / t).abs() > EPS_WEIGHT {
            ops.push(GaussianOp::ZDisp(a, m / t));
        }
        let mut byproducts = is.byproducts.clone();
        byproducts.extend(ops);
        let mut st = StateExpr::with_bases(is.bases.clone());
        st.phase = is.residual.clone();
        st.phase.add_term(&[a, b, c], 1.0 / t);
        st.byproducts = byproducts;
        return ReduceOutcome::Reduced(st);
    }
    if is.coupling.max_order() >= 3 {
        ReduceOutcome::Irreducible(
            "coupling of order >= 3 does not reduce to Gaussian byproducts".into(),
        )
    } else {
        ReduceOutcome::Irreducible("no rule for degree-2 non-cell pattern".into())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScriptOutcome {
    Completed(StateExpr),
    Stopped { at: usize, reason: String },
}

/// Folds a measurement script left to right: `q` entries apply directly and
/// `p` entries go through `measure_p` then `reduce_integral`. Stops at the
/// first irreducible integral.
pub fn run_script(
    st: &StateExpr,
    script: &[MeasurementRecord],
) -> Result<(ScriptOutcome, Vec<MeasurementRecord>)> {
    let mut seen = std::collections::BTreeSet::new();
    for rec in script {
        if !seen.insert(rec.vertex) {
            return Err(Error::AlreadyMeasured(rec.vertex));
        }
    }
    let mut cur = st.clone();
    for (idx, rec) in script.iter().enumerate() {
        match rec.basis {
            Basis::Q => cur = measure_q(&cur, rec.vertex, rec.outcome)?,
            Basis::P => {
                let is = measure_p(&cur, rec.vertex, rec.outcome)?;
                match reduce_integral(&is) {
                    ReduceOutcome::Reduced(next) => cur = next,
                    ReduceOutcome::Irreducible(reason) => {
                        return Ok((ScriptOutcome::Stopped { at: idx, reason }, script.to_vec()))
                    }
                }
            }
        }
    }
    Ok((ScriptOutcome::Completed(cur), script.to_vec()))
}

pub fn parse_script(text: &str) -> Result<Vec<MeasurementRecord>> {
    Ok(serde_json::from_str(text)?)
}

pub fn script_to_json(script: &[MeasurementRecord]) -> String {
    serde_json::to_string(script).expect("script serializes")
}
