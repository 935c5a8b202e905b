//! Canonical symbolic states: an ordered Gaussian byproduct list acting on a
//! diagonal phase polynomial applied to per-mode base states.
//!
//! Sign conventions, fixed once: `X(s) = e^{isp}`, `Z(s) = e^{-isq}`,
//! `CZ(i,j;s) = e^{is q_i q_j}`, `CX(i,j;s) = e^{is p_i q_j}`,
//! `S(s) = e^{-(i/2) ln s (qp+pq)}` with `S†(s)|x>_q = |x/s>_q`, and the
//! Fourier kernel `e^{ixq}/sqrt(2pi)` so that `F|x>_q = |x>_p`.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::{PhasePolynomial, EPS_WEIGHT};

#[derive(Clone, Debug, PartialEq)]
pub enum GaussianOp {
    Fourier(usize),
    FourierInv(usize),
    /// `Squeeze(i, s)` applies `S(s)` on mode `i`; requires `s > 0`.
    Squeeze(usize, f64),
    /// `XDisp(i, s)` is the momentum-generated displacement `e^{is p_i}`.
    XDisp(usize, f64),
    /// `ZDisp(i, s)` is the position-generated displacement `e^{-is q_i}`.
    ZDisp(usize, f64),
    /// `Cz2(i, j, s)` is `e^{is q_i q_j}`.
    Cz2(usize, usize, f64),
    /// `Cx(i, j, s)` is `e^{is p_i q_j}`: mode `i` shifts by `s q_j`.
    Cx(usize, usize, f64),
}

impl GaussianOp {
    pub fn modes(&self) -> Vec<usize> {
        match *self {
            GaussianOp::Fourier(i)
            | GaussianOp::FourierInv(i)
            | GaussianOp::Squeeze(i, _)
            | GaussianOp::XDisp(i, _)
            | GaussianOp::ZDisp(i, _) => vec![i],
            GaussianOp::Cz2(i, j, _) | GaussianOp::Cx(i, j, _) => vec![i, j],
        }
    }

    /// Diagonal in the position basis.
    pub fn is_diagonal(&self) -> bool {
        matches!(self, GaussianOp::ZDisp(..) | GaussianOp::Cz2(..))
    }

    /// Diagonal as far as mode `v` is concerned (only `q_v` appears).
    pub fn is_diagonal_on(&self, v: usize) -> bool {
        match *self {
            GaussianOp::ZDisp(i, _) => i == v,
            GaussianOp::Cz2(..) => true,
            GaussianOp::Cx(_, j, _) => j == v,
            _ => false,
        }
    }

    pub fn inverse(&self) -> GaussianOp {
        match *self {
            GaussianOp::Fourier(i) => GaussianOp::FourierInv(i),
            GaussianOp::FourierInv(i) => GaussianOp::Fourier(i),
            GaussianOp::Squeeze(i, s) => GaussianOp::Squeeze(i, 1.0 / s),
            GaussianOp::XDisp(i, s) => GaussianOp::XDisp(i, -s),
            GaussianOp::ZDisp(i, s) => GaussianOp::ZDisp(i, -s),
            GaussianOp::Cz2(i, j, s) => GaussianOp::Cz2(i, j, -s),
            GaussianOp::Cx(i, j, s) => GaussianOp::Cx(i, j, -s),
        }
    }

    pub fn validate(&self, n_modes: usize) -> Result<()> {
        for m in self.modes() {
            if m >= n_modes {
                return Err(Error::VertexOutOfRange { vertex: m, modes: n_modes });
            }
        }
        match *self {
            GaussianOp::Squeeze(_, s) if s <= 0.0 => Err(Error::SqueezeDomain(s)),
            GaussianOp::Cz2(i, j, _) | GaussianOp::Cx(i, j, _) if i == j => {
                Err(Error::RepeatedVertex(i))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GaussianOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaussianOp::Fourier(i) => write!(f, "F{i}"),
            GaussianOp::FourierInv(i) => write!(f, "F{i}†"),
            GaussianOp::Squeeze(i, s) => write!(f, "S{i}({s})"),
            GaussianOp::XDisp(i, s) => write!(f, "X{i}({s})"),
            GaussianOp::ZDisp(i, s) => write!(f, "Z{i}({s})"),
            GaussianOp::Cz2(i, j, s) => {
                if (s - 1.0).abs() <= EPS_WEIGHT {
                    write!(f, "CZ({i},{j})")
                } else {
                    write!(f, "CZ({i},{j};{s})")
                }
            }
            GaussianOp::Cx(i, j, s) => {
                if (s - 1.0).abs() <= EPS_WEIGHT {
                    write!(f, "e^{{ip{i}q{j}}}")
                } else {
                    write!(f, "e^{{i{s}p{i}q{j}}}")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModeBase {
    /// Idealized `|0>_p`; realized as a momentum-squeezed vacuum.
    ZeroMomentum,
    /// Detached position eigenstate left behind by a q measurement.
    QEigen(f64),
    /// Detached momentum eigenstate left behind by a p measurement.
    PEigen(f64),
    /// Symbolic input wavepacket, bound at realization time.
    External(String),
}

impl ModeBase {
    pub fn is_detached(&self) -> bool {
        matches!(self, ModeBase::QEigen(_) | ModeBase::PEigen(_))
    }
}

impl fmt::Display for ModeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeBase::ZeroMomentum => write!(f, "0p"),
            ModeBase::QEigen(v) => write!(f, "q={v}"),
            ModeBase::PEigen(v) => write!(f, "p={v}"),
            ModeBase::External(l) => write!(f, "{l}"),
        }
    }
}

/// `byproducts[0]` is applied last (leftmost in operator order); the phase
/// polynomial acts directly on the base states.
#[derive(Clone, Debug, PartialEq)]
pub struct StateExpr {
    pub byproducts: Vec<GaussianOp>,
    pub phase: PhasePolynomial,
    bases: Vec<ModeBase>,
}

impl StateExpr {
    pub fn vacuum(n_modes: usize) -> Self {
        Self {
            byproducts: Vec::new(),
            phase: PhasePolynomial::new(),
            bases: vec![ModeBase::ZeroMomentum; n_modes],
        }
    }

    pub fn with_bases(bases: Vec<ModeBase>) -> Self {
        Self { byproducts: Vec::new(), phase: PhasePolynomial::new(), bases }
    }

    pub fn from_hypergraph(g: &Hypergraph) -> Self {
        let mut st = Self::vacuum(g.n_modes());
        st.phase = g.to_polynomial();
        st
    }

    pub fn n_modes(&self) -> usize {
        self.bases.len()
    }

    pub fn base(&self, mode: usize) -> &ModeBase {
        &self.bases[mode]
    }

    pub fn bases(&self) -> &[ModeBase] {
        &self.bases
    }

    pub fn set_base(&mut self, mode: usize, base: ModeBase) {
        self.bases[mode] = base;
    }

    pub fn is_detached(&self, mode: usize) -> bool {
        self.bases[mode].is_detached()
    }

    pub fn live_modes(&self) -> Vec<usize> {
        (0..self.bases.len()).filter(|&i| !self.is_detached(i)).collect()
    }

    fn check_live(&self, op: &GaussianOp) -> Result<()> {
        op.validate(self.n_modes())?;
        for m in op.modes() {
            if self.is_detached(m) {
                return Err(Error::DetachedMode(m));
            }
        }
        Ok(())
    }

    /// Applies a Gaussian operator on the left. Diagonal operators fuse into
    /// the phase polynomial; displacements and squeezes are absorbed by
    /// `|0>_p` (projectively); everything else is prepended as a byproduct.
    pub fn apply(&self, op: &GaussianOp) -> Result<StateExpr> {
        self.check_live(op)?;
        let mut st = self.clone();
        match *op {
            GaussianOp::Cz2(i, j, s) => st.phase.add_term(&[i, j], s),
            GaussianOp::ZDisp(i, s) => st.phase.add_term(&[i], -s),
            GaussianOp::XDisp(i, s) => match st.bases[i] {
                // X(s)|v>_p = e^{isv}|v>_p; v = 0 here, so no phase either.
                ModeBase::ZeroMomentum => {}
                _ => {
                    if s.abs() > EPS_WEIGHT {
                        st.byproducts.insert(0, op.clone());
                    }
                }
            },
            GaussianOp::Squeeze(i, s) => match st.bases[i] {
                // S(s)|0>_p is |0>_p up to normalization, which is untracked.
                ModeBase::ZeroMomentum => {}
                _ => {
                    if (s - 1.0).abs() > EPS_WEIGHT {
                        st.byproducts.insert(0, op.clone());
                    }
                }
            },
            _ => st.byproducts.insert(0, op.clone()),
        }
        Ok(st)
    }

    /// Rewrites the weight of a multilinear phase term to 1 by exposing the
    /// squeeze it hides: `e^{im q_a..q_z} = S†_z(m) e^{iq_a..q_z} S_z(m)`
    /// with `S_z(m)|0>_p` absorbed. `S†(m)` is recorded as `Squeeze(z, 1/m)`.
    pub fn weight_to_squeeze(&self, edge: &[usize], pivot: usize) -> Result<StateExpr> {
        let mut key = edge.to_vec();
        key.sort_unstable();
        let w = self.phase.coeff(&key);
        if w.abs() <= EPS_WEIGHT {
            return Err(Error::MissingEdge(key));
        }
        if w <= 0.0 {
            // ln(m) is undefined here; keep the weighted form.
            return Err(Error::NonPositiveWeight(w));
        }
        if !key.contains(&pivot) {
            return Err(Error::CellMismatch(format!("pivot {pivot} not in edge {key:?}")));
        }
        if self.bases[pivot] != ModeBase::ZeroMomentum {
            return Err(Error::DetachedMode(pivot));
        }
        if (w - 1.0).abs() <= EPS_WEIGHT {
            return Ok(self.clone());
        }
        let mut st = self.clone();
        st.phase.set_coeff(&key, 1.0);
        st.byproducts.insert(0, GaussianOp::Squeeze(pivot, 1.0 / w));
        Ok(st)
    }

    /// Drops the byproduct list, i.e. applies the exact inverse of the whole
    /// recorded Gaussian correction (feed-forward).
    pub fn cleared_byproducts(&self) -> StateExpr {
        StateExpr { byproducts: Vec::new(), phase: self.phase.clone(), bases: self.bases.clone() }
    }

    pub fn approx_eq(&self, other: &StateExpr, eps: f64) -> bool {
        self.bases == other.bases
            && self.phase.approx_eq(&other.phase, eps)
            && self.byproducts.len() == other.byproducts.len()
            && self.byproducts.iter().zip(&other.byproducts).all(|(a, b)| a == b)
    }
}

impl fmt::Display for StateExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.byproducts {
            write!(f, "{op} ")?;
        }
        if !self.byproducts.is_empty() {
            write!(f, "· ")?;
        }
        write!(f, "exp(i[{}]) |", self.phase.render_compact())?;
        for (i, b) in self.bases.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "⟩")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{example_graph, example_graph_compact};

    #[test]
    fn state_from_hypergraph_examples() {
        let single = StateExpr::vacuum(1);
        assert_eq!(single.to_string(), "exp(i[0]) |0p⟩");

        let mut pair = Hypergraph::new(2);
        pair.add_edge(&[0, 1], 1.0).unwrap();
        let st = StateExpr::from_hypergraph(&pair);
        assert_eq!(st.to_string(), "exp(i[q0q1]) |0p,0p⟩");

        let st = StateExpr::from_hypergraph(&example_graph());
        assert_eq!(st.phase.render_compact(), "q1q2q3 + q3q4");
        assert!(st.byproducts.is_empty());
    }

    #[test]
    fn diagonal_ops_fuse() {
        let st = StateExpr::vacuum(2);
        let st = st.apply(&GaussianOp::Cz2(0, 1, 1.0)).unwrap();
        assert_eq!(st.phase.coeff(&[0, 1]), 1.0);
        assert!(st.byproducts.is_empty());

        // CZ_i = Z(-1) = e^{iq}
        let st = st.apply(&GaussianOp::ZDisp(0, -1.0)).unwrap();
        assert_eq!(st.phase.coeff(&[0]), 1.0);
    }

    #[test]
    fn nondiagonal_ops_prepend_in_application_order() {
        let st = StateExpr::vacuum(2);
        let st = st.apply(&GaussianOp::Fourier(0)).unwrap();
        let st = st.apply(&GaussianOp::Cx(0, 1, 1.0)).unwrap();
        // Cx applied last, so it renders leftmost.
        assert_eq!(st.to_string(), "e^{ip0q1} F0 · exp(i[0]) |0p,0p⟩");
    }

    #[test]
    fn absorption_on_zero_momentum() {
        let st = StateExpr::vacuum(1);
        let st = st.apply(&GaussianOp::XDisp(0, 2.5)).unwrap();
        let st = st.apply(&GaussianOp::Squeeze(0, 2.0)).unwrap();
        assert!(st.byproducts.is_empty());
        assert!(st.phase.is_zero());
    }

    #[test]
    fn ops_on_detached_modes_fail() {
        let mut st = StateExpr::vacuum(2);
        st.set_base(1, ModeBase::QEigen(0.5));
        assert!(matches!(
            st.apply(&GaussianOp::Fourier(1)),
            Err(Error::DetachedMode(1))
        ));
    }

    #[test]
    fn weight_to_squeeze_rules() {
        let mut g = Hypergraph::new(3);
        g.add_edge(&[1, 2], 2.0).unwrap();
        let st = StateExpr::from_hypergraph(&g);
        let out = st.weight_to_squeeze(&[1, 2], 2).unwrap();
        assert_eq!(out.phase.coeff(&[1, 2]), 1.0);
        assert_eq!(out.byproducts, vec![GaussianOp::Squeeze(2, 0.5)]);

        // weight one is already canonical
        let mut g1 = Hypergraph::new(2);
        g1.add_edge(&[0, 1], 1.0).unwrap();
        let st1 = StateExpr::from_hypergraph(&g1);
        let out1 = st1.weight_to_squeeze(&[0, 1], 1).unwrap();
        assert!(out1.byproducts.is_empty());

        // negative weights stay weights
        let mut gn = Hypergraph::new(2);
        gn.add_edge(&[0, 1], -0.5).unwrap();
        let stn = StateExpr::from_hypergraph(&gn);
        assert!(matches!(
            stn.weight_to_squeeze(&[0, 1], 1),
            Err(Error::NonPositiveWeight(_))
        ));
    }

    #[test]
    fn squeeze_validation() {
        let st = StateExpr::vacuum(1);
        assert!(matches!(
            st.apply(&GaussianOp::Squeeze(0, -1.0)),
            Err(Error::SqueezeDomain(_))
        ));
    }

    #[test]
    fn phase_is_insertion_order_independent() {
        let g = example_graph_compact();
        let st1 = StateExpr::vacuum(4)
            .apply(&GaussianOp::Cz2(2, 3, 1.0))
            .unwrap();
        let mut st1 = st1;
        st1.phase.add_term(&[0, 1, 2], 1.0);
        let st2 = StateExpr::from_hypergraph(&g);
        assert!(st1.phase.approx_eq(&st2.phase, EPS_WEIGHT));
    }
}
