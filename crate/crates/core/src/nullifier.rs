//! Nullifiers and stabilizers of weighted hypergraph states.
//!
//! The nullifier of vertex `i` is `H_i = p_i - sum over edges through i of
//! w_e * prod_{j in e\{i}} q_j`, which annihilates the state because
//! `p_i e^{iP}|0>_p^n = (dP/dq_i) e^{iP}|0>_p^n` and the sum is exactly
//! `dP/dq_i`. The stabilizer is `K_i(s) = exp(is H_i)`; since `p_i` commutes
//! with the neighbor positions this factors exactly as
//! `X_i(s) exp(-is * qpart)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::{PhasePolynomial, EPS_WEIGHT};

/// The operator `p_mode - qpart(q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NullifierOp {
    pub mode: usize,
    pub qpart: PhasePolynomial,
}

impl fmt::Display for NullifierOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.mode)?;
        if !self.qpart.is_zero() {
            let flipped = self.qpart.scale(-1.0);
            let body = flipped.render_starred();
            if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// `exp(is H_mode)` factored as `X_mode(s) * exp(-is qpart)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerExpr {
    pub mode: usize,
    pub s: f64,
    pub qpart: PhasePolynomial,
}

impl fmt::Display for StabilizerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}({}) · exp(-i{}[{}])", self.mode, self.s, self.s, self.qpart.render_compact())
    }
}

pub fn nullifier(g: &Hypergraph, vertex: usize) -> Result<NullifierOp> {
    let mut qpart = PhasePolynomial::new();
    for (reduced, w) in g.neighborhood(vertex)? {
        qpart.add_term(&reduced, w);
    }
    Ok(NullifierOp { mode: vertex, qpart })
}

pub fn stabilizer(g: &Hypergraph, vertex: usize, s: f64) -> Result<StabilizerExpr> {
    let h = nullifier(g, vertex)?;
    Ok(StabilizerExpr { mode: vertex, s, qpart: h.qpart })
}

/// Outcome of the annihilation check.
#[derive(Clone, Debug, PartialEq)]
pub enum Annihilation {
    Pass,
    Witness { mode: usize, residual: PhasePolynomial },
}

/// Verifies `dP/dq_i == qpart(H_i)` exactly for every vertex; the two sides
/// come from independent routes (formal differentiation vs. neighborhoods).
pub fn check_annihilation(g: &Hypergraph) -> Annihilation {
    let p = g.to_polynomial();
    for i in 0..g.n_modes() {
        let h = nullifier(g, i).expect("vertex in range");
        let grad = p.partial(i);
        if !grad.approx_eq(&h.qpart, EPS_WEIGHT) {
            return Annihilation::Witness { mode: i, residual: grad.sub_poly(&h.qpart) };
        }
    }
    Annihilation::Pass
}

/// Checks a single (possibly hand-altered) nullifier against the gradient.
pub fn verify_nullifier(g: &Hypergraph, h: &NullifierOp) -> Annihilation {
    let grad = g.to_polynomial().partial(h.mode);
    if grad.approx_eq(&h.qpart, EPS_WEIGHT) {
        Annihilation::Pass
    } else {
        Annihilation::Witness { mode: h.mode, residual: grad.sub_poly(&h.qpart) }
    }
}

/// `[H_a, H_b] / i` as a polynomial; identically zero for nullifiers of a
/// common hypergraph by symmetry of mixed partials.
pub fn commutator(a: &NullifierOp, b: &NullifierOp) -> Result<PhasePolynomial> {
    if a.mode == b.mode {
        return Err(Error::RepeatedVertex(a.mode));
    }
    Ok(b.qpart.partial(a.mode).sub_poly(&a.qpart.partial(b.mode)))
}

/// Expresses `h = sum_j a_j p_j - poly` over the core nullifiers of `g`.
/// Succeeds iff `poly == sum_j a_j qpart(H_j)`; the coefficient vector is
/// then exactly the `a_j`. On mismatch the residual `h - sum_j a_j H_j`
/// (a pure position polynomial) is returned.
pub fn decompose(
    p_part: &[(usize, f64)],
    poly: &PhasePolynomial,
    g: &Hypergraph,
) -> std::result::Result<Vec<f64>, PhasePolynomial> {
    let mut coeffs = vec![0.0; g.n_modes()];
    let mut expected = PhasePolynomial::new();
    for &(mode, a) in p_part {
        coeffs[mode] += a;
    }
    for (mode, &a) in coeffs.iter().enumerate() {
        if a.abs() <= EPS_WEIGHT {
            continue;
        }
        let h = nullifier(g, mode).expect("vertex in range");
        expected.add_poly(&h.qpart.scale(a));
    }
    let residual = expected.sub_poly(poly);
    if residual.is_zero() {
        Ok(coeffs)
    } else {
        Err(residual)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::example_graph;

    #[test]
    fn example_nullifiers_render_frozen() {
        let g = example_graph();
        assert_eq!(nullifier(&g, 3).unwrap().to_string(), "p3 - q1*q2 - q4");
        assert_eq!(nullifier(&g, 0).unwrap().to_string(), "p0");
        assert_eq!(nullifier(&g, 4).unwrap().to_string(), "p4 - q3");

        let mut w = Hypergraph::new(2);
        w.add_edge(&[0, 1], 2.0).unwrap();
        let h0 = nullifier(&w, 0).unwrap();
        assert_eq!(h0.to_string(), "p0 - 2*q1");
        // cross-check against the gradient route
        assert_eq!(verify_nullifier(&w, &h0), Annihilation::Pass);
    }

    #[test]
    fn stabilizer_renders_and_zero_s_is_identity() {
        let g = example_graph();
        let k = stabilizer(&g, 3, 0.3).unwrap();
        assert_eq!(k.to_string(), "X3(0.3) · exp(-i0.3[q1q2 + q4])");
        let k0 = stabilizer(&g, 3, 0.0).unwrap();
        assert_eq!(k0.s, 0.0);
    }

    #[test]
    fn annihilation_passes_and_catches_corruption() {
        assert_eq!(check_annihilation(&example_graph()), Annihilation::Pass);
        assert_eq!(check_annihilation(&Hypergraph::new(3)), Annihilation::Pass);

        let g = example_graph();
        let mut bad = nullifier(&g, 3).unwrap();
        bad.qpart.add_term(&[1], 1.0);
        match verify_nullifier(&g, &bad) {
            Annihilation::Witness { mode, .. } => assert_eq!(mode, 3),
            Annihilation::Pass => panic!("corruption not detected"),
        }
    }

    #[test]
    fn commutators_vanish_on_a_common_graph() {
        let g = example_graph();
        for i in 0..g.n_modes() {
            for j in (i + 1)..g.n_modes() {
                let c = commutator(&nullifier(&g, i).unwrap(), &nullifier(&g, j).unwrap()).unwrap();
                assert!(c.is_zero(), "[H{i}, H{j}] = {c}");
            }
        }
    }

    #[test]
    fn non_gradient_pair_has_nonzero_commutator() {
        // H1 = p1 - q2, H2 = p2 (not the nullifiers of any common graph)
        let mut qp = PhasePolynomial::new();
        qp.add_term(&[2], 1.0);
        let h1 = NullifierOp { mode: 1, qpart: qp };
        let h2 = NullifierOp { mode: 2, qpart: PhasePolynomial::new() };
        let c = commutator(&h1, &h2).unwrap();
        assert!(!c.is_zero());
        assert!((c.constant + 1.0).abs() < 1e-14);
        assert!(commutator(&h1, &h1.clone()).is_err());
    }

    #[test]
    fn decompose_examples() {
        let g = example_graph();
        // h = H1 + 2 H3
        let mut poly = nullifier(&g, 1).unwrap().qpart;
        poly.add_poly(&nullifier(&g, 3).unwrap().qpart.scale(2.0));
        let c = decompose(&[(1, 1.0), (3, 2.0)], &poly, &g).unwrap();
        assert_eq!(c, vec![0.0, 1.0, 0.0, 2.0, 0.0]);

        // h = p3 - q1q2 - q4 is exactly the third unit vector
        let mut p3 = PhasePolynomial::new();
        p3.add_term(&[1, 2], 1.0);
        p3.add_term(&[4], 1.0);
        let c = decompose(&[(3, 1.0)], &p3, &g).unwrap();
        assert_eq!(c, vec![0.0, 0.0, 0.0, 1.0, 0.0]);

        // p1 - q1 on an edgeless graph fails with residual -q1
        let empty = Hypergraph::new(2);
        let mut bad = PhasePolynomial::new();
        bad.add_term(&[1], 1.0);
        let residual = decompose(&[(1, 1.0)], &bad, &empty).unwrap_err();
        assert_eq!(residual.coeff(&[1]), -1.0);
    }
}
