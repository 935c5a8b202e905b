//! DOT rendering of phase polynomials / hypergraphs.
//!
//! DOT has no native hyperedges, so any monomial of order other than two is
//! drawn as an auxiliary triangle node connected to its vertices; plain
//! 2-edges become ordinary edges, labeled when their weight is not 1.

use hypercv::{PhasePolynomial, EPS_WEIGHT};

pub fn poly_to_dot(n_modes: usize, poly: &PhasePolynomial) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..n_modes {
        out.push_str(&format!("  v{v};\n"));
    }
    let mut aux = 0usize;
    for (key, w) in poly.terms() {
        let mut distinct = key.clone();
        distinct.dedup();
        if key.len() == 2 && distinct.len() == 2 {
            if (w - 1.0).abs() <= EPS_WEIGHT {
                out.push_str(&format!("  v{} -- v{};\n", key[0], key[1]));
            } else {
                out.push_str(&format!("  v{} -- v{} [label=\"{w}\"];\n", key[0], key[1]));
            }
        } else {
            let mut label = PhasePolynomial::new();
            label.add_term(key, w);
            out.push_str(&format!(
                "  t{aux} [shape=triangle, label=\"{}\"];\n",
                label.render_compact()
            ));
            for v in distinct {
                out.push_str(&format!("  t{aux} -- v{v};\n"));
            }
            aux += 1;
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_two_edges_and_triangles() {
        let mut p = PhasePolynomial::new();
        p.add_term(&[0, 1], 1.0);
        p.add_term(&[1, 2, 3], 0.5);
        let dot = poly_to_dot(4, &p);
        assert!(dot.contains("v0 -- v1;"));
        assert!(dot.contains("t0 [shape=triangle, label=\"0.5q1q2q3\"];"));
        assert!(dot.contains("t0 -- v3;"));
    }
}
