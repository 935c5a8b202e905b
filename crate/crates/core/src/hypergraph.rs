//! Weighted hypergraphs over qumodes, lattice generators and JSON I/O.
//!
//! An edge `{i, j, k}` of weight `w` stands for the entangling phase
//! `exp(i w q_i q_j q_k)` applied to momentum-squeezed vacua, so weights add
//! when the same edge is inserted twice and weight zero means "no edge".

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{PhasePolynomial, EPS_WEIGHT};

#[derive(Clone, Debug)]
pub struct Hypergraph {
    n_modes: usize,
    edges: BTreeMap<Vec<usize>, f64>,
    pub constant: f64,
}

impl Hypergraph {
    pub fn new(n_modes: usize) -> Self {
        assert!(n_modes >= 1, "a hypergraph needs at least one mode");
        Self { n_modes, edges: BTreeMap::new(), constant: 0.0 }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Vec<usize>, f64)> {
        self.edges.iter().map(|(k, w)| (k, *w))
    }

    pub fn weight(&self, vertices: &[usize]) -> f64 {
        let mut k = vertices.to_vec();
        k.sort_unstable();
        self.edges.get(&k).copied().unwrap_or(0.0)
    }

    fn normalize_key(&self, vertices: &[usize]) -> Result<Vec<usize>> {
        if vertices.is_empty() {
            return Err(Error::EmptyEdge);
        }
        let mut k = vertices.to_vec();
        k.sort_unstable();
        for w in k.windows(2) {
            if w[0] == w[1] {
                return Err(Error::RepeatedVertex(w[0]));
            }
        }
        if let Some(&v) = k.last() {
            if v >= self.n_modes {
                return Err(Error::VertexOutOfRange { vertex: v, modes: self.n_modes });
            }
        }
        Ok(k)
    }

    /// Adds `weight` onto the edge (phases multiply, exponents add); an edge
    /// whose accumulated weight vanishes is removed.
    pub fn add_edge(&mut self, vertices: &[usize], weight: f64) -> Result<()> {
        let key = self.normalize_key(vertices)?;
        let entry = self.edges.entry(key.clone()).or_insert(0.0);
        *entry += weight;
        if entry.abs() <= EPS_WEIGHT {
            self.edges.remove(&key);
        }
        Ok(())
    }

    /// Chainable form of [`add_edge`](Self::add_edge).
    pub fn with_edge(mut self, vertices: &[usize], weight: f64) -> Result<Self> {
        self.add_edge(vertices, weight)?;
        Ok(self)
    }

    /// For every edge containing `vertex`, the edge with that vertex removed
    /// (empty for a 1-edge) together with its weight.
    pub fn neighborhood(&self, vertex: usize) -> Result<Vec<(Vec<usize>, f64)>> {
        if vertex >= self.n_modes {
            return Err(Error::VertexOutOfRange { vertex, modes: self.n_modes });
        }
        Ok(self
            .edges
            .iter()
            .filter(|(k, _)| k.contains(&vertex))
            .map(|(k, w)| (k.iter().copied().filter(|&v| v != vertex).collect(), *w))
            .collect())
    }

    pub fn to_polynomial(&self) -> PhasePolynomial {
        let mut p = PhasePolynomial::from_constant(self.constant);
        for (k, w) in &self.edges {
            p.add_term(k, *w);
        }
        p
    }

    /// Inverse of [`to_polynomial`] for multilinear polynomials.
    pub fn from_polynomial(n_modes: usize, poly: &PhasePolynomial) -> Result<Self> {
        let mut g = Hypergraph::new(n_modes);
        for (k, w) in poly.terms() {
            if k.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(k[0]));
            }
            g.add_edge(k, w)?;
        }
        g.constant = poly.constant;
        Ok(g)
    }

    pub fn approx_eq(&self, other: &Hypergraph, eps: f64) -> bool {
        if self.n_modes != other.n_modes || (self.constant - other.constant).abs() > eps {
            return false;
        }
        let keys: BTreeSet<&Vec<usize>> = self.edges.keys().chain(other.edges.keys()).collect();
        keys.into_iter().all(|k| {
            (self.edges.get(k).copied().unwrap_or(0.0) - other.edges.get(k).copied().unwrap_or(0.0))
                .abs()
                <= eps
        })
    }

    pub fn is_uniform(&self, order: usize) -> bool {
        self.edges.keys().all(|k| k.len() == order)
    }

    pub fn to_json(&self) -> String {
        let doc = Doc {
            modes: self.n_modes,
            constant: self.constant,
            edges: self
                .edges
                .iter()
                .map(|(k, w)| EdgeDoc { v: k.clone(), w: *w })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("graph document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Doc = serde_json::from_str(text)?;
        if doc.modes == 0 {
            return Err(Error::Parse("modes must be >= 1".into()));
        }
        let mut g = Hypergraph::new(doc.modes);
        g.constant = doc.constant;
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for e in &doc.edges {
            if e.v.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!(
                    "edge {:?} must list vertices in strictly ascending order",
                    e.v
                )));
            }
            if !seen.insert(e.v.clone()) {
                return Err(Error::Parse(format!("duplicate edge key {:?}", e.v)));
            }
            if e.w.abs() <= EPS_WEIGHT {
                continue; // zero weight means no edge
            }
            g.add_edge(&e.v, e.w)?;
        }
        Ok(g)
    }

    /// Seeded random weighted hypergraph for property and acceptance tests.
    pub fn random<R: Rng>(rng: &mut R, max_modes: usize, max_edges: usize, max_order: usize) -> Self {
        let n = rng.gen_range(1..=max_modes);
        let mut g = Hypergraph::new(n);
        let edges = rng.gen_range(0..=max_edges);
        for _ in 0..edges {
            let order = rng.gen_range(1..=max_order.min(n));
            let mut verts: Vec<usize> = (0..n).collect();
            for i in 0..order {
                let j = rng.gen_range(i..n);
                verts.swap(i, j);
            }
            let mut w = 0.0f64;
            while w.abs() < 0.05 {
                w = rng.gen_range(-2.0..2.0);
            }
            g.add_edge(&verts[..order], w).expect("random edge is valid");
        }
        g
    }
}

#[derive(Serialize, Deserialize)]
struct Doc {
    modes: usize,
    #[serde(default)]
    constant: f64,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    v: Vec<usize>,
    w: f64,
}

/// Dimensions of a 3-cluster lattice: counts of centered cells per row and
/// per column of the checkerboard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub rows: usize,
    pub cols: usize,
}

impl LatticeSpec {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows < 1 || cols < 1 {
            return Err(Error::Parse("lattice needs rows >= 1 and cols >= 1".into()));
        }
        Ok(Self { rows, cols })
    }
}

/// Vertex layout of a generated 3-cluster.
///
/// Cells live on a `rows x 2*cols` checkerboard with a center in every cell
/// whose (row + column) is even, so the top-left cell is centered and each
/// row holds exactly `cols` centers. Corners touched by at least one centered
/// cell are indexed row-major first; centers follow, row-major over cells.
#[derive(Clone, Debug)]
pub struct LatticeLayout {
    pub corner_count: usize,
    pub centers: Vec<usize>,
    /// Per center: the four enclosing corners as (tl, tr, br, bl).
    pub cells: Vec<(usize, [usize; 4])>,
}

pub fn lattice_layout(spec: &LatticeSpec) -> LatticeLayout {
    let mut cells_rc: Vec<(usize, usize)> = Vec::new();
    for a in 0..spec.rows {
        for b in 0..2 * spec.cols {
            if (a + b) % 2 == 0 {
                cells_rc.push((a, b));
            }
        }
    }
    let mut points: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(a, b) in &cells_rc {
        points.insert((a, b));
        points.insert((a, b + 1));
        points.insert((a + 1, b));
        points.insert((a + 1, b + 1));
    }
    let index: BTreeMap<(usize, usize), usize> =
        points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let corner_count = index.len();
    let mut centers = Vec::new();
    let mut cells = Vec::new();
    for (k, &(a, b)) in cells_rc.iter().enumerate() {
        let center = corner_count + k;
        centers.push(center);
        let tl = index[&(a, b)];
        let tr = index[&(a, b + 1)];
        let br = index[&(a + 1, b + 1)];
        let bl = index[&(a + 1, b)];
        cells.push((center, [tl, tr, br, bl]));
    }
    LatticeLayout { corner_count, centers, cells }
}

/// Builds the 3-edge lattice: every centered cell contributes four weight-1
/// 3-edges (center, corner, next corner) around its enclosing square.
pub fn build_3cluster(spec: &LatticeSpec) -> Hypergraph {
    let layout = lattice_layout(spec);
    let mut g = Hypergraph::new(layout.corner_count + layout.centers.len());
    for (center, [tl, tr, br, bl]) in &layout.cells {
        for (u, v) in [(tl, tr), (tr, br), (br, bl), (bl, tl)] {
            g.add_edge(&[*center, *u, *v], 1.0).expect("lattice edge is valid");
        }
    }
    g
}

/// The worked four-vertex example graph: a 3-edge {1,2,3} and a 2-edge {3,4}
/// on five modes (mode 0 idle), matching the conventional 1-based labels.
pub fn example_graph() -> Hypergraph {
    Hypergraph::new(5)
        .with_edge(&[1, 2, 3], 1.0)
        .and_then(|g| g.with_edge(&[3, 4], 1.0))
        .expect("example graph is valid")
}

/// Same example shifted onto four modes (0..3) for grid realizations.
pub fn example_graph_compact() -> Hypergraph {
    Hypergraph::new(4)
        .with_edge(&[0, 1, 2], 1.0)
        .and_then(|g| g.with_edge(&[2, 3], 1.0))
        .expect("example graph is valid")
}
