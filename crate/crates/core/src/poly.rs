//! Phase polynomials over position operators.
//!
//! A [`PhasePolynomial`] stores the exponent of a diagonal unitary
//! `exp(i P(q_0, .., q_{n-1}))` as a map from monomials to real coefficients.
//! Monomial keys are sorted vertex lists; repeated entries encode powers
//! (`[0, 0, 0]` is `q0^3`), so hypergraph-generated polynomials use strictly
//! increasing keys while derived states may carry genuine powers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Coefficients with absolute value at or below this are treated as zero.
pub const EPS_WEIGHT: f64 = 1e-12;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PhasePolynomial {
    terms: BTreeMap<Vec<usize>, f64>,
    pub constant: f64,
}

impl PhasePolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_constant(c: f64) -> Self {
        Self { terms: BTreeMap::new(), constant: c }
    }

    /// Adds `coeff` to the monomial with the given (unsorted) key.
    /// Exponents add because the underlying phases multiply.
    pub fn add_term(&mut self, key: &[usize], coeff: f64) {
        if key.is_empty() {
            self.constant += coeff;
            return;
        }
        let mut k = key.to_vec();
        k.sort_unstable();
        let entry = self.terms.entry(k).or_insert(0.0);
        *entry += coeff;
        if entry.abs() <= EPS_WEIGHT {
            let k2: Vec<usize> = {
                let mut k2 = key.to_vec();
                k2.sort_unstable();
                k2
            };
            self.terms.remove(&k2);
        }
    }

    pub fn add_poly(&mut self, other: &PhasePolynomial) {
        for (k, w) in &other.terms {
            self.add_term(k, *w);
        }
        self.constant += other.constant;
    }

    pub fn scale(&self, factor: f64) -> PhasePolynomial {
        let mut out = PhasePolynomial::from_constant(self.constant * factor);
        for (k, w) in &self.terms {
            out.add_term(k, w * factor);
        }
        out
    }

    pub fn coeff(&self, key: &[usize]) -> f64 {
        let mut k = key.to_vec();
        k.sort_unstable();
        self.terms.get(&k).copied().unwrap_or(0.0)
    }

    pub fn set_coeff(&mut self, key: &[usize], coeff: f64) {
        let mut k = key.to_vec();
        k.sort_unstable();
        if coeff.abs() <= EPS_WEIGHT {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, coeff);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, f64)> {
        self.terms.iter().map(|(k, w)| (k, *w))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.abs() <= EPS_WEIGHT
    }

    /// True when no monomial carries a variable (the constant may be anything).
    pub fn has_no_variables(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn references(&self, mode: usize) -> bool {
        self.terms.keys().any(|k| k.contains(&mode))
    }

    /// Multiplicity of `mode` in the highest-power term that contains it.
    pub fn max_multiplicity(&self, mode: usize) -> usize {
        self.terms
            .keys()
            .map(|k| k.iter().filter(|&&v| v == mode).count())
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|k| k.iter().copied()).collect()
    }

    pub fn max_order(&self) -> usize {
        self.terms.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    /// All keys strictly increasing, i.e. no repeated vertex in any monomial.
    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|k| k.windows(2).all(|w| w[0] < w[1]))
    }

    /// Substitutes the number `value` for `q_mode`; powers turn into `value^k`.
    pub fn substitute(&self, mode: usize, value: f64) -> PhasePolynomial {
        let mut out = PhasePolynomial::from_constant(self.constant);
        for (k, w) in &self.terms {
            let mult = k.iter().filter(|&&v| v == mode).count();
            if mult == 0 {
                out.add_term(k, *w);
            } else {
                let reduced: Vec<usize> = k.iter().copied().filter(|&v| v != mode).collect();
                out.add_term(&reduced, w * value.powi(mult as i32));
            }
        }
        out
    }

    /// Formal partial derivative with respect to `q_mode`.
    pub fn partial(&self, mode: usize) -> PhasePolynomial {
        let mut out = PhasePolynomial::new();
        for (k, w) in &self.terms {
            let mult = k.iter().filter(|&&v| v == mode).count();
            if mult == 0 {
                continue;
            }
            let mut reduced = k.clone();
            let pos = reduced.iter().position(|&v| v == mode).unwrap();
            reduced.remove(pos);
            out.add_term(&reduced, w * mult as f64);
        }
        out
    }

    pub fn evaluate(&self, point: &[f64]) -> f64 {
        let mut acc = self.constant;
        for (k, w) in &self.terms {
            let mut prod = *w;
            for &v in k {
                prod *= point[v];
            }
            acc += prod;
        }
        acc
    }

    pub fn approx_eq(&self, other: &PhasePolynomial, eps: f64) -> bool {
        if (self.constant - other.constant).abs() > eps {
            return false;
        }
        let keys: BTreeSet<&Vec<usize>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| {
            (self.terms.get(k).copied().unwrap_or(0.0) - other.terms.get(k).copied().unwrap_or(0.0))
                .abs()
                <= eps
        })
    }

    /// Largest absolute coefficient difference against `other`.
    pub fn max_residual(&self, other: &PhasePolynomial) -> f64 {
        let mut res = (self.constant - other.constant).abs();
        let keys: BTreeSet<&Vec<usize>> = self.terms.keys().chain(other.terms.keys()).collect();
        for k in keys {
            let d = self.terms.get(k).copied().unwrap_or(0.0)
                - other.terms.get(k).copied().unwrap_or(0.0);
            res = res.max(d.abs());
        }
        res
    }

    pub fn sub_poly(&self, other: &PhasePolynomial) -> PhasePolynomial {
        let mut out = self.clone();
        out.add_poly(&other.scale(-1.0));
        out
    }

    fn render_monomial(key: &[usize], star: bool) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < key.len() {
            let v = key[i];
            let mut mult = 1;
            while i + mult < key.len() && key[i + mult] == v {
                mult += 1;
            }
            if mult == 1 {
                parts.push(format!("q{v}"));
            } else {
                parts.push(format!("q{v}^{mult}"));
            }
            i += mult;
        }
        parts.join(if star { "*" } else { "" })
    }

    fn render(&self, star: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (k, w) in &self.terms {
            let mag = w.abs();
            let sign_neg = *w < 0.0;
            if first {
                if sign_neg {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if sign_neg { " - " } else { " + " });
            }
            if (mag - 1.0).abs() > EPS_WEIGHT {
                out.push_str(&format!("{mag}"));
                if star {
                    out.push('*');
                }
            }
            out.push_str(&Self::render_monomial(k, star));
        }
        if self.constant.abs() > EPS_WEIGHT {
            let mag = self.constant.abs();
            if first {
                if self.constant < 0.0 {
                    out.push('-');
                }
            } else {
                out.push_str(if self.constant < 0.0 { " - " } else { " + " });
            }
            out.push_str(&format!("{mag}"));
        }
        out
    }

    /// Compact rendering used inside state expressions: `q1q2q3 + 0.5q0^3`.
    pub fn render_compact(&self) -> String {
        self.render(false)
    }

    /// Starred rendering used by nullifier output: `q1*q2 + 2*q4`.
    pub fn render_starred(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_compact())
    }
}
