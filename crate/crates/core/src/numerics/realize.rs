//! Realization of symbolic states as finite-squeezing grid wavefunctions.
//!
//! `|0>_p` stands in as a momentum-squeezed vacuum with p-variance
//! `e^{-2r}/2` (q-variance `e^{2r}/2`); byproducts apply right to left after
//! the diagonal phase. Integral states are summed over the quadrature
//! variable with trapezoid weights, including the measured mode's position
//! amplitude, and an internal half-step comparison flags under-resolution.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measurement::IntegralState;
use crate::poly::PhasePolynomial;
use crate::state::{GaussianOp, ModeBase, StateExpr};

use super::grid::GridSpec;
use super::wavefunction::WaveFunction;

/// Input wavepackets that can stand behind an `External` base.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Wavepacket {
    /// Unit Gaussian, `exp(-x^2/2)`: vacuum with q-variance 1/2.
    Vacuum,
    Gaussian { q0: f64, p0: f64, var_q: f64 },
}

impl Wavepacket {
    fn amplitude(&self, x: f64) -> Complex64 {
        match *self {
            Wavepacket::Vacuum => Complex64::new((-x * x / 2.0).exp(), 0.0),
            Wavepacket::Gaussian { q0, p0, var_q } => {
                let d = x - q0;
                Complex64::from_polar((-d * d / (4.0 * var_q)).exp(), p0 * x)
            }
        }
    }
}

pub type Bindings = BTreeMap<String, Wavepacket>;

/// Quadrature window for integral realization.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub x_min: f64,
    pub x_max: f64,
    pub steps: usize,
    /// Maximum allowed infidelity between the full- and half-resolution sums.
    pub convergence_tol: f64,
}

impl Quadrature {
    /// Window covering the squeezed-vacuum position amplitude at squeezing
    /// `r`: 5.5 standard deviations of `|psi_0|^2` leave relative amplitude
    /// tails below 3e-7.
    pub fn auto(r: f64, steps: usize) -> Self {
        let reach = 5.5 * r.exp() / 2f64.sqrt();
        Self { x_min: -reach, x_max: reach, steps, convergence_tol: 1e-4 }
    }
}

fn squeezed_vacuum_amp(x: f64, r: f64) -> Complex64 {
    Complex64::new((-x * x / (2.0 * (2.0 * r).exp())).exp(), 0.0)
}

fn base_amplitude(base: &ModeBase, x: f64, r: f64, bindings: &Bindings) -> Result<Complex64> {
    match base {
        ModeBase::ZeroMomentum => Ok(squeezed_vacuum_amp(x, r)),
        ModeBase::External(label) => bindings
            .get(label)
            .map(|w| w.amplitude(x))
            .ok_or_else(|| Error::UnboundExternal(label.clone())),
        ModeBase::QEigen(_) | ModeBase::PEigen(_) => unreachable!("detached modes are skipped"),
    }
}

fn check_extent(grid: &GridSpec, r: f64) -> Result<()> {
    let sigma = r.exp() / 2f64.sqrt();
    if sigma >= grid.half_extent {
        return Err(Error::GridTooSmall { r, sigma, half_extent: grid.half_extent });
    }
    if r.exp() * 3.0 / 2f64.sqrt() > grid.half_extent {
        log::warn!(
            "grid half-extent {} is below 3 sigma = {:.2} at r = {}; tails are clipped",
            grid.half_extent,
            3.0 * sigma,
            r
        );
    }
    Ok(())
}

/// Maps original mode indices of the live (non-detached) modes onto grid axes.
fn axis_map(bases: &[ModeBase], grid: &GridSpec) -> Result<BTreeMap<usize, usize>> {
    let live: Vec<usize> = (0..bases.len()).filter(|&i| !bases[i].is_detached()).collect();
    if live.len() != grid.n_modes {
        return Err(Error::ModeCountMismatch { state: live.len(), grid: grid.n_modes });
    }
    Ok(live.into_iter().enumerate().map(|(axis, mode)| (mode, axis)).collect())
}

fn translate_poly(poly: &PhasePolynomial, map: &BTreeMap<usize, usize>) -> Result<PhasePolynomial> {
    let mut out = PhasePolynomial::from_constant(poly.constant);
    for (k, w) in poly.terms() {
        let mut key = Vec::with_capacity(k.len());
        for &mode in k {
            key.push(*map.get(&mode).ok_or(Error::DetachedMode(mode))?);
        }
        out.add_term(&key, w);
    }
    Ok(out)
}

fn apply_ops(wf: &mut WaveFunction, ops: &[GaussianOp], map: &BTreeMap<usize, usize>) -> Result<()> {
    let ax = |mode: usize| -> Result<usize> {
        map.get(&mode).copied().ok_or(Error::DetachedMode(mode))
    };
    for op in ops.iter().rev() {
        match *op {
            GaussianOp::Fourier(i) => wf.fourier_axis(ax(i)?, false)?,
            GaussianOp::FourierInv(i) => wf.fourier_axis(ax(i)?, true)?,
            GaussianOp::Squeeze(i, s) => wf.squeeze_axis(ax(i)?, s)?,
            GaussianOp::XDisp(i, s) => wf.xdisp_axis(ax(i)?, s)?,
            GaussianOp::ZDisp(i, s) => {
                let mut p = PhasePolynomial::new();
                p.add_term(&[ax(i)?], -s);
                wf.apply_phase_poly(&p);
            }
            GaussianOp::Cz2(i, j, s) => {
                let mut p = PhasePolynomial::new();
                p.add_term(&[ax(i)?, ax(j)?], s);
                wf.apply_phase_poly(&p);
            }
            GaussianOp::Cx(i, j, s) => wf.cx_axes(ax(i)?, ax(j)?, s)?,
        }
    }
    Ok(())
}

fn product_of_bases(
    bases: &[ModeBase],
    map: &BTreeMap<usize, usize>,
    grid: &GridSpec,
    r: f64,
    bindings: &Bindings,
) -> Result<WaveFunction> {
    let xs = grid.positions();
    let mut factors: Vec<Vec<Complex64>> = vec![Vec::new(); grid.n_modes];
    for (&mode, &axis) in map {
        let mut f = Vec::with_capacity(grid.points);
        for &x in &xs {
            f.push(base_amplitude(&bases[mode], x, r, bindings)?);
        }
        factors[axis] = f;
    }
    WaveFunction::product(*grid, &factors)
}

/// Realizes a symbolic state at squeezing `r`; grid axes follow the live
/// modes in ascending order.
pub fn realize(
    st: &StateExpr,
    r: f64,
    grid: &GridSpec,
    bindings: &Bindings,
) -> Result<WaveFunction> {
    check_extent(grid, r)?;
    let map = axis_map(st.bases(), grid)?;
    let mut wf = product_of_bases(st.bases(), &map, grid, r, bindings)?;
    wf.apply_phase_poly(&translate_poly(&st.phase, &map)?);
    apply_ops(&mut wf, &st.byproducts, &map)?;
    wf.normalize()?;
    Ok(wf)
}

/// Realizes an integral state by summing
/// `psi0(x) e^{-imx} e^{ix Q(q)}` over the quadrature window against the
/// realized remainder, then applying the carried byproducts.
pub fn realize_integral(
    is: &IntegralState,
    r: f64,
    grid: &GridSpec,
    quad: &Quadrature,
    bindings: &Bindings,
) -> Result<WaveFunction> {
    check_extent(grid, r)?;
    if quad.steps < 4 || !(quad.x_max > quad.x_min) {
        return Err(Error::QuadratureUnderResolved { delta: f64::NAN });
    }
    let map = axis_map(&is.bases, grid)?;
    let mut base = product_of_bases(&is.bases, &map, grid, r, bindings)?;
    base.apply_phase_poly(&translate_poly(&is.residual, &map)?);
    let qvals = base.poly_values(&translate_poly(&is.coupling, &map)?);

    let steps = quad.steps;
    let h = (quad.x_max - quad.x_min) / (steps - 1) as f64;
    // One sweep at half the spacing serves both rules: the requested
    // trapezoid uses the even nodes and the doubled-resolution guard uses
    // every node.
    let nodes = 2 * steps - 1;
    let h_fine = h / 2.0;
    let mut coeff_req = vec![Complex64::default(); nodes];
    let mut coeff_fine = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let x = quad.x_min + h_fine * k as f64;
        let amp = base_amplitude(&is.measured_base, x, r, bindings)?;
        let node = amp * Complex64::from_polar(1.0, -is.outcome * x);
        let w_fine = if k == 0 || k == nodes - 1 { 0.5 * h_fine } else { h_fine };
        coeff_fine.push(node * w_fine);
        if k % 2 == 0 {
            let w_req = if k == 0 || k == nodes - 1 { 0.5 * h } else { h };
            coeff_req[k] = node * w_req;
        }
    }

    let x0 = quad.x_min;
    let mut acc = vec![Complex64::default(); base.amps.len()];
    let mut acc_fine = vec![Complex64::default(); base.amps.len()];
    const CHUNK: usize = 4096;
    acc.par_chunks_mut(CHUNK)
        .zip(acc_fine.par_chunks_mut(CHUNK))
        .zip(base.amps.par_chunks(CHUNK).zip(qvals.par_chunks(CHUNK)))
        .for_each(|((acc_c, accf_c), (base_c, q_c))| {
            let len = acc_c.len();
            let mut cur = vec![Complex64::default(); len];
            let mut step_ph = vec![Complex64::default(); len];
            for i in 0..len {
                cur[i] = Complex64::from_polar(1.0, x0 * q_c[i]);
                step_ph[i] = Complex64::from_polar(1.0, h_fine * q_c[i]);
            }
            for k in 0..nodes {
                let cf = coeff_fine[k];
                let cr = coeff_req[k];
                let take_req = k % 2 == 0;
                for i in 0..len {
                    let term = cur[i];
                    accf_c[i] += cf * term;
                    if take_req {
                        acc_c[i] += cr * term;
                    }
                    cur[i] = term * step_ph[i];
                }
            }
            for i in 0..len {
                acc_c[i] *= base_c[i];
                accf_c[i] *= base_c[i];
            }
        });

    let mut wf = WaveFunction::new(*grid, acc)?;
    let wf_fine = WaveFunction::new(*grid, acc_fine)?;
    let agreement = wf.fidelity(&wf_fine)?;
    if 1.0 - agreement > quad.convergence_tol {
        return Err(Error::QuadratureUnderResolved { delta: 1.0 - agreement });
    }
    apply_ops(&mut wf, &is.byproducts, &map)?;
    wf.normalize()?;
    Ok(wf)
}

/// Applies the stabilizer `X_mode(s) exp(-is qpart)` to a realized state
/// (axis indices).
pub fn apply_stabilizer(
    wf: &WaveFunction,
    stab: &crate::nullifier::StabilizerExpr,
) -> Result<WaveFunction> {
    let mut out = wf.clone();
    out.apply_phase_poly(&stab.qpart.scale(-stab.s));
    out.xdisp_axis(stab.mode, stab.s)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{example_graph_compact, Hypergraph};
    use crate::measurement::{measure_p, measure_q, Basis};
    use crate::nullifier::{nullifier, stabilizer};

    fn no_bindings() -> Bindings {
        Bindings::new()
    }

    #[test]
    fn realized_vacuum_has_squeezed_moments() {
        let st = StateExpr::vacuum(1);
        let grid = GridSpec::new(1, 512, 20.0).unwrap();
        let wf = realize(&st, 1.0, &grid, &no_bindings()).unwrap();
        let (_, vq) = wf.quadrature_moments(0, Basis::Q).unwrap();
        let (_, vp) = wf.quadrature_moments(0, Basis::P).unwrap();
        assert!((vq - (2.0f64).exp() / 2.0).abs() < 1e-3);
        assert!((vp - (-2.0f64).exp() / 2.0).abs() < 1e-3);
    }

    #[test]
    fn edge_state_nullifier_variances() {
        let g = Hypergraph::new(2).with_edge(&[0, 1], 1.0).unwrap();
        let grid = GridSpec::self_dual(2, 512).unwrap();
        for r in [0.5, 1.0, 2.0] {
            let wf = realize(&StateExpr::from_hypergraph(&g), r, &grid, &no_bindings()).unwrap();
            let target = (-2.0 * r).exp() / 2.0;
            for mode in 0..2 {
                let h = nullifier(&g, mode).unwrap();
                let v = wf.nullifier_variance(&h).unwrap();
                assert!(
                    (v / target - 1.0).abs() < 0.1,
                    "r={r} mode={mode}: {v} vs {target}"
                );
            }
        }
    }

    #[test]
    fn corrupted_nullifier_has_much_larger_variance() {
        let g = Hypergraph::new(2).with_edge(&[0, 1], 1.0).unwrap();
        let grid = GridSpec::self_dual(2, 256).unwrap();
        let wf = realize(&StateExpr::from_hypergraph(&g), 1.0, &grid, &no_bindings()).unwrap();
        let good = nullifier(&g, 0).unwrap();
        let mut bad = good.clone();
        bad.qpart = bad.qpart.scale(-1.0); // wrong sign
        let vg = wf.nullifier_variance(&good).unwrap();
        let vb = wf.nullifier_variance(&bad).unwrap();
        assert!(vb > 10.0 * vg, "good {vg}, corrupted {vb}");
    }

    #[test]
    fn smoke_realize_four_mode_example() {
        let g = example_graph_compact();
        let grid = GridSpec::self_dual(4, 64).unwrap();
        let wf = realize(&StateExpr::from_hypergraph(&g), 0.8, &grid, &no_bindings()).unwrap();
        assert!((wf.norm_sq() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn q_measurement_matches_projection_on_grid_points() {
        let g = example_graph_compact();
        let st = StateExpr::from_hypergraph(&g);
        let grid4 = GridSpec::self_dual(4, 64).unwrap();
        let r = 1.0;

        // slice exactly on a grid plane so no interpolation enters
        let m = grid4.position(36);
        let full = realize(&st, r, &grid4, &no_bindings()).unwrap();
        let sliced = full.project_homodyne(2, Basis::Q, m).unwrap();
        let symbolic = measure_q(&st, 2, m).unwrap();
        let reduced = realize(&symbolic, r, &grid4.with_modes(3).unwrap(), &no_bindings()).unwrap();
        let f = sliced.fidelity(&reduced).unwrap();
        assert!(f >= 1.0 - 1e-9, "fidelity {f}");
    }

    #[test]
    fn integral_realization_matches_momentum_slice() {
        // path 0-1-2, measure p on the middle vertex at a dual grid point
        let g = Hypergraph::new(3)
            .with_edge(&[0, 1], 1.0)
            .and_then(|g| g.with_edge(&[1, 2], 1.0))
            .unwrap();
        let st = StateExpr::from_hypergraph(&g);
        let grid3 = GridSpec::self_dual(3, 64).unwrap();
        let r = 1.0;
        let m = 0.0;
        let full = realize(&st, r, &grid3, &no_bindings()).unwrap();
        let sliced = full.project_homodyne(1, Basis::P, m).unwrap();

        let is = measure_p(&st, 1, m).unwrap();
        let quad = Quadrature::auto(r, 1201);
        let by_quadrature =
            realize_integral(&is, r, &grid3.with_modes(2).unwrap(), &quad, &no_bindings()).unwrap();
        let f = sliced.fidelity(&by_quadrature).unwrap();
        assert!(f >= 1.0 - 1e-6, "two oracle routes disagree: {f}");
    }

    #[test]
    fn quadrature_under_resolution_detected() {
        let g = Hypergraph::new(2).with_edge(&[0, 1], 1.0).unwrap();
        let st = StateExpr::from_hypergraph(&g);
        let is = measure_p(&st, 1, 0.0).unwrap();
        let grid = GridSpec::self_dual(1, 128).unwrap();
        let mut quad = Quadrature::auto(2.0, 9);
        quad.convergence_tol = 1e-9;
        let out = realize_integral(&is, 2.0, &grid, &quad, &no_bindings());
        assert!(matches!(out, Err(Error::QuadratureUnderResolved { .. })));
    }

    #[test]
    fn stabilizer_fidelity_improves_with_squeezing() {
        let g = Hypergraph::new(2).with_edge(&[0, 1], 1.0).unwrap();
        let st = StateExpr::from_hypergraph(&g);
        let grid = GridSpec::self_dual(2, 512).unwrap();
        let k = stabilizer(&g, 0, 0.3).unwrap();
        let mut prev = 0.0;
        for r in [0.5, 1.0, 1.5, 2.0] {
            let wf = realize(&st, r, &grid, &no_bindings()).unwrap();
            let kwf = apply_stabilizer(&wf, &k).unwrap();
            let f = kwf.fidelity(&wf).unwrap();
            assert!(f > prev, "fidelity should grow with r: {f} after {prev}");
            prev = f;
        }
        assert!(prev > 0.999, "r=2 stabilizer fidelity {prev}");
    }

    #[test]
    fn external_bindings_are_required() {
        let st = StateExpr::with_bases(vec![ModeBase::External("psi".into())]);
        let grid = GridSpec::self_dual(1, 64).unwrap();
        assert!(matches!(
            realize(&st, 1.0, &grid, &no_bindings()),
            Err(Error::UnboundExternal(_))
        ));
        let mut b = Bindings::new();
        b.insert("psi".into(), Wavepacket::Vacuum);
        assert!(realize(&st, 1.0, &grid, &b).is_ok());
    }

    #[test]
    fn grid_too_small_is_rejected() {
        let st = StateExpr::vacuum(1);
        let grid = GridSpec::new(1, 64, 2.0).unwrap();
        assert!(matches!(
            realize(&st, 2.0, &grid, &no_bindings()),
            Err(Error::GridTooSmall { .. })
        ));
    }
}
