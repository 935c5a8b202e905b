//! Discretized multimode wavefunctions and the operations the oracle needs:
//! exact centered transforms, pointwise phases, spectral shifts, band-limited
//! squeezing, homodyne slices, marginals and sampling.
//!
//! Amplitudes are stored flat in row-major order over `n_modes` axes of `N`
//! points each. The centered discrete transform pair
//! `phi_j = (dx/sqrt(2pi)) sum_k e^{-i p_j x_k} psi_k` (position to dual) is
//! exactly unitary for any grid; the Fourier *operator* with kernel
//! `e^{+ixq}/sqrt(2pi)` maps the position grid onto itself only when the
//! grid is self-dual, and is exactly unitary there.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::measurement::Basis;
use crate::nullifier::NullifierOp;
use crate::poly::PhasePolynomial;

use super::grid::GridSpec;

#[derive(Clone, Debug)]
pub struct WaveFunction {
    pub grid: GridSpec,
    pub amps: Vec<Complex64>,
}

fn i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

enum AxisTransform {
    /// State transform with kernel `e^{+ixq}/sqrt(2pi)`; self-dual grids only.
    FourierOp,
    /// Its inverse (kernel `e^{-ixq}/sqrt(2pi)`); self-dual grids only.
    FourierInvOp,
    /// Change of representation to the dual axis (`<p|psi>`); any grid.
    ToDual,
    /// Back from the dual axis; any grid.
    FromDual,
}

impl WaveFunction {
    pub fn new(grid: GridSpec, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != grid.cells() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, amps })
    }

    /// Product state from per-mode amplitude vectors.
    pub fn product(grid: GridSpec, factors: &[Vec<Complex64>]) -> Result<Self> {
        if factors.len() != grid.n_modes || factors.iter().any(|f| f.len() != grid.points) {
            return Err(Error::GridMismatch);
        }
        let n = grid.points;
        let d = grid.n_modes;
        let mut amps = vec![Complex64::new(1.0, 0.0); grid.cells()];
        for (idx, a) in amps.iter_mut().enumerate() {
            let mut rest = idx;
            for ax in (0..d).rev() {
                let k = rest % n;
                rest /= n;
                *a *= factors[ax][k];
            }
        }
        Ok(Self { grid, amps })
    }

    /// Fills amplitudes from a function of the position vector.
    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> Complex64 + Sync) -> Self {
        let n = grid.points;
        let d = grid.n_modes;
        let xs = grid.positions();
        let mut amps = vec![Complex64::default(); grid.cells()];
        amps.par_iter_mut().enumerate().for_each(|(idx, a)| {
            let mut point = [0.0; 5];
            let mut rest = idx;
            for ax in (0..d).rev() {
                point[ax] = xs[rest % n];
                rest /= n;
            }
            *a = f(&point[..d]);
        });
        Self { grid, amps }
    }

    pub fn norm_sq(&self) -> f64 {
        let dv = self.grid.dx().powi(self.grid.n_modes as i32);
        self.amps.par_iter().map(|a| a.norm_sqr()).sum::<f64>() * dv
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm_sq();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let s = 1.0 / n.sqrt();
        self.amps.par_iter_mut().for_each(|a| *a *= s);
        Ok(())
    }

    /// `|<a|b>|^2 / (<a|a><b|b>)`.
    pub fn fidelity(&self, other: &WaveFunction) -> Result<f64> {
        if !self.grid.approx_eq(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let na = self.amps.par_iter().map(|a| a.norm_sqr()).sum::<f64>();
        let nb = other.amps.par_iter().map(|a| a.norm_sqr()).sum::<f64>();
        if na <= 0.0 || nb <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let ip: Complex64 = self
            .amps
            .par_iter()
            .zip(other.amps.par_iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(ip.norm_sqr() / (na * nb))
    }

    /// Evaluates a position polynomial at every grid point (keys are axis
    /// indices, not mode labels).
    pub fn poly_values(&self, poly: &PhasePolynomial) -> Vec<f64> {
        let n = self.grid.points;
        let d = self.grid.n_modes;
        let xs = self.grid.positions();
        let terms: Vec<(Vec<usize>, f64)> = poly.terms().map(|(k, w)| (k.clone(), w)).collect();
        let constant = poly.constant;
        let mut out = vec![0.0; self.amps.len()];
        out.par_iter_mut().enumerate().for_each(|(idx, v)| {
            let mut point = [0.0; 5];
            let mut rest = idx;
            for ax in (0..d).rev() {
                point[ax] = xs[rest % n];
                rest /= n;
            }
            let mut acc = constant;
            for (k, w) in &terms {
                let mut prod = *w;
                for &ax in k {
                    prod *= point[ax];
                }
                acc += prod;
            }
            *v = acc;
        });
        out
    }

    /// Multiplies by `exp(i * poly(q))` pointwise.
    pub fn apply_phase_poly(&mut self, poly: &PhasePolynomial) {
        if poly.is_zero() {
            return;
        }
        let vals = self.poly_values(poly);
        self.amps
            .par_iter_mut()
            .zip(vals.par_iter())
            .for_each(|(a, &v)| *a *= Complex64::from_polar(1.0, v));
    }

    fn lane_transform(&mut self, axis: usize, tf: AxisTransform) -> Result<()> {
        let n = self.grid.points;
        let d = self.grid.n_modes;
        if axis >= d {
            return Err(Error::VertexOutOfRange { vertex: axis, modes: d });
        }
        let dx = self.grid.dx();
        let dp = self.grid.dual_spacing();
        let sqrt_2pi = (2.0 * std::f64::consts::PI).sqrt();
        let (inverse_fft, scale) = match tf {
            AxisTransform::FourierOp => {
                if !self.grid.is_self_dual() {
                    return Err(Error::NotSelfDual);
                }
                (true, i_pow(n) * (dx / sqrt_2pi))
            }
            AxisTransform::FourierInvOp => {
                if !self.grid.is_self_dual() {
                    return Err(Error::NotSelfDual);
                }
                (false, i_pow(n).conj() * (dx / sqrt_2pi))
            }
            AxisTransform::ToDual => (false, i_pow(n).conj() * (dx / sqrt_2pi)),
            AxisTransform::FromDual => (true, i_pow(n) * (dp / sqrt_2pi)),
        };
        let mut planner = FftPlanner::<f64>::new();
        let fft = if inverse_fft {
            planner.plan_fft_inverse(n)
        } else {
            planner.plan_fft_forward(n)
        };
        let stride: usize = n.pow((d - 1 - axis) as u32);
        let block_len = stride * n;
        // Lanes of a fixed block share no elements, so blocks process in
        // parallel with one scratch buffer each.
        self.amps.par_chunks_mut(block_len).with_max_len(1).for_each(|chunk| {
            let mut buf = vec![Complex64::default(); n];
            for off in 0..stride {
                for t in 0..n {
                    let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
                    buf[t] = chunk[off + t * stride] * sign;
                }
                fft.process(&mut buf);
                for t in 0..n {
                    let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
                    chunk[off + t * stride] = buf[t] * sign * scale;
                }
            }
        });
        Ok(())
    }

    /// The Fourier operator `F` (or `F†`) on one axis; self-dual grids only.
    pub fn fourier_axis(&mut self, axis: usize, inverse: bool) -> Result<()> {
        self.lane_transform(
            axis,
            if inverse { AxisTransform::FourierInvOp } else { AxisTransform::FourierOp },
        )
    }

    pub fn to_dual_axis(&mut self, axis: usize) -> Result<()> {
        self.lane_transform(axis, AxisTransform::ToDual)
    }

    pub fn from_dual_axis(&mut self, axis: usize) -> Result<()> {
        self.lane_transform(axis, AxisTransform::FromDual)
    }

    /// Multiplies by `f(p_axis)` in the dual representation (exact for any
    /// grid since the dual round trip is exact).
    fn dual_multiply(&mut self, axis: usize, f: impl Fn(f64) -> Complex64 + Sync) -> Result<()> {
        self.to_dual_axis(axis)?;
        let n = self.grid.points;
        let d = self.grid.n_modes;
        let ps = self.grid.dual_positions();
        let factors: Vec<Complex64> = ps.iter().map(|&p| f(p)).collect();
        let div: usize = n.pow((d - 1 - axis) as u32);
        self.amps.par_iter_mut().enumerate().for_each(|(idx, a)| {
            let k = (idx / div) % n;
            *a *= factors[k];
        });
        self.from_dual_axis(axis)
    }

    /// `e^{isp}` on one axis: the translation `psi(x) -> psi(x + s)`.
    pub fn xdisp_axis(&mut self, axis: usize, s: f64) -> Result<()> {
        self.dual_multiply(axis, |p| Complex64::from_polar(1.0, s * p))
    }

    /// `e^{is p_i q_j}`: shifts axis `i` by `s` times the position on axis `j`.
    pub fn cx_axes(&mut self, axis_i: usize, axis_j: usize, s: f64) -> Result<()> {
        self.to_dual_axis(axis_i)?;
        let n = self.grid.points;
        let d = self.grid.n_modes;
        let ps = self.grid.dual_positions();
        let xs = self.grid.positions();
        let div_i: usize = n.pow((d - 1 - axis_i) as u32);
        let div_j: usize = n.pow((d - 1 - axis_j) as u32);
        self.amps.par_iter_mut().enumerate().for_each(|(idx, a)| {
            let ki = (idx / div_i) % n;
            let kj = (idx / div_j) % n;
            *a *= Complex64::from_polar(1.0, s * ps[ki] * xs[kj]);
        });
        self.from_dual_axis(axis_i)
    }

    /// `S(s)` on one axis: `psi(x) -> psi(x/s)` by band-limited resampling,
    /// zero outside the grid (states here decay inside the box).
    pub fn squeeze_axis(&mut self, axis: usize, s: f64) -> Result<()> {
        if s <= 0.0 {
            return Err(Error::SqueezeDomain(s));
        }
        if (s - 1.0).abs() < 1e-15 {
            return Ok(());
        }
        let n = self.grid.points;
        let d = self.grid.n_modes;
        let dx = self.grid.dx();
        let xs = self.grid.positions();
        // Periodic band-limited interpolation matrix, rows = output points.
        let mut kernel = vec![0.0f64; n * n];
        for (j, row) in kernel.chunks_mut(n).enumerate() {
            let y = xs[j] / s;
            if y < xs[0] - 1e-12 || y > xs[n - 1] + 1e-12 {
                continue;
            }
            for (k, cell) in row.iter_mut().enumerate() {
                let u = std::f64::consts::PI * (y - xs[k]) / (n as f64 * dx);
                *cell = if u.abs() < 1e-14 {
                    1.0
                } else {
                    (n as f64 * u).sin() / (n as f64 * u.tan())
                };
            }
        }
        let stride: usize = n.pow((d - 1 - axis) as u32);
        let block_len = stride * n;
        self.amps.par_chunks_mut(block_len).with_max_len(1).for_each(|chunk| {
            let mut buf = vec![Complex64::default(); n];
            for off in 0..stride {
                for (t, b) in buf.iter_mut().enumerate() {
                    *b = chunk[off + t * stride];
                }
                for (j, row) in kernel.chunks(n).enumerate() {
                    let mut acc = Complex64::default();
                    for (k, &w) in row.iter().enumerate() {
                        acc += buf[k] * w;
                    }
                    chunk[off + j * stride] = acc;
                }
            }
        });
        Ok(())
    }

    fn slice_axis(&self, axis: usize, i0: usize, frac: f64) -> WaveFunction {
        let n = self.grid.points;
        let d = self.grid.n_modes;
        let grid = GridSpec { n_modes: d - 1, ..self.grid };
        let stride: usize = n.pow((d - 1 - axis) as u32);
        let block_len = stride * n;
        let mut out = Vec::with_capacity(self.amps.len() / n);
        for block in 0..(self.amps.len() / block_len) {
            for off in 0..stride {
                let base = block * block_len + off;
                let lo = self.amps[base + i0 * stride];
                let v = if frac > 0.0 {
                    let hi = self.amps[base + (i0 + 1) * stride];
                    lo * (1.0 - frac) + hi * frac
                } else {
                    lo
                };
                out.push(v);
            }
        }
        WaveFunction { grid, amps: out }
    }

    fn locate(&self, positions: &[f64], value: f64) -> Result<(usize, f64)> {
        let lo = positions[0];
        let hi = positions[positions.len() - 1];
        if value < lo - 1e-12 || value > hi + 1e-12 {
            return Err(Error::ValueOutOfRange { value, min: lo, max: hi });
        }
        let step = positions[1] - positions[0];
        let t = ((value - lo) / step).clamp(0.0, (positions.len() - 1) as f64);
        let i0 = (t.floor() as usize).min(positions.len() - 2);
        let frac = t - i0 as f64;
        Ok((i0, frac))
    }

    /// Homodyne projection: slices the chosen quadrature at `value` (nearest
    /// grid planes, linear interpolation) and removes the mode.
    pub fn project_homodyne(&self, axis: usize, basis: Basis, value: f64) -> Result<WaveFunction> {
        if self.grid.n_modes < 2 {
            return Err(Error::CannotProjectLastMode);
        }
        match basis {
            Basis::Q => {
                let (i0, frac) = self.locate(&self.grid.positions(), value)?;
                Ok(self.slice_axis(axis, i0, frac))
            }
            Basis::P => {
                let (i0, frac) = self.locate(&self.grid.dual_positions(), value)?;
                let mut dual = self.clone();
                dual.to_dual_axis(axis)?;
                Ok(dual.slice_axis(axis, i0, frac))
            }
        }
    }

    /// Probability weights per grid plane of one quadrature (sums to one).
    pub fn marginal(&self, axis: usize, basis: Basis) -> Result<Vec<f64>> {
        let wf = match basis {
            Basis::Q => self.clone(),
            Basis::P => {
                let mut dual = self.clone();
                dual.to_dual_axis(axis)?;
                dual
            }
        };
        let n = wf.grid.points;
        let d = wf.grid.n_modes;
        let div: usize = n.pow((d - 1 - axis) as u32);
        let mut weights = vec![0.0f64; n];
        for (idx, a) in wf.amps.iter().enumerate() {
            weights[(idx / div) % n] += a.norm_sqr();
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        for w in &mut weights {
            *w /= total;
        }
        Ok(weights)
    }

    pub fn quadrature_moments(&self, axis: usize, basis: Basis) -> Result<(f64, f64)> {
        let weights = self.marginal(axis, basis)?;
        let positions = match basis {
            Basis::Q => self.grid.positions(),
            Basis::P => self.grid.dual_positions(),
        };
        let mean: f64 = weights.iter().zip(&positions).map(|(w, x)| w * x).sum();
        let second: f64 = weights.iter().zip(&positions).map(|(w, x)| w * x * x).sum();
        Ok((mean, second - mean * mean))
    }

    /// Applies `H = p_mode - qpart(q)` (axis indices) and returns `H psi`.
    pub fn apply_nullifier(&self, h: &NullifierOp) -> Result<WaveFunction> {
        let mut ppsi = self.clone();
        ppsi.to_dual_axis(h.mode)?;
        let n = self.grid.points;
        let d = self.grid.n_modes;
        let ps = self.grid.dual_positions();
        let div: usize = n.pow((d - 1 - h.mode) as u32);
        ppsi.amps.par_iter_mut().enumerate().for_each(|(idx, a)| {
            *a *= ps[(idx / div) % n];
        });
        ppsi.from_dual_axis(h.mode)?;
        let qvals = self.poly_values(&h.qpart);
        ppsi.amps
            .par_iter_mut()
            .zip(self.amps.par_iter().zip(qvals.par_iter()))
            .for_each(|(out, (orig, &v))| *out -= orig * v);
        Ok(ppsi)
    }

    /// `<H^2> - <H>^2` on the normalized state.
    pub fn nullifier_variance(&self, h: &NullifierOp) -> Result<f64> {
        let hpsi = self.apply_nullifier(h)?;
        let norm = self.amps.par_iter().map(|a| a.norm_sqr()).sum::<f64>();
        if norm <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let eh: Complex64 = self
            .amps
            .par_iter()
            .zip(hpsi.amps.par_iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        let eh = eh.re / norm;
        let eh2 = hpsi.amps.par_iter().map(|a| a.norm_sqr()).sum::<f64>() / norm;
        Ok((eh2 - eh * eh).max(0.0))
    }

    /// Draws one homodyne outcome from the marginal by inverse CDF;
    /// deterministic for a fixed seed.
    pub fn sample_homodyne(&self, axis: usize, basis: Basis, seed: u64) -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_homodyne_with(axis, basis, &mut rng)
    }

    pub fn sample_homodyne_with<R: Rng>(
        &self,
        axis: usize,
        basis: Basis,
        rng: &mut R,
    ) -> Result<f64> {
        let weights = self.marginal(axis, basis)?;
        let positions = match basis {
            Basis::Q => self.grid.positions(),
            Basis::P => self.grid.dual_positions(),
        };
        let step = positions[1] - positions[0];
        let u: f64 = rng.gen();
        let mut cum = 0.0;
        for (k, &w) in weights.iter().enumerate() {
            if u < cum + w || k == weights.len() - 1 {
                let frac = if w > 0.0 { (u - cum) / w } else { 0.5 };
                return Ok(positions[k] + step * (frac - 0.5));
            }
            cum += w;
        }
        unreachable!("cumulative weights cover [0, 1)");
    }

    /// CSV dump of the per-mode position densities:
    /// `position,mode0,mode1,...` rows over the shared axis.
    pub fn marginals_csv(&self) -> Result<String> {
        let mut cols = Vec::new();
        for ax in 0..self.grid.n_modes {
            cols.push(self.marginal(ax, Basis::Q)?);
        }
        let dx = self.grid.dx();
        let mut out = String::from("position");
        for ax in 0..self.grid.n_modes {
            out.push_str(&format!(",mode{ax}"));
        }
        out.push('\n');
        for (k, x) in self.grid.positions().iter().enumerate() {
            out.push_str(&format!("{x:.6}"));
            for col in &cols {
                out.push_str(&format!(",{:.9e}", col[k] / dx));
            }
            out.push('\n');
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vacuum_1d(grid: GridSpec, r: f64) -> WaveFunction {
        let mut wf = WaveFunction::from_fn(grid, |x| {
            Complex64::new((-x[0] * x[0] / (2.0 * (2.0 * r).exp())).exp(), 0.0)
        });
        wf.normalize().unwrap();
        wf
    }

    #[test]
    fn fourier_round_trip_is_exact() {
        let grid = GridSpec::self_dual(1, 256).unwrap();
        let mut wf = WaveFunction::from_fn(grid, |x| {
            Complex64::from_polar((-x[0] * x[0] / 8.0).exp(), 0.3 * x[0] * x[0])
        });
        wf.normalize().unwrap();
        let reference = wf.clone();
        wf.fourier_axis(0, false).unwrap();
        wf.fourier_axis(0, true).unwrap();
        let f = wf.fidelity(&reference).unwrap();
        assert!(f >= 1.0 - 1e-12, "round trip fidelity {f}");
    }

    #[test]
    fn fourier_needs_self_dual() {
        let grid = GridSpec::new(1, 64, 5.0).unwrap();
        let mut wf = vacuum_1d(grid, 0.5);
        assert!(matches!(wf.fourier_axis(0, false), Err(Error::NotSelfDual)));
        // but dual round trips work on any grid
        wf.to_dual_axis(0).unwrap();
        wf.from_dual_axis(0).unwrap();
    }

    #[test]
    fn squeezed_vacuum_moments() {
        // q-variance e^{2r}/2 and p-variance e^{-2r}/2 at N=512, L=20, r=1
        let grid = GridSpec::new(1, 512, 20.0).unwrap();
        let r = 1.0;
        let wf = vacuum_1d(grid, r);
        let (mq, vq) = wf.quadrature_moments(0, Basis::Q).unwrap();
        let (mp, vp) = wf.quadrature_moments(0, Basis::P).unwrap();
        assert!(mq.abs() < 1e-9 && mp.abs() < 1e-9);
        assert!((vq - (2.0 * r).exp() / 2.0).abs() < 1e-3);
        assert!((vp - (-2.0 * r).exp() / 2.0).abs() < 1e-3);
    }

    #[test]
    fn xdisp_translates() {
        let grid = GridSpec::self_dual(1, 256).unwrap();
        let mut wf = vacuum_1d(grid, 0.0);
        wf.xdisp_axis(0, -1.5).unwrap(); // e^{-1.5 i p}: psi(x - 1.5)
        let (mq, _) = wf.quadrature_moments(0, Basis::Q).unwrap();
        assert!((mq - 1.5).abs() < 1e-6, "mean moved to {mq}");
    }

    #[test]
    fn squeeze_rescales_width() {
        let grid = GridSpec::self_dual(1, 256).unwrap();
        let mut wf = vacuum_1d(grid, 0.0);
        wf.squeeze_axis(0, 2.0).unwrap(); // S(2): psi(x/2), q-width doubles
        let (_, vq) = wf.quadrature_moments(0, Basis::Q).unwrap();
        assert!((vq - 2.0).abs() < 1e-3, "variance {vq}");
    }

    #[test]
    fn projection_leaves_product_factor_untouched() {
        let grid = GridSpec::self_dual(2, 64).unwrap();
        let a: Vec<Complex64> = grid
            .positions()
            .iter()
            .map(|&x| Complex64::new((-x * x / 4.0).exp(), 0.0))
            .collect();
        let b: Vec<Complex64> = grid
            .positions()
            .iter()
            .map(|&x| Complex64::from_polar((-x * x / 6.0).exp(), 0.7 * x))
            .collect();
        let wf = WaveFunction::product(grid, &[a, b.clone()]).unwrap();
        let cut = wf.project_homodyne(0, Basis::Q, 0.37).unwrap();
        let expected = WaveFunction::new(grid.with_modes(1).unwrap(), b).unwrap();
        assert!(cut.fidelity(&expected).unwrap() >= 1.0 - 1e-12);
    }

    #[test]
    fn projection_range_checked() {
        let grid = GridSpec::self_dual(2, 64).unwrap();
        let wf = WaveFunction::from_fn(grid, |_| Complex64::new(1.0, 0.0));
        assert!(matches!(
            wf.project_homodyne(0, Basis::Q, 1e3),
            Err(Error::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn sampling_matches_vacuum_statistics() {
        let grid = GridSpec::new(1, 512, 12.0).unwrap();
        let wf = vacuum_1d(grid, 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 10_000;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for _ in 0..n {
            let x = wf.sample_homodyne_with(0, Basis::Q, &mut rng).unwrap();
            sum += x;
            sum2 += x * x;
        }
        let mean = sum / n as f64;
        let var = sum2 / n as f64 - mean * mean;
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((var - 0.5).abs() < 0.025, "variance {var}");

        // seed reproducibility
        let a = wf.sample_homodyne(0, Basis::Q, 42).unwrap();
        let b = wf.sample_homodyne(0, Basis::Q, 42).unwrap();
        assert_eq!(a, b);

        // displaced state shifts the sampled mean
        let mut shifted = wf.clone();
        shifted.xdisp_axis(0, -2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mean_shift: f64 = (0..n)
            .map(|_| shifted.sample_homodyne_with(0, Basis::Q, &mut rng).unwrap())
            .sum::<f64>()
            / n as f64;
        assert!((mean_shift - 2.0).abs() < 0.05, "shifted mean {mean_shift}");
    }

    #[test]
    fn zero_norm_is_an_error() {
        let grid = GridSpec::self_dual(1, 64).unwrap();
        let wf = WaveFunction::new(grid, vec![Complex64::default(); 64]).unwrap();
        assert!(matches!(wf.sample_homodyne(0, Basis::Q, 1), Err(Error::ZeroNorm)));
    }
}
