//! Discretization of multimode position space.
//!
//! Every mode shares one axis: `N` points `x_k = (k - N/2) dx` covering
//! `[-L, L)`. The dual (momentum) axis has spacing `dp = 2 pi / (N dx)`;
//! when `dx == dp` the grid is self-dual and the Fourier operator becomes an
//! exact unitary from the position grid to itself.

use crate::error::{Error, Result};

/// Amplitude storage cap: 2 GiB of complex doubles.
pub const MEMORY_CAP_BYTES: usize = 2 << 30;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub n_modes: usize,
    pub points: usize,
    pub half_extent: f64,
}

impl GridSpec {
    pub fn new(n_modes: usize, points: usize, half_extent: f64) -> Result<Self> {
        if !(points >= 8 && points.is_power_of_two() && points <= 8192) {
            return Err(Error::BadGridPoints(points));
        }
        if n_modes == 0 || n_modes > 5 {
            return Err(Error::TooManyModes(n_modes));
        }
        if !(half_extent > 0.0) {
            return Err(Error::BadExtent(half_extent));
        }
        let mut cells: usize = 1;
        for _ in 0..n_modes {
            cells = cells
                .checked_mul(points)
                .ok_or(Error::MemoryCap { points, modes: n_modes })?;
        }
        if cells.saturating_mul(16) > MEMORY_CAP_BYTES {
            return Err(Error::MemoryCap { points, modes: n_modes });
        }
        Ok(Self { n_modes, points, half_extent })
    }

    /// Grid with `dx == dp`, i.e. `L = sqrt(pi N / 2)`.
    pub fn self_dual(n_modes: usize, points: usize) -> Result<Self> {
        let l = (std::f64::consts::PI * points as f64 / 2.0).sqrt();
        Self::new(n_modes, points, l)
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_extent / self.points as f64
    }

    pub fn dual_spacing(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.points as f64 * self.dx())
    }

    pub fn is_self_dual(&self) -> bool {
        let dx = self.dx();
        (dx - self.dual_spacing()).abs() < 1e-9 * dx
    }

    pub fn position(&self, index: usize) -> f64 {
        (index as f64 - self.points as f64 / 2.0) * self.dx()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.points).map(|k| self.position(k)).collect()
    }

    pub fn dual_position(&self, index: usize) -> f64 {
        (index as f64 - self.points as f64 / 2.0) * self.dual_spacing()
    }

    pub fn dual_positions(&self) -> Vec<f64> {
        (0..self.points).map(|k| self.dual_position(k)).collect()
    }

    pub fn cells(&self) -> usize {
        self.points.pow(self.n_modes as u32)
    }

    pub fn with_modes(&self, n_modes: usize) -> Result<GridSpec> {
        GridSpec::new(n_modes, self.points, self.half_extent)
    }

    pub fn approx_eq(&self, other: &GridSpec) -> bool {
        self.n_modes == other.n_modes
            && self.points == other.points
            && (self.half_extent - other.half_extent).abs() < 1e-12
    }
}
