//! Finite-squeezing grid oracle for the symbolic layer.

mod grid;
mod realize;
mod wavefunction;

pub use grid::{GridSpec, MEMORY_CAP_BYTES};
pub use realize::{apply_stabilizer, realize, realize_integral, Bindings, Quadrature, Wavepacket};
pub use wavefunction::WaveFunction;

use crate::error::Result;

/// Convenience wrapper over [`WaveFunction::fidelity`].
pub fn fidelity(a: &WaveFunction, b: &WaveFunction) -> Result<f64> {
    a.fidelity(b)
}
