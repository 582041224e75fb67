//! Border bases of zero-dimensional polynomial ideals, of their radical
//! (over the complex numbers) and of their real radical (over the reals).
//!
//! The real-radical engine interleaves a rewriting-family border basis
//! fixpoint loop with kernels of truncated moment (Hankel) matrices; the
//! real case is driven by a max-rank positive-semidefinite feasibility
//! solve, the complex case by kernels of generic Hankel matrices.
//!
//! The crate is `no_std`-compatible (with `alloc`); everything that touches
//! IO, file formats or the command line lives in the companion `radix` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod borderbasis;
pub mod linalg;
pub mod moment;
pub mod poly;
pub mod radical;
pub mod sdp;
pub mod solve;

pub use poly::{Monomial, MonomialBasis, Polynomial};

/// Coefficients with magnitude below this are pruned from polynomials.
pub const EPS_ZERO: f64 = 1e-12;

/// Numerical tolerances threaded through the pipeline.
///
/// `rank` drives singular-value thresholding in row echelon steps, `psd`
/// and `feas` qualify an SDP solution, `kernel_drop` is the relative
/// singular/eigen value cutoff below which a vector counts as kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rank: f64,
    pub psd: f64,
    pub feas: f64,
    pub kernel_drop: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: 1e-9,
            psd: 1e-9,
            feas: 1e-9,
            kernel_drop: 1e-12,
        }
    }
}
