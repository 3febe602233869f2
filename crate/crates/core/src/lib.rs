//! Numerical core for the closed-loop double-Λ EIT medium.
//!
//! All rates are in units of the excited-state decay Γ, times in units of
//! Γ⁻¹, and propagation is measured by the accumulated optical depth
//! ζ ∈ [0, α]. The crate is `no_std` (it needs `alloc`); the `std` feature is
//! on by default and `parallel` fans grid evaluations out over rayon.
//!
//! ## Modules
//!
//! - [`model`]: parameter types, validation and phase arithmetic.
//! - [`steady_state`]: steady-state coherences and field propagation.
//! - [`phase_analysis`]: phase traces, phase-jump constants, XPM metric.
//! - [`dynamics`]: time-domain pulse propagation.
//! - [`optimize`]: transmission/amplification optimizers and sweeps.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` deliberately rejects NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod linalg;
pub mod model;
pub mod steady_state;
pub mod phase_analysis;
pub mod dynamics;
pub mod optimize;

pub use error::Error;
pub use model::{canonical_phase, validate, Coherences, FieldPair, RelativePhase, SystemParams, C64};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
