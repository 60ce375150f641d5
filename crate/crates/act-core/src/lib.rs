//! Arithmetic cosine transform: computing DCT-II spectra from nonuniform
//! fractional-index averages inverted through generalized Möbius/Dirichlet
//! inversion, with an exact interpolation scheme, a cheap two-tap
//! approximation, and a naive DCT oracle to verify against.
//!
//! The crate splits into:
//!
//! * [`numtheory`] — Möbius/Mertens functions, Dirichlet convolution and
//!   inversion, and the closed-form inverse of the alternating sequence;
//! * [`dct`] — the naive DCT-II pair, transform matrix, and fractional-index
//!   evaluation used as ground truth everywhere else;
//! * [`interp`] — the exact weighting function (direct and Dirichlet-kernel
//!   forms) and the heuristic two-tap approximation;
//! * [`engine`] — transform plans, nonuniform averages, and spectrum
//!   reconstruction with operation counting;
//! * [`matrix`] — the matrix-vector formulation and the C = C₁ + C₂ split.

pub mod dct;
pub mod engine;
mod error;
pub mod interp;
pub mod matrix;
pub mod numtheory;

pub use nalgebra;
pub use num_rational;

pub use dct::{dct_forward, dct_inverse, Signal, Spectrum};
pub use engine::{build_plan, forward_act, forward_with_plan, ActPlan, OpCounts, TransformReport};
pub use error::{ActError, Result};
pub use interp::{HeuristicParams, InterpMethod};
