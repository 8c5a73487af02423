//! Numerical laboratory for the time-fractional evolution equation
//! `д_t^α u = Σ_i φ_i(Δ_{x_i}) u + f` on periodic boxes.
//!
//! The operator is anisotropic and non-local: space splits into blocks
//! `x = (x_1, .., x_ℓ)` and each block carries its own Bernstein function
//! `φ_i`, applied spectrally through the symbol `m_φ(ξ) = Σ φ_i(|ξ_i|²)`.
//! The crate computes the subordinated heat kernels `q_{α,β}` by two
//! independent routes (subordination quadrature and Mittag-Leffler
//! spectral inversion), solves the equation through its representation
//! formulas, and probes kernel envelopes, mass laws, mixed-norm
//! regularity, BMO oscillation and Besov traces as desk-scale numerical
//! experiments.
//!
//! Module map:
//! - [`bernstein`]: Bernstein functions, inverses, scaling certificates
//! - [`special`]: Mittag-Leffler function, one-sided stable density
//! - [`fraccalc`]: grid Riemann-Liouville / Caputo calculus
//! - [`subordination`]: inverse stable subordinator density and weights
//! - [`spectral`]: fields, Fourier multipliers, Littlewood-Paley, norms
//! - [`kernel`]: transition densities, subordinated kernels, envelopes
//! - [`solver`]: solution operators, residuals, regularity/BMO/trace probes
//! - [`montecarlo`]: exact sampling of the time-changed process
//! - [`cli`]: config-driven experiment runner and file formats

pub mod bernstein;
pub mod cli;
pub mod error;
pub mod fraccalc;
pub mod kernel;
pub mod montecarlo;
pub mod numeric;
pub mod solver;
pub mod special;
pub mod spectral;
pub mod subordination;

pub use error::{Error, Result};
