//! Conformally invariant trilinear forms on products of spheres.
//!
//! This crate computes, classifies, and verifies the normalized trilinear
//! form `K̃_α` attached to three principal-series representations of the
//! conformal group of `S^{n-1}` (`n ≥ 4`). The kernel
//! `|x−y|^{α₃} |y−z|^{α₁} |z−x|^{α₂}` is meromorphic in the three complex
//! exponents; dividing by four explicit Gamma factors yields an entire
//! family whose zero set is completely understood. Everything here is built
//! around that picture:
//!
//! * [`exact`] — exact rational and complex-rational scalars, Pochhammer
//!   symbols, and arithmetic-progression membership tests.
//! * [`specfun`] — complex log-Gamma (Lanczos), reciprocal Gamma, and
//!   floating Pochhammer symbols.
//! * [`params`] — the spectral (`λ`) and geometric (`α`) parameter charts,
//!   pole-plane classification, and exact zero-set membership.
//! * [`trilinear`] — closed-form evaluation of the normalized form on the
//!   invariant-basis functions, exact-zero prediction, and witness search.
//! * [`geometry`] — the sphere, a one-parameter group of conformal maps,
//!   conformal factors, orbit classification, and uniform sampling.
//! * [`quadrature`] — seeded, deterministic Monte Carlo estimates of the
//!   kernel integrals and of conformal invariance.
//! * [`bidiff`] — the linear system for covariant bi-differential operators
//!   and its exact nullspace.
//! * [`verify`] — the property suites behind `triform verify`.
//!
//! # Runnable examples
//!
//! Each major capability has a standalone example under `examples/`:
//!
//! ```text
//! cargo run -p triform --example classify_poles
//! cargo run -p triform --example special_functions
//! cargo run -p triform --example evaluate_basis
//! cargo run -p triform --example witness_search
//! cargo run -p triform --example sphere_geometry
//! cargo run -p triform --example monte_carlo_ratio
//! cargo run -p triform --example invariance_zscore
//! cargo run -p triform --example bidiff_nullspace
//! ```
//!
//! The same functionality is scriptable through the thin `triform` binary
//! (`classify`, `eval`, `brint`, `witness`, `mc`, `bidiff`, `verify`), which
//! prints schema-stable JSON.

pub mod bidiff;
pub mod cli;
pub mod exact;
pub mod geometry;
pub mod params;
pub mod quadrature;
pub mod specfun;
pub mod trilinear;
pub mod verify;

pub use exact::{QComplex, Rational};
pub use params::ParamPoint;
