//! Numerical library for real-analytic Eisenstein series on the modular
//! surface `SL(2,Z)\H`.
//!
//! The central object is the product `E_a(z)·E_b(z)` of two Eisenstein
//! series. After subtracting a regime-dependent finite combination of
//! Eisenstein terms the product becomes square-integrable, and the crate
//! computes its spectral decomposition (residual, cuspidal, and continuous
//! parts) and assembles solutions `u` of `(Δ − λ_w) u = E_a E_b`.
//!
//! Module map, bottom-up:
//!
//! * [`numerics`] — quadrature, complex derivatives, the hyperbolic
//!   Laplacian stencil, fundamental-domain reduction.
//! * [`special`] — log-gamma, Riemann zeta, the completed zeta `ξ`, the
//!   scattering coefficient `c_s`, Whittaker/K-Bessel kernels and their
//!   Mellin transforms.
//! * [`eisenstein`] — Fourier–Whittaker evaluation, direct lattice sums,
//!   the regularized value `E_1*` at the pole.
//! * [`regimes`] — classification of `(a,b)` into subtraction regimes and
//!   construction of the subtraction plan.
//! * [`rankin`] — Rankin–Selberg coefficients for the continuous and
//!   cuspidal spectrum; the fundamental-domain inner-product oracle.
//! * [`truncation`] — Arthur truncation, Maass–Selberg closed forms,
//!   truncated pairings.
//! * [`cuspforms`] — Maass cusp form data: parsing, validation, evaluation.
//! * [`solver`] — spectral expansion of the subtracted product, synthesis,
//!   and the solution/continuation of `(Δ − λ_w) u = E_a E_b`.

pub mod cuspforms;
pub mod eisenstein;
pub mod error;
pub mod numerics;
pub mod rankin;
pub mod regimes;
pub mod solver;
pub mod special;
#[cfg(test)]
mod test_refs;
pub mod truncation;

pub use error::{Error, Result};
