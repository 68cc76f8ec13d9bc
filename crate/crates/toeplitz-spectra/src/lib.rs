//! Eigenvalues of large Toeplitz matrices, predicted straight from the symbol.
//!
//! For a real-valued symbol f on the unit circle, the n×n Toeplitz matrix
//! T_n(f) has real eigenvalues inside (min f, max f). This crate implements
//! two quantization conditions that locate those eigenvalues without touching
//! a matrix:
//!
//! * **bulk**: for smooth unimodal f, the j-th eigenvalue solves
//!   (n+1)·Ψ(λ) + Θ(λ) = πj, with Ψ, Θ built from the angles where f = λ and
//!   from the Fourier data of a positive "regularized quotient" R(·; λ);
//! * **gap**: for a two-level (step) symbol, eigenvalues inside the spectral
//!   gap obey a half-integer counting condition driven by a log-n phase H_n.
//!
//! Everything is validated against exact dense linear algebra (`oracle`), and
//! the determinant asymptotics behind the derivation (Szegő-type limits and
//! Fisher–Hartwig expansions, `fh_det`) are checked term by term. A small CLI
//! (`cli`) drives reproducible experiments with CSV/JSON output.

pub mod bulk;
pub mod cli;
pub mod error;
pub mod fh_det;
pub mod fourier;
pub mod gap;
pub mod oracle;
pub mod slepian;
pub mod special;
pub mod symbols;

pub use error::{Result, SpectraError};
