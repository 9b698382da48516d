//! Exact computational kernel for Cohen-Macaulay analysis of graded
//! commutative DG-ring models.
//!
//! The crate is organized in layers:
//!
//! * [`algebra`] - prime-field arithmetic, multivariate polynomials over a
//!   fixed variable set, Groebner bases, ideal dimension and minimal primes
//!   of monomial ideals.
//! * [`homalg`] - finitely presented graded modules, module Groebner bases
//!   and syzygies, complexes, free resolutions, duals and hyper-Ext.
//! * [`dg`] - DG-ring and DG-module models built from a base quotient ring:
//!   Koszul complexes, trivial extensions, derived fibers, quotients by
//!   one-element sequences.
//! * [`invariants`] - amplitude, local cohomology profiles via graded
//!   duality, depth, sequential depth, local cohomology Krull dimension.
//! * [`cm`] - Cohen-Macaulay verdicts (local, at a prime, global,
//!   non-negative variant), dualizing complexes, regular sequence search,
//!   trivial-extension criteria and an executable theorem suite.
//! * [`io`] - problem files, JSON reports, bundled fixtures.
//! * [`cli`] - the `dgcm` command line interface.

pub mod algebra;
pub mod homalg;
pub mod dg;
pub mod invariants;
pub mod cm;
pub mod io;
pub mod cli;

mod error;

pub use error::KernelError;

/// Result alias used across the kernel.
pub type KResult<T> = Result<T, KernelError>;
