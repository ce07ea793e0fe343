//! coxcat — exact Coxeter–Catalan combinatorics.
//!
//! This library builds finite root systems and their reflection groups in
//! exact arithmetic, enumerates the noncrossing partition lattice (the
//! interval [1, γ] of the absolute order under a bipartite Coxeter element)
//! and the cluster complex in its reflection-ordering model, and verifies
//! the F-triangle/M-triangle identity
//!
//! ```text
//! (1-y)^n F((x+y)/(1-y), y/(1-y)) = M(-x, -y/x)
//! ```
//!
//! coefficient by coefficient, together with the supporting identities that
//! relate the two sides (h-polynomial = rank generating polynomial, Möbius
//! numbers = positive facet counts, characteristic polynomial = positive
//! face counts, link h-polynomials = sublattice rank profiles).
//!
//! Everything is exact: scalars are rationals or elements of ℚ(√5), and all
//! comparisons are integer or field equality — there is no floating point
//! and no tolerance anywhere.
//!
//! Entry points:
//! - [`roots::TypeSpec::parse`] / [`roots::build_root_system`] — root systems
//!   for `A1`..`E8`, `I2(m)`, and products like `A2xB2`.
//! - [`nclattice::enumerate_interval`] — the noncrossing partition lattice.
//! - [`cluster::enumerate_complex`] — the cluster complex.
//! - [`identity::verify_fm`] — the full verification pipeline and report.
//! - [`cli::run`] — the `coxcat` command-line interface.

pub mod cache;
pub mod cli;
pub mod cluster;
pub mod error;
pub mod exactnum;
pub mod identity;
pub mod nclattice;
pub mod roots;
pub mod triangles;
pub mod wgroup;

pub use error::{CoxError, CoxResult};
