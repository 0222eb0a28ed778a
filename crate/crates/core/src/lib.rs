//! Exact computer algebra for N-graded vertex operator algebras.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactla`]: rational matrices and canonical subspaces.
//! - [`leibniz`]: left Leibniz algebras by structure constants (the weight-one space `V1`).
//! - [`frobalg`]: commutative Frobenius algebras and de Rham gradings (the weight-zero space `V0`).
//! - [`lattice`]: even lattices, shift admissibility and the `V0` algebra of a shifted lattice theory.
//! - [`fock`]: exact mode calculus on the lattice Fock space.
//! - [`onetrunc`]: analysis of the `(V0, V1)` package and the bilinear form `<u, v> = (u(1)v, t)`.
//! - [`examples`]: the shifted affine sl2 model and the shifted lattice pipeline.
//! - [`oracles`]: random algebras with planted radicals.
//! - [`suites`]: property suites over the Fock engine and the analyzers.
//! - [`report`]: versioned JSON envelopes and the full suite report.

pub mod exactla;
pub mod leibniz;
pub mod frobalg;
pub mod lattice;
pub mod fock;
pub mod onetrunc;
pub mod examples;
pub mod oracles;
pub mod suites;
pub mod report;
