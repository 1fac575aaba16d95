//! Exact-arithmetic models of the degenerate affine Hecke algebra of type
//! C_n acting on the Etingof-Freund-Ma image of a polynomial GL_N-module.
//!
//! The image F_{n,p,mu}(V^xi) = (V^xi ⊗ V^{⊗n})^{t_0,mu} is an
//! H_n(1, kappa2)-module with kappa2 = p - q - a + b. This crate builds it
//! two independent ways and inverts the construction:
//!
//! - [`shapes`]: partitions, skew shapes, the minimal shape, gamma moves
//!   and the closure family, and Okada's rectangular product expansion.
//! - [`tableaux`]: standard tableaux on the family, combinatorial moves,
//!   content vectors, Weyl-group action on weights, and weight-to-tableau
//!   reconstruction.
//! - [`seminormal`]: the explicit module in its tableau basis as exact
//!   rational matrices, the defining-relation verifier, intertwiners, the
//!   weight graph, and irreducibility certificates.
//! - [`symfunc`]: a brute-force Schur-polynomial oracle used to cross-check
//!   the Okada expansion and the module dimension.
//! - [`recovery`]: from a minimal weight back to GL_N data (the rectangles
//!   (a^p), (b^q), the highest weight xi, N, and mu).
//! - [`oracle`]: a desk-scale tensor-space realization of the same module
//!   built directly from gl_N matrix actions.
//!
//! All arithmetic is exact: weights are half-integers stored doubled, and
//! matrices have arbitrary-precision rational entries.

pub mod error;
pub mod half;
pub mod matrix;
pub mod oracle;
pub mod recovery;
pub mod seminormal;
pub mod shapes;
pub mod symfunc;
pub mod tableaux;

pub use error::{EfmError, Result};
pub use half::{HalfInt, Weight};
pub use shapes::{Cell, EfmParameters, Partition, SkewShape};
pub use tableaux::StandardTableau;
