//! Invariants of surfaces built from solutions of the two-dimensional
//! `G(m,n)` sigma model.
//!
//! The crate has two independent routes to the same numbers:
//!
//! - [`exact`] computes the Lagrangian coefficient `r`, the topological
//!   coefficient `q`, the gaussian curvature `K = 4/r` and the squared mean
//!   curvature `H²` of Veronese-based projector solutions in exact rational
//!   arithmetic.
//! - [`oracle`] builds the projectors numerically from the Veronese curve (or
//!   any polynomial curve), and recovers the same quantities by finite
//!   differences.
//!
//! On top of these, [`search`] groups solutions that share `(K, q)` and decides
//! whether `H²` separates them, [`frames`] handles two holomorphic `G(2,5)`
//! solutions that are not Veronese-based, and [`catalog`] provides record
//! formats, the tabulated fixtures and the `sigsurf` command line.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod frames;
pub mod oracle;
pub mod search;

pub use error::{Error, Result};
pub use exact::{BetaVector, GridLabel, InvariantRecord};
