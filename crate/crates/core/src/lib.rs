//! Exact construction and certification of the non-binary Johnson scheme
//! `J_r(k, n)`.
//!
//! The crate builds the scheme combinatorially, computes its eigenvalue and
//! dual eigenvalue tables from Krawtchouk, Eberlein and Hahn polynomials, and
//! checks every structural identity of the scheme as an exact identity over
//! the rationals: the association-scheme axioms, the bivariate P- and
//! Q-polynomial structure, the recurrence and difference relations of the
//! associated bivariate polynomials, the bispectral algebra, and the relations
//! of the subconstituent algebra.
//!
//! Results are reported as [`Certificate`]s. Nothing is ever compared with a
//! tolerance.

pub mod bispectral;
pub mod certificate;
pub mod error;
pub mod exact;
pub mod orthopoly;
pub mod poly;
pub mod report;
pub mod scheme;
pub mod spectra;
pub mod terwilliger;

pub use certificate::{Certificate, CertificateBuilder, Verdict, Witness};
pub use error::{Error, Result};
pub use exact::{ExactMatrix, Scalar};
pub use scheme::{bi, BiIndex, Domain, SchemeParams};
