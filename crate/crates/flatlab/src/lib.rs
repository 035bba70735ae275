//! Numerical laboratory for the flatness properties of Littlewood-type
//! polynomial families: the Rudin-Shapiro pair and its truncations, Fekete
//! polynomials and their modified/shifted variants, and Singer-set
//! polynomials.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! seqgen  ->  polyfam  ->  { specnorm , correlate }  ->  verify
//! ```
//!
//! * [`seqgen`] produces coefficient sequences by several independent
//!   constructions that cross-validate each other.
//! * [`polyfam`] wraps sequences into analytic polynomials with exact integer
//!   coefficients and an explicit L² normalization scalar.
//! * [`specnorm`] evaluates on roots-of-unity grids and computes L^α norms,
//!   Mahler measures, sup-norm intervals and flatness deviations.
//! * [`correlate`] is the exact integer route: aperiodic autocorrelations,
//!   energy, merit factors and L⁴ norms as exact rationals.
//! * [`verify`] encodes the quantitative statements about these families as
//!   executable checks producing [`report::VerdictReport`]s.

pub mod correlate;
pub mod error;
pub mod polyfam;
pub mod report;
pub mod seqgen;
pub mod specnorm;
pub mod verify;

pub use error::{Error, Result};
