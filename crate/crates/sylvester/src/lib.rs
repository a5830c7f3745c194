//! Exact-arithmetic toolkit for point-line configurations in the complex
//! projective plane.
//!
//! The crate builds configurations over cyclotomic fields Q(zeta_N), finds
//! their spanned and ordinary lines, and runs a certified pipeline over
//! configurations on concurrent lines: normalization to a pencil, a generic
//! direction choice, per-line minimal points, a support graph with exact
//! planarity and acyclicity certificates, a convex piecewise-linear envelope
//! with a numeric Green-identity check, and a constructive ordinary-line
//! finder. A realizer searches for point sets whose maximal support graph
//! matches a target forest.
//!
//! Every geometric predicate is exact: coordinates live in Q(zeta_N), and
//! real-part signs are decided by canonical-form zero tests plus
//! adaptive-precision interval evaluation. Floating point appears only in
//! SVG output and the numeric boundary-integral check, both clearly marked.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `sylvester` binary for the command-line interface.

pub mod cli;
pub mod config;
pub mod cyclofield;
pub mod error;
pub mod incidence;
pub mod pencil;
pub mod projgeom;
pub mod realizer;
pub mod report;
pub mod svg;

pub use error::{Error, Result};
