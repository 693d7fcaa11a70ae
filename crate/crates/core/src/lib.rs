//! Exact ideal counting in monogenic quotient rings Z[t]/(f).
//!
//! The crate computes, in exact integer and rational arithmetic:
//!
//! * counts of finite-index ideals of Z[t]/(f) via Hermite-normal-form
//!   lattice enumeration ([`lattice`]),
//! * p-adic volumes of the t-stability condition at fixed diagonal
//!   valuations, with closed forms where they exist ([`volume`]),
//! * truncated Dirichlet series, shifted zeta products, Euler assembly, and
//!   symbolic local factors in x = p^-s ([`series`]),
//! * side-by-side comparison reports between enumeration oracles and closed
//!   formulas ([`report`]).
//!
//! The `idealzeta` binary exposes all of it as a command line tool.

pub mod cli;
pub mod error;
pub mod lattice;
pub mod laurent;
pub mod polyring;
pub mod report;
pub mod series;
pub mod volume;

pub use error::{Error, Result};
pub use polyring::{parse_poly, MonicPoly, RingVector};
