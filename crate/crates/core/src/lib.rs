//! A computational laboratory for the 3x+1 (Collatz) problem.
//!
//! Everything here is exact: trajectories run on arbitrary-precision
//! naturals, representation arithmetic is integer/rational, and floating
//! point appears only in final read-outs (log-ratios and residuals).
//!
//! The crate is split by subject:
//!
//! - [`trajectory`] — orbits under the Collatz map and its accelerated
//!   variant, parity gap profiles, and per-start statistics.
//! - [`repcore`] — the exponential-Diophantine representation of inverse
//!   iterates of 1 (Crandall representations), 3-smooth special
//!   representations, cycle candidates, 4m+1 chains, and the Wirsching
//!   sequence encoding.
//! - [`eolevels`] — the even/odd parameterized families that organize all
//!   odd inverse iterates into levels: the c-solver, primitive seed
//!   enumeration, corner families, level counting, mixing, and the
//!   odd-partition classifiers.
//! - [`asymptotics`] — stopping-time statistics at scale: completeness
//!   floors, record scans, residual extremes, and trend tables.

pub mod asymptotics;
pub mod eolevels;
mod numeric;
pub mod repcore;
pub mod trajectory;
