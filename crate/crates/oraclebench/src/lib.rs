//! Simulation and bound evaluation for stochastic first-order convex
//! optimization: domains and packings, instance families, oracles,
//! sequential algorithms, information bounds, and the Monte Carlo harness
//! that runs the optimization-to-hypothesis-testing reduction.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algorithms;
pub mod config;
pub mod emit;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod infobounds;
pub mod instances;
pub mod oracles;
pub mod presets;
pub mod seed;

pub use error::{Error, Result};
