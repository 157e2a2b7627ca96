//! Dual-engine analysis of jamming attacks on a randomly deployed wireless
//! downlink.
//!
//! Base stations form a Poisson point process, jammers a Binomial point
//! process on a disk around the victim receiver. An analytical engine
//! evaluates closed-form outage and symbol-error probabilities built from
//! hypergeometric functions and Gauss-Hermite quadrature; a seeded Monte
//! Carlo engine reproduces the same quantities by direct simulation of the
//! received-signal model. The two engines cross-validate each other, and the
//! `cli` module drives parameter sweeps over both.

pub mod channel;
pub mod cli;
pub mod error;
pub mod errorprob;
pub mod geometry;
pub mod outage;
pub mod quad;
pub mod retx;
pub mod sizing;
pub mod specfun;

pub use error::{Error, Result};
