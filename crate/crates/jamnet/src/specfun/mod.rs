//! Special-function and quadrature kernel shared by every closed-form
//! expression in the crate: gamma, the Gauss/confluent hypergeometric
//! series, and Gauss-Hermite rules for log-normal expectations.
//!
//! All operations are pure functions of their inputs.

mod gamma;
mod ghq;
mod hyp;

pub use gamma::gamma;
pub use ghq::{gauss_hermite, ghq_lognormal_expectation, GhqRule, MAX_GHQ_ORDER};
pub use hyp::{hyp1f1, hyp1f2, hyp2f1};
