//! Interval Markov decision processes (IMDPs) and action-agnostic
//! probabilistic automata (PAs) with exact rational arithmetic.
//!
//! The crate covers the full pipeline: building and validating models,
//! unfolding an IMDP into a PA and folding a PA back into an IMDP,
//! synchronous and interleaved composition, and deciding and minimizing
//! probabilistic bisimulation by partition refinement over class polytopes.
//! Independent brute-force references live in [`oracle`].

pub mod bisim;
pub mod compose;
pub mod dot;
pub mod error;
pub mod geometry;
pub mod io;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod transform;

pub use error::{Error, Result};
pub use model::{Distribution, Imdp, Interval, Model, Pa, Partition, StateId, Violation};
pub use rational::Rational;
