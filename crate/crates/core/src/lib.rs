//! Potential stability of small sign patterns.
//!
//! A sign pattern is potentially stable when some real matrix with exactly
//! those signs has every eigenvalue in the open left half-plane. This crate
//! decides the question for small patterns by combining
//!
//! * the cycle structure of the support digraph ([`digraph`], [`minors`]),
//! * exact symbolic characteristic coefficients ([`symbolic`], [`poly`]),
//! * Hurwitz-type necessary conditions and certificates ([`stability`]),
//! * a seeded numeric search for certified stable realizations ([`realization`]),
//!
//! and drives them over enumerated candidate digraphs in [`pipeline`].

pub mod battery;
pub mod digraph;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod minors;
pub mod pattern;
pub mod pipeline;
pub mod poly;
pub mod rational_poly;
pub mod realization;
pub mod report;
pub mod signs;
pub mod stability;
pub mod symbolic;

pub use digraph::{CanonicalKey, Cycle, Digraph};
pub use error::{Error, Result};
pub use exec::Exec;
pub use minors::MinorSupport;
pub use pattern::{Sign, SignPattern};
pub use poly::SignedPoly;
pub use rational_poly::RationalPoly;
pub use stability::{StabilityStatus, StabilityVerdict};
