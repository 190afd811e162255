//! Anchor-to-head resolution: deterministic patterns first, neural scoring
//! for everything else.

pub mod deterministic;
pub mod neural;

pub use deterministic::{match_deterministic, DeterministicPattern, PatternMatch};
pub use neural::{ResolverConfig, ResolverParams};
