//! Benchmark-only crate; see `benches/` for the criterion targets.
//!
//! Rough reference points (release, one desktop core): the full
//! enumeration of dimensions 4..=1100 lands in single-digit seconds, and
//! the symbolic re-derivation sweep up to n = 40 in well under a second.
