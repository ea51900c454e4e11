//! Exact-arithmetic engine for scrolls over surfaces embedded with the
//! smallest possible codimension.
//!
//! An `n`-dimensional scroll over a surface living in projective
//! `(2n-1)`-space pins its numerical invariants down hard: the normal
//! bundle forces three relations among the Chern classes of the defining
//! bundle and the base surface, and eliminating the surface classes leaves
//! a single divisor equation in `q = n^2`, the degree `d`, and `c2 = e2`.
//! This crate re-derives those relations symbolically from first
//! principles, then enumerates and classifies every integer solution per
//! dimension.
//!
//! Layering, bottom up:
//! * [`arith`] - big-integer factorization, divisor enumeration,
//!   generalized binomials;
//! * [`cohomring`] - the truncated cohomology ring of the projective
//!   bundle, exact rational coefficients throughout;
//! * [`relations`] - relation extraction, closed forms, and the
//!   elimination down to the divisor equation;
//! * [`enumerate`] - the per-dimension solver, filters and classification.

pub mod arith;
pub mod cohomring;
pub mod enumerate;
pub mod relations;

pub use arith::{
    binomial, factorize, gen_binomial, reduced_fraction, signed_divisors, ArithError,
    Factorization,
};
pub use cohomring::{BaseClass, BaseMonomial, BundleClass, Rational, ScalarPoly};
pub use enumerate::{
    castelnuovo_bound, classify_known, conjecture_classify, divisibility_filter, enumerate_n,
    noether_filter, sectional_genus, star_rhs, star_solutions, CandidatePair, Classification,
    EnumOptions, EnumReport, Outcome, StageCounts, SurfaceInvariants,
};
pub use relations::{
    closed_form_relations, compare_relation_sets, derive_relations, eliminate_gamma,
    elimination_identity_holds, expanded_star_constraint, gamma2_solve, reduced_star_constraint,
    verify_derivation, MultiPoly, RelationSet, Var,
};

pub use num_bigint::{BigInt, BigUint};
