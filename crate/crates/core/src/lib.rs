//! Zero-sum invariants of finite Abelian groups.
//!
//! This crate computes the Davenport constant `D(G)` (smallest `t` such that
//! every length-`t` sequence over `G` has a non-empty zero-sum subsequence)
//! and the related constant `eta(G)` (same, but the zero-sum subsequence must
//! have length at most `exp(G)`) exactly for small groups, evaluates the
//! classical closed-form values and bounds for both, builds the standard
//! extremal sequences, and runs the inductive method as an executable
//! pipeline that extracts a concrete zero-sum subsequence from any long
//! enough sequence.
//!
//! Module map:
//! - [`group`]: invariant-factor groups, elements, multiset sequences
//! - [`arith`]: prime-power factorization, `P(n)`, the sequence `a_n`
//! - [`bounds`]: closed-form bounds, known exact values, report assembly
//! - [`solver`]: exact search for `D` and `eta`, zero-sum finders, verifiers
//! - [`construct`]: the two extremal sequence constructions
//! - [`inductive`]: Sylow split, block extraction, bound certificates
//! - [`witness`]: the `.seq` witness file format

pub mod arith;
pub mod bounds;
pub mod construct;
pub mod inductive;
pub mod error;
pub mod group;
pub mod solver;
pub mod witness;

pub use error::{Error, Result};
pub use group::{AbelianGroup, GroupElement, GroupSequence};
