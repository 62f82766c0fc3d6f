//! Quintic multigraphs with the triangle property: analytics, canonical
//! forms, configuration detection, the guarded reduction calculus, and the
//! brute-force enumeration oracles used to certify it at small orders.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI
//! live in the companion `quintic-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod canon;
pub mod construct;
pub mod enumerate;
pub mod mgraph;
pub mod patterns;
pub mod reduce;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use mgraph::{GraphError, Multigraph, Triangle, TriangleClass, TriangleLabel, Vertex};
pub use patterns::{classify_base, BaseClass, ConfigMatch, PatternKind};
pub use reduce::{
    reduce_once, reduce_to_base, EngineError, ReduceOptions, ReductionStep, ReductionTrace,
    RuleId,
};
