//! Boolean attribute models (BAMs) for preference profiles.
//!
//! A BAM assigns every alternative a set of attributes it *has* and every
//! voter a set of attributes it *cares* about. A voter's score for an
//! alternative is the size of the intersection, and the model explains a
//! profile when scores strictly decrease along every voter's order.
//!
//! The crate provides:
//!
//! - domain types and the polynomial-time check ([`profile`], [`model`]),
//! - lower/upper bounds on the attribute count ([`bounds`]),
//! - exact general solvers and the minimum-`k` driver ([`search`]),
//! - the tractable special cases: `k <= 2` ([`twosat`]), two voters
//!   ([`twovoter`]) and uniform order length ([`special`]),
//! - the partial-information variants with fixed cares or fixed has ([`partial`]),
//! - instance generators for the hardness constructions ([`reductions`]),
//! - the line-based text formats ([`format`]).

pub mod attrs;
pub mod bounds;
pub mod error;
pub mod format;
pub mod model;
pub mod outcome;
pub mod partial;
pub mod profile;
pub mod reductions;
pub mod search;
pub mod special;
pub mod twosat;
pub mod twovoter;

mod reduce;

pub use attrs::AttrSet;
pub use error::{BamError, Result};
pub use model::{score, verify, AttributeModel, Verdict, Violation};
pub use outcome::{Decision, SearchStats, SolveOutcome};
pub use profile::{PreferenceProfile, RankView};
