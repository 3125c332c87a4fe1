//! Lazy instantiation of rules and their translation into nogoods.

mod atoms;
mod grounder;
mod translate;

pub use atoms::{AtomId, AtomTable, GroundAtom, NonGroundAtom, PredicateId, Symbol};
pub use grounder::{GroundRule, Grounder, GroundingMode, Strictness};
pub use translate::rule_to_nogoods;
