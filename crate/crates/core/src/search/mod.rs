//! Search control: restarts, phase saving and learned-nogood deletion.

mod deletion;
mod luby;
mod phase;
mod restart;

pub use deletion::{clean_store, DeletionParams, DeletionState};
pub use luby::ReluctantDoubling;
pub use phase::{PhasePolicy, PhaseTable};
pub use restart::{RestartParams, RestartState};
