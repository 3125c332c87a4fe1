use crate::assignment::Assignment;
use crate::propagation::NoGoodStore;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeletionParams {
    pub first_interval: u64,
    pub interval_step: u64,
    /// The interval sequence restarts after this many cycles.
    pub reset_after: u64,
    pub threshold_factor: f64,
    /// Nogoods with an LBD at or below this are never removed.
    pub protected_lbd: u32,
}

impl Default for DeletionParams {
    fn default() -> Self {
        DeletionParams {
            first_interval: 2000,
            interval_step: 100,
            reset_after: 20,
            threshold_factor: 1.5,
            protected_lbd: 2,
        }
    }
}

/// Schedule for learned-nogood cleanup, counted in conflicts since the previous cleanup.
#[derive(Debug, Clone)]
pub struct DeletionState {
    pub params: DeletionParams,
    pub cycles_done: u64,
    pub conflicts_since_cleanup: u64,
}

impl DeletionState {
    pub fn new(params: DeletionParams) -> Self {
        DeletionState {
            params,
            cycles_done: 0,
            conflicts_since_cleanup: 0,
        }
    }

    pub fn cycle_interval(&self) -> u64 {
        self.params.first_interval
            + self.params.interval_step * (self.cycles_done % self.params.reset_after)
    }

    pub fn on_conflict(&mut self) {
        self.conflicts_since_cleanup += 1;
    }

    pub fn is_due(&self) -> bool {
        self.conflicts_since_cleanup >= self.cycle_interval()
    }

    fn finish_cycle(&mut self) {
        self.cycles_done += 1;
        self.conflicts_since_cleanup = 0;
    }
}

impl Default for DeletionState {
    fn default() -> Self {
        DeletionState::new(DeletionParams::default())
    }
}

/// Removes inactive learned nogoods and schedules the next cleanup. Returns the number removed.
///
/// The threshold is `threshold_factor` times the average activity of the learned nogoods with
/// an LBD above the protected bound. Locked nogoods are kept, and the sweep stops once half of
/// the learned nogoods are gone.
pub fn clean_store(
    store: &mut NoGoodStore,
    assignment: &Assignment,
    deletion: &mut DeletionState,
) -> usize {
    let params = deletion.params;
    let learned = store.learned_ids();
    let limit = learned.len() / 2;
    let eligible: Vec<_> = learned
        .into_iter()
        .filter(|&id| store.get(id).lbd().unwrap_or(u32::MAX) > params.protected_lbd)
        .collect();
    let average = if eligible.is_empty() {
        0.0
    } else {
        eligible.iter().map(|&id| store.get(id).activity).sum::<f64>() / eligible.len() as f64
    };
    let threshold = params.threshold_factor * average;

    let mut removed = 0;
    for id in eligible {
        if removed >= limit {
            break;
        }
        let nogood = store.get(id);
        if nogood.activity < threshold && !assignment.is_locked(id, nogood) {
            store.remove(id);
            removed += 1;
        }
    }
    deletion.finish_cycle();
    removed
}
