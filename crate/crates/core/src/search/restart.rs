use super::luby::ReluctantDoubling;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestartParams {
    pub alpha_fast: f64,
    pub alpha_slow: f64,
    /// Restart when the fast average exceeds the slow one by this factor.
    pub factor: f64,
    pub warmup: u64,
    /// Conflicts per unit of the Luby sequence.
    pub luby_unit: u64,
}

impl Default for RestartParams {
    fn default() -> Self {
        RestartParams {
            alpha_fast: 1.0 / 32.0,
            alpha_slow: 1.0 / 16384.0,
            factor: 1.25,
            warmup: 50,
            luby_unit: 32,
        }
    }
}

/// Adaptive restarts on LBD moving averages, gated by a Luby-scaled minimum run length.
#[derive(Debug, Clone)]
pub struct RestartState {
    pub params: RestartParams,
    luby: ReluctantDoubling,
    pub ema_fast: f64,
    pub ema_slow: f64,
    pub total_conflicts: u64,
    pub conflicts_since_restart: u64,
}

impl RestartState {
    pub fn new(params: RestartParams) -> Self {
        RestartState {
            params,
            luby: ReluctantDoubling::new(),
            ema_fast: 0.0,
            ema_slow: 0.0,
            total_conflicts: 0,
            conflicts_since_restart: 0,
        }
    }

    pub fn on_conflict_lbd(&mut self, lbd: u32) {
        let lbd = f64::from(lbd);
        self.ema_fast += self.params.alpha_fast * (lbd - self.ema_fast);
        self.ema_slow += self.params.alpha_slow * (lbd - self.ema_slow);
        self.total_conflicts += 1;
        self.conflicts_since_restart += 1;
    }

    /// Minimum number of conflicts before the next restart may fire.
    pub fn gate(&self) -> u64 {
        self.params.luby_unit * self.luby.current()
    }

    pub fn should_restart(&self) -> bool {
        self.total_conflicts > self.params.warmup
            && self.ema_fast > self.params.factor * self.ema_slow
            && self.conflicts_since_restart >= self.gate()
    }

    /// Records that a restart happened and advances the Luby sequence.
    pub fn on_restart(&mut self) {
        self.conflicts_since_restart = 0;
        self.luby.next_value();
    }
}

impl Default for RestartState {
    fn default() -> Self {
        RestartState::new(RestartParams::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_update() {
        let mut s = RestartState::default();
        s.on_conflict_lbd(32);
        assert_eq!(s.ema_fast, 1.0);
        assert_eq!(s.ema_slow, 32.0 / 16384.0);
        assert_eq!(s.total_conflicts, 1);
    }

    #[test]
    fn constant_stream_converges() {
        let mut s = RestartState::default();
        for _ in 0..200_000 {
            s.on_conflict_lbd(7);
        }
        assert!((s.ema_fast - 7.0).abs() < 1e-9);
        assert!((s.ema_slow - 7.0).abs() < 1e-3);
        assert!(!s.should_restart());
    }

    #[test]
    fn gate_conditions() {
        let mut s = RestartState::default();
        s.ema_fast = 2.0;
        s.ema_slow = 1.0;
        s.total_conflicts = 50;
        s.conflicts_since_restart = 1000;
        assert!(!s.should_restart(), "warmup");
        s.total_conflicts = 51;
        assert!(s.should_restart());
        s.ema_fast = 1.0;
        assert!(!s.should_restart(), "equal averages");
        s.ema_fast = 2.0;
        s.conflicts_since_restart = 31;
        assert!(!s.should_restart(), "luby gate");
        s.conflicts_since_restart = 32;
        assert!(s.should_restart());
    }

    #[test]
    fn restart_advances_gate() {
        let mut s = RestartState::default();
        let gates: Vec<u64> = (0..7)
            .map(|_| {
                let g = s.gate();
                s.on_restart();
                g
            })
            .collect();
        assert_eq!(gates, [32, 32, 64, 32, 32, 64, 128]);
    }
}
