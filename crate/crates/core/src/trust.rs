//! Adaptive perturbation-range state machine.

use crate::config::SnboConfig;

/// Perturbation range plus consecutive success/failure counters.
///
/// The range doubles (capped at `r_max`) after `max_succ` consecutive
/// improvements and halves after `max_fail` consecutive failures. A run
/// restarts once the range drops below `r_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrustState {
    pub r: f64,
    pub n_succ: usize,
    pub n_fail: usize,
}

impl TrustState {
    pub fn new(r_init: f64) -> Self {
        Self {
            r: r_init,
            n_succ: 0,
            n_fail: 0,
        }
    }

    /// Applies one improved/failed signal and returns the next state plus
    /// whether a restart is triggered (`r < r_min`).
    #[must_use]
    pub fn update(self, improved: bool, config: &SnboConfig) -> (TrustState, bool) {
        let mut next = self;
        if improved {
            next.n_succ += 1;
            next.n_fail = 0;
        } else {
            next.n_fail += 1;
            next.n_succ = 0;
        }
        if next.n_succ >= config.max_succ {
            next.r = (2.0 * next.r).min(config.r_max);
            next.n_succ = 0;
        } else if next.n_fail >= config.max_fail {
            next.r /= 2.0;
            next.n_fail = 0;
        }
        let restart_triggered = next.r < config.r_min;
        (next, restart_triggered)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> SnboConfig {
        SnboConfig::new(10, 500)
    }

    #[test]
    fn success_threshold_caps_doubling_at_r_max() {
        let cfg = config();
        let state = TrustState {
            r: 1.6,
            n_succ: 2,
            n_fail: 0,
        };
        let (next, restart) = state.update(true, &cfg);
        assert_eq!(
            next,
            TrustState {
                r: 1.6,
                n_succ: 0,
                n_fail: 0
            }
        );
        assert!(!restart);
    }

    #[test]
    fn failure_threshold_halves_range() {
        let cfg = config();
        let state = TrustState {
            r: 1.6,
            n_succ: 0,
            n_fail: cfg.max_fail - 1,
        };
        let (next, restart) = state.update(false, &cfg);
        assert_eq!(
            next,
            TrustState {
                r: 0.8,
                n_succ: 0,
                n_fail: 0
            }
        );
        assert!(!restart);
    }

    #[test]
    fn halving_below_minimum_triggers_restart() {
        let cfg = config();
        let state = TrustState {
            r: 0.04,
            n_succ: 0,
            n_fail: cfg.max_fail - 1,
        };
        let (next, restart) = state.update(false, &cfg);
        assert_eq!(next.r, 0.02);
        assert!(restart, "0.02 < r_min = 0.025 must trigger a restart");
    }

    #[test]
    fn doubling_grows_when_below_cap() {
        let mut cfg = config();
        cfg.max_succ = 1;
        let state = TrustState {
            r: 0.4,
            n_succ: 0,
            n_fail: 3,
        };
        let (next, _) = state.update(true, &cfg);
        assert_eq!(
            next,
            TrustState {
                r: 0.8,
                n_succ: 0,
                n_fail: 0
            }
        );
    }

    #[test]
    fn counters_reset_each_other() {
        let cfg = config();
        let state = TrustState {
            r: 1.6,
            n_succ: 0,
            n_fail: 4,
        };
        let (next, _) = state.update(true, &cfg);
        assert_eq!(next.n_succ, 1);
        assert_eq!(next.n_fail, 0);
    }
}
