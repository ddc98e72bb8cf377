//! Wall-clock deadlines combined with node budgets.

use std::time::{Duration, Instant};

use flagkneser_core::solvers::{Interrupt, POLL_INTERVAL};

/// Stops a search when the deadline passes or the node budget is spent,
/// whichever comes first. Node budgets give reproducible cut-offs.
#[derive(Debug, Clone)]
pub struct Budget {
    deadline: Option<Instant>,
    polls_left: Option<u64>,
    expired_by_time: bool,
}

impl Budget {
    pub fn new(timeout: Option<Duration>, max_nodes: Option<u64>) -> Self {
        Budget {
            deadline: timeout.map(|t| Instant::now() + t),
            polls_left: max_nodes.map(|n| n.div_ceil(POLL_INTERVAL)),
            expired_by_time: false,
        }
    }

    pub fn unlimited() -> Self {
        Self::new(None, None)
    }

    /// Whether a stop was caused by the clock rather than the node budget.
    pub fn expired_by_time(&self) -> bool {
        self.expired_by_time
    }
}

impl Interrupt for Budget {
    fn should_stop(&mut self) -> bool {
        if let Some(p) = &mut self.polls_left {
            if *p == 0 {
                return true;
            }
            *p -= 1;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.expired_by_time = true;
            return true;
        }
        false
    }
}
