//! The one real clock in the workspace: monotonic system time for
//! wall-clock search budgets. Everything else runs on virtual clocks.

use std::time::Instant;

use rootbandit_core::clock::Clock;

/// Milliseconds elapsed since the clock was created, read from the
/// monotonic system timer.
#[derive(Debug, Clone)]
pub struct SystemClock {
    origin: Instant,
}

impl SystemClock {
    pub fn new() -> Self {
        Self {
            origin: Instant::now(),
        }
    }
}

impl Default for SystemClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for SystemClock {
    fn now_ms(&self) -> f64 {
        self.origin.elapsed().as_secs_f64() * 1000.0
    }
}
