//! Time as an injected dependency.
//!
//! Nothing in this crate reads a real clock. Time-sliced policies and
//! wall-clock search budgets consult a [`Clock`], so tests and the synthetic
//! harness can drive them on deterministic virtual time while the CLI plugs
//! in a monotonic system clock.

use alloc::rc::Rc;
use core::cell::Cell;

/// A monotonic millisecond clock.
pub trait Clock {
    /// Milliseconds since some fixed origin. Must be non-decreasing.
    fn now_ms(&self) -> f64;
}

/// A clock that never advances. Useful for purely iteration-driven runs.
#[derive(Debug, Clone, Copy, Default)]
pub struct FrozenClock;

impl Clock for FrozenClock {
    fn now_ms(&self) -> f64 {
        0.0
    }
}

/// A hand-cranked clock sharing one cell of virtual time.
///
/// Clones observe the same time, so a harness can keep one handle and hand
/// another to a policy.
#[derive(Debug, Clone, Default)]
pub struct ManualClock {
    now: Rc<Cell<f64>>,
}

impl ManualClock {
    pub fn new() -> Self {
        Self::default()
    }

    /// Advance virtual time by `ms` (must be non-negative).
    pub fn advance(&self, ms: f64) {
        debug_assert!(ms >= 0.0, "clocks only run forward");
        self.now.set(self.now.get() + ms);
    }

    pub fn set(&self, ms: f64) {
        debug_assert!(ms >= self.now.get(), "clocks only run forward");
        self.now.set(ms);
    }
}

impl Clock for ManualClock {
    fn now_ms(&self) -> f64 {
        self.now.get()
    }
}
