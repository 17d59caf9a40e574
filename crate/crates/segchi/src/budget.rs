use std::time::{Duration, Instant};

use segchi_core::Budget;

/// Wall-clock search budget. The clock is read every 256 nodes.
#[derive(Debug, Clone)]
pub struct Deadline {
    end: Option<Instant>,
    ticks: u32,
    expired: bool,
}

impl Deadline {
    pub fn after(limit: Duration) -> Self {
        let end = (!limit.is_zero()).then(|| Instant::now() + limit);
        Deadline { end, ticks: 0, expired: false }
    }

    /// Non-positive or non-finite limits give an invalid budget.
    pub fn from_secs(seconds: f64) -> Self {
        match Duration::try_from_secs_f64(seconds) {
            Ok(d) if seconds > 0.0 => Deadline::after(d),
            _ => Deadline { end: None, ticks: 0, expired: false },
        }
    }
}

impl Budget for Deadline {
    fn exhausted(&mut self) -> bool {
        if self.expired {
            return true;
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(256) {
            self.expired = self.end.is_none_or(|end| Instant::now() >= end);
        }
        self.expired
    }

    fn is_valid(&self) -> bool {
        self.end.is_some()
    }
}
