//! Wall-clock deadlines shared by the search kernels.

use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    end: Option<Instant>,
}

impl Deadline {
    pub fn none() -> Self {
        Deadline { end: None }
    }

    pub fn after(d: Duration) -> Self {
        Deadline { end: Instant::now().checked_add(d) }
    }

    pub fn secs(s: f64) -> Self {
        Self::after(Duration::from_secs_f64(s.max(0.0)))
    }

    pub fn expired(&self) -> bool {
        match self.end {
            Some(e) => Instant::now() >= e,
            None => false,
        }
    }
}

/// Counts down work units and only consults the clock every few thousand ticks.
pub(crate) struct Ticker {
    deadline: Deadline,
    count: u32,
    tripped: bool,
}

impl Ticker {
    pub fn new(deadline: Deadline) -> Self {
        Ticker { deadline, count: 0, tripped: false }
    }

    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.tripped {
            return true;
        }
        self.count += 1;
        if self.count >= 4096 {
            self.count = 0;
            self.tripped = self.deadline.expired();
        }
        self.tripped
    }

    pub fn tripped(&self) -> bool {
        self.tripped
    }
}

/// Result of a search that may run out of time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The search space was exhausted without a hit.
    Absent,
    Timeout,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Absent => Search::Absent,
            Search::Timeout => Search::Timeout,
        }
    }
}
