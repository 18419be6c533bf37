//! Work limits shared by the search routines.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// A wall-clock deadline plus a node counter. Cloning shares nothing; pass by
/// reference into parallel workers.
#[derive(Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    max_nodes: u64,
    nodes: AtomicU64,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None, max_nodes: u64::MAX, nodes: AtomicU64::new(0) }
    }

    pub fn with_time(limit: Duration) -> Self {
        Budget { deadline: Some(Instant::now() + limit), ..Self::unlimited() }
    }

    pub fn with_nodes(max_nodes: u64) -> Self {
        Budget { max_nodes, ..Self::unlimited() }
    }

    pub fn and_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    /// Charge `n` units of work. Checks the clock every 4096 units.
    pub fn charge(&self, n: u64, what: &str) -> Result<()> {
        let before = self.nodes.fetch_add(n, Ordering::Relaxed);
        let after = before.saturating_add(n);
        if after > self.max_nodes {
            return Err(Error::Budget(format!("{what}: node limit {} exceeded", self.max_nodes)));
        }
        if (before >> 12) != (after >> 12) && self.expired() {
            return Err(Error::Budget(format!("{what}: time limit reached")));
        }
        Ok(())
    }

    pub fn check_time(&self, what: &str) -> Result<()> {
        if self.expired() {
            Err(Error::Budget(format!("{what}: time limit reached")))
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}
