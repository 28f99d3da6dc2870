//! Backtracking searches. Budgets count search nodes, so runs are
//! reproducible across machines.

mod coloring;
mod eswc;
mod gbtp;
mod starter;
mod words;

pub use coloring::search_coloring;
pub use eswc::{equitable_words, max_eswc, plotkin_cap, EswcResult, CLIQUE_WORD_LIMIT};
pub use gbtp::{search_gbtp, GbtpParams};
pub use starter::{search_starter, search_starters, StarterParams};

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    /// Count one node; false once the limit is reached.
    pub fn tick(&mut self) -> bool {
        if self.used >= self.limit {
            return false;
        }
        self.used += 1;
        true
    }

    pub fn spend(&mut self, n: u64) {
        self.used = (self.used + n).min(self.limit);
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn left(&self) -> u64 {
        self.limit - self.used
    }
}

/// A search result. `exhausted` is set when the whole space was covered,
/// so an empty result is conclusive.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome<T> {
    pub value: Option<T>,
    pub exhausted: bool,
    pub nodes: u64,
}

impl<T> Outcome<T> {
    pub fn into_result(self, what: &str) -> Result<T> {
        match self.value {
            Some(v) => Ok(v),
            None if self.exhausted => Err(Error::NotFound(format!("{what}: search space exhausted after {} nodes", self.nodes))),
            None => Err(Error::NotFound(format!("{what}: budget spent after {} nodes", self.nodes))),
        }
    }
}
