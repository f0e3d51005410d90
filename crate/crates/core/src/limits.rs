use std::cell::Cell;

use crate::error::{Error, Result};

/// Resource bounds shared by every search in the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest Cayley table the engine will build.
    pub element_cap: usize,
    /// Largest automorphism list kept as permutations; carriers above
    /// `element_cap` are never tabulated.
    pub automorphism_cap: usize,
    /// Node budget of a single backtracking search.
    pub search_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: 512,
            automorphism_cap: 50_000,
            search_budget: 200_000_000,
        }
    }
}

impl Limits {
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.element_cap = cap;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.search_budget = budget;
        self
    }

    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.element_cap {
            Err(Error::SizeCap {
                order,
                cap: self.element_cap,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            left: Cell::new(self.search_budget),
            budget: self.search_budget,
        }
    }
}

/// Counts search nodes against the budget of one search.
pub(crate) struct Meter {
    left: Cell<u64>,
    budget: u64,
}

impl Meter {
    pub(crate) fn tick(&self) -> Result<()> {
        let left = self.left.get();
        if left == 0 {
            return Err(Error::SearchBudgetExceeded { budget: self.budget });
        }
        self.left.set(left - 1);
        Ok(())
    }
}
