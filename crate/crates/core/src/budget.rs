//! Caps on brute-force enumeration so oracles fail loudly instead of hanging.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Environment variable that overrides [`DEFAULT_CAP`].
pub const BUDGET_ENV: &str = "TILING_REFLECT_BUDGET";

/// Default number of partial states an enumeration may visit.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Shared counter of visited states; safe to tick from several threads.
#[derive(Debug)]
pub struct Budget {
    what: &'static str,
    cap: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(what: &'static str, cap: u64) -> Self {
        Budget { what, cap, used: AtomicU64::new(0) }
    }

    /// Cap from `TILING_REFLECT_BUDGET`, or [`DEFAULT_CAP`] when unset or unparsable.
    pub fn from_env(what: &'static str) -> Self {
        Budget::new(what, env_cap())
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn tick(&self) -> Result<()> {
        self.spend(1)
    }

    pub fn spend(&self, n: u64) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before + n > self.cap {
            Err(Error::Budget { what: self.what, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

pub fn env_cap() -> u64 {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceeding_the_cap_is_an_error() {
        let b = Budget::new("states", 3);
        assert!(b.spend(3).is_ok());
        assert_eq!(b.tick(), Err(Error::Budget { what: "states", cap: 3 }));
    }
}
