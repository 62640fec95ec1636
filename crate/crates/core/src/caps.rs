//! Size limits for the exhaustive searches.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Environment variable that overrides every exhaustive-search cap at once.
pub const CAP_ENV: &str = "GRAPHFAIR_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Goods for two-agent MMS / G-MMS (subset enumeration).
    pub mms_two: usize,
    /// Goods for MMS / G-MMS with three or more agents.
    pub mms_multi: usize,
    /// Vertices for the (a,b)-linkedness search.
    pub linked: usize,
    /// Goods for the binary-valuation EFk sweep.
    pub binary_efk: usize,
    /// Goods for tabulated valuations.
    pub tabulated: usize,
    /// Goods for exhaustive enumeration of connected allocations.
    pub allocations: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            mms_two: 14,
            mms_multi: 12,
            linked: 14,
            binary_efk: 10,
            tabulated: 20,
            allocations: 12,
        }
    }
}

impl Caps {
    /// Caps with every field set to `cap`, clamped to what 64-bit masks and
    /// in-memory tables can hold.
    pub fn uniform(cap: usize) -> Self {
        let cap = cap.min(26);
        Caps {
            mms_two: cap,
            mms_multi: cap,
            linked: cap,
            binary_efk: cap,
            tabulated: cap,
            allocations: cap,
        }
    }

    /// Defaults, or the uniform override from `GRAPHFAIR_CAP` when it is set
    /// to a positive integer. Read once per process.
    pub fn current() -> Caps {
        static CURRENT: OnceLock<Caps> = OnceLock::new();
        *CURRENT.get_or_init(|| {
            std::env::var(CAP_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&c| c > 0)
                .map(Caps::uniform)
                .unwrap_or_default()
        })
    }

    /// Cap for an MMS-style oracle with `n` agents.
    pub fn mms_for(&self, n: usize) -> usize {
        if n <= 2 {
            self.mms_two
        } else {
            self.mms_multi
        }
    }
}

pub(crate) fn check(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
