//! Process-wide time budget for the long-running elimination kernels.
//!
//! The budget is a soft deadline: kernels poll [`checkpoint`] between
//! elimination steps and abort with [`Error::BudgetExceeded`] once it has
//! passed. No budget is set by default.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

static EPOCH: OnceLock<Instant> = OnceLock::new();
static DEADLINE_MS: AtomicU64 = AtomicU64::new(u64::MAX);

fn elapsed_ms() -> u64 {
    EPOCH.get_or_init(Instant::now).elapsed().as_millis() as u64
}

/// Caps all subsequent computations; `None` removes the cap.
pub fn set_time_budget(budget: Option<Duration>) {
    let deadline = match budget {
        Some(d) => elapsed_ms().saturating_add(d.as_millis() as u64),
        None => u64::MAX,
    };
    DEADLINE_MS.store(deadline, Ordering::SeqCst);
}

pub fn checkpoint() -> Result<()> {
    if elapsed_ms() > DEADLINE_MS.load(Ordering::Relaxed) {
        Err(Error::BudgetExceeded)
    } else {
        Ok(())
    }
}
