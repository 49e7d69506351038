//! Size cap on dense tensors, read from `DYNTWIST_MAX_DIM`.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DIM: usize = 10_000_000;

/// Current cap; unparsable values fall back to the default.
pub fn max_dim() -> usize {
    std::env::var("DYNTWIST_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

pub fn check_dim(what: &str, slots: usize) -> Result<()> {
    let cap = max_dim();
    if slots > cap {
        return Err(Error::SizeCap(format!(
            "{what} needs {slots} scalar slots, cap is {cap}"
        )));
    }
    Ok(())
}
