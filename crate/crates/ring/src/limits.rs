//! Enumeration caps shared by every crate that walks a finite set.

pub const DEFAULT_MAX_ELEMENTS: u128 = 1_000_000;

/// The cap from `LK_MAX_ELEMENTS`, or [`DEFAULT_MAX_ELEMENTS`].
pub fn max_elements() -> u128 {
    std::env::var("LK_MAX_ELEMENTS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ELEMENTS)
}

pub fn check(what: &str, needed: u128) -> Result<(), crate::RingError> {
    let cap = max_elements();
    if needed > cap {
        return Err(crate::RingError::CapExceeded { what: what.to_string(), needed, cap });
    }
    Ok(())
}
