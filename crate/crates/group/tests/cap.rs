use lk_group::{build_quotient, GroupError, IntegralModelSpec};
use lk_ring::{make_ring, RingError};

// Kept alone in its own test binary: it changes the process environment.
#[test]
fn enumeration_cap_from_environment() {
    std::env::set_var("LK_MAX_ELEMENTS", "100");
    let res = build_quotient(&IntegralModelSpec::full(2, 1), &make_ring(2, 1, 2).unwrap());
    std::env::remove_var("LK_MAX_ELEMENTS");
    assert!(matches!(res, Err(GroupError::Ring(RingError::CapExceeded { .. }))));
    assert!(build_quotient(&IntegralModelSpec::full(2, 1), &make_ring(2, 1, 2).unwrap()).is_ok());
}
