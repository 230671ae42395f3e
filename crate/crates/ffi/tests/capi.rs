//! Drives the C ABI exactly as a foreign caller would: raw pointers in,
//! status codes out.

use spectrum_auction_ffi::*;

/// W = {6,5,3,2,2}, C cents = {30000, 35435, 21260, 14170, 14168}.
fn near_tie_list() -> *mut SaBidList {
    let list = sa_bid_list_new();
    let rows = [
        (1u32, 6u32, 30000u64),
        (2, 5, 35435),
        (3, 3, 21260),
        (4, 2, 14170),
        (5, 2, 14168),
    ];
    for (su_id, channels, cents) in rows {
        let status = unsafe { sa_bid_list_push(list, su_id, channels, cents) };
        assert_eq!(status, SaStatus::Ok);
    }
    list
}

#[test]
fn dp_allocation_through_the_c_abi() {
    let list = near_tie_list();
    assert_eq!(unsafe { sa_bid_list_len(list) }, 5);

    let mut outcome: *mut SaOutcome = std::ptr::null_mut();
    let status = unsafe { sa_allocate(SaPolicy::Dp, list, 4, &mut outcome) };
    assert_eq!(status, SaStatus::Ok);
    assert!(!outcome.is_null());

    unsafe {
        assert_eq!(sa_outcome_total_gain_cents(outcome), 28338);
        assert_eq!(sa_outcome_channels_used(outcome), 4);
        assert_eq!(sa_outcome_winner_count(outcome), 2);
        assert!(sa_outcome_is_winner(outcome, 4));
        assert!(sa_outcome_is_winner(outcome, 5));
        assert!(!sa_outcome_is_winner(outcome, 2));

        let mut winners = [0u32; 8];
        let written = sa_outcome_winners(outcome, winners.as_mut_ptr(), winners.len() as u32);
        assert_eq!(written, 2);
        assert_eq!(&winners[..2], &[4, 5]);

        // a short buffer truncates instead of overflowing
        let mut short = [0u32; 1];
        assert_eq!(sa_outcome_winners(outcome, short.as_mut_ptr(), 1), 1);
        assert_eq!(short[0], 4);

        sa_outcome_free(outcome);
        sa_bid_list_free(list);
    }
}

#[test]
fn all_three_policies_are_reachable() {
    for (policy, expected_gain) in [
        (SaPolicy::Fifo, 21260u64),
        (SaPolicy::Greedy, 21260),
        (SaPolicy::Dp, 28338),
    ] {
        let list = near_tie_list();
        let mut outcome: *mut SaOutcome = std::ptr::null_mut();
        assert_eq!(unsafe { sa_allocate(policy, list, 4, &mut outcome) }, SaStatus::Ok);
        unsafe {
            assert_eq!(sa_outcome_total_gain_cents(outcome), expected_gain);
            sa_outcome_free(outcome);
            sa_bid_list_free(list);
        }
    }
}

#[test]
fn invalid_bids_map_to_status_codes() {
    let list = sa_bid_list_new();
    unsafe {
        assert_eq!(sa_bid_list_push(list, 0, 1, 100), SaStatus::InvalidArgument);
        assert_eq!(sa_bid_list_push(list, 1, 0, 100), SaStatus::InvalidArgument);
        assert_eq!(sa_bid_list_len(list), 0);

        assert_eq!(sa_bid_list_push(list, 1, 1, 100), SaStatus::Ok);
        assert_eq!(sa_bid_list_push(list, 1, 2, 200), SaStatus::Ok); // dup caught later

        let mut outcome: *mut SaOutcome = std::ptr::null_mut();
        assert_eq!(
            sa_allocate(SaPolicy::Dp, list, 4, &mut outcome),
            SaStatus::DuplicateSuId
        );
        assert!(outcome.is_null());
        sa_bid_list_free(list);
    }
}

#[test]
fn null_pointers_are_rejected_not_dereferenced() {
    unsafe {
        assert_eq!(sa_bid_list_push(std::ptr::null_mut(), 1, 1, 1), SaStatus::NullPointer);
        assert_eq!(sa_bid_list_len(std::ptr::null()), 0);

        let mut outcome: *mut SaOutcome = std::ptr::null_mut();
        assert_eq!(
            sa_allocate(SaPolicy::Dp, std::ptr::null(), 4, &mut outcome),
            SaStatus::NullPointer
        );

        let list = sa_bid_list_new();
        assert_eq!(
            sa_allocate(SaPolicy::Dp, list, 4, std::ptr::null_mut()),
            SaStatus::NullPointer
        );
        sa_bid_list_free(list);

        assert_eq!(sa_outcome_total_gain_cents(std::ptr::null()), 0);
        assert!(!sa_outcome_is_winner(std::ptr::null(), 1));

        // freeing null is a no-op
        sa_bid_list_free(std::ptr::null_mut());
        sa_outcome_free(std::ptr::null_mut());
    }
}

#[test]
fn response_time_law_over_the_c_abi() {
    let mut out = 0u64;
    // nb=10, X=4s, delay=1s: first arrival waits 9*4+1 = 37 s
    let status = unsafe { sa_response_time_ms(10, 1, 4000, 1000, &mut out) };
    assert_eq!(status, SaStatus::Ok);
    assert_eq!(out, 37_000);

    unsafe {
        assert_eq!(sa_response_time_ms(10, 10, 7000, 1000, &mut out), SaStatus::Ok);
        assert_eq!(out, 1000);

        assert_eq!(sa_response_time_ms(10, 0, 1000, 1000, &mut out), SaStatus::InvalidArgument);
        assert_eq!(sa_response_time_ms(10, 11, 1000, 1000, &mut out), SaStatus::InvalidArgument);
        assert_eq!(
            sa_response_time_ms(10, 1, u64::MAX, 1, &mut out),
            SaStatus::Overflow
        );
        assert_eq!(
            sa_response_time_ms(10, 1, 1000, 1000, std::ptr::null_mut()),
            SaStatus::NullPointer
        );
    }
}

#[test]
fn version_is_a_nul_terminated_static() {
    let ptr = sa_version();
    assert!(!ptr.is_null());
    let version = unsafe { std::ffi::CStr::from_ptr(ptr) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}
