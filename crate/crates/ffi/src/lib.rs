//! C ABI over the spectrum-auction allocation core.
//!
//! Handles ([`SaBidList`], [`SaOutcome`]) are opaque: create, query through
//! accessors, free with the matching `_free` function. Every fallible call
//! returns an [`SaStatus`]; results travel through out-pointers. Prices
//! cross the boundary as integer cents. The string returned by
//! [`sa_version`] is static and must not be freed.

use std::ffi::c_char;

use spectrum_auction::{AllocError, AllocationOutcome, Bid, ChannelPool, Money, Policy, allocate};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DuplicateSuId = 3,
    Overflow = 4,
    TooManyBids = 5,
}

/// Allocation policy selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaPolicy {
    Fifo = 0,
    Greedy = 1,
    Dp = 2,
}

impl From<SaPolicy> for Policy {
    fn from(policy: SaPolicy) -> Policy {
        match policy {
            SaPolicy::Fifo => Policy::Fifo,
            SaPolicy::Greedy => Policy::Greedy,
            SaPolicy::Dp => Policy::Dp,
        }
    }
}

/// Sealed bids of one auction round, in arrival order. Opaque.
pub struct SaBidList {
    bids: Vec<Bid>,
}

/// Result of one allocation. Opaque.
pub struct SaOutcome {
    inner: AllocationOutcome,
}

fn status_of(err: &AllocError) -> SaStatus {
    match err {
        AllocError::ZeroSuId | AllocError::ZeroChannels { .. } => SaStatus::InvalidArgument,
        AllocError::DuplicateSuId(_) | AllocError::DuplicateArrivalSeq(_) => {
            SaStatus::DuplicateSuId
        }
        AllocError::GainOverflow => SaStatus::Overflow,
        AllocError::TooManyBids { .. } => SaStatus::TooManyBids,
    }
}

/// Library version as a static NUL-terminated string. Do not free.
#[unsafe(no_mangle)]
pub extern "C" fn sa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates an empty bid list. Free with [`sa_bid_list_free`].
#[unsafe(no_mangle)]
pub extern "C" fn sa_bid_list_new() -> *mut SaBidList {
    Box::into_raw(Box::new(SaBidList { bids: Vec::new() }))
}

/// Appends one sealed bid. Arrival order is append order. `su_id` and
/// `channels` must be positive; duplicates are caught at allocation time.
///
/// # Safety
/// `list` must be null or a live pointer from [`sa_bid_list_new`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_bid_list_push(
    list: *mut SaBidList,
    su_id: u32,
    channels: u32,
    price_cents: u64,
) -> SaStatus {
    let Some(list) = (unsafe { list.as_mut() }) else {
        return SaStatus::NullPointer;
    };
    let arrival_seq = list.bids.len() as u32;
    match Bid::new(su_id, channels, Money::from_cents(price_cents), arrival_seq) {
        Ok(bid) => {
            list.bids.push(bid);
            SaStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Number of bids pushed so far; 0 for null.
///
/// # Safety
/// `list` must be null or a live pointer from [`sa_bid_list_new`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_bid_list_len(list: *const SaBidList) -> u32 {
    unsafe { list.as_ref() }.map_or(0, |l| l.bids.len() as u32)
}

/// # Safety
/// `list` must be null or a pointer from [`sa_bid_list_new`] not yet freed.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_bid_list_free(list: *mut SaBidList) {
    if !list.is_null() {
        drop(unsafe { Box::from_raw(list) });
    }
}

/// Runs one policy over the bid list with `free_channels` capacity. On
/// `SA_STATUS_OK`, `*out` owns the outcome; free it with
/// [`sa_outcome_free`].
///
/// # Safety
/// `list` must be a live pointer from [`sa_bid_list_new`]; `out` must point
/// to writable storage for one pointer.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_allocate(
    policy: SaPolicy,
    list: *const SaBidList,
    free_channels: u32,
    out: *mut *mut SaOutcome,
) -> SaStatus {
    let (Some(list), Some(out)) = (unsafe { list.as_ref() }, unsafe { out.as_mut() }) else {
        return SaStatus::NullPointer;
    };
    match allocate(policy.into(), &list.bids, &ChannelPool::new(free_channels)) {
        Ok(outcome) => {
            *out = Box::into_raw(Box::new(SaOutcome { inner: outcome }));
            SaStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Total gain in cents (winners pay their own bid).
///
/// # Safety
/// `outcome` must be null or a live pointer from [`sa_allocate`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_outcome_total_gain_cents(outcome: *const SaOutcome) -> u64 {
    unsafe { outcome.as_ref() }.map_or(0, |o| o.inner.total_gain().cents())
}

/// # Safety
/// `outcome` must be null or a live pointer from [`sa_allocate`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_outcome_channels_used(outcome: *const SaOutcome) -> u32 {
    unsafe { outcome.as_ref() }.map_or(0, |o| o.inner.channels_used())
}

/// # Safety
/// `outcome` must be null or a live pointer from [`sa_allocate`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_outcome_winner_count(outcome: *const SaOutcome) -> u32 {
    unsafe { outcome.as_ref() }.map_or(0, |o| o.inner.winners().len() as u32)
}

/// Copies up to `capacity` winning su_ids into `buffer`, ascending.
/// Returns how many were written.
///
/// # Safety
/// `outcome` must be null or a live pointer from [`sa_allocate`];
/// `buffer` must point to at least `capacity` writable `u32`s.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_outcome_winners(
    outcome: *const SaOutcome,
    buffer: *mut u32,
    capacity: u32,
) -> u32 {
    let Some(outcome) = (unsafe { outcome.as_ref() }) else {
        return 0;
    };
    if buffer.is_null() {
        return 0;
    }
    let mut written = 0u32;
    for &su_id in outcome.inner.winners().iter().take(capacity as usize) {
        unsafe { buffer.add(written as usize).write(su_id) };
        written += 1;
    }
    written
}

/// True when `su_id` won channels in this outcome.
///
/// # Safety
/// `outcome` must be null or a live pointer from [`sa_allocate`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_outcome_is_winner(outcome: *const SaOutcome, su_id: u32) -> bool {
    unsafe { outcome.as_ref() }.is_some_and(|o| o.inner.winners().contains(&su_id))
}

/// # Safety
/// `outcome` must be null or a pointer from [`sa_allocate`] not yet freed.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_outcome_free(outcome: *mut SaOutcome) {
    if !outcome.is_null() {
        drop(unsafe { Box::from_raw(outcome) });
    }
}

/// Simulated waiting time of `su_index` (1-based) out of `nb` arrivals
/// spaced `arrival_interval_ms` apart, with the decision taken
/// `pu_launch_delay_ms` after the last arrival:
/// `(nb - su_index) * interval + delay`, in milliseconds.
///
/// # Safety
/// `out_ms` must point to writable storage for one `u64`.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_response_time_ms(
    nb: u32,
    su_index: u32,
    arrival_interval_ms: u64,
    pu_launch_delay_ms: u64,
    out_ms: *mut u64,
) -> SaStatus {
    let Some(out_ms) = (unsafe { out_ms.as_mut() }) else {
        return SaStatus::NullPointer;
    };
    if su_index == 0 || su_index > nb {
        return SaStatus::InvalidArgument;
    }
    let ahead = u64::from(nb - su_index);
    match arrival_interval_ms
        .checked_mul(ahead)
        .and_then(|wait| wait.checked_add(pu_launch_delay_ms))
    {
        Some(total) => {
            *out_ms = total;
            SaStatus::Ok
        }
        None => SaStatus::Overflow,
    }
}
