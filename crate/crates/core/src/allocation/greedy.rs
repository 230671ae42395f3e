//! Sealed-bid baseline: scan bids in descending unit price.

use std::cmp::Ordering;

use super::{AllocError, AllocationOutcome, Bid, ChannelPool, scan_accept, validate_bids};

/// Compares two bids by unit price (price / channels), exactly.
///
/// `Greater` means `a` is scanned before `b`. The ratios are compared by
/// cross-multiplication in 128-bit integers, so near-ties like
/// 354.35/5 vs 212.60/3 resolve correctly where floating point could not.
/// Equal ratios fall back to arrival order: the earlier bid ranks higher.
pub fn compare_unit_price(a: &Bid, b: &Bid) -> Ordering {
    let lhs = u128::from(a.price().cents()) * u128::from(b.channels());
    let rhs = u128::from(b.price().cents()) * u128::from(a.channels());
    lhs.cmp(&rhs)
        .then_with(|| b.arrival_seq().cmp(&a.arrival_seq()))
}

/// Sealed-bid allocation: sort by unit price descending, then accept every
/// bid that still fits. Misfits are skipped, not blocking (same semantics
/// as the FIFO scan, different order).
pub fn greedy_allocate(bids: &[Bid], pool: &ChannelPool) -> Result<AllocationOutcome, AllocError> {
    validate_bids(bids)?;
    let mut order: Vec<usize> = (0..bids.len()).collect();
    order.sort_by(|&x, &y| compare_unit_price(&bids[y], &bids[x]));
    let winners = scan_accept(bids, &order, pool);
    AllocationOutcome::from_winner_indices(bids, &winners)
}
