//! Brute-force reference: exhaustive subset enumeration.
//!
//! Used by tests to check the dynamic program and by the golden experiment
//! data. Kept independent of the DP implementation on purpose: the only
//! shared code is bid validation and outcome assembly.

use super::{AllocError, AllocationOutcome, Bid, ChannelPool, validate_bids};

/// Enumeration refuses instances bigger than this (2^n subsets).
pub const ORACLE_MAX_BIDS: usize = 20;

/// Exact optimum by trying every subset.
///
/// Ties between equal-gain subsets resolve exactly like the DP backtrack:
/// masks are visited in ascending order and only strict improvements are
/// kept, which prefers leaving out the later-listed bids.
pub fn oracle_allocate(bids: &[Bid], pool: &ChannelPool) -> Result<AllocationOutcome, AllocError> {
    validate_bids(bids)?;
    let n = bids.len();
    if n > ORACLE_MAX_BIDS {
        return Err(AllocError::TooManyBids {
            n,
            max: ORACLE_MAX_BIDS,
        });
    }
    let capacity = u64::from(pool.free_channels());
    let mut best_gain: u128 = 0;
    let mut best_mask: u32 = 0;
    for mask in 0..(1u32 << n) {
        let (channels, gain) = subset_totals(bids, mask);
        if channels <= capacity && gain > best_gain {
            best_gain = gain;
            best_mask = mask;
        }
    }
    if best_gain > u128::from(u64::MAX) {
        return Err(AllocError::GainOverflow);
    }
    let winners: Vec<usize> = (0..n).filter(|&k| best_mask & (1 << k) != 0).collect();
    AllocationOutcome::from_winner_indices(bids, &winners)
}

/// How many feasible subsets reach the optimal gain. 1 means the optimum is
/// unique, which is when winner sets are comparable across algorithms and
/// bid orderings.
pub fn count_optima(bids: &[Bid], pool: &ChannelPool) -> Result<u64, AllocError> {
    validate_bids(bids)?;
    let n = bids.len();
    if n > ORACLE_MAX_BIDS {
        return Err(AllocError::TooManyBids {
            n,
            max: ORACLE_MAX_BIDS,
        });
    }
    let capacity = u64::from(pool.free_channels());
    let mut best_gain: u128 = 0;
    let mut count: u64 = 1; // the empty subset
    for mask in 1..(1u32 << n) {
        let (channels, gain) = subset_totals(bids, mask);
        if channels > capacity {
            continue;
        }
        if gain > best_gain {
            best_gain = gain;
            count = 1;
        } else if gain == best_gain {
            count += 1;
        }
    }
    Ok(count)
}

fn subset_totals(bids: &[Bid], mask: u32) -> (u64, u128) {
    let mut channels: u64 = 0;
    let mut gain: u128 = 0;
    for (k, bid) in bids.iter().enumerate() {
        if mask & (1 << k) != 0 {
            channels += u64::from(bid.channels());
            gain += u128::from(bid.price().cents());
        }
    }
    (channels, gain)
}
