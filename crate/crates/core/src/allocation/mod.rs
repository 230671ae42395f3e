//! Winner determination for sealed-bid channel auctions.
//!
//! Every policy consumes the same validated bid list and produces an
//! [`AllocationOutcome`] honoring the capacity constraint: channels granted
//! to winners never exceed the pool, and the total gain is exactly the sum
//! of the winning bids — winners pay what they offered (first price).
//!
//! All functions here are pure: no shared state, safe to call from any
//! number of threads.

mod dp;
mod fifo;
mod greedy;
mod oracle;

pub use dp::{DpTable, dp_allocate, dp_value};
pub use fifo::fifo_allocate;
pub use greedy::{compare_unit_price, greedy_allocate};
pub use oracle::{ORACLE_MAX_BIDS, count_optima, oracle_allocate};

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::money::{Money, MoneyError};

/// Identifier of a secondary user; always positive.
pub type SuId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AllocError {
    #[error("su_id must be positive")]
    ZeroSuId,
    #[error("su {su_id} requested zero channels")]
    ZeroChannels { su_id: SuId },
    #[error("duplicate su_id {0} in bid list")]
    DuplicateSuId(SuId),
    #[error("duplicate arrival_seq {0} in bid list")]
    DuplicateArrivalSeq(u32),
    #[error("total gain overflows money arithmetic")]
    GainOverflow,
    #[error("exhaustive search refused: {n} bids exceed the {max}-bid limit")]
    TooManyBids { n: usize, max: usize },
}

impl From<MoneyError> for AllocError {
    fn from(_: MoneyError) -> Self {
        AllocError::GainOverflow
    }
}

/// One secondary user's sealed offer: a channel count and the total price
/// offered for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bid {
    su_id: SuId,
    channels: u32,
    price: Money,
    arrival_seq: u32,
}

impl Bid {
    /// Zero-channel requests and the reserved id 0 are rejected up front.
    pub fn new(su_id: SuId, channels: u32, price: Money, arrival_seq: u32) -> Result<Self, AllocError> {
        if su_id == 0 {
            return Err(AllocError::ZeroSuId);
        }
        if channels == 0 {
            return Err(AllocError::ZeroChannels { su_id });
        }
        Ok(Bid {
            su_id,
            channels,
            price,
            arrival_seq,
        })
    }

    pub fn su_id(&self) -> SuId {
        self.su_id
    }

    pub fn channels(&self) -> u32 {
        self.channels
    }

    pub fn price(&self) -> Money {
        self.price
    }

    /// Position in the arrival order, 0-based; defines FIFO order.
    pub fn arrival_seq(&self) -> u32 {
        self.arrival_seq
    }
}

/// The free channels on the primary-user side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelPool {
    free_channels: u32,
}

impl ChannelPool {
    pub const fn new(free_channels: u32) -> Self {
        ChannelPool { free_channels }
    }

    pub const fn free_channels(&self) -> u32 {
        self.free_channels
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accepted => "accepted",
            Verdict::Rejected => "rejected",
        })
    }
}

/// The three allocation policies under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    /// First come, first served; misfits are skipped, never block.
    Fifo,
    /// Sealed bid scanned in descending exact unit price.
    Greedy,
    /// Sealed bid with optimal knapsack winner determination.
    Dp,
}

impl Policy {
    pub const ALL: [Policy; 3] = [Policy::Fifo, Policy::Greedy, Policy::Dp];
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::Fifo => "fifo",
            Policy::Greedy => "greedy",
            Policy::Dp => "dp",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown policy {0:?}; expected dp, greedy or fifo")]
pub struct ParsePolicyError(String);

impl FromStr for Policy {
    type Err = ParsePolicyError;

    fn from_str(s: &str) -> Result<Self, ParsePolicyError> {
        match s {
            "fifo" => Ok(Policy::Fifo),
            "greedy" => Ok(Policy::Greedy),
            "dp" => Ok(Policy::Dp),
            other => Err(ParsePolicyError(other.to_string())),
        }
    }
}

/// The decision of one auction round: who won, what the PU gained, and how
/// many channels went out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationOutcome {
    winners: BTreeSet<SuId>,
    verdicts: BTreeMap<SuId, Verdict>,
    total_gain: Money,
    channels_used: u32,
}

impl AllocationOutcome {
    pub fn empty() -> Self {
        AllocationOutcome {
            winners: BTreeSet::new(),
            verdicts: BTreeMap::new(),
            total_gain: Money::ZERO,
            channels_used: 0,
        }
    }

    /// Every bidder rejected; used when a round ends in a validation error.
    pub(crate) fn rejecting_all(bids: &[Bid]) -> Self {
        AllocationOutcome {
            winners: BTreeSet::new(),
            verdicts: bids.iter().map(|b| (b.su_id(), Verdict::Rejected)).collect(),
            total_gain: Money::ZERO,
            channels_used: 0,
        }
    }

    pub(crate) fn from_winner_indices(
        bids: &[Bid],
        winner_indices: &[usize],
    ) -> Result<Self, AllocError> {
        let mut outcome = AllocationOutcome::rejecting_all(bids);
        let mut channels_used: u64 = 0;
        for &idx in winner_indices {
            let bid = &bids[idx];
            outcome.winners.insert(bid.su_id());
            outcome.verdicts.insert(bid.su_id(), Verdict::Accepted);
            outcome.total_gain = outcome.total_gain.checked_add(bid.price())?;
            channels_used += u64::from(bid.channels());
        }
        outcome.channels_used =
            u32::try_from(channels_used).expect("winner sets fit the channel pool");
        Ok(outcome)
    }

    pub fn winners(&self) -> &BTreeSet<SuId> {
        &self.winners
    }

    pub fn verdicts(&self) -> &BTreeMap<SuId, Verdict> {
        &self.verdicts
    }

    pub fn verdict(&self, su_id: SuId) -> Option<Verdict> {
        self.verdicts.get(&su_id).copied()
    }

    pub fn total_gain(&self) -> Money {
        self.total_gain
    }

    pub fn channels_used(&self) -> u32 {
        self.channels_used
    }

    pub fn satisfied_count(&self) -> usize {
        self.winners.len()
    }
}

/// Rejects duplicate ids and duplicate arrival sequence numbers.
pub fn validate_bids(bids: &[Bid]) -> Result<(), AllocError> {
    let mut ids = HashSet::with_capacity(bids.len());
    let mut seqs = HashSet::with_capacity(bids.len());
    for bid in bids {
        if !ids.insert(bid.su_id()) {
            return Err(AllocError::DuplicateSuId(bid.su_id()));
        }
        if !seqs.insert(bid.arrival_seq()) {
            return Err(AllocError::DuplicateArrivalSeq(bid.arrival_seq()));
        }
    }
    Ok(())
}

/// Runs the chosen policy over one sealed round of bids.
pub fn allocate(
    policy: Policy,
    bids: &[Bid],
    pool: &ChannelPool,
) -> Result<AllocationOutcome, AllocError> {
    match policy {
        Policy::Fifo => fifo_allocate(bids, pool),
        Policy::Greedy => greedy_allocate(bids, pool),
        Policy::Dp => dp_allocate(bids, pool),
    }
}

/// Scans bids in `order`, accepting whatever still fits. A misfit is
/// skipped and later bids keep their chance (non-blocking scan).
pub(crate) fn scan_accept(bids: &[Bid], order: &[usize], pool: &ChannelPool) -> Vec<usize> {
    let mut remaining = u64::from(pool.free_channels());
    let mut winners = Vec::new();
    for &idx in order {
        let needed = u64::from(bids[idx].channels());
        if needed <= remaining {
            remaining -= needed;
            winners.push(idx);
        }
    }
    winners
}
