//! Sealed-bid spectrum allocation for cognitive-radio networks.
//!
//! A primary user (PU) with `m` idle channels collects sealed bids from
//! secondary users (SUs), each asking for some channels at an offered
//! price, and picks winners under one of three policies:
//!
//! * [`Policy::Fifo`] — non-blocking first come, first served: a request
//!   that does not fit is skipped, later requests may still be served.
//! * [`Policy::Greedy`] — sealed bid scanned in descending unit price
//!   (price / channels, compared exactly in integers).
//! * [`Policy::Dp`] — optimal winner determination via 0/1 knapsack
//!   dynamic programming.
//!
//! Winners pay exactly what they offered (first-price sealed bid), so the
//! PU gain is the sum of the winning bids. Prices are integer cents
//! throughout; nothing here touches floating point.
//!
//! Around the allocation core: a single-round PU/SU message protocol
//! ([`protocol`]), a deterministic discrete-event simulator for arrival
//! timing ([`sim`]), experiment sweeps with CSV export ([`experiments`]),
//! and the command-line front end ([`cli`]).

pub mod allocation;
pub mod cli;
pub mod clock;
pub mod experiments;
pub mod money;
pub mod protocol;
pub mod sim;

pub use allocation::{
    AllocError, AllocationOutcome, Bid, ChannelPool, DpTable, ORACLE_MAX_BIDS, Policy, SuId,
    Verdict, allocate, compare_unit_price, count_optima, dp_allocate, dp_value, fifo_allocate,
    greedy_allocate, oracle_allocate, validate_bids,
};
pub use clock::SimTime;
pub use money::{Money, MoneyError};
