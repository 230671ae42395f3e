//! Non-blocking first-come-first-served allocation.

use super::{AllocError, AllocationOutcome, Bid, ChannelPool, scan_accept, validate_bids};

/// Processes bids in arrival order; a request that does not fit is skipped
/// without blocking the requests behind it.
pub fn fifo_allocate(bids: &[Bid], pool: &ChannelPool) -> Result<AllocationOutcome, AllocError> {
    validate_bids(bids)?;
    let mut order: Vec<usize> = (0..bids.len()).collect();
    order.sort_by_key(|&idx| bids[idx].arrival_seq());
    let winners = scan_accept(bids, &order, pool);
    AllocationOutcome::from_winner_indices(bids, &winners)
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;
    use crate::money::Money;

    #[test]
    fn spread_instance_m5_serves_the_first_two() {
        let bids = five_bid_spread();
        let outcome = fifo_allocate(&bids, &ChannelPool::new(5)).unwrap();
        assert_eq!(outcome.winners().iter().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(outcome.total_gain(), Money::from_cents(49500));
    }

    #[test]
    fn misfits_do_not_block_later_bids() {
        // su1 and su2 are too big for m=4; su3 behind them still gets served
        let bids = five_bid_near_tie();
        let outcome = fifo_allocate(&bids, &ChannelPool::new(4)).unwrap();
        assert_eq!(outcome.winners().iter().copied().collect::<Vec<_>>(), vec![3]);
        assert_eq!(outcome.total_gain(), Money::from_cents(21260));
    }

    #[test]
    fn zero_capacity_rejects_everyone() {
        let bids = five_bid_spread();
        let outcome = fifo_allocate(&bids, &ChannelPool::new(0)).unwrap();
        assert!(outcome.winners().is_empty());
        assert_eq!(outcome.total_gain(), Money::ZERO);
    }

    #[test]
    fn order_follows_arrival_seq_not_list_position() {
        let reversed = vec![
            Bid::new(2, 3, Money::from_cents(100), 1).unwrap(),
            Bid::new(1, 3, Money::from_cents(200), 0).unwrap(),
        ];
        let outcome = fifo_allocate(&reversed, &ChannelPool::new(3)).unwrap();
        assert_eq!(outcome.winners().iter().copied().collect::<Vec<_>>(), vec![1]);
    }
}
