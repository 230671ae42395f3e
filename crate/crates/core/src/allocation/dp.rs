//! Optimal winner determination as a 0/1 knapsack over channel capacity.

use super::{AllocError, AllocationOutcome, Bid, ChannelPool, validate_bids};
use crate::money::Money;

/// The (n+1) x (m+1) value table of the knapsack recurrence.
///
/// Row 0 is all zeros. `value_at(i, j)` is the best total price achievable
/// with the first `i` bids and `j` free channels:
/// the cell keeps `value_at(i-1, j)` when bid `i` does not fit, otherwise
/// the max of skipping and taking the bid. Rows are non-decreasing in `j`.
#[derive(Debug, Clone)]
pub struct DpTable {
    bid_count: usize,
    capacity: usize,
    cells: Vec<Money>,
}

impl DpTable {
    pub fn build(bids: &[Bid], pool: &ChannelPool) -> Result<Self, AllocError> {
        validate_bids(bids)?;
        let n = bids.len();
        let m = pool.free_channels() as usize;
        let width = m + 1;
        let mut cells = vec![Money::ZERO; (n + 1) * width];
        for i in 1..=n {
            let needed = bids[i - 1].channels() as usize;
            let price = bids[i - 1].price();
            for j in 0..=m {
                let skip = cells[(i - 1) * width + j];
                cells[i * width + j] = if j < needed {
                    skip
                } else {
                    let take = price.checked_add(cells[(i - 1) * width + j - needed])?;
                    skip.max(take)
                };
            }
        }
        Ok(DpTable {
            bid_count: n,
            capacity: m,
            cells,
        })
    }

    pub fn bid_count(&self) -> usize {
        self.bid_count
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn value_at(&self, bids_used: usize, channels: usize) -> Money {
        self.cells[bids_used * (self.capacity + 1) + channels]
    }

    /// The best achievable gain: the bottom-right cell.
    pub fn optimum(&self) -> Money {
        self.value_at(self.bid_count, self.capacity)
    }

    /// Walks back from the bottom-right cell. On equal value the bid is left
    /// out, so among equal-gain optima the one keeping channels free wins;
    /// this is also what makes the choice deterministic.
    fn winner_indices(&self, bids: &[Bid]) -> Vec<usize> {
        let mut chosen = Vec::new();
        let mut j = self.capacity;
        for i in (1..=self.bid_count).rev() {
            if self.value_at(i, j) == self.value_at(i - 1, j) {
                continue;
            }
            chosen.push(i - 1);
            j -= bids[i - 1].channels() as usize;
        }
        chosen.reverse();
        chosen
    }
}

/// Maximum total price over bid subsets whose channel demand fits the pool.
pub fn dp_value(bids: &[Bid], pool: &ChannelPool) -> Result<Money, AllocError> {
    Ok(DpTable::build(bids, pool)?.optimum())
}

/// Optimal allocation: the winner set recovered from the value table.
pub fn dp_allocate(bids: &[Bid], pool: &ChannelPool) -> Result<AllocationOutcome, AllocError> {
    let table = DpTable::build(bids, pool)?;
    let winners = table.winner_indices(bids);
    AllocationOutcome::from_winner_indices(bids, &winners)
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;

    #[test]
    fn near_tie_instance_m4() {
        let bids = five_bid_near_tie();
        let value = dp_value(&bids, &ChannelPool::new(4)).unwrap();
        assert_eq!(value, Money::from_cents(28338));

        let outcome = dp_allocate(&bids, &ChannelPool::new(4)).unwrap();
        assert_eq!(outcome.winners().iter().copied().collect::<Vec<_>>(), vec![4, 5]);
        assert_eq!(outcome.total_gain(), Money::from_cents(28338));
        assert_eq!(outcome.channels_used(), 4);
    }

    #[test]
    fn spread_instance_m5() {
        let bids = five_bid_spread();
        assert_eq!(
            dp_value(&bids, &ChannelPool::new(5)).unwrap(),
            Money::from_cents(69800)
        );
        let outcome = dp_allocate(&bids, &ChannelPool::new(5)).unwrap();
        assert_eq!(outcome.winners().iter().copied().collect::<Vec<_>>(), vec![2, 4]);
    }

    #[test]
    fn zero_capacity_admits_nobody() {
        let bids = five_bid_near_tie();
        assert_eq!(dp_value(&bids, &ChannelPool::new(0)).unwrap(), Money::ZERO);
        let outcome = dp_allocate(&bids, &ChannelPool::new(0)).unwrap();
        assert!(outcome.winners().is_empty());
        assert_eq!(outcome.total_gain(), Money::ZERO);
    }

    #[test]
    fn lone_feasible_bid_wins() {
        let bids = vec![bid(1, 2, 10000)];
        assert_eq!(
            dp_value(&bids, &ChannelPool::new(2)).unwrap(),
            Money::from_cents(10000)
        );
    }

    #[test]
    fn loose_capacity_accepts_everyone() {
        let bids = five_bid_near_tie();
        let outcome = dp_allocate(&bids, &ChannelPool::new(18)).unwrap();
        assert_eq!(outcome.winners().len(), 5);
        assert_eq!(outcome.total_gain(), Money::from_cents(115033));
        assert_eq!(outcome.channels_used(), 18);
    }

    #[test]
    fn empty_bid_list_yields_empty_outcome() {
        let outcome = dp_allocate(&[], &ChannelPool::new(7)).unwrap();
        assert!(outcome.winners().is_empty());
        assert_eq!(outcome.total_gain(), Money::ZERO);
        assert_eq!(outcome.channels_used(), 0);
    }

    #[test]
    fn duplicate_su_id_is_a_validation_error() {
        let bids = vec![bid(1, 1, 100), Bid::new(1, 1, Money::from_cents(200), 1).unwrap()];
        assert_eq!(
            dp_value(&bids, &ChannelPool::new(2)),
            Err(AllocError::DuplicateSuId(1))
        );
    }

    #[test]
    fn gain_overflow_is_an_explicit_error() {
        let bids = vec![bid(1, 1, u64::MAX), bid(2, 1, u64::MAX)];
        assert_eq!(
            dp_value(&bids, &ChannelPool::new(2)),
            Err(AllocError::GainOverflow)
        );
    }

    #[test]
    fn table_satisfies_the_recurrence() {
        let bids = five_bid_near_tie();
        let pool = ChannelPool::new(10);
        let table = DpTable::build(&bids, &pool).unwrap();
        for j in 0..=table.capacity() {
            assert_eq!(table.value_at(0, j), Money::ZERO);
        }
        for i in 1..=table.bid_count() {
            let needed = bids[i - 1].channels() as usize;
            let price = bids[i - 1].price();
            for j in 0..=table.capacity() {
                let expected = if j < needed {
                    table.value_at(i - 1, j)
                } else {
                    table
                        .value_at(i - 1, j)
                        .max(price.checked_add(table.value_at(i - 1, j - needed)).unwrap())
                };
                assert_eq!(table.value_at(i, j), expected);
                if j > 0 {
                    assert!(table.value_at(i, j - 1) <= table.value_at(i, j));
                }
            }
        }
    }
}
