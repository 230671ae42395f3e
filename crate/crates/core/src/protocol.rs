//! Single-round sealed-bid exchange between one PU and its SUs.
//!
//! SUs send their sealed offers directly to the PU; there is no auctioneer
//! in between. The PU collects bids while `Collecting`, then closes the
//! round, runs the configured policy exactly once and answers every bidder
//! with an award or a rejection. No verdict leaves the PU before the round
//! closes, so no bidder learns anything about the other offers.
//!
//! State machines are single-owner values; agents interact only through
//! [`ProtocolMessage`] values, never shared state.

use std::fmt;

use thiserror::Error;

use crate::allocation::{
    AllocError, AllocationOutcome, Bid, ChannelPool, Policy, SuId, Verdict, allocate,
};
use crate::clock::SimTime;
use crate::money::Money;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AgentId {
    Pu,
    Su(SuId),
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgentId::Pu => f.write_str("pu"),
            AgentId::Su(id) => write!(f, "su{id}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageBody {
    /// SU -> PU: the sealed offer.
    BidSubmission { channels: u32, price: Money },
    /// PU -> SU: granted; the price due is the bidder's own offer.
    Award { channels_granted: u32, price_due: Money },
    /// PU -> SU: not granted.
    Rejection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProtocolMessage {
    pub from: AgentId,
    pub to: AgentId,
    pub sent_at: SimTime,
    pub body: MessageBody,
}

impl ProtocolMessage {
    pub fn kind(&self) -> &'static str {
        match self.body {
            MessageBody::BidSubmission { .. } => "bid_submission",
            MessageBody::Award { .. } => "award",
            MessageBody::Rejection => "rejection",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PuPhase {
    Collecting,
    Deciding,
    Done,
}

impl fmt::Display for PuPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PuPhase::Collecting => "collecting",
            PuPhase::Deciding => "deciding",
            PuPhase::Done => "done",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProtocolError {
    #[error("bid received while the round is {phase}; message dropped")]
    WrongPhase { phase: PuPhase },
    #[error("su {0} already submitted a bid this round")]
    DuplicateBidder(SuId),
    #[error("the pu only accepts bid submissions from SUs")]
    NotABid,
    #[error(transparent)]
    InvalidBid(#[from] AllocError),
    #[error("verdict arrived for an su that is not waiting for one")]
    UnexpectedVerdict,
}

/// PU side of one auction round.
///
/// Errors from [`PuState::receive`] leave the state untouched; recording
/// dropped messages is the caller's business (the simulator keeps them in
/// its event log).
#[derive(Debug, Clone, PartialEq)]
pub struct PuState {
    phase: PuPhase,
    received: Vec<Bid>,
    pool: ChannelPool,
    policy: Policy,
}

impl PuState {
    pub fn new(pool: ChannelPool, policy: Policy) -> Self {
        PuState {
            phase: PuPhase::Collecting,
            received: Vec::new(),
            pool,
            policy,
        }
    }

    pub fn phase(&self) -> PuPhase {
        self.phase
    }

    /// Bids accepted so far, in arrival order.
    pub fn received(&self) -> &[Bid] {
        &self.received
    }

    pub fn pool(&self) -> ChannelPool {
        self.pool
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    /// Handles one incoming message while collecting. The bid is stamped
    /// with the next arrival sequence number.
    pub fn receive(&mut self, msg: &ProtocolMessage) -> Result<(), ProtocolError> {
        if self.phase != PuPhase::Collecting {
            return Err(ProtocolError::WrongPhase { phase: self.phase });
        }
        let MessageBody::BidSubmission { channels, price } = msg.body else {
            return Err(ProtocolError::NotABid);
        };
        let AgentId::Su(su_id) = msg.from else {
            return Err(ProtocolError::NotABid);
        };
        if self.received.iter().any(|b| b.su_id() == su_id) {
            return Err(ProtocolError::DuplicateBidder(su_id));
        }
        let arrival_seq = self.received.len() as u32;
        let bid = Bid::new(su_id, channels, price, arrival_seq)?;
        self.received.push(bid);
        Ok(())
    }

    /// Closes the round and answers every bidder, one message each.
    ///
    /// The policy runs exactly once. If it rejects the collected bids as
    /// invalid the round still ends, with a rejection for everyone and the
    /// error reported in the decision.
    pub fn close_and_decide(&mut self, now: SimTime) -> Result<RoundDecision, ProtocolError> {
        if self.phase != PuPhase::Collecting {
            return Err(ProtocolError::WrongPhase { phase: self.phase });
        }
        self.phase = PuPhase::Deciding;
        let (outcome, alloc_error) = match allocate(self.policy, &self.received, &self.pool) {
            Ok(outcome) => (outcome, None),
            Err(err) => (AllocationOutcome::rejecting_all(&self.received), Some(err)),
        };
        let messages = self
            .received
            .iter()
            .map(|bid| {
                let body = if outcome.winners().contains(&bid.su_id()) {
                    MessageBody::Award {
                        channels_granted: bid.channels(),
                        price_due: bid.price(),
                    }
                } else {
                    MessageBody::Rejection
                };
                ProtocolMessage {
                    from: AgentId::Pu,
                    to: AgentId::Su(bid.su_id()),
                    sent_at: now,
                    body,
                }
            })
            .collect();
        self.phase = PuPhase::Done;
        Ok(RoundDecision {
            outcome,
            messages,
            alloc_error,
        })
    }
}

/// What closing a round produces: the outcome plus one verdict message per
/// bidder, in arrival order.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundDecision {
    pub outcome: AllocationOutcome,
    pub messages: Vec<ProtocolMessage>,
    pub alloc_error: Option<AllocError>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuPhase {
    Waiting,
    Submitted,
    Answered,
}

/// SU side: one demand, one submission, one answer.
#[derive(Debug, Clone, PartialEq)]
pub struct SuState {
    su_id: SuId,
    channels: u32,
    price: Money,
    phase: SuPhase,
    submitted_at: Option<SimTime>,
    response_time: Option<SimTime>,
    verdict: Option<Verdict>,
}

impl SuState {
    pub fn new(su_id: SuId, channels: u32, price: Money) -> Self {
        SuState {
            su_id,
            channels,
            price,
            phase: SuPhase::Waiting,
            submitted_at: None,
            response_time: None,
            verdict: None,
        }
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

    pub fn phase(&self) -> SuPhase {
        self.phase
    }

    /// Simulated seconds between submission and the PU's answer.
    pub fn response_time(&self) -> Option<SimTime> {
        self.response_time
    }

    pub fn verdict(&self) -> Option<Verdict> {
        self.verdict
    }

    /// Produces the sealed offer for the PU and remembers when it went out.
    pub fn submit(&mut self, at: SimTime) -> ProtocolMessage {
        self.phase = SuPhase::Submitted;
        self.submitted_at = Some(at);
        ProtocolMessage {
            from: AgentId::Su(self.su_id),
            to: AgentId::Pu,
            sent_at: at,
            body: MessageBody::BidSubmission {
                channels: self.channels,
                price: self.price,
            },
        }
    }

    pub fn receive_verdict(
        &mut self,
        msg: &ProtocolMessage,
        now: SimTime,
    ) -> Result<(), ProtocolError> {
        if self.phase != SuPhase::Submitted || msg.to != AgentId::Su(self.su_id) {
            return Err(ProtocolError::UnexpectedVerdict);
        }
        self.verdict = Some(match msg.body {
            MessageBody::Award { .. } => Verdict::Accepted,
            MessageBody::Rejection => Verdict::Rejected,
            MessageBody::BidSubmission { .. } => return Err(ProtocolError::UnexpectedVerdict),
        });
        let submitted_at = self.submitted_at.expect("submitted phase has a timestamp");
        self.response_time = Some(now - submitted_at);
        self.phase = SuPhase::Answered;
        Ok(())
    }
}

/// Audit export: one CSV row per message, in transmission order.
pub fn transcript_csv(messages: &[ProtocolMessage]) -> String {
    let mut out = String::from("timestamp_s,kind,from,to,detail\n");
    for msg in messages {
        let detail = match msg.body {
            MessageBody::BidSubmission { channels, price } => {
                format!("channels={channels} price={price}")
            }
            MessageBody::Award {
                channels_granted,
                price_due,
            } => format!("channels={channels_granted} price_due={price_due}"),
            MessageBody::Rejection => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            msg.sent_at,
            msg.kind(),
            msg.from,
            msg.to,
            detail
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::testutil::{five_bid_near_tie, five_bid_spread};

    fn submission(su_id: SuId, channels: u32, cents: u64, at: SimTime) -> ProtocolMessage {
        ProtocolMessage {
            from: AgentId::Su(su_id),
            to: AgentId::Pu,
            sent_at: at,
            body: MessageBody::BidSubmission {
                channels,
                price: Money::from_cents(cents),
            },
        }
    }

    fn collect(pu: &mut PuState, bids: &[Bid]) {
        for bid in bids {
            let msg = submission(
                bid.su_id(),
                bid.channels(),
                bid.price().cents(),
                SimTime::ZERO,
            );
            pu.receive(&msg).unwrap();
        }
    }

    #[test]
    fn first_bid_gets_arrival_seq_zero() {
        let mut pu = PuState::new(ChannelPool::new(4), Policy::Dp);
        pu.receive(&submission(7, 3, 1000, SimTime::ZERO)).unwrap();
        assert_eq!(pu.received().len(), 1);
        assert_eq!(pu.received()[0].arrival_seq(), 0);
        assert_eq!(pu.received()[0].su_id(), 7);
    }

    #[test]
    fn duplicate_bidder_is_rejected_and_state_unchanged() {
        let mut pu = PuState::new(ChannelPool::new(4), Policy::Dp);
        pu.receive(&submission(7, 3, 1000, SimTime::ZERO)).unwrap();
        let before = pu.clone();
        let err = pu.receive(&submission(7, 1, 2000, SimTime::ZERO));
        assert_eq!(err, Err(ProtocolError::DuplicateBidder(7)));
        assert_eq!(pu, before);
    }

    #[test]
    fn bids_after_close_are_dropped() {
        let mut pu = PuState::new(ChannelPool::new(4), Policy::Fifo);
        pu.close_and_decide(SimTime::from_secs(1)).unwrap();
        assert_eq!(pu.phase(), PuPhase::Done);
        let before = pu.clone();
        let err = pu.receive(&submission(1, 1, 100, SimTime::from_secs(2)));
        assert_eq!(err, Err(ProtocolError::WrongPhase { phase: PuPhase::Done }));
        assert_eq!(pu, before);
    }

    #[test]
    fn dp_round_awards_the_optimal_pair() {
        let mut pu = PuState::new(ChannelPool::new(4), Policy::Dp);
        collect(&mut pu, &five_bid_near_tie());
        let decision = pu.close_and_decide(SimTime::from_secs(5)).unwrap();
        assert_eq!(pu.phase(), PuPhase::Done);
        assert_eq!(decision.alloc_error, None);

        let awarded: Vec<SuId> = decision
            .messages
            .iter()
            .filter(|m| matches!(m.body, MessageBody::Award { .. }))
            .map(|m| match m.to {
                AgentId::Su(id) => id,
                AgentId::Pu => unreachable!(),
            })
            .collect();
        assert_eq!(awarded, vec![4, 5]);
        assert_eq!(decision.messages.len(), 5);
        assert!(decision.messages.iter().all(|m| m.sent_at == SimTime::from_secs(5)));
    }

    #[test]
    fn award_carries_the_first_price_payment() {
        let mut pu = PuState::new(ChannelPool::new(4), Policy::Dp);
        collect(&mut pu, &five_bid_near_tie());
        let decision = pu.close_and_decide(SimTime::ZERO).unwrap();
        let to_su4 = decision
            .messages
            .iter()
            .find(|m| m.to == AgentId::Su(4))
            .unwrap();
        assert_eq!(
            to_su4.body,
            MessageBody::Award {
                channels_granted: 2,
                price_due: Money::from_cents(14170),
            }
        );
    }

    #[test]
    fn empty_round_sends_no_messages() {
        let mut pu = PuState::new(ChannelPool::new(9), Policy::Greedy);
        let decision = pu.close_and_decide(SimTime::ZERO).unwrap();
        assert!(decision.messages.is_empty());
        assert_eq!(pu.phase(), PuPhase::Done);
        assert_eq!(decision.outcome.total_gain(), Money::ZERO);
    }

    #[test]
    fn fifo_round_awards_in_arrival_order() {
        let mut pu = PuState::new(ChannelPool::new(5), Policy::Fifo);
        collect(&mut pu, &five_bid_spread());
        let decision = pu.close_and_decide(SimTime::ZERO).unwrap();
        let awarded: Vec<SuId> = decision
            .outcome
            .winners()
            .iter()
            .copied()
            .collect();
        assert_eq!(awarded, vec![1, 2]);
    }

    #[test]
    fn every_bidder_hears_back_exactly_once() {
        let mut pu = PuState::new(ChannelPool::new(3), Policy::Greedy);
        collect(&mut pu, &five_bid_spread());
        let decision = pu.close_and_decide(SimTime::ZERO).unwrap();
        let mut answered: Vec<SuId> = decision
            .messages
            .iter()
            .map(|m| match m.to {
                AgentId::Su(id) => id,
                AgentId::Pu => unreachable!(),
            })
            .collect();
        answered.sort_unstable();
        assert_eq!(answered, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn closing_twice_is_an_error() {
        let mut pu = PuState::new(ChannelPool::new(3), Policy::Dp);
        pu.close_and_decide(SimTime::ZERO).unwrap();
        assert_eq!(
            pu.close_and_decide(SimTime::ZERO),
            Err(ProtocolError::WrongPhase { phase: PuPhase::Done })
        );
    }

    #[test]
    fn replaying_a_message_sequence_reproduces_the_round() {
        let run = || {
            let mut pu = PuState::new(ChannelPool::new(4), Policy::Dp);
            collect(&mut pu, &five_bid_near_tie());
            let decision = pu.close_and_decide(SimTime::from_secs(9)).unwrap();
            (pu, decision)
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn su_measures_its_response_time() {
        let mut su = SuState::new(3, 2, Money::from_cents(5000));
        let msg = su.submit(SimTime::from_secs(4));
        assert_eq!(su.phase(), SuPhase::Submitted);
        assert_eq!(msg.to, AgentId::Pu);

        let verdict = ProtocolMessage {
            from: AgentId::Pu,
            to: AgentId::Su(3),
            sent_at: SimTime::from_secs(10),
            body: MessageBody::Rejection,
        };
        su.receive_verdict(&verdict, SimTime::from_secs(10)).unwrap();
        assert_eq!(su.response_time(), Some(SimTime::from_secs(6)));
        assert_eq!(su.verdict(), Some(Verdict::Rejected));
        assert_eq!(su.phase(), SuPhase::Answered);
    }

    #[test]
    fn transcript_lists_messages_in_order() {
        let mut su = SuState::new(1, 2, Money::from_cents(14170));
        let msg = su.submit(SimTime::ZERO);
        let csv = transcript_csv(&[msg]);
        assert_eq!(
            csv,
            "timestamp_s,kind,from,to,detail\n0,bid_submission,su1,pu,channels=2 price=141.70\n"
        );
    }
}
