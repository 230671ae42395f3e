//! Deterministic discrete-event simulation of one auction round.
//!
//! SU_i arrives and submits its sealed bid at (i-1)·X on the simulated
//! clock. The PU launches a fixed delay after the last arrival, closes the
//! round and answers everyone at that instant, so SU_i waits exactly
//! (nb-i)·X + delay. Deciding costs nothing on the simulated clock; its
//! wall-clock cost is measured separately and never feeds back into
//! simulated time.
//!
//! The event loop is single threaded. Runs with the same configuration and
//! seed produce identical event logs; only the measured wall time differs.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::allocation::{AllocError, AllocationOutcome, Bid, ChannelPool, Policy, SuId, allocate};
use crate::clock::SimTime;
use crate::experiments::gen_random_instance;
use crate::money::Money;
use crate::protocol::{AgentId, MessageBody, PuState, SuState};

/// Where each SU's demand comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DemandSource {
    /// One (channels, price) pair per SU, in arrival order.
    Explicit(Vec<(u32, Money)>),
    /// Demands drawn deterministically from a seed.
    Seeded {
        seed: u64,
        max_channels_per_bid: u32,
        max_price_cents: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimConfig {
    /// Number of secondary users.
    pub nb: u32,
    /// Free channels on the PU side.
    pub free_channels: u32,
    /// X: spacing between consecutive SU arrivals.
    pub arrival_interval: SimTime,
    /// How long after the last SU arrival the PU launches and decides.
    pub pu_launch_delay: SimTime,
    pub policy: Policy,
    pub demands: DemandSource,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("arrival interval must be positive when more than one SU arrives")]
    ZeroArrivalInterval,
    #[error("expected {expected} demand entries, got {got}")]
    DemandCountMismatch { expected: usize, got: usize },
    #[error("invalid demand: {0}")]
    InvalidDemand(#[from] AllocError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    BidSubmitted,
    PuLaunched,
    Decision,
    Award,
    Rejection,
}

impl EventKind {
    pub fn label(self) -> &'static str {
        match self {
            EventKind::BidSubmitted => "bid_submitted",
            EventKind::PuLaunched => "pu_launched",
            EventKind::Decision => "decision",
            EventKind::Award => "award",
            EventKind::Rejection => "rejection",
        }
    }
}

/// One line of the simulation log, strictly ordered by (timestamp, seq).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventRecord {
    pub at: SimTime,
    pub seq: u64,
    pub kind: EventKind,
    pub agent: AgentId,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    /// Exactly what the pure policy computes on the same bids; the simulator
    /// adds timing, never changes winners.
    pub outcome: AllocationOutcome,
    /// Per SU: simulated time between its submission and the PU's verdict.
    pub response_times: BTreeMap<SuId, SimTime>,
    /// Measured wall-clock duration of the decide step.
    pub processing: Duration,
    pub events: Vec<EventRecord>,
}

/// SU_i arrives at (i-1)·interval, for i = 1..=nb.
pub fn schedule_arrivals(nb: u32, interval: SimTime) -> Vec<(u32, SimTime)> {
    (1..=nb).map(|i| (i, interval * u64::from(i - 1))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Pending {
    Arrival(u32),
    PuLaunch,
}

pub fn run_simulation(config: &SimConfig) -> Result<SimReport, ConfigError> {
    if config.nb > 1 && config.arrival_interval == SimTime::ZERO {
        return Err(ConfigError::ZeroArrivalInterval);
    }
    let demands = resolve_demands(config)?;

    let mut sus: Vec<SuState> = demands
        .iter()
        .enumerate()
        .map(|(i, &(channels, price))| SuState::new(i as u32 + 1, channels, price))
        .collect();
    let mut pu = PuState::new(ChannelPool::new(config.free_channels), config.policy);

    let mut queue: BinaryHeap<Reverse<(SimTime, u64, Pending)>> = BinaryHeap::new();
    let mut push_seq = 0u64;
    for (su_index, at) in schedule_arrivals(config.nb, config.arrival_interval) {
        queue.push(Reverse((at, push_seq, Pending::Arrival(su_index))));
        push_seq += 1;
    }
    let last_arrival = if config.nb == 0 {
        SimTime::ZERO
    } else {
        config.arrival_interval * u64::from(config.nb - 1)
    };
    queue.push(Reverse((last_arrival + config.pu_launch_delay, push_seq, Pending::PuLaunch)));

    let mut events = Vec::new();
    let mut response_times = BTreeMap::new();
    let mut processing = Duration::ZERO;
    let mut outcome = AllocationOutcome::empty();

    while let Some(Reverse((now, _, pending))) = queue.pop() {
        match pending {
            Pending::Arrival(su_index) => {
                let su = &mut sus[(su_index - 1) as usize];
                let msg = su.submit(now);
                let detail = format!("channels={} price={}", su.channels(), su.price());
                pu.receive(&msg)
                    .expect("scheduled arrivals are unique and in phase");
                push_event(&mut events, now, EventKind::BidSubmitted, AgentId::Su(su_index), detail);
            }
            Pending::PuLaunch => {
                push_event(
                    &mut events,
                    now,
                    EventKind::PuLaunched,
                    AgentId::Pu,
                    format!(
                        "policy={} m={} bids={}",
                        config.policy,
                        config.free_channels,
                        pu.received().len()
                    ),
                );
                let started = Instant::now();
                let decision = pu.close_and_decide(now).expect("round is still collecting");
                processing = started.elapsed();
                outcome = decision.outcome.clone();
                push_event(
                    &mut events,
                    now,
                    EventKind::Decision,
                    AgentId::Pu,
                    format!(
                        "gain={} channels_used={} satisfied={}",
                        outcome.total_gain(),
                        outcome.channels_used(),
                        outcome.satisfied_count()
                    ),
                );
                for msg in &decision.messages {
                    let AgentId::Su(su_id) = msg.to else {
                        continue;
                    };
                    let su = &mut sus[(su_id - 1) as usize];
                    su.receive_verdict(msg, now)
                        .expect("every bidder is answered exactly once");
                    let waited = su.response_time().expect("answered su has a response time");
                    response_times.insert(su_id, waited);
                    let (kind, detail) = match msg.body {
                        MessageBody::Award {
                            channels_granted,
                            price_due,
                        } => (
                            EventKind::Award,
                            format!("channels={channels_granted} price_due={price_due} waited_s={waited}"),
                        ),
                        MessageBody::Rejection => {
                            (EventKind::Rejection, format!("waited_s={waited}"))
                        }
                        MessageBody::BidSubmission { .. } => {
                            unreachable!("the pu never submits bids")
                        }
                    };
                    push_event(&mut events, now, kind, AgentId::Su(su_id), detail);
                }
            }
        }
    }

    Ok(SimReport {
        outcome,
        response_times,
        processing,
        events,
    })
}

fn push_event(
    events: &mut Vec<EventRecord>,
    at: SimTime,
    kind: EventKind,
    agent: AgentId,
    detail: String,
) {
    let seq = events.len() as u64;
    events.push(EventRecord {
        at,
        seq,
        kind,
        agent,
        detail,
    });
}

fn resolve_demands(config: &SimConfig) -> Result<Vec<(u32, Money)>, ConfigError> {
    let pairs: Vec<(u32, Money)> = match &config.demands {
        DemandSource::Explicit(pairs) => {
            if pairs.len() != config.nb as usize {
                return Err(ConfigError::DemandCountMismatch {
                    expected: config.nb as usize,
                    got: pairs.len(),
                });
            }
            pairs.clone()
        }
        DemandSource::Seeded {
            seed,
            max_channels_per_bid,
            max_price_cents,
        } => gen_random_instance(*seed, config.nb, *max_channels_per_bid, *max_price_cents)
            .iter()
            .map(|bid| (bid.channels(), bid.price()))
            .collect(),
    };
    // flag bad demands before any event runs
    for (i, &(channels, price)) in pairs.iter().enumerate() {
        Bid::new(i as u32 + 1, channels, price, i as u32)?;
    }
    Ok(pairs)
}

/// Mean wall-clock duration of one allocation call over `repeats` runs,
/// measured with a monotonic clock, along with the outcome it computes.
pub fn measure_processing(
    bids: &[Bid],
    pool: &ChannelPool,
    policy: Policy,
    repeats: u32,
) -> Result<(Duration, AllocationOutcome), AllocError> {
    let repeats = repeats.max(1);
    let outcome = allocate(policy, bids, pool)?;
    let started = Instant::now();
    for _ in 0..repeats {
        let run = allocate(policy, bids, pool)?;
        std::hint::black_box(&run);
    }
    Ok((started.elapsed() / repeats, outcome))
}

/// Event log export, one CSV row per event.
pub fn events_to_csv(events: &[EventRecord]) -> String {
    let mut out = String::from("timestamp_s,event_kind,agent,detail\n");
    for event in events {
        out.push_str(&format!(
            "{},{},{},{}\n",
            event.at,
            event.kind.label(),
            event.agent,
            event.detail
        ));
    }
    out
}
