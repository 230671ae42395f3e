//! Experiment sweeps and the CSV they export.
//!
//! Four sweeps, numbered 6..9 on the command line: satisfied SUs vs channel
//! count, PU gain vs channel count, PU processing time vs population size,
//! and SU response time vs arrival interval. Every sweep writes the same
//! CSV schema; columns that do not apply stay empty rather than zero.

use std::ops::RangeInclusive;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::allocation::{AllocError, Bid, ChannelPool, Policy, SuId, allocate};
use crate::clock::SimTime;
use crate::money::Money;
use crate::sim::{ConfigError, DemandSource, SimConfig, run_simulation};

pub const CSV_HEADER: &str = "policy,param,satisfied,gain_cents,mean_processing_ns,su_id,response_time_s";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExperimentError {
    #[error(transparent)]
    Alloc(#[from] AllocError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// The four reproducible experiments, by what they plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// 6: satisfied SUs as the channel count grows.
    SatisfiedVsChannels,
    /// 7: PU gain as the channel count grows.
    GainVsChannels,
    /// 8: PU-side processing time as the population grows.
    ProcessingVsPopulation,
    /// 9: SU response time as the arrival interval grows.
    ResponseVsInterval,
}

impl Figure {
    pub fn from_number(n: u8) -> Option<Figure> {
        match n {
            6 => Some(Figure::SatisfiedVsChannels),
            7 => Some(Figure::GainVsChannels),
            8 => Some(Figure::ProcessingVsPopulation),
            9 => Some(Figure::ResponseVsInterval),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Figure::SatisfiedVsChannels => 6,
            Figure::GainVsChannels => 7,
            Figure::ProcessingVsPopulation => 8,
            Figure::ResponseVsInterval => 9,
        }
    }
}

/// One sweep request. Seed and repeats only matter for the processing-time
/// sweep; the other three are fully determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSpec {
    pub figure: Figure,
    pub seed: u64,
    pub repeats: u32,
}

impl SweepSpec {
    pub fn new(figure: Figure) -> Self {
        SweepSpec {
            figure,
            seed: 0,
            repeats: 1000,
        }
    }
}

/// One CSV row. Fields irrelevant to a sweep are `None` and render empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultRow {
    pub policy: Option<Policy>,
    /// The swept value: m, nb, or X in seconds.
    pub param: u64,
    pub satisfied: Option<usize>,
    pub gain: Option<Money>,
    pub mean_processing: Option<Duration>,
    pub su_id: Option<SuId>,
    pub response_time: Option<SimTime>,
}

impl ResultRow {
    pub fn csv_line(&self) -> String {
        fn cell<T: std::fmt::Display>(value: &Option<T>) -> String {
            value.as_ref().map(T::to_string).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{}",
            cell(&self.policy),
            self.param,
            cell(&self.satisfied),
            cell(&self.gain.map(|g| g.cents())),
            cell(&self.mean_processing.map(|d| d.as_nanos())),
            cell(&self.su_id),
            cell(&self.response_time),
        )
    }
}

pub fn rows_to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::with_capacity(CSV_HEADER.len() + rows.len() * 24 + 1);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

fn dataset(rows: &[(u32, u64)]) -> Vec<Bid> {
    rows.iter()
        .enumerate()
        .map(|(i, &(channels, cents))| {
            Bid::new(i as u32 + 1, channels, Money::from_cents(cents), i as u32)
                .expect("built-in datasets are valid")
        })
        .collect()
}

/// Built-in demand set for the satisfied-SU sweep:
/// W = {6,5,3,2,2}, C = {300.00, 354.35, 212.60, 141.70, 141.68}.
pub fn satisfaction_dataset() -> Vec<Bid> {
    dataset(&[(6, 30000), (5, 35435), (3, 21260), (2, 14170), (2, 14168)])
}

/// Built-in demand set for the PU-gain sweep:
/// W = {3,2,1,3,2}, C = {286.00, 209.00, 141.00, 489.00, 105.00}.
pub fn gain_dataset() -> Vec<Bid> {
    dataset(&[(3, 28600), (2, 20900), (1, 14100), (3, 48900), (2, 10500)])
}

/// Satisfied count and gain per (policy, m) over a fixed bid set.
pub fn sweep_channels(
    bids: &[Bid],
    m_range: RangeInclusive<u32>,
) -> Result<Vec<ResultRow>, AllocError> {
    let mut rows = Vec::new();
    for policy in Policy::ALL {
        for m in m_range.clone() {
            let outcome = allocate(policy, bids, &ChannelPool::new(m))?;
            rows.push(ResultRow {
                policy: Some(policy),
                param: u64::from(m),
                satisfied: Some(outcome.satisfied_count()),
                gain: Some(outcome.total_gain()),
                mean_processing: None,
                su_id: None,
                response_time: None,
            });
        }
    }
    Ok(rows)
}

/// Mean decide duration per (policy, nb), averaged over `repeats` calls.
/// `make_bids` supplies the bid set for each population size.
///
/// Rounds are interleaved across all cells rather than measuring one cell
/// to completion, and the visit order is reshuffled every round: ambient
/// load on the host then hits every population size equally instead of
/// skewing whichever cell it landed on, and no cell keeps a fixed warm-up
/// position relative to the others.
pub fn sweep_population(
    nb_range: RangeInclusive<u32>,
    m: u32,
    make_bids: impl Fn(u32) -> Vec<Bid>,
    repeats: u32,
) -> Result<Vec<ResultRow>, AllocError> {
    let repeats = repeats.max(1);
    let pool = ChannelPool::new(m);
    let mut cells = Vec::new();
    for policy in Policy::ALL {
        for nb in nb_range.clone() {
            let bids = make_bids(nb);
            allocate(policy, &bids, &pool)?; // validate (and warm up) before timing
            cells.push((policy, nb, bids));
        }
    }
    let mut totals = vec![Duration::ZERO; cells.len()];
    let mut visit_order: Vec<usize> = (0..cells.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..repeats {
        visit_order.shuffle(&mut rng);
        for &i in &visit_order {
            let (policy, _, bids) = &cells[i];
            let started = std::time::Instant::now();
            let outcome = allocate(*policy, bids, &pool)?;
            std::hint::black_box(&outcome);
            totals[i] += started.elapsed();
        }
    }
    Ok(cells
        .iter()
        .zip(totals)
        .map(|(&(policy, nb, _), total)| ResultRow {
            policy: Some(policy),
            param: u64::from(nb),
            satisfied: None,
            gain: None,
            mean_processing: Some(total / repeats),
            su_id: None,
            response_time: None,
        })
        .collect())
}

/// Response time per SU per arrival interval, straight from the simulator.
/// The timing law does not depend on the policy or the demands, so the rows
/// carry no policy.
pub fn sweep_interval(
    nb: u32,
    interval_secs: RangeInclusive<u64>,
    delay: SimTime,
) -> Result<Vec<ResultRow>, ConfigError> {
    let mut rows = Vec::new();
    for x in interval_secs {
        let config = SimConfig {
            nb,
            free_channels: 5,
            arrival_interval: SimTime::from_secs(x),
            pu_launch_delay: delay,
            policy: Policy::Dp,
            demands: DemandSource::Explicit(vec![(1, Money::from_cents(100)); nb as usize]),
        };
        let report = run_simulation(&config)?;
        for (&su_id, &waited) in &report.response_times {
            rows.push(ResultRow {
                policy: None,
                param: x,
                satisfied: None,
                gain: None,
                mean_processing: None,
                su_id: Some(su_id),
                response_time: Some(waited),
            });
        }
    }
    Ok(rows)
}

/// Random but reproducible instance: same seed, same bids. su_ids run
/// 1..=nb in arrival order.
pub fn gen_random_instance(
    seed: u64,
    nb: u32,
    max_channels_per_bid: u32,
    max_price_cents: u64,
) -> Vec<Bid> {
    let max_channels = max_channels_per_bid.max(1);
    let max_price = max_price_cents.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..=nb)
        .map(|i| {
            let channels = rng.random_range(1..=max_channels);
            let price = Money::from_cents(rng.random_range(1..=max_price));
            Bid::new(i, channels, price, i - 1).expect("generated bids are valid")
        })
        .collect()
}

/// Runs one numbered sweep with its built-in parameters.
pub fn run_figure(spec: &SweepSpec) -> Result<Vec<ResultRow>, ExperimentError> {
    match spec.figure {
        Figure::SatisfiedVsChannels => Ok(sweep_channels(&satisfaction_dataset(), 1..=10)?),
        Figure::GainVsChannels => Ok(sweep_channels(&gain_dataset(), 1..=10)?),
        Figure::ProcessingVsPopulation => {
            let seed = spec.seed;
            Ok(sweep_population(
                1..=10,
                5,
                |nb| gen_random_instance(seed.wrapping_add(u64::from(nb)), nb, 10, 100_000),
                spec.repeats,
            )?)
        }
        Figure::ResponseVsInterval => Ok(sweep_interval(10, 1..=10, SimTime::from_secs(1))?),
    }
}
