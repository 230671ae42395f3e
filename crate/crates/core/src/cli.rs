//! Command implementations behind the `spectrum-auction` binary.
//!
//! Exit codes: 0 success, 2 input or validation error, 1 internal error.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::allocation::{AllocError, Bid, ChannelPool, Policy, Verdict, allocate};
use crate::experiments::{ExperimentError, Figure, SweepSpec, rows_to_csv, run_figure};
use crate::money::Money;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub const BID_FILE_HEADER: &str = "su_id,channels,price";

#[derive(Debug, Error)]
pub enum BidFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line 1: expected header \"su_id,channels,price\"")]
    BadHeader,
    #[error("line {line}: {reason}")]
    Row { line: usize, reason: String },
}

/// Parses bid-file text. Arrival order is row order. Rejects duplicate
/// su_ids, zero channel counts, negative prices and more than two decimals.
pub fn parse_bid_file(text: &str) -> Result<Vec<Bid>, BidFileError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == BID_FILE_HEADER => {}
        _ => return Err(BidFileError::BadHeader),
    }
    let mut bids: Vec<Bid> = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let row = raw.trim_end_matches('\r');
        let err = |reason: String| BidFileError::Row { line, reason };

        let mut fields = row.split(',');
        let (Some(id_field), Some(channels_field), Some(price_field), None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(err(format!("expected 3 comma-separated fields in {row:?}")));
        };
        let su_id: u32 = id_field
            .parse()
            .map_err(|_| err(format!("invalid su_id {id_field:?}")))?;
        if su_id == 0 {
            return Err(err("su_id must be positive".to_string()));
        }
        let channels: u32 = channels_field
            .parse()
            .map_err(|_| err(format!("invalid channel count {channels_field:?}")))?;
        if channels == 0 {
            return Err(err(format!("su {su_id} requested zero channels")));
        }
        let price: Money = price_field
            .parse()
            .map_err(|e: crate::money::MoneyError| err(e.to_string()))?;
        if !seen.insert(su_id) {
            return Err(err(format!("duplicate su_id {su_id}")));
        }
        let arrival_seq = bids.len() as u32;
        bids.push(Bid::new(su_id, channels, price, arrival_seq).expect("fields validated above"));
    }
    Ok(bids)
}

pub fn read_bid_file(path: &Path) -> Result<Vec<Bid>, BidFileError> {
    let text = fs::read_to_string(path).map_err(|source| BidFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_bid_file(&text)
}

/// Renders bids back to the input format; re-parsing yields the same bids.
pub fn write_bid_file(bids: &[Bid]) -> String {
    let mut ordered: Vec<&Bid> = bids.iter().collect();
    ordered.sort_by_key(|b| b.arrival_seq());
    let mut out = String::from(BID_FILE_HEADER);
    out.push('\n');
    for bid in ordered {
        out.push_str(&format!("{},{},{}\n", bid.su_id(), bid.channels(), bid.price()));
    }
    out
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<BidFileError> for CliError {
    fn from(err: BidFileError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<AllocError> for CliError {
    fn from(err: AllocError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<ExperimentError> for CliError {
    fn from(err: ExperimentError) -> Self {
        CliError::Input(err.to_string())
    }
}

/// One auction round over a bid file: per-SU verdicts, total gain, channels
/// used, as CSV text for standard output.
pub fn run_command(policy: Policy, channels: u32, bid_path: &Path) -> Result<String, CliError> {
    let bids = read_bid_file(bid_path)?;
    let outcome = allocate(policy, &bids, &ChannelPool::new(channels))?;

    let mut by_id: Vec<&Bid> = bids.iter().collect();
    by_id.sort_by_key(|b| b.su_id());
    let mut out = String::from("su_id,channels,price,verdict,price_due\n");
    for bid in by_id {
        let verdict = outcome.verdict(bid.su_id()).unwrap_or(Verdict::Rejected);
        let price_due = match verdict {
            Verdict::Accepted => bid.price().to_string(),
            Verdict::Rejected => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            bid.su_id(),
            bid.channels(),
            bid.price(),
            verdict,
            price_due
        ));
    }
    out.push_str(&format!("total_gain,{}\n", outcome.total_gain()));
    out.push_str(&format!("channels_used,{}\n", outcome.channels_used()));
    Ok(out)
}

/// One sweep written to disk; returns the path written.
pub fn sweep_command(
    figure: u8,
    out: Option<&Path>,
    seed: u64,
    repeats: u32,
) -> Result<PathBuf, CliError> {
    let figure = Figure::from_number(figure)
        .ok_or_else(|| CliError::Input(format!("unknown figure {figure}; expected 6, 7, 8 or 9")))?;
    let spec = SweepSpec {
        figure,
        seed,
        repeats: repeats.max(1),
    };
    let rows = run_figure(&spec)?;
    let csv = rows_to_csv(&rows);
    let path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(format!("figure{}.csv", figure.number())));
    fs::write(&path, csv)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}
