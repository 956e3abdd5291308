//! Sharded, cacheable record scans.
//!
//! The range [2, limit] is cut into fixed-size shards independent of the
//! thread count, so the same scan always produces the same shard set.
//! Workers pull shards from a queue; each shard's local record
//! candidates either come from a cache file keyed by (stat, range,
//! budget) or are computed and written back. The ordered concatenation
//! of shard candidates replayed against one global running maximum is
//! identical to a serial scan, whatever the thread count.

use collatz_lab::asymptotics::{replay_records, scan_shard, RecordEntry, StatKind};
use collatz_lab::trajectory::TrajectoryError;
use num_bigint::BigUint;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::render::float_text;

/// What one shard's worker hands back to the merger.
type ShardOutcome = Result<Vec<RecordEntry>, ScanError>;

/// Fixed shard width; never derived from the thread count, so cache
/// files and merge order are stable across configurations.
pub const SHARD_SIZE: u64 = 65_536;

pub enum ScanError {
    Budget(TrajectoryError),
    Io(std::io::Error),
}

impl From<std::io::Error> for ScanError {
    fn from(e: std::io::Error) -> Self {
        ScanError::Io(e)
    }
}

/// The shard ranges [lo, hi) covering 2..=limit, in ascending order.
pub fn plan(limit: u64) -> Vec<(u64, u64)> {
    let end = limit + 1;
    let mut shards = Vec::new();
    let mut idx = 0u64;
    loop {
        let lo = idx * SHARD_SIZE;
        if lo >= end {
            break;
        }
        let hi = (lo + SHARD_SIZE).min(end);
        if hi > 2 {
            shards.push((lo.max(2), hi));
        }
        idx += 1;
    }
    shards
}

fn shard_file(dir: &Path, stat: StatKind, lo: u64, hi: u64, budget: u64) -> PathBuf {
    dir.join(format!("scan-{stat}-{lo}-{hi}-b{budget}.csv"))
}

const HEADER: &str = "m,o,e,g1,value";

fn save_shard(path: &Path, entries: &[RecordEntry]) -> std::io::Result<()> {
    let mut text = String::from(HEADER);
    text.push('\n');
    for e in entries {
        text.push_str(&format!(
            "{},{},{},{},{}\n",
            e.m,
            e.o,
            e.e,
            e.g1,
            float_text(e.value)
        ));
    }
    let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

/// Strict parse of a cached shard; any anomaly discards the cache entry
/// (the shard is then recomputed and rewritten).
fn load_shard(path: &Path, stat: StatKind) -> Option<Vec<RecordEntry>> {
    let text = fs::read_to_string(path).ok()?;
    let mut lines = text.lines();
    if lines.next()? != HEADER {
        return None;
    }
    let mut out = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return None;
        }
        out.push(RecordEntry {
            m: fields[0].parse::<BigUint>().ok()?,
            stat,
            o: fields[1].parse().ok()?,
            e: fields[2].parse().ok()?,
            g1: fields[3].parse().ok()?,
            value: fields[4].parse().ok()?,
        });
    }
    Some(out)
}

fn shard_candidates(
    lo: u64,
    hi: u64,
    stat: StatKind,
    budget: u64,
    cache_dir: Option<&Path>,
) -> Result<Vec<RecordEntry>, ScanError> {
    if let Some(dir) = cache_dir {
        let path = shard_file(dir, stat, lo, hi, budget);
        if let Some(entries) = load_shard(&path, stat) {
            return Ok(entries);
        }
        let entries = scan_shard(lo, hi, stat, budget).map_err(ScanError::Budget)?;
        save_shard(&path, &entries)?;
        return Ok(entries);
    }
    scan_shard(lo, hi, stat, budget).map_err(ScanError::Budget)
}

/// Run the full scan: shard, fan out, merge in shard order, replay.
pub fn run_scan(
    limit: u64,
    stat: StatKind,
    budget: u64,
    threads: usize,
    cache_dir: Option<&Path>,
) -> Result<Vec<RecordEntry>, ScanError> {
    if let Some(dir) = cache_dir {
        fs::create_dir_all(dir)?;
    }
    let shards = plan(limit);
    let next = AtomicUsize::new(0);
    let collected: Mutex<Vec<(usize, ShardOutcome)>> =
        Mutex::new(Vec::with_capacity(shards.len()));
    std::thread::scope(|scope| {
        for _ in 0..threads.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= shards.len() {
                    break;
                }
                let (lo, hi) = shards[i];
                let res = shard_candidates(lo, hi, stat, budget, cache_dir);
                collected.lock().unwrap().push((i, res));
            });
        }
    });
    let mut rows = collected.into_inner().unwrap();
    rows.sort_by_key(|(i, _)| *i);
    let mut candidates = Vec::new();
    for (_, res) in rows {
        candidates.extend(res?);
    }
    Ok(replay_records(&candidates))
}
