//! Asymptotic statistics and record scanning.
//!
//! The completeness C = o/e of an orbit is bounded above by ln2/ln3,
//! and for fixed odd count o the even count has an exact integer floor
//! ⌈log₂(3^{o+1} − 2^{o+1})⌉. Along the even-branch corner family the
//! ratio Γ = e/ln m falls monotonically toward its universal floor
//! 1/ln2, and the residual Res = 2^e/(m·3^o) falls toward 1. This
//! module computes those quantities exactly where exactness matters
//! (integer floors, rational comparisons) and scans ranges of starts
//! for record values of completeness, Γ, and Res in a way that can be
//! sharded and replayed deterministically.

use num_bigint::BigUint;
use num_traits::One;
use std::fmt;

use crate::eolevels::{corner_even, CornerFamily};
use crate::numeric::{ln_big, pow2_big, pow3_big, ratio_to_f64};
use crate::trajectory::{count_profile, TrajectoryError, DEFAULT_STEP_BUDGET};

/// The decimal constant whose completeness anchors the big-value check.
pub const BIG_COMPLETENESS_DECIMAL: &str = "7219136416377236271195";

/// Exact ⌈log₂(3^{o+1} − 2^{o+1})⌉ via integer bit arithmetic: every
/// odd m with o odd terms has at least this many even terms.
pub fn completeness_floor(o: u64) -> u64 {
    assert!(o >= 1);
    let v = pow3_big(u32::try_from(o + 1).expect("o too large")) - pow2_big(o + 1);
    let bits = v.bits();
    // v a power of two => log2 is exact; otherwise round up.
    if v == BigUint::one() << (bits - 1) {
        bits - 1
    } else {
        bits
    }
}

/// Γ = e/ln m for the even-branch corner seeds m*_0..m*_{k_max}, with
/// e and o taken from each value's actual orbit. Asserts the strict
/// monotone decrease and the floor Γ > 1/ln2.
pub fn gamma_limit_table(k_max: u32, max_steps: u64) -> Result<Vec<(u32, f64)>, TrajectoryError> {
    let mut out = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let value = corner_even(k, &vec![0u64; k as usize + 2])
            .expect("corner family evaluates at b = 0");
        let profile = count_profile(&value, max_steps)?;
        let gamma = profile.e as f64 / ln_big(&value);
        if let Some(&(_, prev)) = out.last() {
            assert!(gamma < prev, "corner gamma must decrease at k={k}");
        }
        assert!(
            gamma > 1.0 / std::f64::consts::LN_2,
            "corner gamma must stay above 1/ln2 at k={k}"
        );
        out.push((k, gamma));
    }
    Ok(out)
}

/// Which orbit statistic a record scan tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatKind {
    Completeness,
    Gamma,
    Res,
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatKind::Completeness => write!(f, "completeness"),
            StatKind::Gamma => write!(f, "gamma"),
            StatKind::Res => write!(f, "res"),
        }
    }
}

impl std::str::FromStr for StatKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "completeness" => Ok(StatKind::Completeness),
            "gamma" => Ok(StatKind::Gamma),
            "res" => Ok(StatKind::Res),
            other => Err(format!("unknown statistic '{other}'")),
        }
    }
}

/// One record row: the start, the statistic it sets a record for, the
/// display value, and the orbit profile it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordEntry {
    pub m: BigUint,
    pub stat: StatKind,
    pub value: f64,
    pub o: u64,
    pub e: u64,
    pub g1: u64,
}

impl RecordEntry {
    fn display_value(&self) -> f64 {
        self.value
    }
}

/// Strict comparison "entry a beats entry b" in the entry's statistic,
/// exact where floats cannot be trusted: completeness compares o/e by
/// 128-bit cross-multiplication; Res compares 2^e/(m·3^o) by big-integer
/// cross-multiplication when the float gap is inside a guard band; Γ
/// compares as floats (its values are transcendental ratios).
fn beats(a: &RecordEntry, b: &RecordEntry) -> bool {
    match a.stat {
        StatKind::Completeness => (a.o as u128) * (b.e as u128) > (b.o as u128) * (a.e as u128),
        StatKind::Gamma => a.value > b.value,
        StatKind::Res => {
            let fa = a.value;
            let fb = b.value;
            if (fa - fb).abs() > 1e-9 * fa.abs().max(fb.abs()).max(1.0) {
                return fa > fb;
            }
            // exact: 2^{e_a}·m_b·3^{o_b} > 2^{e_b}·m_a·3^{o_a}
            let lhs = pow2_big(a.e) * &b.m * pow3_big(u32::try_from(b.o).unwrap());
            let rhs = pow2_big(b.e) * &a.m * pow3_big(u32::try_from(a.o).unwrap());
            lhs > rhs
        }
    }
}

fn entry_for(m: u64, stat: StatKind, max_steps: u64) -> Result<RecordEntry, TrajectoryError> {
    let big = BigUint::from(m);
    let profile = count_profile(&big, max_steps)?;
    let value = match stat {
        StatKind::Completeness => {
            if profile.e == 0 {
                0.0
            } else {
                profile.o as f64 / profile.e as f64
            }
        }
        StatKind::Gamma => profile.e as f64 / ln_big(&big),
        StatKind::Res => {
            ratio_to_f64(&pow2_big(profile.e), &(&big * pow3_big(u32::try_from(profile.o).unwrap())))
        }
    };
    Ok(RecordEntry {
        m: big,
        stat,
        value,
        o: profile.o,
        e: profile.e,
        g1: profile.g1,
    })
}

/// Scan one contiguous range [lo, hi) and keep every start that sets a
/// record *within the range* (running maximum starting from zero).
/// A record over any larger scan is necessarily a shard-local record of
/// its own shard, so these lists are complete candidate sets for
/// deterministic merging.
pub fn scan_shard(
    lo: u64,
    hi: u64,
    stat: StatKind,
    max_steps: u64,
) -> Result<Vec<RecordEntry>, TrajectoryError> {
    let mut out: Vec<RecordEntry> = Vec::new();
    for m in lo.max(2)..hi {
        let entry = entry_for(m, stat, max_steps)?;
        let is_record = match out.last() {
            None => entry.display_value() > 0.0 || beats_zero(&entry),
            Some(best) => beats(&entry, best),
        };
        if is_record {
            out.push(entry);
        }
    }
    Ok(out)
}

/// Whether a first candidate exceeds the zero-initialized running
/// maximum (anything with a positive statistic does).
fn beats_zero(entry: &RecordEntry) -> bool {
    match entry.stat {
        StatKind::Completeness => entry.o > 0,
        StatKind::Gamma | StatKind::Res => entry.value > 0.0,
    }
}

/// Replay shard-local candidates (already in ascending-m order) against
/// a single global running maximum; the result is identical to a serial
/// full-range scan.
pub fn replay_records(candidates: &[RecordEntry]) -> Vec<RecordEntry> {
    let mut out: Vec<RecordEntry> = Vec::new();
    for entry in candidates {
        let keep = match out.last() {
            None => beats_zero(entry),
            Some(best) => beats(entry, best),
        };
        if keep {
            out.push(entry.clone());
        }
    }
    out
}

/// All records of the chosen statistic over 2 ≤ m ≤ limit, serially.
pub fn scan_records(
    limit: u64,
    stat: StatKind,
    max_steps: u64,
) -> Result<Vec<RecordEntry>, TrajectoryError> {
    scan_shard(2, limit + 1, stat, max_steps)
}

/// Completeness of one start as a float (o/e from the full orbit).
pub fn completeness_value(m: &BigUint, max_steps: u64) -> Result<f64, TrajectoryError> {
    let profile = count_profile(m, max_steps)?;
    if profile.e == 0 {
        return Ok(0.0);
    }
    Ok(profile.o as f64 / profile.e as f64)
}

/// Completeness of the fixed 22-digit anchor constant, by full
/// big-integer orbit.
pub fn big_completeness_check() -> f64 {
    let m: BigUint = BIG_COMPLETENESS_DECIMAL.parse().expect("valid decimal");
    completeness_value(&m, DEFAULT_STEP_BUDGET).expect("anchor orbit terminates")
}

/// Exact residual Res(m) = 2^e/(m·3^o) as an integer numerator and
/// denominator pair.
pub fn res_exact(m: &BigUint, max_steps: u64) -> Result<(BigUint, BigUint), TrajectoryError> {
    let profile = count_profile(m, max_steps)?;
    Ok((
        pow2_big(profile.e),
        m * pow3_big(u32::try_from(profile.o).expect("odd count fits u32")),
    ))
}

/// Smallest m ≤ search_cap whose orbit has exactly k odd terms.
pub fn smallest_with_k_odds(
    k: u64,
    search_cap: u64,
    max_steps: u64,
) -> Result<Option<u64>, TrajectoryError> {
    for m in 2..=search_cap {
        let profile = count_profile(&BigUint::from(m), max_steps)?;
        if profile.o == k {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Check the exponent identity (2^k)^{1−ln2/ln6} = (3^k)^{ln2/ln6} in
/// log space to 1e-12 relative error, together with the bracketing
/// ln2/ln6 < 0.40 and ln3/ln6 > 0.606061.
pub fn eq18_check(k: u64) -> bool {
    let ln6 = 6f64.ln();
    let lhs = k as f64 * (1.0 - std::f64::consts::LN_2 / ln6) * std::f64::consts::LN_2;
    let rhs = k as f64 * 3f64.ln() * std::f64::consts::LN_2 / ln6;
    let tol = 1e-12 * lhs.abs().max(1.0);
    (lhs - rhs).abs() <= tol
        && std::f64::consts::LN_2 / ln6 < 0.40
        && 3f64.ln() / ln6 > 0.606061
}

/// Completeness per k along a corner family's primitive members, from
/// actual orbit counts. Asserts the strict decrease and the universal
/// bound C < ln2/ln3.
pub fn theorem_t3_trend(
    family: CornerFamily,
    k_max: u32,
    max_steps: u64,
) -> Result<Vec<(u32, u64, u64)>, TrajectoryError> {
    let bound = std::f64::consts::LN_2 / 3f64.ln();
    let mut out: Vec<(u32, u64, u64)> = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let value = family
            .evaluate(k, &vec![0u64; k as usize + 2])
            .expect("corner family evaluates at b = 0");
        let profile = count_profile(&value, max_steps)?;
        if let Some(&(_, po, pe)) = out.last() {
            // strict decrease: o/e < po/pe
            assert!(
                (profile.o as u128) * (pe as u128) < (po as u128) * (profile.e as u128),
                "corner completeness must decrease at k={k}"
            );
        }
        assert!(
            (profile.o as f64 / profile.e as f64) < bound,
            "corner completeness must stay below ln2/ln3 at k={k}"
        );
        out.push((k, profile.o, profile.e));
    }
    Ok(out)
}
