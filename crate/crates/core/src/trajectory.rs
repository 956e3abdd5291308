//! Exact Collatz dynamics.
//!
//! The plain map sends odd x to 3x+1 and even x to x/2; the accelerated
//! map folds the halving that always follows an odd step into the odd
//! step itself. Orbits are materialized term-by-term, or just counted
//! when only the parity profile matters.
//!
//! Counting conventions used throughout the crate, for a start m run
//! under the plain map until the first hit of 1:
//!
//! - `o(m)` — odd terms, counting m itself (when odd) but never the 1,
//! - `e(m)` — even terms,
//! - `sigma_inf(m)` — accelerated-map steps from m to the first 1.
//!
//! Each accelerated step performs exactly one halving, so
//! `sigma_inf(m) = e(m)`; `stats` computes both sides independently and
//! the test suites assert the identity.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

use crate::numeric::{ln_big, pow3_big, ratio_to_f64};

/// Step budget used by the command-line tool and the test suites when no
/// explicit budget is given. Running out of budget is a reported outcome,
/// not a crash: it is exactly the signal a divergent or cyclic
/// counterexample would produce.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

/// Which recurrence generated an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// 3x+1 on odds, x/2 on evens.
    F,
    /// Accelerated: (3x+1)/2 on odds, x/2 on evens.
    T,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKind::F => write!(f, "f"),
            MapKind::T => write!(f, "t"),
        }
    }
}

/// One step of the plain map.
pub fn step_f(x: &BigUint) -> BigUint {
    if x.bit(0) {
        x * 3u32 + 1u32
    } else {
        x >> 1
    }
}

/// One step of the accelerated map.
pub fn step_t(x: &BigUint) -> BigUint {
    if x.bit(0) {
        (x * 3u32 + 1u32) >> 1
    } else {
        x >> 1
    }
}

/// A finite orbit from `terms[0]` to the first (later) occurrence of 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub map_kind: MapKind,
    /// `terms[0]` is the start; the last term is 1 and no interior term
    /// is 1. A start of 1 runs once around the trivial cycle.
    pub terms: Vec<BigUint>,
}

impl Trajectory {
    pub fn start(&self) -> &BigUint {
        &self.terms[0]
    }

    /// Number of map applications taken.
    pub fn steps(&self) -> u64 {
        (self.terms.len() - 1) as u64
    }
}

/// The orbit did not reach 1 within the step budget.
///
/// Carries everything computed so far so callers can report partial
/// output; a genuine counterexample to the conjecture would surface here.
#[derive(Debug, Clone)]
pub struct StepBudgetExceeded {
    pub budget: u64,
    /// Terms produced before giving up; the last one is not 1.
    pub partial: Trajectory,
}

impl fmt::Display for StepBudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "orbit of {} did not reach 1 within {} steps",
            self.partial.start(),
            self.budget
        )
    }
}

impl std::error::Error for StepBudgetExceeded {}

/// Errors from the statistics and gap extraction entry points.
#[derive(Debug, Clone, thiserror::Error)]
pub enum TrajectoryError {
    #[error("start {start} did not reach 1 within {budget} steps")]
    StepBudget { start: BigUint, budget: u64 },
    #[error("statistics need a start of at least 2")]
    StartTooSmall,
    #[error("gap profiles are defined for odd starts")]
    EvenStart,
    #[error("gap profiles are read off plain-map orbits")]
    AcceleratedMap,
}

/// Run the chosen map from m until the first occurrence of 1 after at
/// least one step (so a start of 1 yields the trivial cycle once:
/// 1,4,2,1 under the plain map).
pub fn run_trajectory(
    m: &BigUint,
    map_kind: MapKind,
    max_steps: u64,
) -> Result<Trajectory, StepBudgetExceeded> {
    assert!(!m.is_zero(), "orbits start at 1 or above");
    let step = match map_kind {
        MapKind::F => step_f,
        MapKind::T => step_t,
    };
    let mut terms = Vec::new();
    terms.push(m.clone());
    let one = BigUint::one();
    let mut steps = 0u64;
    loop {
        let next = step(terms.last().unwrap());
        let done = next == one;
        terms.push(next);
        steps += 1;
        if done {
            return Ok(Trajectory { map_kind, terms });
        }
        if steps >= max_steps {
            return Err(StepBudgetExceeded {
                budget: max_steps,
                partial: Trajectory { map_kind, terms },
            });
        }
    }
}

/// Run lengths of even terms between consecutive odd terms of a
/// plain-map orbit, in orbit order; the final entry is the halving run
/// that lands on the first 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GapSequence {
    pub gaps: Vec<u64>,
}

impl GapSequence {
    /// Index of the last gap when gaps are labelled g_{k+1},…,g_1 from
    /// the start of the orbit down to 1.
    pub fn k(&self) -> usize {
        self.gaps.len() - 1
    }

    /// Odd-term count of the underlying orbit.
    pub fn odd_count(&self) -> u64 {
        self.gaps.len() as u64
    }

    /// Even-term count of the underlying orbit.
    pub fn even_count(&self) -> u64 {
        self.gaps.iter().sum()
    }

    /// The final halving run (the descent onto 1); at least 2, since the
    /// descent ends …,4,2,1.
    pub fn g1(&self) -> u64 {
        *self.gaps.last().unwrap()
    }
}

impl fmt::Display for GapSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gaps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Extract the gap sequence of a completed plain-map orbit with an odd
/// start. Every odd term contributes one (positive) run of evens.
pub fn gap_sequence(traj: &Trajectory) -> Result<GapSequence, TrajectoryError> {
    if traj.map_kind != MapKind::F {
        return Err(TrajectoryError::AcceleratedMap);
    }
    if !traj.start().bit(0) {
        return Err(TrajectoryError::EvenStart);
    }
    let mut gaps = Vec::new();
    let mut run = 0u64;
    let mut seen_odd = false;
    let last = traj.terms.len() - 1;
    for (i, term) in traj.terms.iter().enumerate() {
        if i == last {
            // the first 1: close the pending run
            gaps.push(run);
            break;
        }
        if term.bit(0) {
            if seen_odd {
                gaps.push(run);
            }
            seen_odd = true;
            run = 0;
        } else {
            run += 1;
        }
    }
    Ok(GapSequence { gaps })
}

/// Per-start statistics, all derived from exact counts.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceStats {
    /// Even terms under the plain map.
    pub e: u64,
    /// Odd terms under the plain map (counting the start when odd, never
    /// the final 1).
    pub o: u64,
    /// Accelerated-map steps to the first 1; equals `e`.
    pub sigma_inf: u64,
    /// Completeness o/e, exact.
    pub completeness: Ratio<u64>,
    /// Ones-ratio o/sigma_inf, exact.
    pub ones_ratio: Ratio<u64>,
    /// e/ln m; bounded below by 1/ln 2 ≈ 1.442695, with equality exactly
    /// at powers of two.
    pub gamma: f64,
    /// Residual factor 2^e/(m·3^o); > 1 for every odd m > 1.
    pub res: f64,
}

/// Parity profile of a plain-map orbit, counted without materializing
/// terms. `g1` is the halving run that lands on 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Profile {
    pub e: u64,
    pub o: u64,
    pub g1: u64,
}

// 3x+1 stays inside u128 while x ≤ this.
const CAP: u128 = (u128::MAX - 1) / 3;

enum Cursor {
    Small(u128),
    Big(BigUint),
}

fn cursor_of(m: &BigUint) -> Cursor {
    match m.to_u128() {
        Some(v) if v <= CAP => Cursor::Small(v),
        _ => Cursor::Big(m.clone()),
    }
}

/// Count e, o, and the final halving run under the plain map, staying in
/// machine words while terms fit and escalating to big integers only on
/// demand. Valid for m ≥ 1; m = 1 runs the trivial cycle once.
pub(crate) fn count_profile(m: &BigUint, max_steps: u64) -> Result<Profile, TrajectoryError> {
    if m.is_one() {
        // 1 → 4 → 2 → 1: one odd term (the start), two evens.
        return Ok(Profile { e: 2, o: 1, g1: 2 });
    }
    let mut e = 0u64;
    let mut o = 0u64;
    let mut run = 0u64;
    let mut left = max_steps;
    let mut cur = cursor_of(m);
    loop {
        cur = match cur {
            Cursor::Small(mut x) => loop {
                if x == 1 {
                    return Ok(Profile { e, o, g1: run });
                }
                if x & 1 == 1 && x > CAP {
                    break Cursor::Big(BigUint::from(x));
                }
                if left == 0 {
                    return Err(TrajectoryError::StepBudget {
                        start: m.clone(),
                        budget: max_steps,
                    });
                }
                left -= 1;
                if x & 1 == 0 {
                    x >>= 1;
                    e += 1;
                    run += 1;
                } else {
                    o += 1;
                    x = 3 * x + 1;
                    run = 0;
                }
            },
            Cursor::Big(mut x) => loop {
                if let Some(v) = x.to_u128() {
                    if v <= CAP {
                        break Cursor::Small(v);
                    }
                }
                if left == 0 {
                    return Err(TrajectoryError::StepBudget {
                        start: m.clone(),
                        budget: max_steps,
                    });
                }
                left -= 1;
                if x.bit(0) {
                    o += 1;
                    x = x * 3u32 + 1u32;
                    run = 0;
                } else {
                    x >>= 1;
                    e += 1;
                    run += 1;
                }
            },
        };
    }
}

/// Accelerated-map steps from m to the first 1 (m ≥ 1).
pub(crate) fn count_t_steps(m: &BigUint, max_steps: u64) -> Result<u64, TrajectoryError> {
    if m.is_one() {
        return Ok(2); // 1 → 2 → 1
    }
    let mut steps = 0u64;
    let mut cur = cursor_of(m);
    loop {
        cur = match cur {
            Cursor::Small(mut x) => loop {
                if x == 1 {
                    return Ok(steps);
                }
                if x & 1 == 1 && x > CAP {
                    break Cursor::Big(BigUint::from(x));
                }
                if steps >= max_steps {
                    return Err(TrajectoryError::StepBudget {
                        start: m.clone(),
                        budget: max_steps,
                    });
                }
                steps += 1;
                x = if x & 1 == 0 { x >> 1 } else { (3 * x + 1) >> 1 };
            },
            Cursor::Big(mut x) => loop {
                if let Some(v) = x.to_u128() {
                    if v <= CAP {
                        break Cursor::Small(v);
                    }
                }
                if steps >= max_steps {
                    return Err(TrajectoryError::StepBudget {
                        start: m.clone(),
                        budget: max_steps,
                    });
                }
                steps += 1;
                x = step_t(&x);
            },
        };
    }
}

/// Full statistics for a start m ≥ 2.
///
/// The even/odd counts come from the plain-map orbit and sigma_inf from
/// an independent accelerated-map run; exact fields are integer ratios
/// and the two float fields are computed from exact integers at the end.
pub fn stats(m: &BigUint, max_steps: u64) -> Result<SequenceStats, TrajectoryError> {
    if *m < BigUint::from(2u32) {
        return Err(TrajectoryError::StartTooSmall);
    }
    let profile = count_profile(m, max_steps)?;
    let sigma_inf = count_t_steps(m, max_steps)?;
    Ok(build_stats(m, profile, sigma_inf))
}

pub(crate) fn build_stats(m: &BigUint, profile: Profile, sigma_inf: u64) -> SequenceStats {
    let Profile { e, o, .. } = profile;
    let completeness = Ratio::new(o, e);
    let ones_ratio = Ratio::new(o, sigma_inf);
    let gamma = e as f64 / ln_big(m);
    let res_num = BigUint::one() << e;
    let res_den = m * pow3_big(o as u32);
    let res = ratio_to_f64(&res_num, &res_den);
    SequenceStats {
        e,
        o,
        sigma_inf,
        completeness,
        ones_ratio,
        gamma,
        res,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn plain_steps() {
        assert_eq!(step_f(&big(3)), big(10));
        assert_eq!(step_f(&big(10)), big(5));
        assert_eq!(step_f(&big(1)), big(4));
    }

    #[test]
    fn accelerated_steps() {
        assert_eq!(step_t(&big(3)), big(5));
        assert_eq!(step_t(&big(8)), big(4));
        assert_eq!(step_t(&big(5)), big(8));
    }

    #[test]
    fn orbit_of_3_plain() {
        let t = run_trajectory(&big(3), MapKind::F, 100).unwrap();
        let want: Vec<BigUint> = [3u64, 10, 5, 16, 8, 4, 2, 1].iter().map(|&v| big(v)).collect();
        assert_eq!(t.terms, want);
    }

    #[test]
    fn orbit_of_3_accelerated() {
        let t = run_trajectory(&big(3), MapKind::T, 100).unwrap();
        let want: Vec<BigUint> = [3u64, 5, 8, 4, 2, 1].iter().map(|&v| big(v)).collect();
        assert_eq!(t.terms, want);
    }

    #[test]
    fn orbit_of_1_is_trivial_cycle() {
        let t = run_trajectory(&big(1), MapKind::F, 100).unwrap();
        let want: Vec<BigUint> = [1u64, 4, 2, 1].iter().map(|&v| big(v)).collect();
        assert_eq!(t.terms, want);
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let err = run_trajectory(&big(27), MapKind::F, 10).unwrap_err();
        assert_eq!(err.budget, 10);
        assert_eq!(err.partial.terms.len(), 11);
        assert_eq!(err.partial.start(), &big(27));
        assert_ne!(err.partial.terms.last().unwrap(), &big(1));
    }

    #[test]
    fn gaps_of_3() {
        let t = run_trajectory(&big(3), MapKind::F, 100).unwrap();
        let g = gap_sequence(&t).unwrap();
        assert_eq!(g.gaps, vec![1, 4]);
        assert_eq!(g.k(), 1);
        assert_eq!(g.odd_count(), 2);
        assert_eq!(g.even_count(), 5);
        assert_eq!(g.g1(), 4);
    }

    #[test]
    fn gaps_of_5_and_17() {
        let t5 = run_trajectory(&big(5), MapKind::F, 100).unwrap();
        assert_eq!(gap_sequence(&t5).unwrap().gaps, vec![4]);
        let t17 = run_trajectory(&big(17), MapKind::F, 100).unwrap();
        assert_eq!(gap_sequence(&t17).unwrap().gaps, vec![2, 3, 4]);
    }

    #[test]
    fn gaps_of_1() {
        let t = run_trajectory(&big(1), MapKind::F, 100).unwrap();
        let g = gap_sequence(&t).unwrap();
        assert_eq!(g.gaps, vec![2]);
    }

    #[test]
    fn gap_extraction_rejects_bad_inputs() {
        let t = run_trajectory(&big(4), MapKind::F, 100).unwrap();
        assert!(matches!(gap_sequence(&t), Err(TrajectoryError::EvenStart)));
        let t = run_trajectory(&big(3), MapKind::T, 100).unwrap();
        assert!(matches!(
            gap_sequence(&t),
            Err(TrajectoryError::AcceleratedMap)
        ));
    }

    #[test]
    fn stats_of_3() {
        let s = stats(&big(3), DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(s.e, 5);
        assert_eq!(s.o, 2);
        assert_eq!(s.sigma_inf, 5);
        assert_eq!(s.completeness, Ratio::new(2, 5));
        assert_eq!(s.ones_ratio, Ratio::new(2, 5));
        let want_gamma = 5.0 / 3f64.ln();
        assert!((s.gamma - want_gamma).abs() < 1e-12);
        // 2^5/(3·3^2) = 32/27
        assert!((s.res - 32.0 / 27.0).abs() < 1e-12);
    }

    #[test]
    fn stats_of_993_residual() {
        let s = stats(&big(993), DEFAULT_STEP_BUDGET).unwrap();
        assert!((s.res - 1.253142).abs() <= 5e-7, "res = {}", s.res);
    }

    #[test]
    fn stats_of_power_of_two() {
        let s = stats(&big(1024), DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(s.o, 0);
        assert_eq!(s.e, 10);
        assert_eq!(s.sigma_inf, 10);
        assert!((s.gamma - 1.0 / std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(s.res, 1.0);
    }

    #[test]
    fn stats_rejects_one() {
        assert!(matches!(
            stats(&big(1), 100),
            Err(TrajectoryError::StartTooSmall)
        ));
    }

    #[test]
    fn profile_matches_trajectory_counts() {
        for m in 2u64..2000 {
            let p = count_profile(&big(m), DEFAULT_STEP_BUDGET).unwrap();
            let t = run_trajectory(&big(m), MapKind::F, DEFAULT_STEP_BUDGET).unwrap();
            let last = t.terms.len() - 1;
            let odd = t.terms[..last].iter().filter(|v| v.bit(0)).count() as u64;
            let even = t.terms[..last].iter().filter(|v| !v.bit(0)).count() as u64;
            assert_eq!(p.o, odd, "m={m}");
            assert_eq!(p.e, even, "m={m}");
            let sigma = count_t_steps(&big(m), DEFAULT_STEP_BUDGET).unwrap();
            assert_eq!(sigma, p.e, "m={m}: accelerated steps vs even count");
        }
    }

    #[test]
    fn profile_g1_matches_gap_sequence() {
        for m in (3u64..2000).step_by(2) {
            let p = count_profile(&big(m), DEFAULT_STEP_BUDGET).unwrap();
            let t = run_trajectory(&big(m), MapKind::F, DEFAULT_STEP_BUDGET).unwrap();
            let g = gap_sequence(&t).unwrap();
            assert_eq!(p.g1, g.g1(), "m={m}");
            assert_eq!(p.e, g.even_count(), "m={m}");
            assert_eq!(p.o, g.odd_count(), "m={m}");
        }
    }

    #[test]
    fn profile_of_one() {
        let p = count_profile(&big(1), 100).unwrap();
        assert_eq!((p.e, p.o, p.g1), (2, 1, 2));
        assert_eq!(count_t_steps(&big(1), 100).unwrap(), 2);
    }

    #[test]
    fn profile_budget_error() {
        assert!(matches!(
            count_profile(&big(27), 10),
            Err(TrajectoryError::StepBudget { .. })
        ));
        // 27 takes 111 plain steps; exactly enough budget must succeed.
        assert!(count_profile(&big(27), 111).is_ok());
        assert!(count_profile(&big(27), 110).is_err());
        assert!(run_trajectory(&big(27), MapKind::F, 111).is_ok());
        assert!(run_trajectory(&big(27), MapKind::F, 110).is_err());
    }

    #[test]
    fn big_value_escalation() {
        // 2^200: exactly 200 halvings, no odd terms.
        let m = BigUint::from(1u32) << 200u32;
        let p = count_profile(&m, 1000).unwrap();
        assert_eq!((p.e, p.o, p.g1), (200, 0, 200));
        // 2^200 + 1 is odd; profile must match the materialized orbit.
        let m1 = &m + 1u32;
        let p1 = count_profile(&m1, DEFAULT_STEP_BUDGET).unwrap();
        let t = run_trajectory(&m1, MapKind::F, DEFAULT_STEP_BUDGET).unwrap();
        let last = t.terms.len() - 1;
        let odd = t.terms[..last].iter().filter(|v| v.bit(0)).count() as u64;
        assert_eq!(p1.o, odd);
        assert_eq!(p1.e, t.steps() - odd);
        let sigma = count_t_steps(&m1, DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(sigma, p1.e);
    }
}
