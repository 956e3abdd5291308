//! Representation algebra for inverse iterates of 1.
//!
//! The central object is the Crandall representation: an odd natural m
//! whose orbit reaches 1 satisfies
//!
//! ```text
//! m = (2^{a_{k+1}} − Σ_{i=0}^{k} 2^{a_i}·3^{k−i}) / 3^{k+1},
//! ```
//!
//! with 0 = a_0 < a_1 < … < a_{k+1} read off the orbit's parity profile:
//! k+1 is the odd-term count and the a_i are cumulative even-term counts.
//! This module evaluates, extracts, expands, and canonicalizes such
//! representations; handles the 3-smooth "special" representations that
//! appear inside them; solves the cycle form of the same equation; builds
//! 4m+1 seed chains; and implements the reversed (Wirsching) sequence
//! encoding with its exact affine evaluation.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::numeric::{pow2_big, pow3_big};
use crate::trajectory::{
    count_profile, gap_sequence, run_trajectory, step_t, MapKind, TrajectoryError,
};

#[derive(Debug, Clone, thiserror::Error)]
pub enum RepError {
    #[error("exponents must start at 0 and strictly increase")]
    BadExponents,
    #[error("a representation needs at least two exponents")]
    TooShort,
    #[error("numerator 2^top − Σ 2^{{a_i}}3^{{k−i}} is not positive")]
    NotPositive,
    #[error("numerator is not divisible by 3^(k+1)")]
    NotDivisible,
    #[error("denominator 2^top − 3^(k+1) is not positive")]
    DegenerateDenominator,
    #[error("start must be odd")]
    EvenInput,
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
}

/// Exponent vector (a_0, …, a_{k+1}) of the inverse-iterate equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrandallRep {
    /// 0 = a_0 < a_1 < … < a_{k+1}.
    pub exponents: Vec<u64>,
}

impl CrandallRep {
    /// Validate and wrap an exponent vector: at least two entries,
    /// starting at 0, strictly increasing.
    pub fn new(exponents: Vec<u64>) -> Result<Self, RepError> {
        if exponents.len() < 2 {
            return Err(RepError::TooShort);
        }
        if exponents[0] != 0 || exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(RepError::BadExponents);
        }
        Ok(CrandallRep { exponents })
    }

    /// Level: the k in (a_0, …, a_{k+1}).
    pub fn k(&self) -> usize {
        self.exponents.len() - 2
    }

    /// The top exponent a_{k+1} (the orbit's even-term count).
    pub fn top(&self) -> u64 {
        *self.exponents.last().unwrap()
    }
}

impl fmt::Display for CrandallRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Numerator 2^{a_{k+1}} − Σ_{i=0}^{k} 2^{a_i}·3^{k−i} as a signed value.
fn rep_numerator(exponents: &[u64]) -> BigInt {
    let k = exponents.len() - 2;
    let top = BigInt::from(pow2_big(exponents[k + 1]));
    let mut sum = BigInt::zero();
    for (i, &a) in exponents[..=k].iter().enumerate() {
        sum += BigInt::from(pow3_big((k - i) as u32) * pow2_big(a));
    }
    top - sum
}

/// Evaluate a representation to the natural number it encodes.
pub fn rep_evaluate(rep: &CrandallRep) -> Result<BigUint, RepError> {
    let num = rep_numerator(&rep.exponents);
    if !num.is_positive() {
        return Err(RepError::NotPositive);
    }
    let num = num.to_biguint().unwrap();
    let den = pow3_big(rep.k() as u32 + 1);
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    if !r.is_zero() {
        return Err(RepError::NotDivisible);
    }
    Ok(q)
}

/// Least-terms representation of an odd m whose orbit reaches 1: the
/// exponents are the cumulative even-term counts at each odd term, so
/// a_{k+1} = e(m) and k+1 = o(m). Evaluating the result returns m.
pub fn rep_from_trajectory(m: &BigUint, max_steps: u64) -> Result<CrandallRep, RepError> {
    if !m.bit(0) {
        return Err(RepError::EvenInput);
    }
    let traj = run_trajectory(m, MapKind::F, max_steps).map_err(|e| TrajectoryError::StepBudget {
        start: m.clone(),
        budget: e.budget,
    })?;
    let gaps = gap_sequence(&traj)?;
    let mut exponents = Vec::with_capacity(gaps.gaps.len() + 1);
    let mut acc = 0u64;
    exponents.push(0);
    for g in &gaps.gaps {
        acc += g;
        exponents.push(acc);
    }
    Ok(CrandallRep { exponents })
}

/// The value-preserving expansion: (…, a_{k+1}) → (…, a_{k+1}, a_{k+1}+2)
/// lifts a level-k representation to level k+1 with the same value.
pub fn rep_expand(rep: &CrandallRep) -> CrandallRep {
    let mut exponents = rep.exponents.clone();
    let top = *exponents.last().unwrap();
    exponents.push(top + 2);
    CrandallRep { exponents }
}

/// Undo expansions: strip trailing (…, a, a+2) steps while at least two
/// exponents remain. Least-terms representations extracted from orbits
/// are already canonical (their final gap is ≥ 4 for m ≥ 3, and (0,2),
/// the representation of 1, cannot shrink further).
pub fn rep_canonical(rep: &CrandallRep) -> CrandallRep {
    let mut exponents = rep.exponents.clone();
    while exponents.len() > 2 {
        let n = exponents.len();
        if exponents[n - 1] == exponents[n - 2] + 2 {
            exponents.pop();
        } else {
            break;
        }
    }
    CrandallRep { exponents }
}

/// A 3-smooth sum Σ_{i=0}^{k} 3^{k−i}·2^{a_i} with 0 = a_0 < … < a_k
/// ("special of level k"). Each n admits at most one such form per level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmoothRep {
    pub k: u32,
    /// 0 = a_0 < a_1 < … < a_k (k+1 entries).
    pub exponents: Vec<u64>,
}

impl SmoothRep {
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::zero();
        for (i, &a) in self.exponents.iter().enumerate() {
            acc += pow3_big(self.k - i as u32) * pow2_big(a);
        }
        acc
    }
}

/// The unique level-k special representation of n, if it exists.
///
/// Deterministic peeling: a_0 = 0 accounts for 3^k; in the remainder the
/// 2-adic valuation forces each successive exponent (all later terms
/// carry strictly higher powers of two). Any underflow, early zero, or
/// leftover means no representation at this level.
pub fn smooth_special_rep(n: &BigUint, k: u32) -> Option<SmoothRep> {
    let three_k = pow3_big(k);
    if *n < three_k {
        return None;
    }
    let mut r = n - three_k;
    let mut exponents = vec![0u64];
    let mut prev = 0u64;
    for i in 1..=k {
        if r.is_zero() {
            return None; // missing terms
        }
        let a = r.trailing_zeros().unwrap();
        if a <= prev {
            return None; // exponents must strictly increase
        }
        let term = pow3_big(k - i) * pow2_big(a);
        if r < term {
            return None;
        }
        r -= term;
        exponents.push(a);
        prev = a;
    }
    if !r.is_zero() {
        return None;
    }
    Some(SmoothRep { k, exponents })
}

/// For an odd x reaching 1: a = e(x), k = o(x), and the level-(k−1)
/// special representation of n = 2^a − 3^k·x. The smooth exponents
/// coincide with the interior exponents of x's least-terms
/// representation.
pub fn prop1_witness(x: &BigUint, max_steps: u64) -> Result<(u64, u64, SmoothRep), RepError> {
    if !x.bit(0) {
        return Err(RepError::EvenInput);
    }
    let profile = count_profile(x, max_steps)?;
    let (a, k) = (profile.e, profile.o);
    let n = BigInt::from(pow2_big(a)) - BigInt::from(pow3_big(k as u32) * x);
    if !n.is_positive() {
        return Err(RepError::NotPositive);
    }
    let n = n.to_biguint().unwrap();
    let rep = smooth_special_rep(&n, k as u32 - 1).ok_or(RepError::NotDivisible)?;
    Ok((a, k, rep))
}

/// The cycle form of the inverse-iterate equation: a strictly increasing
/// exponent tuple determines q* = Σ 2^{a_i}3^{k−i} / (2^{a_{k+1}} − 3^{k+1});
/// a fixed point q* of the orbit map. q* = 1 is the trivial cycle; an
/// integral q* > 1 would witness a non-trivial cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleCandidate {
    pub exponents: Vec<u64>,
    pub q_star: BigRational,
}

impl CycleCandidate {
    pub fn is_trivial(&self) -> bool {
        self.q_star.is_one()
    }

    /// An integer q* strictly above 1 — the non-trivial cycle signal.
    pub fn is_integral_above_one(&self) -> bool {
        self.q_star.is_integer() && self.q_star > BigRational::one()
    }
}

/// Solve the cycle equation for one exponent tuple (0 = a_0 < … < a_{k+1}).
pub fn cycle_solve(exponents: &[u64]) -> Result<CycleCandidate, RepError> {
    let rep = CrandallRep::new(exponents.to_vec())?;
    let k = rep.k();
    let den = BigInt::from(pow2_big(rep.top())) - BigInt::from(pow3_big(k as u32 + 1));
    if !den.is_positive() {
        return Err(RepError::DegenerateDenominator);
    }
    let mut num = BigInt::zero();
    for (i, &a) in exponents[..=k].iter().enumerate() {
        num += BigInt::from(pow3_big((k - i) as u32) * pow2_big(a));
    }
    Ok(CycleCandidate {
        exponents: exponents.to_vec(),
        q_star: BigRational::new(num, den),
    })
}

/// Outcome of an exhaustive cycle search over all exponent profiles with
/// k ≤ k_max and top exponent ≤ a_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleScanReport {
    pub k_max: u32,
    pub a_max: u64,
    /// Number of exponent tuples examined.
    pub profiles_searched: u64,
    /// Tuples with q* = 1 (the trivial cycle and its expansions).
    pub trivial: Vec<Vec<u64>>,
    /// Tuples with integral q* > 1, paired with q*. Expected empty; a
    /// non-empty list here is a non-trivial cycle witness.
    pub nontrivial: Vec<(Vec<u64>, BigUint)>,
}

/// Enumerate every profile 0 = a_0 < … < a_{k+1} ≤ a_max for each
/// k ≤ k_max and classify the resulting q* values.
///
/// Stays in machine words when the bounds allow (terms are below
/// 3^{k+1}·2^{a_max}), falling back to exact big arithmetic otherwise.
pub fn cycle_scan(k_max: u32, a_max: u64) -> CycleScanReport {
    let mut report = CycleScanReport {
        k_max,
        a_max,
        profiles_searched: 0,
        trivial: Vec::new(),
        nontrivial: Vec::new(),
    };
    // u128 path is safe when every term 3^{k−i}·2^{a_i} and their sum fit
    // comfortably: (k+2)·3^{k+1}·2^{a_max} < 2^127.
    let fast = (k_max as u64 + 2).checked_mul(a_max).is_some()
        && ((k_max as f64 + 1.0) * 3f64.log2() + a_max as f64 + (k_max as f64 + 2.0).log2())
            < 127.0;
    let mut tuple: Vec<u64> = Vec::new();
    for k in 0..=k_max {
        let len = k as usize + 2; // a_0 .. a_{k+1}
        tuple.clear();
        tuple.push(0);
        // Depth-first enumeration of strictly increasing tails.
        enumerate_tails(&mut tuple, len, a_max, &mut |t| {
            report.profiles_searched += 1;
            if fast {
                let kk = t.len() - 2;
                let den = (1u128 << t[kk + 1]) as i128 - 3i128.pow(kk as u32 + 1);
                if den <= 0 {
                    return;
                }
                let mut num = 0u128;
                for (i, &a) in t[..=kk].iter().enumerate() {
                    num += 3u128.pow((kk - i) as u32) << a;
                }
                let den = den as u128;
                if num.is_multiple_of(den) {
                    let q = num / den;
                    if q == 1 {
                        report.trivial.push(t.to_vec());
                    } else if q > 1 {
                        report.nontrivial.push((t.to_vec(), BigUint::from(q)));
                    }
                }
            } else if let Ok(cand) = cycle_solve(t) {
                if cand.is_trivial() {
                    report.trivial.push(t.to_vec());
                } else if cand.is_integral_above_one() {
                    let q = cand.q_star.to_integer().to_biguint().unwrap();
                    report.nontrivial.push((t.to_vec(), q));
                }
            }
        });
    }
    report
}

fn enumerate_tails(tuple: &mut Vec<u64>, len: usize, a_max: u64, visit: &mut impl FnMut(&[u64])) {
    if tuple.len() == len {
        visit(tuple);
        return;
    }
    let lo = tuple.last().unwrap() + 1;
    for a in lo..=a_max {
        tuple.push(a);
        enumerate_tails(tuple, len, a_max, visit);
        tuple.pop();
    }
}

/// Result of checking the cycle lower bound at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBoundReport {
    pub k: u32,
    pub a_max: u64,
    pub profiles_searched: u64,
    /// Integral q* > 1 found (expected none), with the bound check:
    /// each must exceed 3^{k−1}.
    pub nontrivial: Vec<(Vec<u64>, BigUint)>,
    /// True when every non-trivial solution found (if any) exceeds
    /// 3^{k−1}; vacuously true on an empty find.
    pub all_above_lower_bound: bool,
}

/// Exhaustively search level k up to a top exponent cap and verify that
/// any integral q* > 1 exceeds 3^{k−1}. The expected outcome is an empty
/// find, which leaves the bound vacuously satisfied.
pub fn cycle_lower_bound_check(k: u32, a_max: u64) -> CycleBoundReport {
    assert!(k >= 1, "the lower bound is stated for k ≥ 1");
    let mut profiles = 0u64;
    let mut nontrivial = Vec::new();
    let mut tuple = vec![0u64];
    enumerate_tails(&mut tuple, k as usize + 2, a_max, &mut |t| {
        profiles += 1;
        if let Ok(cand) = cycle_solve(t) {
            if cand.is_integral_above_one() {
                let q = cand.q_star.to_integer().to_biguint().unwrap();
                nontrivial.push((t.to_vec(), q));
            }
        }
    });
    let bound = pow3_big(k - 1);
    let all_above = nontrivial.iter().all(|(_, q)| *q > bound);
    CycleBoundReport {
        k,
        a_max,
        profiles_searched: profiles,
        nontrivial,
        all_above_lower_bound: all_above,
    }
}

/// The chain m, 4m+1, 4(4m+1)+1, … of the requested length. Successive
/// members' orbits hit 1 two plain-map steps apart.
pub fn seed_chain(m: &BigUint, count: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(m.clone());
    for _ in 1..count {
        let next = out.last().unwrap() * 4u32 + 1u32;
        out.push(next);
    }
    out
}

/// Reversed-form sequence (α_0, …, α_μ): the halving-run lengths of an
/// accelerated orbit, α_0 being the (empty, for odd starts) leading run
/// and each later α_j the run following the j-th odd step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WirschingSeq {
    pub alphas: Vec<u64>,
}

impl WirschingSeq {
    pub fn new(alphas: Vec<u64>) -> Self {
        assert!(!alphas.is_empty(), "a sequence has at least α_0");
        WirschingSeq { alphas }
    }

    /// Length ℓ(s) = μ.
    pub fn ell(&self) -> u64 {
        (self.alphas.len() - 1) as u64
    }

    /// Absolute value |s| = Σ α_i.
    pub fn abs_value(&self) -> u64 {
        self.alphas.iter().sum()
    }

    /// Norm ‖s‖ = |s| + ℓ(s); equals the accelerated step count of the
    /// orbit the sequence encodes.
    pub fn norm(&self) -> u64 {
        self.abs_value() + self.ell()
    }

    /// The "small sequence" condition α_i < 2·3^{i−1} for all i; at
    /// i = 0 the bound is 2/3, forcing α_0 = 0.
    pub fn is_small(&self) -> bool {
        self.alphas.iter().enumerate().all(|(i, &a)| {
            if i == 0 {
                a == 0
            } else {
                BigUint::from(a) < BigUint::from(2u32) * pow3_big(i as u32 - 1)
            }
        })
    }
}

impl fmt::Display for WirschingSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.alphas.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Encode an odd m reaching 1 as the halving-run profile of its
/// accelerated orbit; `wirsching_eval(s, 1) = m` and ‖s‖ equals the
/// orbit's accelerated step count.
pub fn wirsching_encode(m: &BigUint, max_steps: u64) -> Result<WirschingSeq, RepError> {
    if !m.bit(0) {
        return Err(RepError::EvenInput);
    }
    let mut alphas = vec![0u64];
    let mut x = m.clone();
    let one = BigUint::one();
    let mut steps = 0u64;
    let budget = || {
        RepError::Trajectory(TrajectoryError::StepBudget {
            start: m.clone(),
            budget: max_steps,
        })
    };
    loop {
        // x is odd here; take the odd accelerated step, then absorb the
        // halving run that follows.
        x = step_t(&x);
        steps += 1;
        if steps > max_steps {
            return Err(budget());
        }
        let mut run = 0u64;
        while !x.bit(0) {
            x >>= 1;
            run += 1;
            steps += 1;
            if steps > max_steps {
                return Err(budget());
            }
        }
        alphas.push(run);
        if x == one {
            return Ok(WirschingSeq { alphas });
        }
    }
}

/// Exact affine evaluation ζ_s(q) = h(s)·q − l(s) with
/// h = 2^{‖s‖}/3^{ℓ} and l = Σ_{k=0}^{μ−1} 2^{k+α_0+…+α_k}/3^{k+1}.
/// Walking backward from q = 1 reconstructs the encoded start.
pub fn wirsching_eval(s: &WirschingSeq, q: &BigRational) -> BigRational {
    let h = BigRational::new(
        BigInt::from(pow2_big(s.norm())),
        BigInt::from(pow3_big(s.ell() as u32)),
    );
    let mut l = BigRational::zero();
    let mut alpha_prefix = 0u64;
    for k in 0..s.ell() {
        alpha_prefix += s.alphas[k as usize];
        l += BigRational::new(
            BigInt::from(pow2_big(k + alpha_prefix)),
            BigInt::from(pow3_big(k as u32 + 1)),
        );
    }
    h * q - l
}

/// Concatenation s·w = (s_0, …, s_{μ−1}, s_μ + w_0, w_1, …); composition
/// law: ζ_{s·w} = ζ_s ∘ ζ_w.
pub fn wirsching_concat(s: &WirschingSeq, w: &WirschingSeq) -> WirschingSeq {
    let mut alphas = s.alphas.clone();
    let last = alphas.last_mut().unwrap();
    *last += w.alphas[0];
    alphas.extend_from_slice(&w.alphas[1..]);
    WirschingSeq { alphas }
}
