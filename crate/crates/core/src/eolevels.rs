//! The even–odd families of inverse iterates, organized by level.
//!
//! Every odd start whose orbit reaches 1 belongs, per level n = k+2, to
//! exactly one parameterized family: branch E (an even number of plain
//! steps to the next odd term) or branch O (odd), selected by υ_0 ∈
//! {1, 2}. Free parameters υ_1..υ_k (bounded by 2·3^i) pick the family;
//! the final exponent offset c is not free — it is solved from a
//! congruence modulo 3^{k+2} via a discrete logarithm. Setting every
//! b-parameter to zero yields the family's smallest member, its
//! *primitive seed*.
//!
//! This module solves c, evaluates family members exactly, enumerates
//! all primitive seeds of a level (optionally in parallel, with output
//! identical to the serial order), implements the two corner families
//! and the z_k family, the balanced-mixing classifier with its literal
//! orbit verification, the residue-class partition tester, and the
//! gap-sequence counting bound.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::HashSet;
use std::fmt;

use crate::numeric::{dlog2_mod3pow, pow3_big, pow3_u64, two_generates_mod_3pow};
use crate::repcore::{rep_evaluate, CrandallRep, RepError};
use crate::trajectory::{
    count_profile, gap_sequence, run_trajectory, step_f, MapKind, TrajectoryError,
};

/// Default largest level for full-seed enumeration; level 6 already
/// holds 1,889,568 seeds.
pub const DEFAULT_LEVEL_CAP: u32 = 5;

#[derive(Debug, Clone, thiserror::Error)]
pub enum EOError {
    #[error("υ_{index} = {value} outside 1..={max}")]
    BadUpsilon { index: usize, value: u64, max: u64 },
    #[error("b-vector must have length {expected}, got {got}")]
    WrongBLength { expected: usize, got: usize },
    #[error("level {level} exceeds the configured cap {cap}")]
    ResourceCap { level: u32, cap: u32 },
    #[error("level must be at least 3")]
    LevelTooSmall,
    #[error("k = {k} too large for machine-word modular arithmetic")]
    KTooLarge { k: u32 },
    #[error("no exponent c solves the congruence (internal invariant violation)")]
    NoSolution,
    #[error("solved c = {c} falls outside {{2,4}} mod 6")]
    DomainViolation { c: u64 },
    #[error("family member is not odd (parameter corruption)")]
    NotOdd,
    #[error("exponent arithmetic overflowed a 64-bit word")]
    Overflow,
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
}

/// Which of the two branches a family belongs to. υ_0 = 1 selects E
/// (even plain-step count to the next odd term), υ_0 = 2 selects O.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    E,
    O,
}

impl Branch {
    pub fn upsilon0(self) -> u64 {
        match self {
            Branch::E => 1,
            Branch::O => 2,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::E => write!(f, "E"),
            Branch::O => write!(f, "O"),
        }
    }
}

/// Parameters of one even–odd family member: branch, level offset k
/// (level n = k+2), the υ-vector, the solved exponent c, and the free
/// b-vector (b_0, …, b_{k+1}).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EOParams {
    pub branch: Branch,
    pub k: u32,
    /// (υ_1, …, υ_k) with υ_i ∈ {1, …, 2·3^i}.
    pub upsilon: Vec<u64>,
    /// Solved, not free: 2 ≤ c < 2·3^{k+1}, c ≡ 2 or 4 (mod 6).
    pub c: u64,
    /// (b_0, …, b_{k+1}).
    pub b: Vec<u64>,
}

impl EOParams {
    /// Level number n = k+2.
    pub fn level(&self) -> u32 {
        self.k + 2
    }
}

/// A family's smallest member: all b set to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveSeed {
    pub params: EOParams,
    pub value: BigUint,
    /// Even-term count of the value's own orbit.
    pub e: u64,
    /// Odd-term count of the value's own orbit.
    pub o: u64,
}

impl PrimitiveSeed {
    /// The (c, υ_k, …, υ_1, υ_0) tuple notation.
    pub fn tuple(&self) -> Vec<u64> {
        let mut t = Vec::with_capacity(self.params.upsilon.len() + 2);
        t.push(self.params.c);
        t.extend(self.params.upsilon.iter().rev());
        t.push(self.params.branch.upsilon0());
        t
    }

    pub fn level(&self) -> u32 {
        self.params.level()
    }

    /// Seeds with c = 2 evaluate to values whose least-terms
    /// representation lives at a lower level (they are expansion
    /// duplicates), so their orbit's odd count falls short of the level.
    pub fn expansion_duplicate(&self) -> bool {
        self.params.c == 2
    }
}

fn check_upsilon(upsilon: &[u64]) -> Result<(), EOError> {
    for (i, &u) in upsilon.iter().enumerate() {
        let max = 2 * pow3_u64(i as u32 + 1);
        if u < 1 || u > max {
            return Err(EOError::BadUpsilon {
                index: i + 1,
                value: u,
                max,
            });
        }
    }
    Ok(())
}

/// The 3-smooth part of a family at b = 0:
/// a = 3^{k+1} + 3^k·2^{υ_0} + Σ_{j=1}^{k} 3^{k−j}·2^{υ_0+υ_1+⋯+υ_j}.
pub fn smooth_part(branch: Branch, upsilon: &[u64]) -> BigUint {
    let k = upsilon.len() as u32;
    let u0 = branch.upsilon0();
    let mut acc = pow3_big(k + 1) + (pow3_big(k) << u0);
    let mut exp = u0;
    for (j, &u) in upsilon.iter().enumerate() {
        exp += u;
        acc += pow3_big(k - 1 - j as u32) << exp;
    }
    acc
}

/// Solve for the unique c in [2, 2·3^{k+1}) with
/// 2^{c+υ_1+⋯+υ_k+υ_0} ≡ smooth_part (mod 3^{k+2}), via discrete log
/// base 2 (2 generates the units modulo every power of 3 — re-verified
/// here on every call). The solved c is checked against c ≡ 2, 4 (mod 6).
pub fn solve_c(branch: Branch, upsilon: &[u64]) -> Result<u64, EOError> {
    check_upsilon(upsilon)?;
    let k = upsilon.len() as u32;
    let n = k + 2;
    if n > 39 {
        return Err(EOError::KTooLarge { k });
    }
    assert!(
        two_generates_mod_3pow(n),
        "2 must generate the units modulo 3^{n}"
    );
    let md = pow3_u64(n);
    let a = (smooth_part(branch, upsilon) % md).to_u64_digits();
    let a = a.first().copied().unwrap_or(0);
    let dl = dlog2_mod3pow(a, n).ok_or(EOError::NoSolution)?;
    let order = 2 * pow3_u64(n - 1);
    let shift = (branch.upsilon0() + upsilon.iter().sum::<u64>()) % order;
    let c = (dl + order - shift) % order;
    if c < 2 || (c % 6 != 2 && c % 6 != 4) {
        return Err(EOError::DomainViolation { c });
    }
    Ok(c)
}

/// The exponent vector of the family member's representation.
fn eo_exponents(params: &EOParams) -> Result<Vec<u64>, EOError> {
    let k = params.k as usize;
    if params.upsilon.len() != k {
        return Err(EOError::WrongBLength {
            expected: k,
            got: params.upsilon.len(),
        });
    }
    check_upsilon(&params.upsilon)?;
    if params.b.len() != k + 2 {
        return Err(EOError::WrongBLength {
            expected: k + 2,
            got: params.b.len(),
        });
    }
    let u0 = params.branch.upsilon0();
    let mut exps = Vec::with_capacity(k + 3);
    exps.push(0u64);
    let mut acc: u128 = u0 as u128 + 2 * params.b[0] as u128;
    exps.push(u64::try_from(acc).map_err(|_| EOError::Overflow)?);
    for j in 1..=k {
        acc += params.upsilon[j - 1] as u128
            + 2 * params.b[j] as u128 * pow3_u64(j as u32) as u128;
        exps.push(u64::try_from(acc).map_err(|_| EOError::Overflow)?);
    }
    acc += params.c as u128 + 2 * params.b[k + 1] as u128 * pow3_u64(k as u32 + 1) as u128;
    exps.push(u64::try_from(acc).map_err(|_| EOError::Overflow)?);
    Ok(exps)
}

/// Evaluate a family member to its odd natural value, exactly.
pub fn eo_evaluate(params: &EOParams) -> Result<BigUint, EOError> {
    let exps = eo_exponents(params)?;
    let rep = CrandallRep::new(exps)?;
    let value = rep_evaluate(&rep)?;
    if !value.bit(0) {
        return Err(EOError::NotOdd);
    }
    Ok(value)
}

/// Build the primitive seed (all b = 0) for one branch and υ-vector,
/// solving c and attaching the value's own orbit counts.
pub fn primitive_seed(
    branch: Branch,
    upsilon: Vec<u64>,
    max_steps: u64,
) -> Result<PrimitiveSeed, EOError> {
    let c = solve_c(branch, &upsilon)?;
    let k = upsilon.len() as u32;
    let params = EOParams {
        branch,
        k,
        upsilon,
        c,
        b: vec![0; k as usize + 2],
    };
    let value = eo_evaluate(&params)?;
    let profile = count_profile(&value, max_steps)?;
    Ok(PrimitiveSeed {
        params,
        value,
        e: profile.e,
        o: profile.o,
    })
}

/// Number of seeds per branch at level n: Π_{i=1}^{k} 2·3^i.
fn per_branch_count(n: u32) -> u128 {
    let k = n - 2;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc *= 2 * pow3_u64(i) as u128;
    }
    acc
}

/// Decode a global enumeration index into (branch, υ-vector): branch E
/// occupies the first half; within a branch, υ_1 is the most significant
/// digit so the listing is lexicographic in (branch, υ_1, …, υ_k).
fn decode_seed_index(n: u32, index: u128) -> (Branch, Vec<u64>) {
    let per_branch = per_branch_count(n);
    let (branch, mut rem) = if index < per_branch {
        (Branch::E, index)
    } else {
        (Branch::O, index - per_branch)
    };
    let k = n - 2;
    let mut upsilon = vec![0u64; k as usize];
    let mut place = per_branch;
    for i in 1..=k {
        let radix = 2 * pow3_u64(i) as u128;
        place /= radix;
        upsilon[i as usize - 1] = (rem / place) as u64 + 1;
        rem %= place;
    }
    (branch, upsilon)
}

/// Enumerate every primitive seed of level n in lexicographic order
/// (branch E first, then υ_1, …, υ_k ascending). `threads` > 1 shards
/// the index range; shards are merged back in order, so the output is
/// identical to a serial run.
pub fn primitive_seeds(
    n: u32,
    level_cap: u32,
    threads: usize,
    max_steps: u64,
) -> Result<Vec<PrimitiveSeed>, EOError> {
    if n < 3 {
        return Err(EOError::LevelTooSmall);
    }
    if n > level_cap {
        return Err(EOError::ResourceCap { level: n, cap: level_cap });
    }
    let total = 2 * per_branch_count(n);
    let total_u = usize::try_from(total).map_err(|_| EOError::Overflow)?;
    let threads = threads.max(1).min(total_u);
    let build_range = |lo: u128, hi: u128| -> Result<Vec<PrimitiveSeed>, EOError> {
        let mut out = Vec::with_capacity((hi - lo) as usize);
        for idx in lo..hi {
            let (branch, upsilon) = decode_seed_index(n, idx);
            out.push(primitive_seed(branch, upsilon, max_steps)?);
        }
        Ok(out)
    };
    if threads == 1 {
        return build_range(0, total);
    }
    let chunk = total / threads as u128;
    let rem = total % threads as u128;
    let mut bounds = Vec::with_capacity(threads + 1);
    let mut at: u128 = 0;
    bounds.push(0u128);
    for t in 0..threads {
        at += chunk + if (t as u128) < rem { 1 } else { 0 };
        bounds.push(at);
    }
    let mut shards: Vec<Result<Vec<PrimitiveSeed>, EOError>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .windows(2)
            .map(|w| {
                let (lo, hi) = (w[0], w[1]);
                scope.spawn(move || build_range(lo, hi))
            })
            .collect();
        for h in handles {
            shards.push(h.join().expect("seed worker panicked"));
        }
    });
    let mut out = Vec::with_capacity(total_u);
    for shard in shards {
        out.extend(shard?);
    }
    Ok(out)
}

/// The closed-form families below level 3: the level-1 family
/// (2^{2b_0+2}−1)/3 and the two level-2 families
/// X = 2^{2b_0}·(2^{6b_1+5}−5)/9 + (2^{2b_0}−1)/3 and
/// Y = 2^{2b_0}·(2^{6b_1+4}−7)/9 + (2^{2b_0}−1)/3.
pub fn level12_sets(b0: u64, b1: u64) -> (BigUint, BigUint, BigUint) {
    let one = BigUint::one();
    let level1 = ((BigUint::one() << (2 * b0 + 2)) - &one) / 3u32;
    let tail = ((BigUint::one() << (2 * b0)) - &one) / 3u32;
    let x_core = ((BigUint::one() << (6 * b1 + 5)) - BigUint::from(5u32)) / 9u32;
    let y_core = ((BigUint::one() << (6 * b1 + 4)) - BigUint::from(7u32)) / 9u32;
    let x = (x_core << (2 * b0)) + &tail;
    let y = (y_core << (2 * b0)) + tail;
    (level1, x, y)
}

/// Number of families at level n: 2^{n−1}·3^{(n(n−3)+2)/2}.
pub fn level_count(n: u32) -> BigUint {
    let exp3 = (n as i64 * (n as i64 - 3) + 2) / 2;
    (BigUint::one() << (n as u64 - 1)) * pow3_big(exp3 as u32)
}

/// Families at level n+1 that are not expansion duplicates of level-n
/// families: (2·3^{n−1} − 1)·level_count(n).
pub fn new_set_count(n: u32) -> BigUint {
    (BigUint::from(2u32) * pow3_big(n - 1) - BigUint::one()) * level_count(n)
}

/// How many times each admissible c-value occurs at level n (n ≥ 2):
/// 2^{n−2}·3^{(n(n−5)+6)/2}.
pub fn c_multiplicity(n: u32) -> BigUint {
    assert!(n >= 2);
    let exp3 = (n as i64 * (n as i64 - 5) + 6) / 2;
    (BigUint::one() << (n as u64 - 2)) * pow3_big(exp3 as u32)
}

fn sum_2b3(b: &[u64], upto: usize) -> Result<u128, EOError> {
    let mut acc = 0u128;
    for (i, &bi) in b.iter().enumerate().take(upto + 1) {
        acc = acc
            .checked_add(2 * bi as u128 * pow3_u64(i as u32) as u128)
            .ok_or(EOError::Overflow)?;
    }
    Ok(acc)
}

fn build_family_rep(
    k: u32,
    b: &[u64],
    interior: impl Fn(usize) -> u64,
    top_const: u64,
) -> Result<BigUint, EOError> {
    if b.len() != k as usize + 2 {
        return Err(EOError::WrongBLength {
            expected: k as usize + 2,
            got: b.len(),
        });
    }
    let mut exps = vec![0u64];
    for j in 0..=k as usize {
        let e = interior(j) as u128 + sum_2b3(b, j)?;
        exps.push(u64::try_from(e).map_err(|_| EOError::Overflow)?);
    }
    let top = top_const as u128 + sum_2b3(b, k as usize + 1)?;
    exps.push(u64::try_from(top).map_err(|_| EOError::Overflow)?);
    let rep = CrandallRep::new(exps)?;
    let v = rep_evaluate(&rep)?;
    if !v.bit(0) {
        return Err(EOError::NotOdd);
    }
    Ok(v)
}

/// The even-branch corner family: interior exponents j+1 and top
/// 3^{k+1}+k+2, shifted by the b-parameters. At b = 0 this is the
/// all-υ=1 E-seed with c = 3^{k+1}+1, whose orbit has o = k+2 and
/// e = 3^{k+1}+k+2.
pub fn corner_even(k: u32, b: &[u64]) -> Result<BigUint, EOError> {
    let top = pow3_u64(k + 1)
        .checked_add(k as u64 + 2)
        .ok_or(EOError::Overflow)?;
    build_family_rep(k, b, |j| j as u64 + 1, top)
}

/// The odd-branch corner family: interior exponents 3^{j+1}−1 and top
/// 2·3^{k+1}−2. At b = 0 this is the O-seed with υ_i = 2·3^i and
/// c = 3^{k+1}−1. At k = 0 it degenerates to the representation of 1.
pub fn corner_odd(k: u32, b: &[u64]) -> Result<BigUint, EOError> {
    let top = (2 * pow3_u64(k + 1)).checked_sub(2).ok_or(EOError::Overflow)?;
    build_family_rep(k, b, |j| pow3_u64(j as u32 + 1) - 1, top)
}

/// Selector for the two corner families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CornerFamily {
    Even,
    Odd,
}

impl CornerFamily {
    pub fn evaluate(self, k: u32, b: &[u64]) -> Result<BigUint, EOError> {
        match self {
            CornerFamily::Even => corner_even(k, b),
            CornerFamily::Odd => corner_odd(k, b),
        }
    }
}

impl fmt::Display for CornerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CornerFamily::Even => write!(f, "even"),
            CornerFamily::Odd => write!(f, "odd"),
        }
    }
}

impl std::str::FromStr for CornerFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "even" => Ok(CornerFamily::Even),
            "odd" => Ok(CornerFamily::Odd),
            other => Err(format!("unknown corner family '{other}'")),
        }
    }
}

/// Top exponent of the z_k family: 15·3^{k−1}+k+3 for odd k,
/// 3^k+k+3 for even k.
pub fn zk(k: u32) -> u64 {
    if k % 2 == 1 {
        15 * pow3_u64(k - 1) + k as u64 + 3
    } else {
        pow3_u64(k) + k as u64 + 3
    }
}

/// The all-υ=1 odd-branch family: interior exponents j+2 and top z_k.
pub fn zk_evaluate(k: u32, b: &[u64]) -> Result<BigUint, EOError> {
    build_family_rep(k, b, |j| j as u64 + 2, zk(k))
}

/// Verify both halves of the power congruence: 2^{3^{k+1}+k+2+2b·3^{k+1}}
/// ≡ 3^{k+2} − 2^{k+2} (mod 3^{k+2}), and the exact identity
/// 3^{k+2} − 2^{k+2} = Σ_{j=0}^{k} 3^{k−j}·2^{j+1} + 3^{k+1}.
pub fn prop6_check(k: u32, b: u64) -> bool {
    let md = pow3_big(k + 2);
    let exponent = pow3_big(k + 1) * BigUint::from(2 * b + 1) + BigUint::from(k as u64 + 2);
    let lhs = BigUint::from(2u32).modpow(&exponent, &md);
    let rhs = &md - (BigUint::one() << (k as u64 + 2));
    if lhs != rhs {
        return false;
    }
    let mut sum = pow3_big(k + 1);
    for j in 0..=k {
        sum += pow3_big(k - j) << (j as u64 + 1);
    }
    sum == rhs
}

/// Where a seed's family maps after finitely many plain steps: the
/// target branch one level down, read from the parity of υ_1, and the
/// step count 2b_0 + 2 (branch E) or 2b_0 + 3 (branch O).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixingPrediction {
    pub target: Branch,
    /// Steps at b_0 = 0; the general count is 2·b_0 + this.
    pub base_iterations: u64,
}

impl MixingPrediction {
    pub fn iterations(&self, b0: u64) -> u64 {
        2 * b0 + self.base_iterations
    }
}

/// Predict the mixing target for a seed: υ_1 odd maps into the E-branch
/// one level down, υ_1 even into the O-branch; branch E members take an
/// even plain-step count (2b_0+2), branch O an odd count (2b_0+3).
pub fn mixing_classify(seed: &PrimitiveSeed) -> MixingPrediction {
    let u1 = seed.params.upsilon[0];
    MixingPrediction {
        target: if u1 % 2 == 1 { Branch::E } else { Branch::O },
        base_iterations: seed.params.branch.upsilon0() + 1,
    }
}

/// Outcome of literally iterating the map on a b_0-instantiated family
/// member and classifying where it lands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixingCheck {
    pub seed_value: BigUint,
    pub b0: u64,
    pub member: BigUint,
    pub iterations: u64,
    pub landed: BigUint,
    pub predicted: Branch,
    pub observed: Branch,
    pub ok: bool,
}

/// First-gap branch test: an odd value whose next odd term arrives
/// after an odd halving run is in branch E, after an even run in O.
fn observe_branch(m: &BigUint) -> Branch {
    let v = (m * 3u32 + 1u32).trailing_zeros().unwrap();
    if v % 2 == 1 {
        Branch::E
    } else {
        Branch::O
    }
}

/// Verify a mixing prediction by brute iteration: instantiate the
/// seed's family at b_0, apply the plain map the predicted number of
/// times, and compare the landed odd value's first-gap branch with the
/// prediction.
pub fn mixing_verify(seed: &PrimitiveSeed, b0: u64) -> Result<MixingCheck, EOError> {
    let prediction = mixing_classify(seed);
    let mut params = seed.params.clone();
    params.b[0] = b0;
    let member = eo_evaluate(&params)?;
    let iterations = prediction.iterations(b0);
    let mut x = member.clone();
    for _ in 0..iterations {
        x = step_f(&x);
    }
    if !x.bit(0) {
        return Err(EOError::NotOdd);
    }
    assert!(
        !(&x % 3u32).is_zero(),
        "iterates never land on multiples of 3"
    );
    let observed = observe_branch(&x);
    Ok(MixingCheck {
        seed_value: seed.value.clone(),
        b0,
        member,
        iterations,
        landed: x,
        predicted: prediction.target,
        observed,
        ok: observed == prediction.target,
    })
}

/// Report of the residue-class partition test: classification A (orbit
/// first-gap parity) against classification B (membership in the
/// 4m+1-closed residue families, found by stripping m ≡ 5 (mod 8) down
/// to a root and reading the root's class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C2Report {
    pub limit: u64,
    pub checked: u64,
    pub class_e: u64,
    pub class_o: u64,
    /// Odd m where the two classifications disagree (expected empty —
    /// but this is a conjecture tester, not a theorem).
    pub disagreements: Vec<u64>,
}

/// Classification B: strip x → (x−1)/4 while x ≡ 5 (mod 8); the root is
/// in E when ≡ 3 (mod 4), in O when ≡ 1 (mod 8).
fn classify_residue(m: u64) -> Branch {
    let mut x = m;
    while x % 8 == 5 {
        x = (x - 1) / 4;
    }
    if x % 4 == 3 {
        Branch::E
    } else {
        Branch::O
    }
}

/// Run both classifications over every odd 3 ≤ m ≤ limit whose orbit
/// reaches 1 within the step budget, reporting agreement counts and any
/// counterexamples.
pub fn conjecture_c2_test(limit: u64, max_steps: u64) -> Result<C2Report, EOError> {
    let mut report = C2Report {
        limit,
        checked: 0,
        class_e: 0,
        class_o: 0,
        disagreements: Vec::new(),
    };
    let mut m = 3u64;
    while m <= limit {
        // confirm the orbit reaches 1 before classifying
        count_profile(&BigUint::from(m), max_steps)?;
        let a = {
            let v = (3u128 * m as u128 + 1).trailing_zeros();
            if v % 2 == 1 {
                Branch::E
            } else {
                Branch::O
            }
        };
        let b = classify_residue(m);
        report.checked += 1;
        match a {
            Branch::E => report.class_e += 1,
            Branch::O => report.class_o += 1,
        }
        if a != b {
            report.disagreements.push(m);
        }
        m += 2;
    }
    Ok(report)
}

/// Count the distinct gap sequences of length k+1 with gap-sum ≤ r,
/// realized by odd starts below 2^r/3^{k+1}, against the lower bound
/// (2·⌊(r−2)/6k⌋)^k.
pub fn lemma_l1_count(k: u32, r: u64, max_steps: u64) -> Result<(u64, u64), EOError> {
    assert!(k >= 1 && r > 2);
    let ceiling = BigUint::one() << r;
    let three = pow3_big(k + 1);
    let mut seqs: HashSet<Vec<u64>> = HashSet::new();
    let mut m = BigUint::one();
    let two = BigUint::from(2u32);
    while &m * &three < ceiling {
        let profile = count_profile(&m, max_steps)?;
        if profile.o == k as u64 + 1 && profile.e <= r {
            let traj = run_trajectory(&m, MapKind::F, max_steps)
                .map_err(|err| TrajectoryError::StepBudget {
                    start: m.clone(),
                    budget: err.budget,
                })?;
            seqs.insert(gap_sequence(&traj)?.gaps);
        }
        m += &two;
    }
    let bound = 2 * ((r - 2) / (6 * k as u64));
    Ok((seqs.len() as u64, bound.pow(k)))
}
