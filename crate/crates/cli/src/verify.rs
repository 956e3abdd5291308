//! Named self-check suites behind `verify`: each runs a bounded, exact
//! property check over the library and reports pass/fail with a detail
//! line. Scales are chosen to finish in seconds; the longer-range
//! versions live in the test suites.

use collatz_lab::eolevels::{
    conjecture_c2_test, corner_even, corner_odd, lemma_l1_count, mixing_verify, primitive_seeds,
    prop6_check, zk, zk_evaluate, Branch,
};
use collatz_lab::repcore::{
    cycle_scan, rep_canonical, rep_evaluate, rep_expand, rep_from_trajectory, wirsching_encode,
    wirsching_eval, WirschingSeq,
};
use collatz_lab::trajectory::stats;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

pub struct SuiteResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub const SUITE_NAMES: &[&str] = &[
    "roundtrip",
    "table1",
    "mixing",
    "prop6",
    "c2",
    "lemma-l1",
    "cycles",
    "corner",
    "zk",
    "wirsching",
];

pub fn run_suite(name: &'static str, budget: u64) -> Option<SuiteResult> {
    let outcome = match name {
        "roundtrip" => suite_roundtrip(budget),
        "table1" => suite_table1(budget),
        "mixing" => suite_mixing(budget),
        "prop6" => suite_prop6(),
        "c2" => suite_c2(budget),
        "lemma-l1" => suite_lemma_l1(budget),
        "cycles" => suite_cycles(),
        "corner" => suite_corner(budget),
        "zk" => suite_zk(budget),
        "wirsching" => suite_wirsching(budget),
        _ => return None,
    };
    let (pass, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(SuiteResult { name, pass, detail })
}

fn suite_roundtrip(budget: u64) -> Result<String, String> {
    let mut count = 0u64;
    for m in (3u64..=20_001).step_by(2) {
        let big = BigUint::from(m);
        let rep = rep_from_trajectory(&big, budget).map_err(|e| format!("m={m}: {e}"))?;
        let back = rep_evaluate(&rep).map_err(|e| format!("m={m}: {e}"))?;
        if back != big {
            return Err(format!("m={m} round-tripped to {back}"));
        }
        count += 1;
    }
    let mut expanded = 0u64;
    for m in (3u64..=2_001).step_by(2) {
        let big = BigUint::from(m);
        let rep = rep_from_trajectory(&big, budget).map_err(|e| format!("m={m}: {e}"))?;
        let mut cur = rep.clone();
        for _ in 0..3 {
            cur = rep_expand(&cur);
            let v = rep_evaluate(&cur).map_err(|e| format!("m={m} expanded: {e}"))?;
            if v != big {
                return Err(format!("expansion changed value of m={m}"));
            }
            expanded += 1;
        }
        if rep_canonical(&cur) != rep {
            return Err(format!("canonicalization failed for m={m}"));
        }
    }
    Ok(format!(
        "{count} starts round-tripped, {expanded} expansions value-invariant"
    ))
}

/// Frozen level-3 reference rows (branch, υ1, c, value).
const LEVEL3_TABLE: &[(Branch, u64, u64, u64)] = &[
    (Branch::E, 1, 10, 151),
    (Branch::E, 2, 8, 75),
    (Branch::E, 3, 16, 38835),
    (Branch::E, 4, 2, 3),
    (Branch::E, 5, 4, 35),
    (Branch::E, 6, 14, 77667),
    (Branch::O, 1, 16, 19417),
    (Branch::O, 2, 2, 1),
    (Branch::O, 3, 4, 17),
    (Branch::O, 4, 14, 38833),
    (Branch::O, 5, 10, 4849),
    (Branch::O, 6, 8, 2417),
];

fn suite_table1(budget: u64) -> Result<String, String> {
    let seeds = primitive_seeds(3, 5, 1, budget).map_err(|e| e.to_string())?;
    if seeds.len() != LEVEL3_TABLE.len() {
        return Err(format!("expected 12 seeds, got {}", seeds.len()));
    }
    for (seed, &(branch, u1, c, value)) in seeds.iter().zip(LEVEL3_TABLE) {
        if seed.params.branch != branch
            || seed.params.upsilon != vec![u1]
            || seed.params.c != c
            || seed.value != BigUint::from(value)
        {
            return Err(format!(
                "row ({branch},{u1}) mismatch: got c={} value={}",
                seed.params.c, seed.value
            ));
        }
    }
    Ok(format!("{}/12 rows match", LEVEL3_TABLE.len()))
}

fn suite_mixing(budget: u64) -> Result<String, String> {
    let seeds = primitive_seeds(3, 5, 1, budget).map_err(|e| e.to_string())?;
    let mut checks = 0u64;
    for seed in &seeds {
        for b0 in 0..=2 {
            let check = mixing_verify(seed, b0).map_err(|e| e.to_string())?;
            if !check.ok {
                return Err(format!(
                    "seed {} b0={b0}: predicted {} observed {}",
                    seed.value, check.predicted, check.observed
                ));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks}/{checks} checks agree"))
}

fn suite_prop6() -> Result<String, String> {
    let mut checks = 0u64;
    for k in 0..=8 {
        for b in 0..=3 {
            if !prop6_check(k, b) {
                return Err(format!("congruence fails at k={k} b={b}"));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks}/{checks} congruences hold"))
}

fn suite_c2(budget: u64) -> Result<String, String> {
    let report = conjecture_c2_test(20_001, budget).map_err(|e| e.to_string())?;
    if !report.disagreements.is_empty() {
        return Err(format!(
            "{} disagreements, first at m={}",
            report.disagreements.len(),
            report.disagreements[0]
        ));
    }
    Ok(format!(
        "{} starts, {} in E, {} in O, 0 disagreements",
        report.checked, report.class_e, report.class_o
    ))
}

fn suite_lemma_l1(budget: u64) -> Result<String, String> {
    let mut details = Vec::new();
    for (k, r) in [(1u32, 8u64), (1, 12), (2, 20)] {
        let (count, bound) = lemma_l1_count(k, r, budget).map_err(|e| e.to_string())?;
        if count < bound {
            return Err(format!("(k={k}, r={r}): count {count} below bound {bound}"));
        }
        details.push(format!("(k={k},r={r}): {count}≥{bound}"));
    }
    Ok(details.join(", "))
}

fn suite_cycles() -> Result<String, String> {
    let report = cycle_scan(5, 30);
    if !report.nontrivial.is_empty() {
        return Err(format!(
            "found integral q*>1 at {:?}",
            report.nontrivial[0].0
        ));
    }
    Ok(format!(
        "{} profiles, q*=1 the only integral solution ({} trivial tuples)",
        report.profiles_searched,
        report.trivial.len()
    ))
}

fn suite_corner(budget: u64) -> Result<String, String> {
    let mut checks = 0u64;
    for k in 0..=4u32 {
        let b = vec![0u64; k as usize + 2];
        let even = corner_even(k, &b).map_err(|e| e.to_string())?;
        let st = stats(&even, budget).map_err(|e| e.to_string())?;
        let expect_e = 3u64.pow(k + 1) + k as u64 + 2;
        if st.o != k as u64 + 2 || st.e != expect_e {
            return Err(format!(
                "even corner k={k}: o={} e={} (expected {}/{expect_e})",
                st.o,
                st.e,
                k + 2
            ));
        }
        checks += 1;
        let odd = corner_odd(k, &b).map_err(|e| e.to_string())?;
        let (expect_o, expect_e) = if k == 0 {
            (1, 2)
        } else {
            (k as u64 + 2, 2 * 3u64.pow(k + 1) - 2)
        };
        let (o, e) = if odd == BigUint::one() {
            (1, 2)
        } else {
            let st = stats(&odd, budget).map_err(|e| e.to_string())?;
            (st.o, st.e)
        };
        if o != expect_o || e != expect_e {
            return Err(format!(
                "odd corner k={k}: o={o} e={e} (expected {expect_o}/{expect_e})"
            ));
        }
        checks += 1;
    }
    Ok(format!("{checks}/{checks} corner orbits match"))
}

fn suite_zk(budget: u64) -> Result<String, String> {
    let expected = [4u64, 19, 14, 141, 88, 1223, 738, 10945];
    for (k, &z) in expected.iter().enumerate() {
        if zk(k as u32) != z {
            return Err(format!("z_{k} = {} (expected {z})", zk(k as u32)));
        }
    }
    let mut orbits = 0u64;
    for k in 0..=4u32 {
        let v = zk_evaluate(k, &vec![0u64; k as usize + 2]).map_err(|e| e.to_string())?;
        if v != BigUint::one() {
            stats(&v, budget).map_err(|e| format!("z-family k={k}: {e}"))?;
        }
        orbits += 1;
    }
    Ok(format!(
        "{} anchors exact, {orbits} family orbits reach 1",
        expected.len()
    ))
}

fn suite_wirsching(budget: u64) -> Result<String, String> {
    let three = BigUint::from(3u32);
    let s = wirsching_encode(&three, budget).map_err(|e| e.to_string())?;
    if s.alphas != vec![0, 0, 3] || s.ell() != 2 || s.abs_value() != 3 || s.norm() != 5 {
        return Err(format!("s(3) = {s}, ℓ={}, ‖s‖={}", s.ell(), s.norm()));
    }
    let one = BigRational::one();
    if wirsching_eval(&s, &one) != BigRational::from_integer(3.into()) {
        return Err("ζ_{s(3)}(1) ≠ 3".into());
    }
    let ext = WirschingSeq::new(vec![0, 0, 3, 1]);
    if wirsching_eval(&ext, &one) != BigRational::from_integer(3.into()) {
        return Err("ζ_{(0,0,3,1)}(1) ≠ 3".into());
    }
    let mut count = 0u64;
    for m in (1u64..=4_001).step_by(2) {
        let big = BigUint::from(m);
        let enc = wirsching_encode(&big, budget).map_err(|e| format!("m={m}: {e}"))?;
        if wirsching_eval(&enc, &one) != BigRational::from_integer(m.into()) {
            return Err(format!("eval-roundtrip failed at m={m}"));
        }
        count += 1;
    }
    Ok(format!("anchors exact, {count} encodings round-tripped"))
}
