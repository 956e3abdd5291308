//! Randomized structural invariants tying the modules together: orbit
//! counts against gap sequences and representations, encoding
//! composition, seed chains, and record-scan sharding.

use collatz_lab::asymptotics::{replay_records, scan_records, scan_shard, StatKind};
use collatz_lab::repcore::{
    prop1_witness, rep_from_trajectory, seed_chain, wirsching_concat, wirsching_encode,
    wirsching_eval,
};
use collatz_lab::trajectory::{gap_sequence, run_trajectory, stats, MapKind, DEFAULT_STEP_BUDGET};
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// Gap sequence, statistics, and representation of one start agree:
    /// the gaps partition the orbit (count o, total e), the accelerated
    /// step count equals e, and the representation exponents are the
    /// prefix sums of the gaps.
    #[test]
    fn orbit_counts_cohere(seed in 1u64..5_000_000) {
        let m = BigUint::from(2 * seed + 1);
        let st = stats(&m, DEFAULT_STEP_BUDGET).unwrap();
        let traj = run_trajectory(&m, MapKind::F, DEFAULT_STEP_BUDGET).unwrap();
        let gaps = gap_sequence(&traj).unwrap();
        prop_assert_eq!(gaps.odd_count(), st.o);
        prop_assert_eq!(gaps.even_count(), st.e);
        prop_assert_eq!(st.sigma_inf, st.e);
        prop_assert!(gaps.g1() >= 4); // every odd start ≥ 3 ends …,16,8,4,2,1
        let rep = rep_from_trajectory(&m, DEFAULT_STEP_BUDGET).unwrap();
        let diffs: Vec<u64> = rep.exponents.windows(2).map(|w| w[1] - w[0]).collect();
        prop_assert_eq!(diffs, gaps.gaps.clone());
    }

    /// The witness decomposition is consistent: a = e, k = o, and the
    /// smooth exponents are the interior of the start's representation.
    #[test]
    fn witness_matches_representation(seed in 1u64..1_000_000) {
        let m = BigUint::from(2 * seed + 1);
        let st = stats(&m, DEFAULT_STEP_BUDGET).unwrap();
        let (a, k, smooth) = prop1_witness(&m, DEFAULT_STEP_BUDGET).unwrap();
        prop_assert_eq!(a, st.e);
        prop_assert_eq!(k, st.o);
        let rep = rep_from_trajectory(&m, DEFAULT_STEP_BUDGET).unwrap();
        let interior = &rep.exponents[..rep.exponents.len() - 1];
        prop_assert_eq!(&smooth.exponents[..], interior);
    }

    /// Concatenation of encodings composes their affine evaluations,
    /// with the right-hand factor acting first.
    #[test]
    fn concat_composes(s1 in 1u64..3_000, s2 in 1u64..3_000, num in -9i64..10, den in 1u64..5) {
        let m1 = BigUint::from(2 * s1 + 1);
        let m2 = BigUint::from(2 * s2 + 1);
        let s = wirsching_encode(&m1, DEFAULT_STEP_BUDGET).unwrap();
        let w = wirsching_encode(&m2, DEFAULT_STEP_BUDGET).unwrap();
        let sw = wirsching_concat(&s, &w);
        let q = BigRational::new(num.into(), (den as i64).into());
        prop_assert_eq!(wirsching_eval(&sw, &q), wirsching_eval(&s, &wirsching_eval(&w, &q)));
    }

    /// Along the chain m, 4m+1, 16m+5, … every orbit reaches 1 exactly
    /// two accelerated steps later than its predecessor.
    #[test]
    fn chain_orbit_lengths_step_by_two(seed in 1u64..200_000, len in 2usize..6) {
        let m = BigUint::from(2 * seed + 1);
        let chain = seed_chain(&m, len);
        prop_assert_eq!(chain.len(), len);
        let sigmas: Vec<u64> = chain
            .iter()
            .map(|x| stats(x, DEFAULT_STEP_BUDGET).unwrap().sigma_inf)
            .collect();
        for w in sigmas.windows(2) {
            prop_assert_eq!(w[1], w[0] + 2);
        }
    }

    /// Splitting a record scan into arbitrary shards and replaying the
    /// merged candidates reproduces the serial scan exactly.
    #[test]
    fn shard_replay_is_serial(limit in 50u64..1_500, width in 1u64..400) {
        for stat in [StatKind::Completeness, StatKind::Gamma, StatKind::Res] {
            let serial = scan_records(limit, stat, DEFAULT_STEP_BUDGET).unwrap();
            let mut candidates = Vec::new();
            let mut lo = 2u64;
            while lo <= limit {
                let hi = (lo + width).min(limit + 1);
                candidates.extend(scan_shard(lo, hi, stat, DEFAULT_STEP_BUDGET).unwrap());
                lo = hi;
            }
            prop_assert_eq!(&replay_records(&candidates), &serial);
        }
    }
}
