use proptest::prelude::*;
use rsp::consistency::{check_overlap, check_solv, compare_methods, CheckOptions, Mode, Verdict};
use rsp::corpus::{mutate, random_tower, TowerConfig};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn checkers_agree_on_mutated_towers(seed in any::<u64>(), depth in 1usize..7) {
        let t = random_tower(seed, &TowerConfig::mixed(depth));
        let m = mutate(&t.presentation, seed ^ 0x5eed);
        let c = compare_methods(&m.presentation, CheckOptions::default());
        prop_assert!(c.agree, "solv {:?} overlap {:?}", c.solv.failures, c.overlap.failures);
        if m.noop {
            prop_assert_eq!(c.solv.verdict, Verdict::Consistent);
        }
        if c.solv.verdict == Verdict::Inconsistent {
            let z = c.solv.failing_z().unwrap();
            prop_assert_eq!(c.overlap.failing_z(), Some(z));
            let q = m.presentation.truncate(z);
            prop_assert!(check_solv(&q, Mode::Incremental, CheckOptions::default()).is_consistent());
            prop_assert!(check_overlap(&q, CheckOptions::default()).is_consistent());
        }
    }

    #[test]
    fn per_z_mode_matches_incremental(seed in any::<u64>()) {
        let t = random_tower(seed, &TowerConfig::mixed(5));
        let m = mutate(&t.presentation, seed);
        let p = &m.presentation;
        let inc = check_solv(p, Mode::Incremental, CheckOptions::default());
        let per = check_solv(p, Mode::PerZ((0..p.len()).rev().collect()), CheckOptions::default());
        prop_assert_eq!(inc.verdict, per.verdict);
        prop_assert_eq!(inc.failing_z(), per.failing_z());
    }
}
