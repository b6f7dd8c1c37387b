use proptest::prelude::*;
use rsp::corpus::{self, random_tower, TowerConfig};
use rsp::presentation::{parse, serialize};

#[test]
fn families_round_trip() {
    for spec in ["cyclic(360)", "dihedral(32)", "q8", "heisenberg", "ut(6,3)", "free_abelian(4)"] {
        let p = corpus::family(spec).unwrap();
        let text = serialize(&p);
        assert_eq!(parse(&text).unwrap(), p, "{spec}");
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn towers_and_mutants_round_trip(seed in any::<u64>(), depth in 0usize..6) {
        let t = random_tower(seed, &TowerConfig::mixed(depth));
        for p in [t.presentation.clone(), corpus::mutate(&t.presentation, seed).presentation] {
            let text = serialize(&p);
            prop_assert_eq!(parse(&text).unwrap(), p);
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored(seed in any::<u64>()) {
        let p = random_tower(seed, &TowerConfig::mixed(3)).presentation;
        let text = serialize(&p);
        let noisy: String = text.lines().map(|l| format!("{l}   # note\n\n")).collect();
        prop_assert_eq!(parse(&noisy).unwrap(), p);
    }
}
