//! Consistent presentations built by cyclic extensions, and mutations of them.

use rsp::consistency::{compare_methods, CheckOptions};
use rsp::corpus::{self, extend_finite_central, identity_map, mutate, random_tower, ExtensionKind, ExtensionSpec, TowerConfig};
use rsp::presentation::serialize;
use rsp::word::{Int, NormalWord};

fn main() {
    let opts = CheckOptions::default();
    // Q8 as a central extension of C4 by an element of order 2 whose square is x1^2
    let c4 = corpus::cyclic(4).unwrap();
    let mut phi = identity_map(&c4);
    phi[0] = NormalWord::gen_power(0, Int::from(3));
    let q8 = extend_finite_central(
        &ExtensionSpec::new(c4, phi, ExtensionKind::FiniteCentral { order: 2, g: NormalWord::gen_power(0, Int::from(2)) }),
        opts,
    )
    .unwrap();
    print!("{}", serialize(&q8));

    for seed in 0..5u64 {
        let t = random_tower(seed, &TowerConfig::mixed(6));
        let m = mutate(&t.presentation, seed);
        let a = compare_methods(&t.presentation, opts);
        let b = compare_methods(&m.presentation, opts);
        println!(
            "tower {seed}: {} gens, {} steps; tower {} / {}; mutant {} / {}",
            t.presentation.len(),
            t.steps.len(),
            a.solv.verdict,
            a.overlap.verdict,
            b.solv.verdict,
            b.overlap.verdict,
        );
    }
}
