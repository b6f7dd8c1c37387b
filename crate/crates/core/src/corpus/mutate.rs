//! Single-exponent perturbations that keep the support rules.

use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::presentation::{BlockKind, RefinedPresentation, Relation};
use crate::word::{Int, NormalWord};

/// Range of exponents drawn for infinite generators.
pub const INFINITE_RANGE: i64 = 3;

#[derive(Clone, Debug)]
pub struct Mutation {
    pub presentation: RefinedPresentation,
    /// The perturbed relation and the generator whose exponent changed;
    /// `None` when no legal slot exists.
    pub slot: Option<(Relation, usize)>,
    pub old: Int,
    pub new: Int,
    /// The drawn value equals the old one (or nothing could be changed).
    pub noop: bool,
}

/// Generators allowed in the image of a relation, except the fixed
/// exponent 1 on `x` of a same-block conjugation.
pub fn mutable_support(p: &RefinedPresentation, rel: Relation) -> Vec<usize> {
    match rel {
        Relation::Power(x) => (0..x).filter(|&g| p.block(g) < p.block(x)).collect(),
        Relation::Conjugate(x, y) => {
            let s = p.block(x);
            if s == p.block(y) {
                (0..x).filter(|&g| p.block(g) < s).collect()
            } else {
                match p.kind(x) {
                    BlockKind::Prime(q) => (0..y)
                        .filter(|&g| p.block(g) < s || (p.block(g) == s && p.kind(g) == BlockKind::Prime(q)))
                        .collect(),
                    BlockKind::Infinite => (0..y).filter(|&g| p.block(g) <= s).collect(),
                }
            }
        }
    }
}

/// All `(relation, generator)` slots that can be perturbed.
pub fn mutation_slots(p: &RefinedPresentation) -> Vec<(Relation, usize)> {
    let mut out = Vec::new();
    for x in 0..p.len() {
        if p.is_finite(x) {
            for g in mutable_support(p, Relation::Power(x)) {
                out.push((Relation::Power(x), g));
            }
        }
    }
    for y in 0..p.len() {
        for x in 0..y {
            for g in mutable_support(p, Relation::Conjugate(x, y)) {
                out.push((Relation::Conjugate(x, y), g));
            }
        }
    }
    out
}

fn draw(rng: &mut ChaCha8Rng, p: &RefinedPresentation, g: usize) -> Int {
    match p.order(g) {
        Some(n) => {
            let n: u64 = n.try_into().unwrap_or(u64::MAX);
            Int::from(rng.gen_range(0..n))
        }
        None => Int::from(rng.gen_range(-INFINITE_RANGE..=INFINITE_RANGE)),
    }
}

/// Changes one exponent of one relation, chosen uniformly among the legal
/// slots with a value uniform in the generator's domain. Deterministic in
/// `seed`; the result always passes structural validation when `p` does.
pub fn mutate(p: &RefinedPresentation, seed: u64) -> Mutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slots = mutation_slots(p);
    if slots.is_empty() {
        return Mutation { presentation: p.clone(), slot: None, old: Int::one(), new: Int::one(), noop: true };
    }
    let (rel, g) = slots[rng.gen_range(0..slots.len())];
    let new = draw(&mut rng, p, g);
    let mut q = p.clone();
    let old = match rel {
        Relation::Power(x) => {
            let mut w: NormalWord = p.power(x).clone();
            let old = w.exponent(g);
            w.set_exponent(g, new.clone());
            q.set_power(x, w).expect("support respected");
            old
        }
        Relation::Conjugate(x, y) => {
            let mut w = p.conjugate(x, y).clone();
            let old = w.exponent(g);
            w.set_exponent(g, new.clone());
            q.set_conjugate(x, y, w).expect("support respected");
            old
        }
    };
    let noop = old == new;
    Mutation { presentation: q, slot: Some((rel, g)), old, new, noop }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::families;
    use proptest::prelude::*;

    #[test]
    fn doubling_reachable_from_free_abelian() {
        let fa = families::free_abelian(2).unwrap();
        let hit = (0..200u64).map(|s| mutate(&fa, s)).find(|m| m.new == Int::from(2));
        let m = hit.expect("some seed draws exponent 2");
        assert_eq!(m.slot, Some((Relation::Conjugate(0, 1), 0)));
        assert_eq!(m.presentation.conjugate(0, 1), &NormalWord::gen_power(0, Int::from(2)));
        let noop = (0..200u64).map(|s| mutate(&fa, s)).find(|m| m.noop).unwrap();
        assert_eq!(noop.presentation, fa);
    }

    #[test]
    fn quaternion_power_slot() {
        let q = families::quaternion8();
        let slots = mutation_slots(&q);
        assert!(slots.contains(&(Relation::Power(1), 0)));
        assert!(slots.contains(&(Relation::Conjugate(0, 1), 0)));
        let empty = RefinedPresentation::new(vec![]).unwrap();
        assert!(mutate(&empty, 1).noop);
    }

    proptest! {
        #[test]
        fn mutations_stay_valid_and_deterministic(seed in any::<u64>(), which in 0usize..4) {
            let p = match which {
                0 => families::quaternion8(),
                1 => families::heisenberg(),
                2 => families::ut(4, 3).unwrap(),
                _ => families::cyclic(36).unwrap(),
            };
            let m = mutate(&p, seed);
            prop_assert!(m.presentation.validate().is_empty());
            prop_assert_eq!(mutate(&p, seed).presentation, m.presentation.clone());
            prop_assert_eq!(m.noop, m.presentation == p);
        }
    }
}
