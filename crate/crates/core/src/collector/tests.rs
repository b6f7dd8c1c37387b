use num_traits::One;
use proptest::prelude::*;

use super::*;
use crate::fixtures::*;
use crate::presentation::{BlockKind, Section};

fn full(p: &RefinedPresentation) -> SubPresentation<'_> {
    restrict(p, p.len()).unwrap()
}

fn free(pairs: &[(usize, i64)]) -> FreeWord {
    FreeWord::from_letters(pairs.iter().map(|(g, e)| (*g, Int::from(*e))))
}

fn heis_table() -> InverseConjugateTable {
    InverseConjugateTable::new()
        .with_column(0, vec![])
        .with_column(1, vec![w(&[(0, 1)])])
        .with_column(2, vec![w(&[(0, 1)]), w(&[(1, 1), (0, -1)])])
}

fn identity_inverse(gens: Vec<usize>, block: usize) -> SectionInverse {
    let n = gens.len();
    SectionInverse {
        section: Section { block, kind: BlockKind::Infinite, gens },
        forward: crate::matrix::identity(n),
        inverse: crate::matrix::identity(n),
    }
}

#[test]
fn doubling_collection() {
    let p = doubling();
    let t = InverseConjugateTable::new();
    let c = Collector::new(full(&p), &t);
    assert_eq!(c.collect(&free(&[(0, 1), (1, 1)])).unwrap(), w(&[(1, 1), (0, 2)]));
    assert_eq!(c.collect(&FreeWord::identity()).unwrap(), NormalWord::identity());
    assert_eq!(c.collect(&free(&[(0, 1), (0, -1)])).unwrap(), NormalWord::identity());
    assert_eq!(c.conjugate(&w(&[(0, 1)]), &w(&[(1, 1)])).unwrap(), w(&[(0, 2)]));
}

#[test]
fn quaternion_values() {
    let p = q8();
    let t = InverseConjugateTable::new();
    let c = Collector::new(full(&p), &t);
    assert_eq!(c.collect(&free(&[(0, 1), (1, 1), (0, 1), (1, 1)])).unwrap(), w(&[(0, 2)]));
    assert_eq!(c.multiply(&w(&[(1, 1)]), &w(&[(1, 1)])).unwrap(), w(&[(0, 2)]));
    assert_eq!(c.invert(&w(&[(1, 1)])).unwrap(), w(&[(1, 1), (0, 2)]));
    assert_eq!(c.invert(&NormalWord::identity()).unwrap(), NormalWord::identity());
    assert_eq!(c.power(&w(&[(0, 1)]), &Int::from(4)).unwrap(), NormalWord::identity());
    // x2^2 = π(x2)
    assert_eq!(c.power(&w(&[(1, 1)]), &Int::from(2)).unwrap(), p.power(1).clone());
}

#[test]
fn dihedral_reflections_are_involutions() {
    let p = d8();
    let t = InverseConjugateTable::new();
    let c = Collector::new(full(&p), &t);
    let r = w(&[(1, 1), (0, 1)]);
    assert_eq!(c.power(&r, &Int::from(2)).unwrap(), NormalWord::identity());
    assert_eq!(c.power(&r, &Int::one()).unwrap(), r);
    assert_eq!(c.power(&r, &Int::from(0)).unwrap(), NormalWord::identity());
}

#[test]
fn heisenberg_values() {
    let p = heisenberg();
    let t = heis_table();
    let c = Collector::new(full(&p), &t);
    let x2 = w(&[(1, 1)]);
    let x3 = w(&[(2, 1)]);
    assert_eq!(c.multiply(&x2, &x3).unwrap(), w(&[(2, 1), (1, 1), (0, 1)]));
    assert_eq!(c.conjugate(&x2, &x3).unwrap(), w(&[(1, 1), (0, 1)]));
    assert_eq!(c.invert(&w(&[(0, 3)])).unwrap(), w(&[(0, -3)]));
    // μ(x2, x3) conjugated back by x3 is x2
    assert_eq!(c.conjugate(&w(&[(1, 1), (0, -1)]), &x3).unwrap(), x2);
}

#[test]
fn missing_inverse_and_context_errors() {
    let p = heisenberg();
    let t = InverseConjugateTable::new();
    let c = Collector::new(full(&p), &t);
    let err = c.collect(&free(&[(1, 1), (2, -1)])).unwrap_err();
    assert_eq!(err, CollectError::MissingInverse { x: 1, y: 2 });
    let t = heis_table();
    let small = restrict(&p, 2).unwrap();
    let c = Collector::new(small, &t);
    assert_eq!(c.collect(&free(&[(2, 1)])).unwrap_err(), CollectError::OutOfContext { gen: 2, k: 2 });
    assert!(restrict(&p, 4).is_err());
}

#[test]
fn step_limit_is_reported() {
    let p = doubling();
    let t = InverseConjugateTable::new();
    let c = Collector::new(full(&p), &t).with_step_limit(10);
    // x1 x2^20 grows x1's exponent to 2^20
    let err = c.collect(&free(&[(0, 1), (1, 20)])).unwrap_err();
    assert_eq!(err, CollectError::StepLimit { limit: 10 });
}

#[test]
fn derive_heisenberg_column() {
    let p = heisenberg();
    let t = InverseConjugateTable::new().with_column(0, vec![]).with_column(1, vec![w(&[(0, 1)])]);
    let ctx = restrict(&p, 2).unwrap();
    let invs = vec![identity_inverse(vec![0], 1), identity_inverse(vec![1], 2)];
    let (t, _) = derive_inverse_conjugates(ctx, 2, t, &invs, DEFAULT_STEP_LIMIT).unwrap();
    assert_eq!(t.column(2).unwrap(), &[w(&[(0, 1)]), w(&[(1, 1), (0, -1)])]);
}

#[test]
fn derive_inverse_of_negation() {
    let p = inf_dihedral();
    let ctx = restrict(&p, 1).unwrap();
    let t = InverseConjugateTable::new().with_column(0, vec![]);
    let inv = SectionInverse {
        section: Section { block: 1, kind: BlockKind::Infinite, gens: vec![0] },
        forward: vec![vec![Int::from(-1)]],
        inverse: vec![vec![Int::from(-1)]],
    };
    let (t, _) = derive_inverse_conjugates(ctx, 1, t, std::slice::from_ref(&inv), DEFAULT_STEP_LIMIT).unwrap();
    assert_eq!(t.get(0, 1), Some(&w(&[(0, -1)])));

    let bad = SectionInverse { inverse: vec![vec![Int::one()]], ..inv };
    let t = InverseConjugateTable::new().with_column(0, vec![]);
    let err = derive_inverse_conjugates(ctx, 1, t, &[bad], DEFAULT_STEP_LIMIT).unwrap_err();
    assert!(matches!(err, DeriveError::NotInverse { block: 1, .. }));
}

#[test]
fn derive_trivial_action() {
    let mut p = RefinedPresentation::new(vec![
        crate::presentation::Generator::finite("a", 1, 3, 3),
        crate::presentation::Generator::infinite("b", 1),
        crate::presentation::Generator::infinite("c", 2),
    ])
    .unwrap();
    p.set_conjugate(0, 1, w(&[(0, 1)])).unwrap();
    let ctx = restrict(&p, 2).unwrap();
    let t = InverseConjugateTable::new().with_column(1, vec![w(&[(0, 1)])]);
    let invs = vec![
        SectionInverse {
            section: Section { block: 1, kind: BlockKind::Prime(3), gens: vec![0] },
            forward: crate::matrix::identity(1),
            inverse: crate::matrix::identity(1),
        },
        identity_inverse(vec![1], 1),
    ];
    let (t, _) = derive_inverse_conjugates(ctx, 2, t, &invs, DEFAULT_STEP_LIMIT).unwrap();
    assert_eq!(t.column(2).unwrap(), &[w(&[(0, 1)]), w(&[(1, 1)])]);
    let err = derive_inverse_conjugates(ctx, 2, InverseConjugateTable::new(), &invs, DEFAULT_STEP_LIMIT);
    assert_eq!(err.unwrap_err(), DeriveError::IncompleteTable(1));
}

fn free_word(max_gen: usize) -> impl Strategy<Value = FreeWord> {
    proptest::collection::vec((0..max_gen, -5i64..6), 0..12).prop_map(|v| free(&v))
}

proptest! {
    #[test]
    fn heisenberg_matches_matrix_model(word in free_word(3)) {
        let p = heisenberg();
        let t = heis_table();
        let c = Collector::new(full(&p), &t);
        let nf = c.collect(&word).unwrap();
        prop_assert_eq!(heis_eval(nf.letters()), heis_eval(word.letters()));
        // collecting a normal word is a no-op
        prop_assert_eq!(c.collect(&FreeWord::from(&nf)).unwrap(), nf.clone());
        let inv = c.invert(&nf).unwrap();
        prop_assert!(c.multiply(&nf, &inv).unwrap().is_identity());
    }

    #[test]
    fn quaternion_matches_unit_model(word in free_word(2)) {
        let p = q8();
        let t = InverseConjugateTable::new();
        let c = Collector::new(full(&p), &t);
        let nf = c.collect(&word).unwrap();
        prop_assert!(p.check_domain(&nf));
        let direct = word.letters().iter().fold((1i8, 0u8), |acc, (g, e)| {
            let e: i64 = e.try_into().unwrap();
            quat_mul(acc, quat_pow([(1, 1), (1, 2)][*g], e))
        });
        prop_assert_eq!(quat_eval(&nf), direct);
    }

    #[test]
    fn heisenberg_associativity(a in free_word(3), b in free_word(3), d in free_word(3)) {
        let p = heisenberg();
        let t = heis_table();
        let c = Collector::new(full(&p), &t);
        let (a, b, d) = (c.collect(&a).unwrap(), c.collect(&b).unwrap(), c.collect(&d).unwrap());
        let left = c.multiply(&c.multiply(&a, &b).unwrap(), &d).unwrap();
        let right = c.multiply(&a, &c.multiply(&b, &d).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(c.multiply(&a, &NormalWord::identity()).unwrap(), a);
    }
}
