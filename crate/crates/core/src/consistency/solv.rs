//! Generator-by-generator determinant criteria.

use std::time::Instant;

use num_traits::ToPrimitive;

use super::{
    det_check, induced_matrix_of, section_inverses, CheckOptions, Condition, ConsistencyReport, DetCheck, DeltaMap,
    Failure, Method, SectionWitness, Verdict,
};
use crate::collector::{derive_inverse_conjugates, restrict, CollectError, Collector, DeriveError, InverseConjugateTable};
use crate::matrix;
use crate::presentation::RefinedPresentation;
use crate::word::NormalWord;

/// Order in which generators are examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Ascending, stopping at the first failing generator.
    Incremental,
    /// All inverse relations first, then every generator in the given order
    /// (a permutation of `0..m`); the smallest failing generator is reported.
    PerZ(Vec<usize>),
}

#[derive(Default)]
struct Tally {
    failures: Vec<Failure>,
    instances: u64,
}

impl Tally {
    fn compare(&mut self, condition: Condition, z: usize, pair: Vec<usize>, left: NormalWord, right: NormalWord) {
        self.instances += 1;
        if left != right {
            self.failures.push(Failure::words(condition, z, pair, left, right));
        }
    }
}

/// Relation preservation and section determinants for the map with the
/// given images on the collector's group: powers (`π(x)^φ = (x^φ)^n(x)`),
/// conjugates (`δ(x,y)^φ = (x^φ)^(y^φ)`), and determinants on the sections
/// of blocks `< det_block_bound`.
fn endomorphism_conditions(
    c: &Collector<'_>,
    images: &[NormalWord],
    z: usize,
    det_block_bound: usize,
    tally: &mut Tally,
) -> Result<(), CollectError> {
    let ctx = c.context();
    let p = ctx.presentation();
    let k = ctx.k();
    for s in p.sections_below(k) {
        if s.block >= det_block_bound {
            continue;
        }
        tally.instances += 1;
        let m = induced_matrix_of(images, &s);
        if let DetCheck::Fail(_) = det_check(&m) {
            let det = matrix::det_bareiss(&m.entries);
            tally.failures.push(Failure::singular(Condition::Determinant, z, SectionWitness { section: s, det }));
        }
    }
    for x in 0..k {
        if let Some(n) = p.order(x) {
            let left = c.apply_map(images, p.power(x))?;
            let right = c.power(&images[x], n)?;
            tally.compare(Condition::PowerPreserved, z, vec![x], left, right);
        }
    }
    for y in 0..k {
        for x in 0..y {
            let left = c.apply_map(images, p.conjugate(x, y))?;
            let right = c.conjugate(&images[x], &images[y])?;
            tally.compare(Condition::ConjugatePreserved, z, vec![x, y], left, right);
        }
    }
    Ok(())
}

/// Every criterion for `z`, evaluated in `H_{z-1}`.
fn conditions_for(
    p: &RefinedPresentation,
    z: usize,
    table: &InverseConjugateTable,
    opts: CheckOptions,
    tally: &mut Tally,
) -> Result<u64, (CollectError, u64)> {
    let ctx = restrict(p, z).expect("z is a generator");
    let c = Collector::new(ctx, table).with_step_limit(opts.step_limit);
    let d = DeltaMap::of(p, z);
    let run = |tally: &mut Tally| -> Result<(), CollectError> {
        endomorphism_conditions(&c, &d.images, z, p.block(z), tally)?;
        if let Some(n) = p.order(z) {
            let pz = p.power(z);
            let left = d.apply(&c, pz)?;
            tally.compare(Condition::PowerFixed, z, Vec::new(), left, pz.clone());
            let reps = n.to_u64().expect("relative orders fit in u64");
            for x in 0..z {
                let mut image = d.images[x].clone();
                for _ in 1..reps {
                    image = d.apply(&c, &image)?;
                }
                let right = c.conjugate(&NormalWord::generator(x), pz)?;
                tally.compare(Condition::PowerOfMap, z, vec![x], image, right);
            }
        }
        Ok(())
    };
    match run(tally) {
        Ok(()) => Ok(c.steps()),
        Err(e) => Err((e, c.steps())),
    }
}

/// Derives `μ(·, z)` for infinite `z`; finite `z` leaves the table as is.
fn extend_table(
    p: &RefinedPresentation,
    z: usize,
    table: InverseConjugateTable,
    opts: CheckOptions,
) -> Result<(InverseConjugateTable, u64), (Failure, Option<CollectError>)> {
    if p.is_finite(z) {
        return Ok((table, 0));
    }
    let invs = section_inverses(p, z).map_err(|w| (Failure::singular(Condition::InverseDerivation, z, w), None))?;
    let ctx = restrict(p, z).expect("z is a generator");
    derive_inverse_conjugates(ctx, z, table, &invs, opts.step_limit).map_err(|e| {
        let collect = match &e {
            DeriveError::Collect(c) => Some(c.clone()),
            _ => None,
        };
        let f = Failure {
            condition: Condition::InverseDerivation,
            z,
            pair: Vec::new(),
            left: None,
            right: None,
            section: None,
            detail: Some(e.to_string()),
        };
        (f, collect)
    })
}

fn report(
    verdict: Verdict,
    failures: Vec<Failure>,
    abort: Option<(usize, String)>,
    start: Instant,
    steps: u64,
    instances: u64,
) -> ConsistencyReport {
    let (abort_z, abort) = match abort {
        Some((z, msg)) => (Some(z), Some(msg)),
        None => (None, None),
    };
    ConsistencyReport {
        method: Method::Solv,
        verdict,
        failures,
        abort,
        abort_z,
        elapsed: start.elapsed(),
        steps,
        instances,
    }
}

pub fn check_solv(p: &RefinedPresentation, mode: Mode, opts: CheckOptions) -> ConsistencyReport {
    check_solv_with_table(p, mode, opts).0
}

/// As [`check_solv`], also returning the inverse relations derived on
/// the way (complete when the verdict is consistent).
pub fn check_solv_with_table(
    p: &RefinedPresentation,
    mode: Mode,
    opts: CheckOptions,
) -> (ConsistencyReport, InverseConjugateTable) {
    match mode {
        Mode::Incremental => incremental(p, opts),
        Mode::PerZ(order) => per_z(p, &order, opts),
    }
}

fn incremental(p: &RefinedPresentation, opts: CheckOptions) -> (ConsistencyReport, InverseConjugateTable) {
    let start = Instant::now();
    let mut table = InverseConjugateTable::new();
    let mut steps = 0u64;
    let mut instances = 0u64;
    for z in 0..p.len() {
        let mut tally = Tally::default();
        let outcome = conditions_for(p, z, &table, opts, &mut tally);
        instances += tally.instances;
        match outcome {
            Ok(s) => steps += s,
            Err((e, s)) => {
                steps += s;
                let verdict = if tally.failures.is_empty() { Verdict::Aborted } else { Verdict::Inconsistent };
                let r = report(verdict, tally.failures, Some((z, e.to_string())), start, steps, instances);
                return (r, table);
            }
        }
        if !tally.failures.is_empty() {
            return (report(Verdict::Inconsistent, tally.failures, None, start, steps, instances), table);
        }
        match extend_table(p, z, table.clone(), opts) {
            Ok((t, s)) => {
                table = t;
                steps += s;
            }
            Err((_, Some(e))) => {
                let r = report(Verdict::Aborted, Vec::new(), Some((z, e.to_string())), start, steps, instances);
                return (r, table);
            }
            Err((f, None)) => {
                return (report(Verdict::Inconsistent, vec![f], None, start, steps, instances), table);
            }
        }
    }
    (report(Verdict::Consistent, Vec::new(), None, start, steps, instances), table)
}

fn per_z(p: &RefinedPresentation, order: &[usize], opts: CheckOptions) -> (ConsistencyReport, InverseConjugateTable) {
    let m = p.len();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    assert!(sorted.iter().copied().eq(0..m), "evaluation order must be a permutation of the generators");

    let start = Instant::now();
    let mut steps = 0u64;
    let mut instances = 0u64;
    // first generator whose inverse relations could not be derived, with why
    let mut table = InverseConjugateTable::new();
    let mut stop: Option<(usize, Failure, Option<CollectError>)> = None;
    for z in 0..m {
        match extend_table(p, z, table.clone(), opts) {
            Ok((t, s)) => {
                table = t;
                steps += s;
            }
            Err((f, e)) => {
                stop = Some((z, f, e));
                break;
            }
        }
    }
    let reachable = stop.as_ref().map_or(m, |(z, _, _)| z + 1);

    let mut worst: Option<(usize, Vec<Failure>, Option<String>)> = None;
    for &z in order {
        if z >= reachable || worst.as_ref().is_some_and(|(w, _, _)| *w < z) {
            continue;
        }
        let mut tally = Tally::default();
        let outcome = conditions_for(p, z, &table, opts, &mut tally);
        instances += tally.instances;
        let abort = match outcome {
            Ok(s) => {
                steps += s;
                None
            }
            Err((e, s)) => {
                steps += s;
                Some(e.to_string())
            }
        };
        if !tally.failures.is_empty() || abort.is_some() {
            worst = Some((z, tally.failures, abort));
        }
    }
    // a failure to derive inverse relations counts at its generator
    if let Some((z, f, e)) = stop {
        if worst.as_ref().is_none_or(|(w, _, _)| *w > z) {
            worst = Some(match e {
                Some(e) => (z, Vec::new(), Some(e.to_string())),
                None => (z, vec![f], None),
            });
        }
    }
    let r = match worst {
        None => report(Verdict::Consistent, Vec::new(), None, start, steps, instances),
        Some((z, failures, abort)) => {
            let verdict = if failures.is_empty() { Verdict::Aborted } else { Verdict::Inconsistent };
            report(verdict, failures, abort.map(|a| (z, a)), start, steps, instances)
        }
    };
    (r, table)
}

/// Checks that `images` (one per generator of `p`) define an endomorphism
/// of the group of `p` with invertible section maps: relation preservation
/// for every power and conjugation relation, and determinants on every
/// section. `p` must be consistent and `table` complete for it.
pub fn check_endomorphism(
    p: &RefinedPresentation,
    table: &InverseConjugateTable,
    images: &[NormalWord],
    opts: CheckOptions,
) -> Result<Vec<Failure>, CollectError> {
    assert_eq!(images.len(), p.len(), "one image per generator");
    let ctx = restrict(p, p.len()).expect("full presentation");
    let c = Collector::new(ctx, table).with_step_limit(opts.step_limit);
    let mut tally = Tally::default();
    endomorphism_conditions(&c, images, p.len(), usize::MAX, &mut tally)?;
    Ok(tally.failures)
}
