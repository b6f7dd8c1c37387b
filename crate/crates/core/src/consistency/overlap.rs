//! Local confluence of the rewriting system, overlap by overlap.
//!
//! The rules rewrite `x z -> z δ(x,z)` for `x < z`, so the critical words
//! with largest letter `z` are
//!
//! ```text
//! (a) x y z       x < y < z        (x y) z  vs  x (y z)
//! (b) x^n z       x < z finite     (x^n) z  vs  x^(n-1) (x z)
//! (c) x z^n       z finite         (x z) z^(n-1)  vs  x (z^n)
//! (d) z^(n+1)     z finite         z (z^n)  vs  (z^n) z
//! (e) x z z⁻¹, x z⁻¹ z             z infinite
//! ```
//!
//! Each side is rewritten once and then collected.

use std::time::Instant;

use num_traits::One;

use super::{section_inverses, CheckOptions, Condition, ConsistencyReport, Failure, Family, Method, Verdict};
use crate::collector::{
    derive_inverse_conjugates, restrict, CollectError, Collector, DeriveError, InverseConjugateTable, Segment,
};
use crate::presentation::RefinedPresentation;
use crate::word::{Int, NormalWord};

struct Overlaps<'c> {
    c: &'c Collector<'c>,
    z: usize,
    failures: Vec<Failure>,
    instances: u64,
}

impl Overlaps<'_> {
    fn compare(
        &mut self,
        family: Family,
        pair: Vec<usize>,
        left: &[Segment<'_>],
        right: &[Segment<'_>],
    ) -> Result<(), CollectError> {
        self.instances += 1;
        let l = self.c.collect_segments(left)?;
        let r = self.c.collect_segments(right)?;
        if l != r {
            self.failures.push(Failure::words(Condition::Overlap(family), self.z, pair, l, r));
        }
        Ok(())
    }
}

fn seg<'w>(w: &'w NormalWord, power: &'w Int) -> Segment<'w> {
    Segment { letters: w.letters(), power }
}

fn families_a_to_d(p: &RefinedPresentation, o: &mut Overlaps<'_>) -> Result<(), CollectError> {
    let z = o.z;
    let one = Int::one();
    let gz = NormalWord::generator(z);
    let gens: Vec<NormalWord> = (0..z).map(NormalWord::generator).collect();
    for y in 0..z {
        for x in 0..y {
            // x (y z) -> x z δ(y,z);  (x y) z -> y δ(x,y) z
            o.compare(
                Family::A,
                vec![x, y],
                &[seg(&gens[x], &one), seg(&gz, &one), seg(p.conjugate(y, z), &one)],
                &[seg(&gens[y], &one), seg(p.conjugate(x, y), &one), seg(&gz, &one)],
            )?;
        }
    }
    for x in 0..z {
        if let Some(n) = p.order(x) {
            let n1 = n - 1;
            o.compare(
                Family::B,
                vec![x],
                &[seg(&gens[x], &n1), seg(&gz, &one), seg(p.conjugate(x, z), &one)],
                &[seg(p.power(x), &one), seg(&gz, &one)],
            )?;
        }
    }
    if let Some(n) = p.order(z) {
        let n1 = n - 1;
        for x in 0..z {
            o.compare(
                Family::C,
                vec![x],
                &[seg(&gz, &one), seg(p.conjugate(x, z), &one), seg(&gz, &n1)],
                &[seg(&gens[x], &one), seg(p.power(z), &one)],
            )?;
        }
        o.compare(
            Family::D,
            Vec::new(),
            &[seg(&gz, &one), seg(p.power(z), &one)],
            &[seg(p.power(z), &one), seg(&gz, &one)],
        )?;
    }
    Ok(())
}

fn family_e(p: &RefinedPresentation, o: &mut Overlaps<'_>, table: &InverseConjugateTable) -> Result<(), CollectError> {
    let z = o.z;
    let one = Int::one();
    let minus = -Int::one();
    let gz = NormalWord::generator(z);
    for x in 0..z {
        let gx = NormalWord::generator(x);
        let mu = table.get(x, z).expect("column derived before family e");
        o.compare(
            Family::E,
            vec![x],
            &[seg(&gz, &one), seg(p.conjugate(x, z), &one), seg(&gz, &minus)],
            &[seg(&gx, &one)],
        )?;
        o.compare(Family::E, vec![x], &[seg(&gz, &minus), seg(mu, &one), seg(&gz, &one)], &[seg(&gx, &one)])?;
    }
    Ok(())
}

pub fn check_overlap(p: &RefinedPresentation, opts: CheckOptions) -> ConsistencyReport {
    let start = Instant::now();
    let mut table = InverseConjugateTable::new();
    let mut steps = 0u64;
    let mut instances = 0u64;
    let finish = |verdict, failures, abort: Option<(usize, String)>, steps, instances| ConsistencyReport {
        method: Method::Overlap,
        verdict,
        failures,
        abort_z: abort.as_ref().map(|(z, _)| *z),
        abort: abort.map(|(_, m)| m),
        elapsed: start.elapsed(),
        steps,
        instances,
    };
    for z in 0..p.len() {
        let failures = {
            let ctx = restrict(p, z + 1).expect("z is a generator");
            let c = Collector::new(ctx, &table).with_step_limit(opts.step_limit);
            let mut o = Overlaps { c: &c, z, failures: Vec::new(), instances: 0 };
            let r = families_a_to_d(p, &mut o);
            steps += c.steps();
            instances += o.instances;
            if let Err(e) = r {
                let verdict = if o.failures.is_empty() { Verdict::Aborted } else { Verdict::Inconsistent };
                return finish(verdict, o.failures, Some((z, e.to_string())), steps, instances);
            }
            o.failures
        };
        if !failures.is_empty() {
            return finish(Verdict::Inconsistent, failures, None, steps, instances);
        }
        if p.is_finite(z) {
            continue;
        }
        // inverse relations for z; a singular section map is a witness
        let invs = match section_inverses(p, z) {
            Ok(invs) => invs,
            Err(w) => {
                let f = Failure::singular(Condition::InverseDerivation, z, w);
                return finish(Verdict::Inconsistent, vec![f], None, steps, instances);
            }
        };
        let ctx = restrict(p, z).expect("z is a generator");
        match derive_inverse_conjugates(ctx, z, table.clone(), &invs, opts.step_limit) {
            Ok((t, s)) => {
                table = t;
                steps += s;
            }
            Err(DeriveError::Collect(e)) => {
                return finish(Verdict::Aborted, Vec::new(), Some((z, e.to_string())), steps, instances);
            }
            Err(e) => {
                let f = Failure {
                    condition: Condition::InverseDerivation,
                    z,
                    pair: Vec::new(),
                    left: None,
                    right: None,
                    section: None,
                    detail: Some(e.to_string()),
                };
                return finish(Verdict::Inconsistent, vec![f], None, steps, instances);
            }
        }
        let ctx = restrict(p, z + 1).expect("z is a generator");
        let c = Collector::new(ctx, &table).with_step_limit(opts.step_limit);
        let mut o = Overlaps { c: &c, z, failures: Vec::new(), instances: 0 };
        let r = family_e(p, &mut o, &table);
        steps += c.steps();
        instances += o.instances;
        if let Err(e) = r {
            let verdict = if o.failures.is_empty() { Verdict::Aborted } else { Verdict::Inconsistent };
            return finish(verdict, o.failures, Some((z, e.to_string())), steps, instances);
        }
        if !o.failures.is_empty() {
            return finish(Verdict::Inconsistent, o.failures, None, steps, instances);
        }
    }
    finish(Verdict::Consistent, Vec::new(), None, steps, instances)
}
