//! Cyclic extensions: semidirect products with `C∞` and central quotients
//! giving finite cyclic tops.

use super::CorpusError;
use crate::collector::{restrict, Collector, InverseConjugateTable};
use crate::consistency::{check_endomorphism, check_solv_with_table, CheckOptions, Mode};
use crate::presentation::{is_prime, Generator, RefinedPresentation};
use crate::word::NormalWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionKind {
    InfiniteCyclic,
    /// New generator `t` of relative order `order` (a prime power) with
    /// `t^order = g`.
    FiniteCentral { order: u64, g: NormalWord },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Partition {
    #[default]
    NewBlock,
    MergeIntoTopBlock,
}

#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub base: RefinedPresentation,
    /// `x^φ` for every generator `x` of the base.
    pub phi: Vec<NormalWord>,
    pub kind: ExtensionKind,
    pub partition: Partition,
    /// Name of the new generator; `x{m+1}` when absent.
    pub name: Option<String>,
}

impl ExtensionSpec {
    pub fn new(base: RefinedPresentation, phi: Vec<NormalWord>, kind: ExtensionKind) -> Self {
        ExtensionSpec { base, phi, kind, partition: Partition::NewBlock, name: None }
    }

    pub fn merged(mut self) -> Self {
        self.partition = Partition::MergeIntoTopBlock;
        self
    }
}

fn prime_of_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1 && is_prime(p)).then_some(p)
}

fn fresh_name(base: &RefinedPresentation, wanted: Option<&str>) -> String {
    let mut name = wanted.map(str::to_string).unwrap_or_else(|| format!("x{}", base.len() + 1));
    while base.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// Consistency of the base with its inverse relations; the automorphism
/// conditions on `φ`.
fn verify_base_and_phi(
    spec: &ExtensionSpec,
    opts: CheckOptions,
) -> Result<InverseConjugateTable, CorpusError> {
    let base = &spec.base;
    if spec.phi.len() != base.len() {
        return Err(CorpusError::Parameter(format!(
            "phi has {} images for {} generators",
            spec.phi.len(),
            base.len()
        )));
    }
    for (x, img) in spec.phi.iter().enumerate() {
        if img.max_gen().is_some_and(|g| g >= base.len()) || !base.check_domain(img) {
            return Err(CorpusError::Parameter(format!("image of {} is not a normal word of the base", base.name(x))));
        }
    }
    let (report, table) = check_solv_with_table(base, Mode::Incremental, opts);
    if !report.is_consistent() {
        return Err(CorpusError::BaseInconsistent(report.verdict));
    }
    let failures = check_endomorphism(base, &table, &spec.phi, opts)?;
    if !failures.is_empty() {
        return Err(CorpusError::NotAutomorphism(failures));
    }
    Ok(table)
}

fn build(spec: &ExtensionSpec, new: Generator, power: Option<NormalWord>) -> Result<RefinedPresentation, CorpusError> {
    let base = &spec.base;
    let m = base.len();
    let mut gens = base.generators().to_vec();
    gens.push(new);
    let mut p = RefinedPresentation::new(gens)?;
    for x in 0..m {
        if base.is_finite(x) {
            p.set_power(x, base.power(x).clone())?;
        }
        for y in x + 1..m {
            p.set_conjugate(x, y, base.conjugate(x, y).clone())?;
        }
        p.set_conjugate(x, m, spec.phi[x].clone())?;
    }
    if let Some(g) = power {
        p.set_power(m, g)?;
    }
    let violations = p.validate();
    if !violations.is_empty() {
        return Err(CorpusError::Invalid(violations));
    }
    Ok(p)
}

fn new_block(spec: &ExtensionSpec) -> usize {
    match spec.partition {
        Partition::NewBlock => spec.base.num_blocks() + 1,
        Partition::MergeIntoTopBlock => spec.base.num_blocks().max(1),
    }
}

/// Semidirect product of the base with an infinite cyclic group acting by `φ`.
pub fn extend_infinite(spec: &ExtensionSpec, opts: CheckOptions) -> Result<RefinedPresentation, CorpusError> {
    if spec.kind != ExtensionKind::InfiniteCyclic {
        return Err(CorpusError::Parameter("extend_infinite needs an infinite cyclic extension".into()));
    }
    verify_base_and_phi(spec, opts)?;
    let name = fresh_name(&spec.base, spec.name.as_deref());
    build(spec, Generator::infinite(name, new_block(spec)), None)
}

/// `φ^e` applied to a word, by `e` applications of `φ`.
fn iterate_phi(c: &Collector<'_>, phi: &[NormalWord], w: &NormalWord, e: u64) -> Result<NormalWord, CorpusError> {
    let mut out = w.clone();
    for _ in 0..e {
        out = c.apply_map(phi, &out)?;
    }
    Ok(out)
}

/// Extension by a new generator `t` with `t^e = g` and `x^t = x^φ`; needs
/// `a^g = a^(φ^e)` for every generator `a` and `g^φ = g`.
pub fn extend_finite_central(spec: &ExtensionSpec, opts: CheckOptions) -> Result<RefinedPresentation, CorpusError> {
    let ExtensionKind::FiniteCentral { order, g } = &spec.kind else {
        return Err(CorpusError::Parameter("extend_finite_central needs a finite central extension".into()));
    };
    let prime = prime_of_power(*order).ok_or(CorpusError::NotPrimePower(*order))?;
    let base = &spec.base;
    if g.max_gen().is_some_and(|x| x >= base.len()) || !base.check_domain(g) {
        return Err(CorpusError::Parameter("g is not a normal word of the base".into()));
    }
    let table = verify_base_and_phi(spec, opts)?;
    let ctx = restrict(base, base.len()).expect("full presentation");
    let c = Collector::new(ctx, &table).with_step_limit(opts.step_limit);
    for a in 0..base.len() {
        let ga = NormalWord::generator(a);
        let left = c.conjugate(&ga, g)?;
        let right = iterate_phi(&c, &spec.phi, &ga, *order)?;
        if left != right {
            return Err(CorpusError::CentralCondition {
                condition: "a^g = a^(phi^e)",
                generator: Some(base.name(a).to_string()),
                left: base.word_string(&left),
                right: base.word_string(&right),
            });
        }
    }
    let gphi = c.apply_map(&spec.phi, g)?;
    if &gphi != g {
        return Err(CorpusError::CentralCondition {
            condition: "g^phi = g",
            generator: None,
            left: base.word_string(&gphi),
            right: base.word_string(g),
        });
    }
    let name = fresh_name(base, spec.name.as_deref());
    let new = Generator::finite(name, new_block(spec), prime, *order);
    let power = if g.is_identity() { None } else { Some(g.clone()) };
    build(spec, new, power)
}

/// Images of the inner automorphism `x -> h⁻¹ x h` of a consistent
/// presentation with complete inverse table.
pub fn inner_automorphism(
    p: &RefinedPresentation,
    table: &InverseConjugateTable,
    h: &NormalWord,
    opts: CheckOptions,
) -> Result<Vec<NormalWord>, CorpusError> {
    let c = Collector::new(restrict(p, p.len()).expect("full"), table).with_step_limit(opts.step_limit);
    (0..p.len()).map(|x| Ok(c.conjugate(&NormalWord::generator(x), h)?)).collect()
}

/// The identity map on the generators.
pub fn identity_map(p: &RefinedPresentation) -> Vec<NormalWord> {
    (0..p.len()).map(NormalWord::generator).collect()
}
