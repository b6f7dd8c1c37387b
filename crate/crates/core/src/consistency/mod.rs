//! Consistency of refined solvable presentations.
//!
//! Two independent checkers: [`check_solv`] evaluates, generator by
//! generator, the determinant criteria on the induced automorphisms `δ(z)`;
//! [`check_overlap`] collects both sides of every critical overlap of the
//! rewriting system. [`compare_methods`] runs both.

mod overlap;
mod report;
mod solv;

use std::time::Duration;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::collector::{CollectError, Collector, SectionInverse};
use crate::matrix::{self, IntMatrix};
use crate::presentation::{BlockKind, RefinedPresentation, Section};
use crate::word::{Int, NormalWord};

pub use overlap::check_overlap;
pub use report::{FailureRecord, ReportDocument};
pub use solv::{check_endomorphism, check_solv, check_solv_with_table, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Solv,
    Overlap,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Solv => "solv",
            Method::Overlap => "overlap",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Aborted,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Aborted => "aborted",
        })
    }
}

/// Overlap families, named by the shape of the overlapping word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// `x y z` for `x < y < z`.
    A,
    /// `x^n z` for finite `x < z`.
    B,
    /// `x z^n` for finite `z`.
    C,
    /// `z^(n+1)` for finite `z`.
    D,
    /// `x z z⁻¹` and `x z⁻¹ z` for infinite `z`.
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    /// `π(z)^δ(z) = π(z)`.
    PowerFixed,
    /// `π(x)^δ(z) = (x^δ(z))^n(x)`.
    PowerPreserved,
    /// `x^(δ(z)^n(z)) = x^π(z)`.
    PowerOfMap,
    /// `δ(x,y)^δ(z) = (x^δ(z))^(y^δ(z))`.
    ConjugatePreserved,
    /// Determinant of an induced section map.
    Determinant,
    Overlap(Family),
    /// The inverse relations of `z` could not be derived.
    InverseDerivation,
}

impl Condition {
    /// Short identifier: `1`..`5`, `a`..`e`, or `mu`.
    pub fn id(&self) -> &'static str {
        match self {
            Condition::PowerFixed => "1",
            Condition::PowerPreserved => "2",
            Condition::PowerOfMap => "3",
            Condition::ConjugatePreserved => "4",
            Condition::Determinant => "5",
            Condition::Overlap(Family::A) => "a",
            Condition::Overlap(Family::B) => "b",
            Condition::Overlap(Family::C) => "c",
            Condition::Overlap(Family::D) => "d",
            Condition::Overlap(Family::E) => "e",
            Condition::InverseDerivation => "mu",
        }
    }
}

/// A section map that is not invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionWitness {
    pub section: Section,
    /// Determinant over the integers.
    pub det: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub condition: Condition,
    pub z: usize,
    /// The generators the instance is about (`x`, or `x, y`), if any.
    pub pair: Vec<usize>,
    pub left: Option<NormalWord>,
    pub right: Option<NormalWord>,
    pub section: Option<SectionWitness>,
    pub detail: Option<String>,
}

impl Failure {
    fn words(condition: Condition, z: usize, pair: Vec<usize>, left: NormalWord, right: NormalWord) -> Self {
        Failure { condition, z, pair, left: Some(left), right: Some(right), section: None, detail: None }
    }

    fn singular(condition: Condition, z: usize, witness: SectionWitness) -> Self {
        Failure { condition, z, pair: Vec::new(), left: None, right: None, section: Some(witness), detail: None }
    }
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub method: Method,
    pub verdict: Verdict,
    /// Failing instances for the smallest failing generator.
    pub failures: Vec<Failure>,
    /// Reason for an aborted run.
    pub abort: Option<String>,
    /// Generator at which the run aborted.
    pub abort_z: Option<usize>,
    pub elapsed: Duration,
    /// Rewrite steps over all collections.
    pub steps: u64,
    /// Number of condition instances (or overlaps) evaluated.
    pub instances: u64,
}

impl ConsistencyReport {
    /// Smallest generator at which the check failed or aborted.
    pub fn failing_z(&self) -> Option<usize> {
        self.failures.first().map(|f| f.z).or(self.abort_z)
    }

    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::Consistent
    }

    pub fn document(&self, p: &RefinedPresentation) -> ReportDocument {
        ReportDocument::new(self, p)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub step_limit: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { step_limit: crate::collector::DEFAULT_STEP_LIMIT }
    }
}

/// The map `δ(z)` on `H_{z-1}`, given by the images `δ(x, z)` of `x < z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMap {
    pub z: usize,
    pub images: Vec<NormalWord>,
}

impl DeltaMap {
    pub fn of(p: &RefinedPresentation, z: usize) -> Self {
        DeltaMap { z, images: p.conjugates_of(z).to_vec() }
    }

    /// `(x_k^{r_k} ... x_1^{r_1})^δ = (x_k^δ)^{r_k} ... (x_1^δ)^{r_1}`.
    pub fn apply(&self, c: &Collector<'_>, w: &NormalWord) -> Result<NormalWord, CollectError> {
        c.apply_map(&self.images, w)
    }
}

/// Normal form of `w^δ` in the collector's group.
pub fn apply_delta(c: &Collector<'_>, d: &DeltaMap, w: &NormalWord) -> Result<NormalWord, CollectError> {
    d.apply(c, w)
}

/// Matrix of a map on one section; `entries[i][j]` is the exponent of
/// `section.gens[i]` in the image of `section.gens[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMatrix {
    pub section: Section,
    pub entries: IntMatrix,
}

/// Induced matrix of the map with the given images on a section.
pub fn induced_matrix_of(images: &[NormalWord], section: &Section) -> InducedMatrix {
    let entries = section
        .gens
        .iter()
        .map(|&row| section.gens.iter().map(|&col| images[col].exponent(row)).collect())
        .collect();
    InducedMatrix { section: section.clone(), entries }
}

/// Induced matrix of `δ(z)` on a section below `z`.
pub fn induced_matrix(p: &RefinedPresentation, z: usize, section: &Section) -> InducedMatrix {
    induced_matrix_of(p.conjugates_of(z), section)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetCheck {
    Pass,
    /// Integer determinant (infinite sections) or its residue (p-sections).
    Fail(Int),
}

impl DetCheck {
    pub fn passed(&self) -> bool {
        matches!(self, DetCheck::Pass)
    }
}

/// Infinite sections need determinant ±1, p-sections a determinant prime to `p`.
pub fn det_check(m: &InducedMatrix) -> DetCheck {
    match m.section.kind {
        BlockKind::Infinite => {
            let d = matrix::det_bareiss(&m.entries);
            if d.abs().is_one() {
                DetCheck::Pass
            } else {
                DetCheck::Fail(d)
            }
        }
        BlockKind::Prime(q) => {
            let r = matrix::det_mod_p(&m.entries, q);
            if r != 0 {
                DetCheck::Pass
            } else {
                DetCheck::Fail(Int::from(r))
            }
        }
    }
}

/// Inverse of an induced section map: over the integers for an infinite
/// section, modulo the largest relative order for a p-section.
pub fn section_inverse(p: &RefinedPresentation, m: &InducedMatrix) -> Result<SectionInverse, SectionWitness> {
    let witness = || SectionWitness { section: m.section.clone(), det: matrix::det_bareiss(&m.entries) };
    let inverse = match m.section.kind {
        BlockKind::Infinite => matrix::inverse_unimodular(&m.entries),
        BlockKind::Prime(q) => {
            let modulus = m
                .section
                .gens
                .iter()
                .filter_map(|g| p.order(*g))
                .max()
                .cloned()
                .unwrap_or_else(|| Int::from(q));
            matrix::inverse_mod_prime_power(&m.entries, q, &modulus)
        }
    };
    let inverse = inverse.ok_or_else(witness)?;
    Ok(SectionInverse { section: m.section.clone(), forward: m.entries.clone(), inverse })
}

/// Inverses of `δ(z)` on every section of `H_{z-1}`, in processing order.
pub fn section_inverses(p: &RefinedPresentation, z: usize) -> Result<Vec<SectionInverse>, SectionWitness> {
    p.sections_below(z).iter().map(|s| section_inverse(p, &induced_matrix(p, z, s))).collect()
}

/// Verdict agreement of the two checkers.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub solv: ConsistencyReport,
    pub overlap: ConsistencyReport,
    pub agree: bool,
}

pub fn compare_methods(p: &RefinedPresentation, opts: CheckOptions) -> Comparison {
    let solv = check_solv(p, Mode::Incremental, opts);
    let overlap = check_overlap(p, opts);
    let agree = solv.verdict == overlap.verdict;
    Comparison { solv, overlap, agree }
}
