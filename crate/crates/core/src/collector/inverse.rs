//! Derivation of `μ(x, z) = x^(z⁻¹)` for an infinite generator `z`.
//!
//! Sections of `H_{z-1}` are processed in order (blocks ascending; inside a
//! block the p-sections, then the infinite section). For a section
//! `y_1 .. y_e` on which `δ(z)` acts by `A` with inverse `B`,
//!
//! ```text
//! (y_e^z)^{b_ei} ... (y_1^z)^{b_1i} = y_i u
//! μ(y_i, z) = y_e^{b_ei} ... y_1^{b_1i} (u^{z⁻¹})⁻¹
//! ```
//!
//! where `u` only involves generators of sections handled earlier.

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{CollectError, Collector, InverseConjugateTable, Segment, SubPresentation};
use crate::matrix::{self, IntMatrix};
use crate::presentation::{BlockKind, Section};
use crate::word::{FreeWord, Int, NormalWord};

/// A section of `H_{z-1}` with the induced matrix of `δ(z)` and a claimed
/// inverse. `forward[i][j]` is the exponent of `gens[i]` in `δ(gens[j], z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionInverse {
    pub section: Section,
    pub forward: IntMatrix,
    pub inverse: IntMatrix,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeriveError {
    #[error("x{} has finite order; inverse relations are only derived for infinite generators", .0 + 1)]
    FiniteGenerator(usize),
    #[error("inverse table is missing a column below x{}", .0 + 1)]
    IncompleteTable(usize),
    #[error("sections do not cover x{} exactly once", .0 + 1)]
    Coverage(usize),
    #[error("matrix for block {block} ({kind}) is not an inverse of the induced map")]
    NotInverse { block: usize, kind: BlockKind },
    #[error("tail of x{} under the inverse leaves the processed sections (uses x{})", .x + 1, .bad + 1)]
    TailSupport { x: usize, bad: usize },
    #[error(transparent)]
    Collect(#[from] CollectError),
}

/// Checks `A·B ≡ I`, row `i` taken modulo the order of `gens[i]` (exactly,
/// for infinite generators).
fn verify_inverse(ctx: SubPresentation<'_>, inv: &SectionInverse) -> bool {
    let n = inv.section.gens.len();
    if inv.forward.len() != n || inv.inverse.len() != n {
        return false;
    }
    let prod = matrix::mul(&inv.forward, &inv.inverse);
    for (i, row) in prod.iter().enumerate() {
        let order = ctx.presentation().order(inv.section.gens[i]);
        for (j, v) in row.iter().enumerate() {
            let want = if i == j { Int::one() } else { Int::zero() };
            let ok = match order {
                Some(m) => (v - &want).is_multiple_of(m),
                None => *v == want,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Returns `tbl` extended by the column `μ(·, z)` over `ctx` (which must be
/// `H_{z-1}`, i.e. `ctx.k() == z`).
pub fn derive_inverse_conjugates(
    ctx: SubPresentation<'_>,
    z: usize,
    tbl: InverseConjugateTable,
    section_inverses: &[SectionInverse],
    step_limit: u64,
) -> Result<(InverseConjugateTable, u64), DeriveError> {
    let p = ctx.presentation();
    assert_eq!(ctx.k(), z, "context must consist of the generators below z");
    if p.is_finite(z) {
        return Err(DeriveError::FiniteGenerator(z));
    }
    if let Some(y) = (0..z).find(|&y| !p.is_finite(y) && !tbl.has_column(y)) {
        return Err(DeriveError::IncompleteTable(y));
    }
    let mut seen = vec![false; z];
    for inv in section_inverses {
        for &g in &inv.section.gens {
            if g >= z || seen[g] {
                return Err(DeriveError::Coverage(g.min(z.saturating_sub(1))));
            }
            seen[g] = true;
        }
    }
    if let Some(g) = seen.iter().position(|s| !s) {
        return Err(DeriveError::Coverage(g));
    }

    let col = {
        let collector = Collector::new(ctx, &tbl).with_step_limit(step_limit);
        let mut col: Vec<Option<NormalWord>> = vec![None; z];
        for inv in section_inverses {
            if !verify_inverse(ctx, inv) {
                return Err(DeriveError::NotInverse { block: inv.section.block, kind: inv.section.kind });
            }
            let gens = &inv.section.gens;
            let mut fresh = Vec::with_capacity(gens.len());
            for (i, &y) in gens.iter().enumerate() {
                let coeffs: Vec<&Int> = (0..gens.len()).map(|j| &inv.inverse[j][i]).collect();
                // P = (y_e^z)^{b_ei} ... (y_1^z)^{b_1i}
                let segs: Vec<Segment<'_>> = (0..gens.len())
                    .rev()
                    .map(|j| Segment { letters: p.conjugate(gens[j], z).letters(), power: coeffs[j] })
                    .collect();
                let big_p = collector.collect_segments(&segs)?;
                let minus = -Int::one();
                let one = Int::one();
                let y_word = NormalWord::generator(y);
                let u = collector.collect_segments(&[
                    Segment { letters: y_word.letters(), power: &minus },
                    Segment { letters: big_p.letters(), power: &one },
                ])?;
                if let Some(bad) = u.support().find(|g| col[*g].is_none()) {
                    return Err(DeriveError::TailSupport { x: y, bad });
                }
                // v = u^(z⁻¹)
                let v_segs: Vec<Segment<'_>> = u
                    .letters()
                    .iter()
                    .map(|(g, e)| Segment { letters: col[*g].as_ref().unwrap().letters(), power: e })
                    .collect();
                let v = collector.collect_segments(&v_segs)?;
                let mut word = FreeWord::identity();
                for j in (0..gens.len()).rev() {
                    word.push(gens[j], coeffs[j].clone());
                }
                let mu = collector.collect_segments(&[
                    Segment { letters: word.letters(), power: &one },
                    Segment { letters: v.letters(), power: &minus },
                ])?;
                fresh.push((y, mu));
            }
            for (y, mu) in fresh {
                col[y] = Some(mu);
            }
        }
        let steps = collector.steps();
        (col.into_iter().map(|w| w.expect("covered")).collect::<Vec<_>>(), steps)
    };
    let (col, steps) = col;
    Ok((tbl.with_column(z, col), steps))
}
