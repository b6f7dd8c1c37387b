//! Collection from the left.
//!
//! The rewriting rules, for generators `x < y`, are
//!
//! ```text
//! x  y    -> y  δ(x,y)          x  y⁻¹ -> y⁻¹ μ(x,y)
//! x⁻¹ y   -> y  δ(x,y)⁻¹        x⁻¹ y⁻¹ -> y⁻¹ μ(x,y)⁻¹
//! x^e     -> x^(e mod n) π(x)^⌊e/n⌋        (n = n(x) finite)
//! ```
//!
//! where `μ(x,y) = x^(y⁻¹)` comes from an [`InverseConjugateTable`]. The
//! collected prefix is kept as a dense exponent vector and the uncollected
//! suffix as a stack of (word, power) frames; the leftmost uncollected letter
//! is always processed next.

mod inverse;

use std::cell::Cell;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::presentation::RefinedPresentation;
use crate::word::{FreeWord, Int, Letter, NormalWord};

pub use inverse::{derive_inverse_conjugates, DeriveError, SectionInverse};

/// Default bound on rewrite steps per collection.
pub const DEFAULT_STEP_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CollectError {
    #[error("step limit of {limit} exceeded (inconsistent sub-presentation or missing inverse relations?)")]
    StepLimit { limit: u64 },
    #[error("no inverse conjugation relation for x{} under x{}^-1", .x + 1, .y + 1)]
    MissingInverse { x: usize, y: usize },
    #[error("generator x{} is outside the context of the first {k} generators", .gen + 1)]
    OutOfContext { gen: usize, k: usize },
    #[error("sub-presentation size {k} exceeds {m} generators")]
    BadRestriction { k: usize, m: usize },
}

/// The sub-presentation on generators `x_1 .. x_k` of a parent presentation.
#[derive(Clone, Copy, Debug)]
pub struct SubPresentation<'a> {
    pres: &'a RefinedPresentation,
    k: usize,
}

impl<'a> SubPresentation<'a> {
    pub fn presentation(&self) -> &'a RefinedPresentation {
        self.pres
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Power relations visible in the view.
    pub fn power_relations(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.k).filter(|&x| self.pres.is_finite(x))
    }

    /// Conjugation relations visible in the view.
    pub fn conjugate_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.k).flat_map(|y| (0..y).map(move |x| (x, y)))
    }
}

pub fn restrict(p: &RefinedPresentation, k: usize) -> Result<SubPresentation<'_>, CollectError> {
    if k > p.len() {
        return Err(CollectError::BadRestriction { k, m: p.len() });
    }
    Ok(SubPresentation { pres: p, k })
}

/// Derived relations `μ(x, y) = x^(y⁻¹)`, stored per `y` for all `x < y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InverseConjugateTable {
    cols: Vec<Option<Vec<NormalWord>>>,
}

impl InverseConjugateTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&NormalWord> {
        self.cols.get(y)?.as_ref()?.get(x)
    }

    pub fn has_column(&self, y: usize) -> bool {
        matches!(self.cols.get(y), Some(Some(_)))
    }

    pub fn column(&self, y: usize) -> Option<&[NormalWord]> {
        self.cols.get(y)?.as_deref()
    }

    /// Returns the table with `μ(·, y)` set to `col` (indexed by `x < y`).
    pub fn with_column(mut self, y: usize, col: Vec<NormalWord>) -> Self {
        assert_eq!(col.len(), y, "column for x{} must have {} entries", y + 1, y);
        if self.cols.len() <= y {
            self.cols.resize(y + 1, None);
        }
        self.cols[y] = Some(col);
        self
    }

    /// All entries as `(x, y, μ(x, y))`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &NormalWord)> {
        self.cols.iter().enumerate().flat_map(|(y, col)| {
            col.iter().flat_map(move |c| c.iter().enumerate().map(move |(x, w)| (x, y, w)))
        })
    }

    /// Whether every infinite generator `y < k` has its column.
    pub fn covers(&self, p: &RefinedPresentation, k: usize) -> bool {
        (0..k.min(p.len())).all(|y| p.is_finite(y) || self.has_column(y))
    }
}

enum Frame<'w> {
    Word {
        letters: &'w [Letter],
        inverted: bool,
        reps: u64,
        pos: usize,
    },
    Letter {
        gen: usize,
        exp: Int,
    },
}

/// A word raised to a power, as collector input.
#[derive(Clone, Copy)]
pub struct Segment<'w> {
    pub letters: &'w [Letter],
    pub power: &'w Int,
}

fn is_trivial_image(img: &NormalWord, g: usize) -> bool {
    matches!(img.letters(), [(h, e)] if *h == g && e.is_one())
}

/// Word arithmetic in the group of a sub-presentation.
pub struct Collector<'a> {
    ctx: SubPresentation<'a>,
    table: &'a InverseConjugateTable,
    step_limit: u64,
    steps: Cell<u64>,
}

impl<'a> Collector<'a> {
    pub fn new(ctx: SubPresentation<'a>, table: &'a InverseConjugateTable) -> Self {
        Collector { ctx, table, step_limit: DEFAULT_STEP_LIMIT, steps: Cell::new(0) }
    }

    pub fn with_step_limit(mut self, limit: u64) -> Self {
        self.step_limit = limit;
        self
    }

    pub fn context(&self) -> SubPresentation<'a> {
        self.ctx
    }

    pub fn table(&self) -> &'a InverseConjugateTable {
        self.table
    }

    /// Total rewrite steps performed by this collector so far.
    pub fn steps(&self) -> u64 {
        self.steps.get()
    }

    pub fn step_limit(&self) -> u64 {
        self.step_limit
    }

    /// Normal form of a free word.
    pub fn collect(&self, w: &FreeWord) -> Result<NormalWord, CollectError> {
        let one = Int::one();
        self.collect_segments(&[Segment { letters: w.letters(), power: &one }])
    }

    /// Normal form of the product of the segments, left to right.
    pub fn collect_segments(&self, segments: &[Segment<'_>]) -> Result<NormalWord, CollectError> {
        let mut run = Run {
            pres: self.ctx.pres,
            k: self.ctx.k,
            table: self.table,
            limit: self.step_limit,
            steps: 0,
            exps: vec![Int::zero(); self.ctx.k],
            stack: Vec::new(),
        };
        for seg in segments.iter().rev() {
            run.push_word(seg.letters, seg.power)?;
        }
        let result = run.drain();
        self.steps.set(self.steps.get() + run.steps);
        result?;
        Ok(NormalWord::from_dense(&run.exps))
    }

    pub fn multiply(&self, a: &NormalWord, b: &NormalWord) -> Result<NormalWord, CollectError> {
        let one = Int::one();
        self.collect_segments(&[
            Segment { letters: a.letters(), power: &one },
            Segment { letters: b.letters(), power: &one },
        ])
    }

    pub fn invert(&self, a: &NormalWord) -> Result<NormalWord, CollectError> {
        let minus = -Int::one();
        self.collect_segments(&[Segment { letters: a.letters(), power: &minus }])
    }

    /// `a^e` by square-and-multiply.
    pub fn power(&self, a: &NormalWord, e: &Int) -> Result<NormalWord, CollectError> {
        let mut base = if e.is_negative() { self.invert(a)? } else { a.clone() };
        let mut e = e.abs();
        let mut acc = NormalWord::identity();
        let two = Int::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = self.multiply(&acc, &base)?;
            }
            e /= &two;
            if !e.is_zero() {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `b⁻¹ a b`.
    pub fn conjugate(&self, a: &NormalWord, b: &NormalWord) -> Result<NormalWord, CollectError> {
        let one = Int::one();
        let minus = -Int::one();
        self.collect_segments(&[
            Segment { letters: b.letters(), power: &minus },
            Segment { letters: a.letters(), power: &one },
            Segment { letters: b.letters(), power: &one },
        ])
    }

    /// Image of a normal word under the map sending generator `x` to
    /// `images[x]`, applied to normal forms factor by factor:
    /// `(x_k^{r_k} ... x_1^{r_1}) -> images[x_k]^{r_k} ... images[x_1]^{r_1}`.
    pub fn apply_map(&self, images: &[NormalWord], w: &NormalWord) -> Result<NormalWord, CollectError> {
        let segs: Vec<Segment<'_>> = w
            .letters()
            .iter()
            .map(|(g, e)| Segment { letters: images[*g].letters(), power: e })
            .collect();
        self.collect_segments(&segs)
    }
}

struct Run<'w> {
    pres: &'w RefinedPresentation,
    k: usize,
    table: &'w InverseConjugateTable,
    limit: u64,
    steps: u64,
    exps: Vec<Int>,
    stack: Vec<Frame<'w>>,
}

impl<'w> Run<'w> {
    fn push_word(&mut self, letters: &'w [Letter], power: &Int) -> Result<(), CollectError> {
        if letters.is_empty() || power.is_zero() {
            return Ok(());
        }
        if let [(g, e)] = letters {
            self.stack.push(Frame::Letter { gen: *g, exp: e * power });
            return Ok(());
        }
        let reps = power
            .abs()
            .to_u64()
            .ok_or(CollectError::StepLimit { limit: self.limit })?;
        self.stack.push(Frame::Word { letters, inverted: power.is_negative(), reps, pos: 0 });
        Ok(())
    }

    fn next_letter(&mut self) -> Option<(usize, Int)> {
        loop {
            let frame = self.stack.last_mut()?;
            match frame {
                Frame::Letter { .. } => {
                    if let Some(Frame::Letter { gen, exp }) = self.stack.pop() {
                        return Some((gen, exp));
                    }
                    unreachable!()
                }
                Frame::Word { letters, inverted, reps, pos } => {
                    if *pos == letters.len() {
                        *reps -= 1;
                        *pos = 0;
                    }
                    if *reps == 0 {
                        self.stack.pop();
                        continue;
                    }
                    let (g, e) = if *inverted {
                        let (g, e) = &letters[letters.len() - 1 - *pos];
                        (*g, -e)
                    } else {
                        let (g, e) = &letters[*pos];
                        (*g, e.clone())
                    };
                    *pos += 1;
                    return Some((g, e));
                }
            }
        }
    }

    fn drain(&mut self) -> Result<(), CollectError> {
        while let Some((g, e)) = self.next_letter() {
            self.apply(g, e)?;
        }
        Ok(())
    }

    fn tick(&mut self) -> Result<(), CollectError> {
        self.steps += 1;
        if self.steps > self.limit {
            return Err(CollectError::StepLimit { limit: self.limit });
        }
        Ok(())
    }

    /// Multiplies the collected prefix by `x_g^e`.
    fn apply(&mut self, g: usize, mut e: Int) -> Result<(), CollectError> {
        if e.is_zero() {
            return Ok(());
        }
        self.tick()?;
        if g >= self.k {
            return Err(CollectError::OutOfContext { gen: g, k: self.k });
        }
        let pres = self.pres;
        let tail_clear = self.exps[..g].iter().all(Zero::is_zero);
        match pres.order(g) {
            Some(n) => {
                if tail_clear {
                    let total = &self.exps[g] + &e;
                    let (q, r) = total.div_mod_floor(n);
                    self.exps[g] = r;
                    self.push_word(pres.power(g).letters(), &q)?;
                    return Ok(());
                }
                if e.is_negative() || &e >= n {
                    let (q, r) = e.div_mod_floor(n);
                    self.push_word(pres.power(g).letters(), &q)?;
                    if r.is_zero() {
                        return Ok(());
                    }
                    e = r;
                }
                if e > Int::one() {
                    self.stack.push(Frame::Letter { gen: g, exp: e - 1 });
                }
                self.move_past(g, true)
            }
            None => {
                if tail_clear {
                    self.exps[g] += e;
                    return Ok(());
                }
                let forward = e.is_positive();
                if e > Int::one() {
                    self.stack.push(Frame::Letter { gen: g, exp: e - 1 });
                } else if e < -Int::one() {
                    self.stack.push(Frame::Letter { gen: g, exp: e + 1 });
                }
                self.move_past(g, forward)
            }
        }
    }

    /// Moves one `x_g^{±1}` left across the nonzero collected tail below it:
    /// `T x_g = x_g T^{x_g}` and `T x_g⁻¹ = x_g⁻¹ T^{x_g⁻¹}`.
    fn move_past(&mut self, g: usize, forward: bool) -> Result<(), CollectError> {
        let pres = self.pres;
        let table = self.table;
        let image = |i: usize| -> Result<&'w NormalWord, CollectError> {
            if forward {
                Ok(pres.conjugate(i, g))
            } else {
                table.get(i, g).ok_or(CollectError::MissingInverse { x: i, y: g })
            }
        };
        // the tail is unchanged when every tail generator commutes with x_g
        let mut all_trivial = true;
        for i in 0..g {
            if !self.exps[i].is_zero() && !is_trivial_image(image(i)?, i) {
                all_trivial = false;
                break;
            }
        }
        let overflow = self.bump(g, forward);
        if all_trivial {
            if overflow {
                // x_g^n = π(x_g) must come before the (unchanged) tail
                for i in 0..g {
                    if !self.exps[i].is_zero() {
                        let r = std::mem::take(&mut self.exps[i]);
                        self.stack.push(Frame::Letter { gen: i, exp: r });
                    }
                }
                self.push_word(pres.power(g).letters(), &Int::one())?;
            }
            return Ok(());
        }
        for i in 0..g {
            if self.exps[i].is_zero() {
                continue;
            }
            let r = std::mem::take(&mut self.exps[i]);
            let img = image(i)?;
            self.push_word(img.letters(), &r)?;
        }
        if overflow {
            self.push_word(pres.power(g).letters(), &Int::one())?;
        }
        Ok(())
    }

    /// Adds ±1 to the exponent of `x_g`; true when a finite exponent wrapped
    /// to zero, i.e. `x_g^n = π(x_g)` must be inserted.
    fn bump(&mut self, g: usize, forward: bool) -> bool {
        if forward {
            self.exps[g] += 1;
        } else {
            self.exps[g] -= 1;
        }
        match self.pres.order(g) {
            Some(n) if &self.exps[g] == n => {
                self.exps[g] = Int::zero();
                true
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests;
