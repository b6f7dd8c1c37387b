//! Refined solvable presentations: the alphabet with its block partition,
//! the relative orders `n`, power images `π` and conjugation images `δ`.

mod format;
mod validate;

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{GenId, Int, NormalWord, WordDisplay};

pub use format::{parse, parse_unchecked, parse_word, serialize, ParseError};
pub use validate::{Relation, Violation, ViolationKind};

/// Prime/infinite part of a block that a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockKind {
    Prime(u64),
    Infinite,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockKind::Prime(p) => write!(f, "p={p}"),
            BlockKind::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockTag {
    /// 1-based block index `s`.
    pub block: usize,
    pub kind: BlockKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RelativeOrder {
    Finite(Int),
    Infinite,
}

impl RelativeOrder {
    pub fn finite(&self) -> Option<&Int> {
        match self {
            RelativeOrder::Finite(n) => Some(n),
            RelativeOrder::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub tag: BlockTag,
    pub order: RelativeOrder,
}

impl Generator {
    pub fn infinite(name: impl Into<String>, block: usize) -> Self {
        Generator {
            name: name.into(),
            tag: BlockTag { block, kind: BlockKind::Infinite },
            order: RelativeOrder::Infinite,
        }
    }

    pub fn finite(name: impl Into<String>, block: usize, prime: u64, order: u64) -> Self {
        Generator {
            name: name.into(),
            tag: BlockTag { block, kind: BlockKind::Prime(prime) },
            order: RelativeOrder::Finite(Int::from(order)),
        }
    }
}

/// Structural errors: anything that makes the alphabet itself ill-formed.
/// Relation-level problems are reported by [`RefinedPresentation::validate`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("generator `{name}`: block {block} out of sequence (blocks must start at 1, be contiguous and non-decreasing)")]
    BlockOrder { name: String, block: usize },
    #[error("generator `{name}`: {value} is not a prime")]
    NotPrime { name: String, value: u64 },
    #[error("generator `{name}`: relative order {order} is not a nontrivial power of {prime}")]
    BadOrder { name: String, order: Int, prime: u64 },
    #[error("generator `{name}`: tag and relative order disagree")]
    TagMismatch { name: String },
    #[error("generator index {0} out of range")]
    UnknownGenerator(usize),
    #[error("power relation given for infinite generator `{0}`")]
    PowerOfInfinite(String),
    #[error("conjugate relation requires x < y, got ({0}, {1})")]
    PairOrder(String, String),
    #[error("word uses generator `{0}` not below the relation's generator")]
    WordTooHigh(String),
}

/// One section of the normal series a conjugation acts on: the generators of
/// `X_s(p)` (a p-section) or `X_s(∞)` (an infinite section) of block `s`,
/// possibly restricted to a prefix of the alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub block: usize,
    pub kind: BlockKind,
    pub gens: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedPresentation {
    gens: Vec<Generator>,
    names: Vec<String>,
    /// `power[x]`: π(x); identity for infinite generators.
    power: Vec<NormalWord>,
    /// `conj[y][x]`: δ(x, y) for `x < y`.
    conj: Vec<Vec<NormalWord>>,
    blocks: usize,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// True when `n` is `p^k` for some `k >= 1`.
pub fn is_power_of(n: &Int, p: u64) -> bool {
    let p = Int::from(p);
    let mut n = n.clone();
    if n < p {
        return false;
    }
    while n > Int::one() {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return false;
        }
        n = q;
    }
    true
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RefinedPresentation {
    /// Builds a presentation with trivial relations: every π is the identity
    /// and every δ(x, y) is `x`.
    pub fn new(gens: Vec<Generator>) -> Result<Self, PresentationError> {
        let mut seen = HashMap::new();
        let mut prev_block = 0usize;
        for (i, g) in gens.iter().enumerate() {
            if !valid_name(&g.name) {
                return Err(PresentationError::InvalidName(g.name.clone()));
            }
            if seen.insert(g.name.clone(), i).is_some() {
                return Err(PresentationError::DuplicateName(g.name.clone()));
            }
            let b = g.tag.block;
            if b == 0 || b < prev_block || b > prev_block + 1 {
                return Err(PresentationError::BlockOrder { name: g.name.clone(), block: b });
            }
            prev_block = b;
            match (&g.tag.kind, &g.order) {
                (BlockKind::Infinite, RelativeOrder::Infinite) => {}
                (BlockKind::Prime(p), RelativeOrder::Finite(n)) => {
                    if !is_prime(*p) {
                        return Err(PresentationError::NotPrime { name: g.name.clone(), value: *p });
                    }
                    if !is_power_of(n, *p) {
                        return Err(PresentationError::BadOrder {
                            name: g.name.clone(),
                            order: n.clone(),
                            prime: *p,
                        });
                    }
                }
                _ => return Err(PresentationError::TagMismatch { name: g.name.clone() }),
            }
        }
        let names: Vec<String> = gens.iter().map(|g| g.name.clone()).collect();
        let power = vec![NormalWord::identity(); gens.len()];
        let conj = (0..gens.len())
            .map(|y| (0..y).map(NormalWord::generator).collect())
            .collect();
        Ok(RefinedPresentation { gens, names, power, conj, blocks: prev_block })
    }

    /// Number of generators `m`.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, g: usize) -> &Generator {
        &self.gens[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn block(&self, g: usize) -> usize {
        self.gens[g].tag.block
    }

    pub fn kind(&self, g: usize) -> BlockKind {
        self.gens[g].tag.kind
    }

    /// `n(x)` when finite.
    pub fn order(&self, g: usize) -> Option<&Int> {
        self.gens[g].order.finite()
    }

    pub fn is_finite(&self, g: usize) -> bool {
        self.order(g).is_some()
    }

    /// Generator indices of block `s` (1-based), ascending.
    pub fn block_gens(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.gens.iter().enumerate().filter(move |(_, g)| g.tag.block == s).map(|(i, _)| i)
    }

    /// First generator index of block `s`; `len()` when `s` is past the end.
    pub fn block_start(&self, s: usize) -> usize {
        self.gens.iter().position(|g| g.tag.block >= s).unwrap_or(self.gens.len())
    }

    /// π(x); the identity for infinite generators.
    pub fn power(&self, x: usize) -> &NormalWord {
        &self.power[x]
    }

    /// δ(x, y) for `x < y`.
    pub fn conjugate(&self, x: usize, y: usize) -> &NormalWord {
        &self.conj[y][x]
    }

    /// All δ(x, y) for `x < y`, indexed by `x`.
    pub fn conjugates_of(&self, y: usize) -> &[NormalWord] {
        &self.conj[y]
    }

    pub fn set_power(&mut self, x: usize, w: NormalWord) -> Result<(), PresentationError> {
        if x >= self.len() {
            return Err(PresentationError::UnknownGenerator(x));
        }
        if !self.is_finite(x) {
            return Err(PresentationError::PowerOfInfinite(self.names[x].clone()));
        }
        if let Some(g) = w.max_gen() {
            if g >= x {
                return Err(PresentationError::WordTooHigh(self.name_or_index(g)));
            }
        }
        self.power[x] = w;
        Ok(())
    }

    pub fn set_conjugate(&mut self, x: usize, y: usize, w: NormalWord) -> Result<(), PresentationError> {
        if y >= self.len() {
            return Err(PresentationError::UnknownGenerator(y));
        }
        if x >= y {
            return Err(PresentationError::PairOrder(self.name_or_index(x), self.name_or_index(y)));
        }
        if let Some(g) = w.max_gen() {
            if g >= y {
                return Err(PresentationError::WordTooHigh(self.name_or_index(g)));
            }
        }
        self.conj[y][x] = w;
        Ok(())
    }

    fn name_or_index(&self, g: usize) -> String {
        self.names.get(g).cloned().unwrap_or_else(|| format!("#{}", g + 1))
    }

    /// Whether `e` lies in the coefficient domain of generator `g`.
    pub fn in_domain(&self, g: usize, e: &Int) -> bool {
        match self.order(g) {
            Some(n) => !e.is_negative() && e < n,
            None => true,
        }
    }

    /// Whether every exponent of `w` lies in its coefficient domain.
    pub fn check_domain(&self, w: &NormalWord) -> bool {
        w.letters().iter().all(|(g, e)| *g < self.len() && self.in_domain(*g, e))
    }

    /// Renders a word with this presentation's generator names.
    pub fn display<'a>(&'a self, w: &'a NormalWord) -> WordDisplay<'a, 'a> {
        WordDisplay { letters: w.letters(), names: &self.names }
    }

    pub fn word_string(&self, w: &NormalWord) -> String {
        self.display(w).to_string()
    }

    pub fn gen_id(&self, g: usize) -> GenId {
        GenId(g)
    }

    /// The sub-presentation on the first `k` generators as a standalone
    /// presentation.
    pub fn truncate(&self, k: usize) -> RefinedPresentation {
        let k = k.min(self.len());
        let gens = self.gens[..k].to_vec();
        let blocks = gens.last().map(|g| g.tag.block).unwrap_or(0);
        RefinedPresentation {
            names: self.names[..k].to_vec(),
            power: self.power[..k].to_vec(),
            conj: self.conj[..k].to_vec(),
            gens,
            blocks,
        }
    }

    /// Sections of the generators `< k`: for each block in ascending order,
    /// its p-sections by ascending prime, then its infinite section. Empty
    /// sections are omitted.
    pub fn sections_below(&self, k: usize) -> Vec<Section> {
        let k = k.min(self.len());
        let mut out: Vec<Section> = Vec::new();
        let top = if k == 0 { 0 } else { self.block(k - 1) };
        for s in 1..=top {
            out.extend(self.block_sections(s, k));
        }
        out
    }

    /// Sections of block `s` restricted to generators `< k`.
    pub fn block_sections(&self, s: usize, k: usize) -> Vec<Section> {
        let mut primes: Vec<u64> = Vec::new();
        let mut inf = Vec::new();
        for g in self.block_gens(s).filter(|g| *g < k) {
            match self.kind(g) {
                BlockKind::Prime(p) => {
                    if !primes.contains(&p) {
                        primes.push(p);
                    }
                }
                BlockKind::Infinite => inf.push(g),
            }
        }
        primes.sort_unstable();
        let mut out: Vec<Section> = primes
            .into_iter()
            .map(|p| Section {
                block: s,
                kind: BlockKind::Prime(p),
                gens: self
                    .block_gens(s)
                    .filter(|g| *g < k && self.kind(*g) == BlockKind::Prime(p))
                    .collect(),
            })
            .collect();
        if !inf.is_empty() {
            out.push(Section { block: s, kind: BlockKind::Infinite, gens: inf });
        }
        out
    }

    /// Product of all relative orders, when every one is finite.
    pub fn finite_order(&self) -> Option<Int> {
        let mut acc = Int::one();
        for g in 0..self.len() {
            acc *= self.order(g)?;
        }
        Some(acc)
    }

    /// Structural violations of the Type 1-3 and power support rules and of
    /// the coefficient domains. Empty when the presentation is well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        validate::validate(self)
    }
}
