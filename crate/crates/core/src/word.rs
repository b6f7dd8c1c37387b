//! Words over the generator alphabet.
//!
//! Generators are identified by their 0-based position in the total order
//! `x_1 < x_2 < ... < x_m` (so `GenId(0)` is `x_1`). A [`NormalWord`] is the
//! exponent data of `x_m^{r_m} ... x_1^{r_1}`, stored sparsely as letters in
//! strictly descending generator order. A [`FreeWord`] is an arbitrary element
//! of the free group.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Unbounded exponent type used throughout.
pub type Int = BigInt;

/// Position of a generator in the total order, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenId(pub usize);

impl GenId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0 + 1)
    }
}

/// A single factor `x^e` with `e != 0`.
pub type Letter = (usize, Int);

/// A free-group word. Adjacent letters always have distinct generators and
/// no letter has exponent zero; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn from_letters<I>(letters: I) -> Self
    where
        I: IntoIterator<Item = (usize, Int)>,
    {
        let mut w = FreeWord::default();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Appends `x_g^e`, merging with the last letter when the generator repeats.
    pub fn push(&mut self, gen: usize, exp: Int) {
        if exp.is_zero() {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == gen {
                last.1 += exp;
                if last.1.is_zero() {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((gen, exp));
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|(g, e)| (*g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for (g, e) in &other.letters {
            w.push(*g, e.clone());
        }
        w
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|(g, _)| *g).max()
    }
}

impl From<&NormalWord> for FreeWord {
    fn from(w: &NormalWord) -> Self {
        FreeWord {
            letters: w.letters.clone(),
        }
    }
}

/// Exponent data of `x_m^{r_m} ... x_1^{r_1}`, nonzero entries only, in
/// strictly descending generator order.
///
/// Whether the exponents lie in their coefficient domains depends on the
/// presentation; see [`crate::presentation::RefinedPresentation::check_domain`].
/// Words produced by the collector always do.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    letters: Vec<Letter>,
}

impl NormalWord {
    pub fn identity() -> Self {
        NormalWord::default()
    }

    pub fn generator(g: usize) -> Self {
        NormalWord {
            letters: vec![(g, Int::one())],
        }
    }

    pub fn gen_power(g: usize, e: Int) -> Self {
        if e.is_zero() {
            NormalWord::identity()
        } else {
            NormalWord {
                letters: vec![(g, e)],
            }
        }
    }

    /// Builds a word from `(generator, exponent)` pairs in any order; zero
    /// exponents are dropped. Panics on a repeated generator.
    pub fn from_exponents<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, Int)>,
    {
        let mut letters: Vec<Letter> = pairs.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        letters.sort_by(|a, b| b.0.cmp(&a.0));
        for pair in letters.windows(2) {
            assert!(pair[0].0 != pair[1].0, "repeated generator in normal word");
        }
        NormalWord { letters }
    }

    /// Builds from a dense exponent vector indexed by generator.
    pub fn from_dense(exps: &[Int]) -> Self {
        let letters = exps
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, e)| !e.is_zero())
            .map(|(g, e)| (g, e.clone()))
            .collect();
        NormalWord { letters }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); len];
        for (g, e) in &self.letters {
            v[*g] = e.clone();
        }
        v
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent on generator `g` (zero if absent).
    pub fn exponent(&self, g: usize) -> Int {
        self.letters
            .binary_search_by(|(h, _)| g.cmp(h))
            .map(|i| self.letters[i].1.clone())
            .unwrap_or_default()
    }

    /// Sets the exponent on generator `g`, keeping the descending order.
    pub fn set_exponent(&mut self, g: usize, e: Int) {
        match self.letters.binary_search_by(|(h, _)| g.cmp(h)) {
            Ok(i) if e.is_zero() => {
                self.letters.remove(i);
            }
            Ok(i) => self.letters[i].1 = e,
            Err(_) if e.is_zero() => {}
            Err(i) => self.letters.insert(i, (g, e)),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters.iter().map(|(g, _)| *g)
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.first().map(|(g, _)| *g)
    }

    /// Drops every letter on a generator `>= k`.
    pub fn truncated(&self, k: usize) -> NormalWord {
        NormalWord {
            letters: self.letters.iter().filter(|(g, _)| *g < k).cloned().collect(),
        }
    }
}

/// Renders words in the text grammar, given generator names.
pub struct WordDisplay<'a, 'n> {
    pub(crate) letters: &'a [Letter],
    pub(crate) names: &'n [String],
}

impl fmt::Display for WordDisplay<'_, '_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self.names.get(*g).map(String::as_str).unwrap_or("?");
            if e.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(v: i64) -> Int {
        Int::from(v)
    }

    #[test]
    fn free_word_merges_and_cancels() {
        let w = FreeWord::from_letters([(0, i(1)), (0, i(2)), (1, i(1)), (1, i(-1)), (0, i(-3))]);
        assert!(w.is_identity());
        let w = FreeWord::from_letters([(0, i(1)), (1, i(0)), (0, i(1))]);
        assert_eq!(w.letters(), &[(0, i(2))]);
    }

    #[test]
    fn free_word_inverse_reverses() {
        let w = FreeWord::from_letters([(2, i(1)), (0, i(-2))]);
        assert_eq!(w.inverse().letters(), &[(0, i(2)), (2, i(-1))]);
        assert!(w.concat(&w.inverse()).is_identity());
    }

    #[test]
    fn normal_word_exponent_access() {
        let mut w = NormalWord::from_exponents([(0, i(3)), (4, i(-1)), (2, i(0))]);
        assert_eq!(w.letters(), &[(4, i(-1)), (0, i(3))]);
        assert_eq!(w.exponent(2), i(0));
        w.set_exponent(2, i(5));
        assert_eq!(w.letters(), &[(4, i(-1)), (2, i(5)), (0, i(3))]);
        w.set_exponent(4, i(0));
        assert_eq!(w.max_gen(), Some(2));
        assert_eq!(NormalWord::from_dense(&w.to_dense(6)), w);
    }

    #[test]
    fn display_uses_names() {
        let names = vec!["a".to_string(), "b".to_string()];
        let w = NormalWord::from_exponents([(0, i(2)), (1, i(1))]);
        let s = WordDisplay { letters: w.letters(), names: &names }.to_string();
        assert_eq!(s, "b a^2");
        let id = NormalWord::identity();
        assert_eq!(WordDisplay { letters: id.letters(), names: &names }.to_string(), "1");
    }
}
