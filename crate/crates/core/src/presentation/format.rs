//! Line-oriented text format.
//!
//! ```text
//! rsp 1
//! # quaternion group of order 8
//! gen x1 block 1 order 4 prime 2
//! gen x2 block 2 order 2 prime 2
//! pow x2 = x1^2
//! cnj x1 x2 = x1^3
//! ```
//!
//! Omitted `pow` lines mean π(x) = 1 and omitted `cnj` lines mean δ(x, y) = x.
//! A word is `1` or whitespace-separated factors `name^e` (or bare `name` for
//! exponent 1) in strictly descending generator order.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use thiserror::Error;

use super::{Generator, PresentationError, RefinedPresentation, Violation};
use crate::word::{FreeWord, Int, NormalWord};

pub const HEADER: &str = "rsp 1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {source}")]
    Structure {
        line: usize,
        #[source]
        source: PresentationError,
    },
    #[error("{} violation(s); first: {}", .0.len(), .0[0])]
    Invalid(Vec<Violation>),
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], column: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: s + 1 });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

struct LineCursor<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> LineCursor<'a> {
    fn next(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        let t = *self
            .tokens
            .get(self.pos)
            .ok_or_else(|| syntax(self.line, self.end_column, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, keyword: &str) -> Result<(), ParseError> {
        let line = self.line;
        let t = self.next(&format!("`{keyword}`"))?;
        if t.text != keyword {
            return Err(syntax(line, t.column, format!("expected `{keyword}`, found `{}`", t.text)));
        }
        Ok(())
    }

    fn rest(&self) -> &[Token<'a>] {
        &self.tokens[self.pos.min(self.tokens.len())..]
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => Err(syntax(self.line, t.column, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

fn parse_int(line: usize, t: &Token<'_>) -> Result<Int, ParseError> {
    t.text
        .parse::<Int>()
        .map_err(|_| syntax(line, t.column, format!("expected an integer, found `{}`", t.text)))
}

fn parse_usize(line: usize, t: &Token<'_>) -> Result<usize, ParseError> {
    t.text
        .parse::<usize>()
        .map_err(|_| syntax(line, t.column, format!("expected a positive integer, found `{}`", t.text)))
}

/// Splits `name^e` / `name`; returns the name, the exponent and the exponent's column.
fn split_factor<'t>(line: usize, t: &Token<'t>) -> Result<(&'t str, Int), ParseError> {
    match t.text.split_once('^') {
        Some((name, exp)) => {
            let column = t.column + name.len() + 1;
            let e = exp
                .parse::<Int>()
                .map_err(|_| syntax(line, column, format!("bad exponent `{exp}`")))?;
            Ok((name, e))
        }
        None => Ok((t.text, Int::one())),
    }
}

fn lookup(p: &RefinedPresentation, line: usize, column: usize, name: &str) -> Result<usize, ParseError> {
    p.index_of(name)
        .ok_or_else(|| syntax(line, column, format!("unknown generator `{name}`")))
}

/// Parses a relation right-hand side: descending factors, all below `bound`.
fn parse_rhs(
    p: &RefinedPresentation,
    line: usize,
    tokens: &[Token<'_>],
    bound: usize,
    end_column: usize,
) -> Result<NormalWord, ParseError> {
    if tokens.is_empty() {
        return Err(syntax(line, end_column, "expected a word"));
    }
    if tokens.len() == 1 && tokens[0].text == "1" {
        return Ok(NormalWord::identity());
    }
    let mut pairs = Vec::new();
    let mut last: Option<usize> = None;
    for t in tokens {
        let (name, e) = split_factor(line, t)?;
        let g = lookup(p, line, t.column, name)?;
        if e.is_zero() {
            return Err(syntax(line, t.column, "zero exponent"));
        }
        if let Some(l) = last {
            if g >= l {
                return Err(syntax(line, t.column, "factors must be in strictly descending generator order"));
            }
        }
        if g >= bound {
            return Err(syntax(
                line,
                t.column,
                format!("`{name}` is not below the relation's generator"),
            ));
        }
        last = Some(g);
        pairs.push((g, e));
    }
    Ok(NormalWord::from_exponents(pairs))
}

fn parse_gen(c: &mut LineCursor<'_>) -> Result<Generator, ParseError> {
    let line = c.line;
    let name = c.next("generator name")?.text.to_string();
    c.expect("block")?;
    let block = parse_usize(line, &c.next("block index")?)?;
    c.expect("order")?;
    let order_tok = c.next("order")?;
    if order_tok.text == "inf" {
        c.finish()?;
        return Ok(Generator::infinite(name, block));
    }
    let order = parse_int(line, &order_tok)?;
    c.expect("prime").map_err(|e| match e {
        ParseError::Syntax { line, column, .. } => {
            syntax(line, column, "finite order requires `prime <p>`")
        }
        other => other,
    })?;
    let prime_tok = c.next("prime")?;
    let prime = prime_tok
        .text
        .parse::<u64>()
        .map_err(|_| syntax(line, prime_tok.column, "bad prime"))?;
    c.finish()?;
    Ok(Generator {
        name,
        tag: super::BlockTag { block, kind: super::BlockKind::Prime(prime) },
        order: super::RelativeOrder::Finite(order),
    })
}

/// Parses without running [`RefinedPresentation::validate`].
pub fn parse_unchecked(text: &str) -> Result<RefinedPresentation, ParseError> {
    let mut header_seen = false;
    let mut gens: Vec<Generator> = Vec::new();
    let mut gen_lines: Vec<(usize, String)> = Vec::new();
    let mut pres: Option<RefinedPresentation> = None;
    let mut seen_pow = HashSet::new();
    let mut seen_cnj = HashSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(body);
        if tokens.is_empty() {
            continue;
        }
        let end_column = body.trim_end().len() + 1;
        let mut c = LineCursor { line, tokens, pos: 0, end_column };
        let kw = c.next("keyword")?;
        let (kw_text, kw_col) = (kw.text, kw.column);
        if !header_seen {
            if kw_text != "rsp" {
                return Err(syntax(line, kw_col, "missing `rsp 1` header"));
            }
            let v = c.next("version")?;
            if v.text != "1" {
                return Err(syntax(line, v.column, format!("unsupported version `{}`", v.text)));
            }
            c.finish()?;
            header_seen = true;
            continue;
        }
        match kw_text {
            "gen" => {
                if pres.is_some() {
                    return Err(syntax(line, kw_col, "`gen` after a relation line"));
                }
                let g = parse_gen(&mut c)?;
                gen_lines.push((line, g.name.clone()));
                gens.push(g);
            }
            "pow" | "cnj" => {
                if pres.is_none() {
                    let built = RefinedPresentation::new(std::mem::take(&mut gens))
                        .map_err(|e| structure_error(e, &gen_lines))?;
                    pres = Some(built);
                }
                let p = pres.as_mut().expect("built above");
                if kw_text == "pow" {
                    let t = c.next("generator name")?;
                    let x = lookup(p, line, t.column, t.text)?;
                    if !seen_pow.insert(x) {
                        return Err(syntax(line, t.column, "duplicate `pow` line"));
                    }
                    c.expect("=")?;
                    let w = parse_rhs(p, line, c.rest(), x, end_column)?;
                    p.set_power(x, w).map_err(|source| ParseError::Structure { line, source })?;
                } else {
                    let tx = c.next("generator name")?;
                    let x = lookup(p, line, tx.column, tx.text)?;
                    let ty = c.next("generator name")?;
                    let y = lookup(p, line, ty.column, ty.text)?;
                    if x >= y {
                        return Err(syntax(line, ty.column, "`cnj x y` requires x < y"));
                    }
                    if !seen_cnj.insert((x, y)) {
                        return Err(syntax(line, tx.column, "duplicate `cnj` line"));
                    }
                    c.expect("=")?;
                    let w = parse_rhs(p, line, c.rest(), y, end_column)?;
                    p.set_conjugate(x, y, w).map_err(|source| ParseError::Structure { line, source })?;
                }
            }
            other => return Err(syntax(line, kw_col, format!("unknown keyword `{other}`"))),
        }
    }
    if !header_seen {
        return Err(syntax(last_line.max(1), 1, "missing `rsp 1` header"));
    }
    match pres {
        Some(p) => Ok(p),
        None => RefinedPresentation::new(gens).map_err(|e| structure_error(e, &gen_lines)),
    }
}

fn structure_error(e: PresentationError, gen_lines: &[(usize, String)]) -> ParseError {
    let name = match &e {
        PresentationError::DuplicateName(n)
        | PresentationError::InvalidName(n)
        | PresentationError::BlockOrder { name: n, .. }
        | PresentationError::NotPrime { name: n, .. }
        | PresentationError::BadOrder { name: n, .. }
        | PresentationError::TagMismatch { name: n } => Some(n.clone()),
        _ => None,
    };
    let line = name
        .and_then(|n| gen_lines.iter().find(|(_, m)| *m == n))
        .or(gen_lines.last())
        .map(|(l, _)| *l)
        .unwrap_or(1);
    ParseError::Structure { line, source: e }
}

/// Parses and validates; any violation is an error.
pub fn parse(text: &str) -> Result<RefinedPresentation, ParseError> {
    let p = parse_unchecked(text)?;
    let v = p.validate();
    if v.is_empty() {
        Ok(p)
    } else {
        Err(ParseError::Invalid(v))
    }
}

/// Canonical text: header, `gen` lines, non-trivial `pow` lines by
/// generator, non-default `cnj` lines ordered by the larger generator.
pub fn serialize(p: &RefinedPresentation) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for g in p.generators() {
        match (&g.order, g.tag.kind) {
            (super::RelativeOrder::Finite(n), super::BlockKind::Prime(q)) => {
                let _ = writeln!(out, "gen {} block {} order {} prime {}", g.name, g.tag.block, n, q);
            }
            _ => {
                let _ = writeln!(out, "gen {} block {} order inf", g.name, g.tag.block);
            }
        }
    }
    for x in 0..p.len() {
        if p.is_finite(x) && !p.power(x).is_identity() {
            let _ = writeln!(out, "pow {} = {}", p.name(x), p.display(p.power(x)));
        }
    }
    for y in 0..p.len() {
        for x in 0..y {
            let w = p.conjugate(x, y);
            if *w != NormalWord::generator(x) {
                let _ = writeln!(out, "cnj {} {} = {}", p.name(x), p.name(y), p.display(w));
            }
        }
    }
    out
}

/// Parses a free word over `p`'s generators: `1`, or whitespace-separated
/// `name`/`name^e` factors in any order.
pub fn parse_word(p: &RefinedPresentation, text: &str) -> Result<FreeWord, ParseError> {
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return Err(syntax(1, 1, "expected a word"));
    }
    if tokens.len() == 1 && tokens[0].text == "1" {
        return Ok(FreeWord::identity());
    }
    let mut w = FreeWord::identity();
    for t in &tokens {
        let (name, e) = split_factor(1, t)?;
        let g = lookup(p, 1, t.column, name)?;
        w.push(g, e);
    }
    Ok(w)
}
