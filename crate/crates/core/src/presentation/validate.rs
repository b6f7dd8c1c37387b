use std::fmt;

use num_traits::One;
use serde::Serialize;

use super::{BlockKind, RefinedPresentation};
use crate::word::NormalWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationKind {
    /// π(x) uses a generator outside the blocks strictly below x's block.
    PowerSupport,
    /// Same-block pair whose image is not `x` times lower-block material.
    Type1,
    /// p-tagged `x` below `y`'s block with image leaving `X_1 ∪ ... ∪ X_{s-1} ∪ X_s(p)`.
    Type2,
    /// Infinite `x` below `y`'s block with image leaving `G_s`.
    Type3,
    /// An exponent outside its generator's coefficient domain.
    Domain,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::PowerSupport => "power support",
            ViolationKind::Type1 => "type 1",
            ViolationKind::Type2 => "type 2",
            ViolationKind::Type3 => "type 3",
            ViolationKind::Domain => "domain",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    Power(usize),
    Conjugate(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub relation: Relation,
    /// The generator carrying the offending exponent.
    pub generator: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub(super) fn validate(p: &RefinedPresentation) -> Vec<Violation> {
    let mut out = Vec::new();
    for x in 0..p.len() {
        if p.is_finite(x) {
            check_power(p, x, &mut out);
        }
    }
    for y in 0..p.len() {
        for x in 0..y {
            check_conjugate(p, x, y, &mut out);
        }
    }
    out
}

fn relation_text(p: &RefinedPresentation, rel: Relation) -> String {
    match rel {
        Relation::Power(x) => format!("pow {}", p.name(x)),
        Relation::Conjugate(x, y) => format!("cnj {} {}", p.name(x), p.name(y)),
    }
}

fn push(
    out: &mut Vec<Violation>,
    p: &RefinedPresentation,
    kind: ViolationKind,
    relation: Relation,
    generator: usize,
    what: String,
) {
    let message = format!("{kind} violation in `{}`: {what}", relation_text(p, relation));
    out.push(Violation { kind, relation, generator, message });
}

fn check_domain(p: &RefinedPresentation, w: &NormalWord, rel: Relation, out: &mut Vec<Violation>) {
    for (g, e) in w.letters() {
        if !p.in_domain(*g, e) {
            let n = p.order(*g).map(|n| n.to_string()).unwrap_or_default();
            push(
                out,
                p,
                ViolationKind::Domain,
                rel,
                *g,
                format!("exponent {e} on {} outside 0..{n}", p.name(*g)),
            );
        }
    }
}

fn check_power(p: &RefinedPresentation, x: usize, out: &mut Vec<Violation>) {
    let rel = Relation::Power(x);
    let s = p.block(x);
    for g in p.power(x).support() {
        if p.block(g) >= s {
            push(
                out,
                p,
                ViolationKind::PowerSupport,
                rel,
                g,
                format!("{} is not in a block below {}", p.name(g), s),
            );
        }
    }
    check_domain(p, p.power(x), rel, out);
}

fn check_conjugate(p: &RefinedPresentation, x: usize, y: usize, out: &mut Vec<Violation>) {
    let rel = Relation::Conjugate(x, y);
    let w = p.conjugate(x, y);
    let s = p.block(x);
    if s == p.block(y) {
        // exponent 1 on x; anything else only in blocks below s
        if !w.exponent(x).is_one() {
            push(
                out,
                p,
                ViolationKind::Type1,
                rel,
                x,
                format!("exponent {} on {} must be 1", w.exponent(x), p.name(x)),
            );
        }
        for g in w.support() {
            if g != x && p.block(g) >= s {
                push(
                    out,
                    p,
                    ViolationKind::Type1,
                    rel,
                    g,
                    format!("{} is neither {} nor below block {}", p.name(g), p.name(x), s),
                );
            }
        }
    } else {
        match p.kind(x) {
            BlockKind::Prime(q) => {
                for g in w.support() {
                    let ok = p.block(g) < s || (p.block(g) == s && p.kind(g) == BlockKind::Prime(q));
                    if !ok {
                        push(
                            out,
                            p,
                            ViolationKind::Type2,
                            rel,
                            g,
                            format!("{} is outside X_1..X_{} and X_{}({q})", p.name(g), s - 1, s),
                        );
                    }
                }
            }
            BlockKind::Infinite => {
                for g in w.support() {
                    if p.block(g) > s {
                        push(
                            out,
                            p,
                            ViolationKind::Type3,
                            rel,
                            g,
                            format!("{} lies above block {}", p.name(g), s),
                        );
                    }
                }
            }
        }
    }
    check_domain(p, w, rel, out);
}
