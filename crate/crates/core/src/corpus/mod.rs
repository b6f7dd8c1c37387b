//! Consistent presentations by construction, standard families, random
//! extension towers and single-exponent mutations.

pub mod extend;
pub mod families;
mod mutate;
mod tower;

use thiserror::Error;

use crate::collector::CollectError;
use crate::consistency::{Failure, Verdict};
use crate::presentation::{PresentationError, RefinedPresentation, Violation};
use crate::word::{Int, NormalWord};

pub use extend::{
    extend_finite_central, extend_infinite, identity_map, inner_automorphism, ExtensionKind, ExtensionSpec, Partition,
};
pub use families::{cyclic, dihedral, free_abelian, heisenberg, quaternion8, ut};
pub use mutate::{mutable_support, mutate, mutation_slots, Mutation, INFINITE_RANGE};
pub use tower::{is_finite_presentation, random_tower, Tower, TowerConfig, TowerStep};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{0}")]
    Parameter(String),
    #[error("base presentation is not consistent ({0})")]
    BaseInconsistent(Verdict),
    #[error("map is not an automorphism: {} condition(s) fail", .0.len())]
    NotAutomorphism(Vec<Failure>),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("central extension condition {condition} fails{}: {left} != {right}", .generator.as_ref().map(|g| format!(" for {g}")).unwrap_or_default())]
    CentralCondition { condition: &'static str, generator: Option<String>, left: String, right: String },
    #[error("extension violates the support rules: {}", .0[0])]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Collect(#[from] CollectError),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

/// All normal words of a finite presentation, when the group order is at
/// most `cap`; in lexicographic order of exponent vectors `(r_1, ..., r_m)`.
pub fn enumerate_elements(p: &RefinedPresentation, cap: u64) -> Option<Vec<NormalWord>> {
    let order = p.finite_order()?;
    if order > Int::from(cap) {
        return None;
    }
    let orders: Vec<u64> = (0..p.len()).map(|g| p.order(g).and_then(|n| n.try_into().ok())).collect::<Option<_>>()?;
    let mut out = Vec::new();
    let mut exps = vec![0u64; p.len()];
    loop {
        out.push(NormalWord::from_exponents(exps.iter().enumerate().map(|(g, e)| (g, Int::from(*e)))));
        let mut i = p.len();
        loop {
            if i == 0 {
                return Some(out);
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// Builds a presentation from a family name such as `cyclic(12)`,
/// `dihedral(16)`, `quaternion8`, `heisenberg`, `ut(16,2)`,
/// `free_abelian(3)`, `tower(seed,depth)` or `mutate(<family>,seed)`.
pub fn family(spec: &str) -> Result<RefinedPresentation, CorpusError> {
    let spec = spec.trim();
    let (name, args) = match spec.find('(') {
        Some(i) => {
            let inner = spec[i + 1..]
                .strip_suffix(')')
                .ok_or_else(|| CorpusError::Parameter(format!("missing `)` in `{spec}`")))?;
            (&spec[..i], split_args(inner))
        }
        None => (spec, Vec::new()),
    };
    let num = |i: usize| -> Result<u64, CorpusError> {
        let a = args.get(i).ok_or_else(|| CorpusError::Parameter(format!("`{name}` needs argument {}", i + 1)))?;
        a.trim().parse::<u64>().map_err(|_| CorpusError::Parameter(format!("bad number `{a}` in `{spec}`")))
    };
    let arity = |n: usize| -> Result<(), CorpusError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(CorpusError::Parameter(format!("`{name}` takes {n} argument(s), got {}", args.len())))
        }
    };
    match name.trim() {
        "cyclic" => {
            arity(1)?;
            cyclic(num(0)?)
        }
        "dihedral" => {
            arity(1)?;
            dihedral(num(0)?)
        }
        "quaternion8" | "q8" => {
            arity(0)?;
            Ok(quaternion8())
        }
        "heisenberg" => {
            arity(0)?;
            Ok(heisenberg())
        }
        "ut" => {
            arity(2)?;
            ut(num(0)? as usize, num(1)?)
        }
        "free_abelian" => {
            arity(1)?;
            free_abelian(num(0)? as usize)
        }
        "tower" => {
            arity(2)?;
            let depth = num(1)? as usize;
            if depth > 8 {
                return Err(CorpusError::Parameter("tower depth is at most 8".into()));
            }
            Ok(random_tower(num(0)?, &TowerConfig::mixed(depth)).presentation)
        }
        "mutate" => {
            arity(2)?;
            let base = family(&args[0])?;
            Ok(mutate(&base, num(1)?).presentation)
        }
        other => Err(CorpusError::UnknownFamily(other.to_string())),
    }
}

/// Splits on top-level commas.
fn split_args(s: &str) -> Vec<String> {
    if s.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collector::{restrict, Collector, InverseConjugateTable};

    #[test]
    fn family_names() {
        assert_eq!(family("ut(4,2)").unwrap().len(), 6);
        assert_eq!(family(" cyclic( 12 ) ").unwrap().len(), 2);
        assert_eq!(family("q8").unwrap(), quaternion8());
        assert_eq!(family("mutate(free_abelian(2),3)").unwrap().len(), 2);
        assert!(family("tower(1,3)").unwrap().validate().is_empty());
        assert!(matches!(family("klein"), Err(CorpusError::UnknownFamily(_))));
        assert!(family("ut(4)").is_err());
        assert!(family("cyclic(x)").is_err());
        assert!(family("tower(1,9)").is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_elements(&cyclic(1).unwrap(), 10).unwrap(), vec![NormalWord::identity()]);
        assert_eq!(enumerate_elements(&cyclic(60).unwrap(), 100).unwrap().len(), 60);
        assert!(enumerate_elements(&cyclic(60).unwrap(), 59).is_none());
        assert!(enumerate_elements(&heisenberg(), 100).is_none());
        let d = dihedral(16).unwrap();
        let els = enumerate_elements(&d, 4096).unwrap();
        assert_eq!(els.len(), 16);
        let t = InverseConjugateTable::new();
        let c = Collector::new(restrict(&d, d.len()).unwrap(), &t);
        for a in &els {
            assert!(els.contains(&c.invert(a).unwrap()));
        }
    }
}
