//! Random towers of cyclic extensions.

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::extend::{extend_finite_central, extend_infinite, inner_automorphism, ExtensionKind, ExtensionSpec};
use super::{families, CorpusError};
use crate::collector::{restrict, Collector, InverseConjugateTable};
use crate::consistency::{check_endomorphism, check_solv_with_table, CheckOptions, Mode};
use crate::presentation::{BlockKind, Generator, RefinedPresentation};
use crate::word::{Int, NormalWord};

#[derive(Clone, Debug)]
pub struct TowerConfig {
    /// Number of extension steps on top of the base.
    pub depth: usize,
    pub allow_infinite: bool,
    /// Bound on the group order; only meaningful without infinite steps.
    pub max_order: Option<u64>,
    /// Step limit for the checks run while building.
    pub step_limit: u64,
}

impl TowerConfig {
    pub fn mixed(depth: usize) -> Self {
        TowerConfig { depth, allow_infinite: true, max_order: None, step_limit: 200_000 }
    }

    pub fn finite(depth: usize, max_order: u64) -> Self {
        TowerConfig { depth, allow_infinite: false, max_order: Some(max_order), step_limit: 200_000 }
    }
}

/// How one level of a tower was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStep {
    pub infinite: bool,
    pub order: Option<u64>,
    pub merged: bool,
    /// `φ` was an inner automorphism twisted by a block-1 automorphism.
    pub twisted: bool,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub seed: u64,
    pub base: RefinedPresentation,
    pub presentation: RefinedPresentation,
    pub steps: Vec<TowerStep>,
}

fn base_presentation(rng: &mut ChaCha8Rng, allow_infinite: bool) -> RefinedPresentation {
    let choice = if allow_infinite { rng.gen_range(0..4) } else { rng.gen_range(0..2) * 2 };
    match choice {
        0 => RefinedPresentation::new(vec![]).expect("empty"),
        1 => families::free_abelian(rng.gen_range(1..=2)).expect("small rank"),
        2 => {
            let p = *[2u64, 3, 5].choose(rng).expect("nonempty");
            let k = rng.gen_range(1..=2);
            RefinedPresentation::new(vec![Generator::finite("x1", 1, p, p.pow(k))]).expect("cyclic")
        }
        _ => {
            let p = *[2u64, 3].choose(rng).expect("nonempty");
            RefinedPresentation::new(vec![Generator::infinite("x1", 1), Generator::finite("x2", 1, p, p)])
                .expect("mixed")
        }
    }
}

/// A short random normal word.
fn random_element(rng: &mut ChaCha8Rng, p: &RefinedPresentation) -> NormalWord {
    if p.is_empty() {
        return NormalWord::identity();
    }
    let letters = rng.gen_range(0..=2.min(p.len()));
    let mut gens: Vec<usize> = (0..p.len()).collect();
    gens.shuffle(rng);
    NormalWord::from_exponents(gens.into_iter().take(letters).map(|g| {
        let e = match p.order(g) {
            Some(n) => Int::from(rng.gen_range(1..n.try_into().unwrap_or(2u64))),
            None => Int::from(*[-1i64, 1].choose(rng).expect("nonempty")),
        };
        (g, e)
    }))
}

/// A candidate automorphism of block 1 (abelian): a unit power on one
/// p-generator or an inversion of one infinite generator, identity elsewhere.
fn block_one_twist(rng: &mut ChaCha8Rng, p: &RefinedPresentation) -> Option<Vec<NormalWord>> {
    let first: Vec<usize> = p.block_gens(1).collect();
    let &g = first.choose(rng)?;
    let mut images: Vec<NormalWord> = (0..p.len()).map(NormalWord::generator).collect();
    images[g] = match p.order(g) {
        Some(n) => {
            let n: u64 = n.try_into().ok()?;
            let units: Vec<u64> = (2..n).filter(|u| num_integer::gcd(*u, n) == 1).collect();
            NormalWord::gen_power(g, Int::from(*units.choose(rng)?))
        }
        None => NormalWord::gen_power(g, -Int::one()),
    };
    Some(images)
}

/// Composition `x -> (x^a)^b` of two maps given by images.
fn compose(c: &Collector<'_>, a: &[NormalWord], b: &[NormalWord]) -> Result<Vec<NormalWord>, CorpusError> {
    a.iter().map(|w| Ok(c.apply_map(b, w)?)).collect()
}

/// A central element: a random candidate that commutes with every generator.
fn central_element(
    rng: &mut ChaCha8Rng,
    c: &Collector<'_>,
    p: &RefinedPresentation,
) -> Result<NormalWord, CorpusError> {
    for _ in 0..4 {
        let cand = random_element(rng, p);
        let mut central = true;
        for x in 0..p.len() {
            if c.conjugate(&NormalWord::generator(x), &cand)? != NormalWord::generator(x) {
                central = false;
                break;
            }
        }
        if central {
            return Ok(cand);
        }
    }
    Ok(NormalWord::identity())
}

fn try_step(
    rng: &mut ChaCha8Rng,
    p: &RefinedPresentation,
    cfg: &TowerConfig,
) -> Result<Option<(RefinedPresentation, TowerStep)>, CorpusError> {
    let opts = CheckOptions { step_limit: cfg.step_limit };
    let (report, table): (_, InverseConjugateTable) = check_solv_with_table(p, Mode::Incremental, opts);
    if !report.is_consistent() {
        return Err(CorpusError::BaseInconsistent(report.verdict));
    }
    let order_now = p.finite_order();
    let finite_orders: Vec<u64> = [2u64, 3, 4]
        .into_iter()
        .filter(|e| match (cfg.max_order, &order_now) {
            (Some(cap), Some(n)) => n * Int::from(*e) <= Int::from(cap),
            _ => true,
        })
        .collect();
    let infinite = cfg.allow_infinite && (finite_orders.is_empty() || rng.gen_bool(0.4));
    if !infinite && finite_orders.is_empty() {
        return Ok(None);
    }
    let c = Collector::new(restrict(p, p.len()).expect("full"), &table).with_step_limit(opts.step_limit);
    let h = random_element(rng, p);
    let inner = inner_automorphism(p, &table, &h, opts)?;
    let merge = p.num_blocks() > 0 && rng.gen_bool(0.3);

    let (kind, phi, twisted) = if infinite {
        let mut phi = inner;
        let mut twisted = false;
        if rng.gen_bool(0.5) {
            if let Some(sigma) = block_one_twist(rng, p) {
                let cand = compose(&c, &sigma, &phi)?;
                if check_endomorphism(p, &table, &cand, opts)?.is_empty() {
                    phi = cand;
                    twisted = true;
                }
            }
        }
        (ExtensionKind::InfiniteCyclic, phi, twisted)
    } else {
        let e = *finite_orders.choose(rng).expect("nonempty");
        let he = c.power(&h, &Int::from(e))?;
        let z = central_element(rng, &c, p)?;
        let g = c.multiply(&he, &z)?;
        (ExtensionKind::FiniteCentral { order: e, g }, inner, false)
    };
    let step = TowerStep {
        infinite,
        order: match &kind {
            ExtensionKind::FiniteCentral { order, .. } => Some(*order),
            ExtensionKind::InfiniteCyclic => None,
        },
        merged: merge,
        twisted,
    };
    let spec = ExtensionSpec::new(p.clone(), phi, kind);
    let attempt = |spec: &ExtensionSpec| {
        if infinite {
            extend_infinite(spec, opts)
        } else {
            extend_finite_central(spec, opts)
        }
    };
    if merge {
        match attempt(&spec.clone().merged()) {
            Ok(q) => return Ok(Some((q, step))),
            Err(CorpusError::Invalid(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let q = attempt(&spec)?;
    Ok(Some((q, TowerStep { merged: false, ..step })))
}

/// A random consistent presentation: a small base followed by up to
/// `cfg.depth` cyclic extensions whose automorphisms are inner, possibly
/// twisted on block 1. Deterministic in `seed`.
pub fn random_tower(seed: u64, cfg: &TowerConfig) -> Tower {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = base_presentation(&mut rng, cfg.allow_infinite);
    let mut p = base.clone();
    let mut steps = Vec::new();
    let mut failures = 0;
    while steps.len() < cfg.depth && failures < 16 {
        match try_step(&mut rng, &p, cfg) {
            Ok(Some((q, step))) => {
                p = q;
                steps.push(step);
            }
            Ok(None) => break,
            // collection blew up or a random choice was rejected: redraw
            Err(_) => failures += 1,
        }
    }
    Tower { seed, base, presentation: p, steps }
}

/// Whether every generator of `p` has a prime tag (the group is finite).
pub fn is_finite_presentation(p: &RefinedPresentation) -> bool {
    (0..p.len()).all(|g| matches!(p.kind(g), BlockKind::Prime(_)))
}
