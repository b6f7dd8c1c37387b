//! Standard families of consistent presentations.

use num_traits::One;

use super::CorpusError;
use crate::presentation::{is_prime, Generator, RefinedPresentation};
use crate::word::{Int, NormalWord};

fn w(pairs: &[(usize, i64)]) -> NormalWord {
    NormalWord::from_exponents(pairs.iter().map(|(g, e)| (*g, Int::from(*e))))
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        let mut k = 0;
        while n.is_multiple_of(q) {
            n /= q;
            k += 1;
        }
        if k > 0 {
            out.push((q, k));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Cyclic group of order `n`: one generator per prime-power factor, all in
/// block 1. `n = 1` gives the empty presentation.
pub fn cyclic(n: u64) -> Result<RefinedPresentation, CorpusError> {
    if n == 0 {
        return Err(CorpusError::Parameter("cyclic(n) needs n >= 1".into()));
    }
    let gens = prime_factors(n)
        .into_iter()
        .enumerate()
        .map(|(i, (p, k))| Generator::finite(format!("x{}", i + 1), 1, p, p.pow(k)))
        .collect();
    Ok(RefinedPresentation::new(gens)?)
}

/// Dihedral group of order `2^k >= 4`: a rotation `x1` and a reflection `x2`.
pub fn dihedral(order: u64) -> Result<RefinedPresentation, CorpusError> {
    if order < 4 || !order.is_power_of_two() || order > 1 << 62 {
        return Err(CorpusError::Parameter(format!("dihedral(n) needs n = 2^k >= 4, got {order}")));
    }
    let r = order / 2;
    let mut p =
        RefinedPresentation::new(vec![Generator::finite("x1", 1, 2, r), Generator::finite("x2", 2, 2, 2)])?;
    p.set_conjugate(0, 1, NormalWord::gen_power(0, Int::from(r - 1)))?;
    Ok(p)
}

pub fn quaternion8() -> RefinedPresentation {
    let mut p = RefinedPresentation::new(vec![Generator::finite("x1", 1, 2, 4), Generator::finite("x2", 2, 2, 2)])
        .expect("static");
    p.set_power(1, w(&[(0, 2)])).expect("static");
    p.set_conjugate(0, 1, w(&[(0, 3)])).expect("static");
    p
}

/// Unitriangular 3×3 integer matrices: `x1 = e13`, `x2 = e12`, `x3 = e23`.
pub fn heisenberg() -> RefinedPresentation {
    let mut p = RefinedPresentation::new(vec![
        Generator::infinite("x1", 1),
        Generator::infinite("x2", 2),
        Generator::infinite("x3", 2),
    ])
    .expect("static");
    p.set_conjugate(1, 2, w(&[(1, 1), (0, 1)])).expect("static");
    p
}

/// Free abelian group of rank `r`, one generator per block.
pub fn free_abelian(r: usize) -> Result<RefinedPresentation, CorpusError> {
    if r > 1000 {
        return Err(CorpusError::Parameter("free_abelian(r) needs r <= 1000".into()));
    }
    let gens = (0..r).map(|i| Generator::infinite(format!("x{}", i + 1), i + 1)).collect();
    Ok(RefinedPresentation::new(gens)?)
}

/// Position of the elementary matrix `e_ij` (1-based, `i < j`) in the
/// generator order of [`ut`].
pub fn ut_index(n: usize, i: usize, j: usize) -> usize {
    assert!(1 <= i && i < j && j <= n);
    let d = j - i;
    // blocks run from distance n-1 down to d; block of distance t has n-t entries
    let before: usize = (d + 1..n).map(|t| n - t).sum();
    before + (i - 1)
}

/// `(i, j)` of each generator of [`ut`], in order.
pub fn ut_entries(n: usize) -> Vec<(usize, usize)> {
    (1..n).rev().flat_map(|d| (1..=n - d).map(move |i| (i, i + d))).collect()
}

/// Unitriangular `n×n` matrices over `ℤ/p`, generated by the elementary
/// matrices `e_ij`; block `s` holds the entries at distance `n - s` above the
/// diagonal (the lower central series).
pub fn ut(n: usize, p: u64) -> Result<RefinedPresentation, CorpusError> {
    if !(2..=30).contains(&n) {
        return Err(CorpusError::Parameter(format!("ut(n, p) needs 2 <= n <= 30, got n = {n}")));
    }
    if !is_prime(p) || p > 97 {
        return Err(CorpusError::Parameter(format!("ut(n, p) needs a prime p <= 97, got p = {p}")));
    }
    let entries = ut_entries(n);
    let gens = entries
        .iter()
        .map(|&(i, j)| Generator::finite(format!("e{i}_{j}"), n - (j - i), p, p))
        .collect();
    let mut pres = RefinedPresentation::new(gens)?;
    let minus_one = Int::from(p - 1);
    for (y, &(k, l)) in entries.iter().enumerate() {
        for (x, &(i, j)) in entries.iter().enumerate().take(y) {
            // x^y = x [x, y]; [e_ij, e_jl] = e_il and [e_ij, e_ki] = e_kj^-1
            let mut img = NormalWord::generator(x);
            if j == k {
                img.set_exponent(ut_index(n, i, l), Int::one());
            } else if l == i {
                img.set_exponent(ut_index(n, k, j), minus_one.clone());
            }
            pres.set_conjugate(x, y, img)?;
        }
    }
    Ok(pres)
}
