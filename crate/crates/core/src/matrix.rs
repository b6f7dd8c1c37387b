//! Exact square-matrix arithmetic over ℤ, ℤ/p and ℤ/p^e.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::word::Int;

/// Row-major square integer matrix.
pub type IntMatrix = Vec<Vec<Int>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let cols = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..cols)
                .map(|j| (0..k).fold(Int::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

/// Determinant over ℤ by fraction-free (Bareiss) elimination. The empty
/// matrix has determinant 1.
pub fn det_bareiss(m: &IntMatrix) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn mod_u64(v: &Int, p: u64) -> u64 {
    let r = v.mod_floor(&Int::from(p));
    r.try_into().expect("residue fits")
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    acc as u64
}

/// Determinant modulo a prime `p`, as a residue in `0..p`.
pub fn det_mod_p(m: &IntMatrix, p: u64) -> u64 {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|v| mod_u64(v, p)).collect()).collect();
    let pm = p as u128;
    let mut det: u128 = 1;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if r != k {
            a.swap(k, r);
            det = (pm - det) % pm;
        }
        det = det * a[k][k] as u128 % pm;
        let inv = pow_mod(a[k][k], p - 2, p) as u128;
        for i in k + 1..n {
            if a[i][k] == 0 {
                continue;
            }
            let f = a[i][k] as u128 * inv % pm;
            for j in k..n {
                let sub = f * a[k][j] as u128 % pm;
                a[i][j] = ((a[i][j] as u128 + pm - sub) % pm) as u64;
            }
        }
    }
    (det % pm) as u64
}

/// Inverse over ℤ; `None` unless the determinant is ±1.
pub fn inverse_unimodular(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.len();
    let d = det_bareiss(m);
    if d.abs() != Int::one() {
        return None;
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .cloned()
                .map(BigRational::from_integer)
                .chain((0..n).map(|j| {
                    BigRational::from_integer(if i == j { BigInt::one() } else { BigInt::zero() })
                }))
                .collect()
        })
        .collect();
    for k in 0..n {
        let r = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, r);
        let piv = a[k][k].clone();
        for v in a[k].iter_mut() {
            *v = &*v / &piv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                let sub = &f * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for row in a {
        let mut r = Vec::with_capacity(n);
        for v in row.into_iter().skip(n) {
            if !v.is_integer() {
                return None;
            }
            r.push(v.to_integer());
        }
        out.push(r);
    }
    Some(out)
}

/// Modular inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: &Int, m: &Int) -> Option<Int> {
    let a = a.mod_floor(m);
    let g = a.extended_gcd(m);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(m))
    } else {
        None
    }
}

/// Inverse over ℤ/`modulus` where `modulus` is a power of the prime `p`;
/// entries of the result lie in `0..modulus`. `None` when the determinant
/// vanishes mod `p`.
pub fn inverse_mod_prime_power(m: &IntMatrix, p: u64, modulus: &Int) -> Option<IntMatrix> {
    let n = m.len();
    let pz = Int::from(p);
    let mut a: Vec<Vec<Int>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|v| v.mod_floor(modulus))
                .chain((0..n).map(|j| if i == j { Int::one() } else { Int::zero() }))
                .collect()
        })
        .collect();
    for k in 0..n {
        // a pivot must be a unit, i.e. not divisible by p
        let r = (k..n).find(|&r| !a[r][k].is_multiple_of(&pz))?;
        a.swap(k, r);
        let inv = inv_mod(&a[k][k], modulus)?;
        for v in a[k].iter_mut() {
            *v = (&*v * &inv).mod_floor(modulus);
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                let v = (&a[i][j] - &f * &a[k][j]).mod_floor(modulus);
                a[i][j] = v;
            }
        }
    }
    Some(a.into_iter().map(|row| row.into_iter().skip(n).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|v| Int::from(*v)).collect()).collect()
    }

    /// Leibniz expansion over all permutations; independent of elimination.
    fn det_leibniz(m: &IntMatrix) -> Int {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        let mut total = Int::zero();
        for p in perms(n) {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            let mut term = Int::one();
            for (i, &pi) in p.iter().enumerate() {
                term *= &m[i][pi];
            }
            if inversions % 2 == 1 {
                total -= term;
            } else {
                total += term;
            }
        }
        total
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_bareiss(&vec![]), Int::one());
        assert_eq!(det_bareiss(&mat(&[&[2]])), Int::from(2));
        assert_eq!(det_bareiss(&mat(&[&[1, 2], &[3, 4]])), Int::from(-2));
        assert_eq!(det_bareiss(&mat(&[&[0, 1], &[1, 0]])), Int::from(-1));
        assert_eq!(det_bareiss(&mat(&[&[1, 2], &[2, 4]])), Int::zero());
        assert_eq!(det_mod_p(&mat(&[&[3]]), 2), 1);
        assert_eq!(det_mod_p(&mat(&[&[1, 2], &[3, 4]]), 2), 0);
        assert_eq!(det_mod_p(&mat(&[&[1, 2], &[3, 4]]), 3), 1);
    }

    #[test]
    fn unimodular_inverse() {
        let a = mat(&[&[2, 1], &[1, 1]]);
        let b = inverse_unimodular(&a).unwrap();
        assert_eq!(b, mat(&[&[1, -1], &[-1, 2]]));
        assert_eq!(inverse_unimodular(&mat(&[&[-1]])).unwrap(), mat(&[&[-1]]));
        assert!(inverse_unimodular(&mat(&[&[2]])).is_none());
    }

    #[test]
    fn prime_power_inverse() {
        let a = mat(&[&[3]]);
        assert_eq!(inverse_mod_prime_power(&a, 2, &Int::from(4)).unwrap(), mat(&[&[3]]));
        let a = mat(&[&[1, 2], &[1, 1]]);
        let b = inverse_mod_prime_power(&a, 2, &Int::from(4)).unwrap();
        let prod = mul(&a, &b);
        for (i, row) in prod.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { 1 } else { 0 };
                assert_eq!(v.mod_floor(&Int::from(4)), Int::from(want));
            }
        }
        assert!(inverse_mod_prime_power(&mat(&[&[2]]), 2, &Int::from(8)).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (0usize..5).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-6i64..7, n), n)
                .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect())
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_leibniz(m in small_matrix()) {
            prop_assert_eq!(det_bareiss(&m), det_leibniz(&m));
        }

        #[test]
        fn mod_p_matches_integer_det(m in small_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let d = det_leibniz(&m).mod_floor(&Int::from(p));
            prop_assert_eq!(Int::from(det_mod_p(&m, p)), d);
        }

        #[test]
        fn det_sign_under_row_swap(m in small_matrix()) {
            prop_assume!(m.len() >= 2);
            let mut s = m.clone();
            s.swap(0, 1);
            prop_assert_eq!(det_bareiss(&s), -det_bareiss(&m));
        }

        #[test]
        fn modular_inverse_is_inverse(m in small_matrix(), e in 1u32..4) {
            let modulus = Int::from(3u64.pow(e));
            if let Some(b) = inverse_mod_prime_power(&m, 3, &modulus) {
                let prod = mul(&m, &b);
                for (i, row) in prod.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        prop_assert_eq!(v.mod_floor(&modulus), Int::from((i == j) as i64));
                    }
                }
            } else {
                prop_assert_eq!(det_mod_p(&m, 3), 0);
            }
        }
    }
}
