//! Hand-built presentations and concrete models for unit tests.

use crate::presentation::{Generator, RefinedPresentation};
use crate::word::{Int, NormalWord};

pub fn w(pairs: &[(usize, i64)]) -> NormalWord {
    NormalWord::from_exponents(pairs.iter().map(|(g, e)| (*g, Int::from(*e))))
}

/// x1^x2 = x1^2, both infinite.
pub fn doubling() -> RefinedPresentation {
    let mut p = RefinedPresentation::new(vec![Generator::infinite("x1", 1), Generator::infinite("x2", 2)]).unwrap();
    p.set_conjugate(0, 1, w(&[(0, 2)])).unwrap();
    p
}

/// x1^x2 = x1^-1, both infinite.
pub fn inf_dihedral() -> RefinedPresentation {
    let mut p = doubling();
    p.set_conjugate(0, 1, w(&[(0, -1)])).unwrap();
    p
}

/// x1 = i (order 4), x2 = j (relative order 2), j^2 = i^2, i^j = i^3.
pub fn q8() -> RefinedPresentation {
    let mut p = RefinedPresentation::new(vec![Generator::finite("x1", 1, 2, 4), Generator::finite("x2", 2, 2, 2)]).unwrap();
    p.set_power(1, w(&[(0, 2)])).unwrap();
    p.set_conjugate(0, 1, w(&[(0, 3)])).unwrap();
    p
}

/// x1 rotation of order 4, x2 reflection.
pub fn d8() -> RefinedPresentation {
    let mut p = RefinedPresentation::new(vec![Generator::finite("x1", 1, 2, 4), Generator::finite("x2", 2, 2, 2)]).unwrap();
    p.set_conjugate(0, 1, w(&[(0, 3)])).unwrap();
    p
}

/// x1 = e13, x2 = e12, x3 = e23 in UT(3, Z).
pub fn heisenberg() -> RefinedPresentation {
    let mut p = RefinedPresentation::new(vec![
        Generator::infinite("x1", 1),
        Generator::infinite("x2", 2),
        Generator::infinite("x3", 2),
    ])
    .unwrap();
    p.set_conjugate(1, 2, w(&[(1, 1), (0, 1)])).unwrap();
    p
}

/// Quaternion units as (sign, unit) with unit in {1, i, j, k} = 0..4.
pub type Quat = (i8, u8);

pub fn quat_mul(a: Quat, b: Quat) -> Quat {
    // table[a][b] = (sign, unit) of unit_a * unit_b
    const T: [[(i8, u8); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let (s, u) = T[a.1 as usize][b.1 as usize];
    (a.0 * b.0 * s, u)
}

pub fn quat_pow(a: Quat, e: i64) -> Quat {
    let e = e.rem_euclid(4);
    (0..e).fold((1, 0), |acc, _| quat_mul(acc, a))
}

/// Evaluates a normal word of [`q8`] in the quaternion units.
pub fn quat_eval(word: &NormalWord) -> Quat {
    let gens = [(1i8, 1u8), (1, 2)];
    word.letters().iter().fold((1, 0), |acc, (g, e)| {
        let e: i64 = e.try_into().unwrap();
        quat_mul(acc, quat_pow(gens[*g], e))
    })
}

pub type Mat3 = [[i64; 3]; 3];

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Elementary unitriangular matrix I + e * E_ij, which is (I + E_ij)^e.
pub fn elem(i: usize, j: usize, e: i64) -> Mat3 {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    m[i][j] = e;
    m
}

/// Evaluates a word of [`heisenberg`] as a 3×3 integer matrix.
pub fn heis_eval(letters: &[(usize, Int)]) -> Mat3 {
    let place = [(0, 2), (0, 1), (1, 2)];
    letters.iter().fold(elem(0, 0, 1), |acc, (g, e)| {
        let e: i64 = e.try_into().unwrap();
        let (i, j) = place[*g];
        mat3_mul(&acc, &elem(i, j, e))
    })
}
