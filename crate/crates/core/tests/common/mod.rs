//! Shared test oracle: the reduced Burau matrices for three-strand words.
//!
//! Matrices are 2x2 with integer Laurent-polynomial entries (no rational
//! specialization, so no spurious collisions): the first generator maps to
//! [[-t, 1], [0, 1]], the second to [[1, 0], [t, -t]], and inverses to the
//! matching inverse matrices. On three strands this representation is
//! faithful, so matrix equality decides word equality — an oracle fully
//! independent of the normal-form machinery under test.
//!
//! Each test binary compiles this module separately and uses a different
//! slice of it, so unused-item lints are silenced here.
#![allow(dead_code)]

use braidwalk_core::laurent::LaurentPoly;
use braidwalk_core::word::BraidWord;
use num::BigInt;

pub type Mat = [[LaurentPoly; 2]; 2];

fn entry(terms: &[(i64, i64)]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for &(c, d) in terms {
        p = p.add(&LaurentPoly::monomial(BigInt::from(c), d));
    }
    p
}

pub fn identity() -> Mat {
    [
        [LaurentPoly::one(), LaurentPoly::zero()],
        [LaurentPoly::zero(), LaurentPoly::one()],
    ]
}

fn letter_matrix(letter: i32) -> Mat {
    match letter {
        1 => [
            [entry(&[(-1, 1)]), LaurentPoly::one()],
            [LaurentPoly::zero(), LaurentPoly::one()],
        ],
        -1 => [
            [entry(&[(-1, -1)]), entry(&[(1, -1)])],
            [LaurentPoly::zero(), LaurentPoly::one()],
        ],
        2 => [
            [LaurentPoly::one(), LaurentPoly::zero()],
            [entry(&[(1, 1)]), entry(&[(-1, 1)])],
        ],
        -2 => [
            [LaurentPoly::one(), LaurentPoly::zero()],
            [LaurentPoly::one(), entry(&[(-1, -1)])],
        ],
        other => panic!("no Burau matrix for letter {other} on 3 strands"),
    }
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = identity();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
        }
    }
    out
}

/// Burau matrix of a three-strand word.
pub fn burau(w: &BraidWord) -> Mat {
    assert_eq!(w.strands(), 3, "the oracle covers three strands only");
    let mut m = identity();
    for &letter in w.letters() {
        m = mat_mul(&m, &letter_matrix(letter));
    }
    m
}

/// Word equality decided by the faithful representation.
pub fn burau_equal(a: &BraidWord, b: &BraidWord) -> bool {
    burau(a) == burau(b)
}
