//! Dense Gaussian elimination over an arbitrary field.
//!
//! Used with [`crate::Rational`] for exact solves (comarks, inverse Cartan
//! matrices). Floating types work too; pivots are chosen by largest absolute
//! value so the same code is usable there.

use num_traits::{Num, Signed};

pub trait Field: Num + Signed + Clone + PartialOrd {}

impl<T: Num + Signed + Clone + PartialOrd> Field for T {}

pub type Matrix<T> = Vec<Vec<T>>;

/// Reduces `aug` (n rows, n + k columns) so that its left n×n block is the
/// identity. Returns `None` when the left block is singular.
fn gauss_jordan<T: Field>(mut aug: Matrix<T>, n: usize) -> Option<Matrix<T>> {
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !aug[r][col].is_zero())
            .max_by(|&a, &b| {
                aug[a][col]
                    .abs()
                    .partial_cmp(&aug[b][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
    }
    Some(aug)
}

/// Solves `a · x = b` for square `a`.
pub fn solve<T: Field>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length");
    let aug = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let reduced = gauss_jordan(aug, n)?;
    Some(reduced.into_iter().map(|row| row[n].clone()).collect())
}

pub fn inverse<T: Field>(a: &[Vec<T>]) -> Option<Matrix<T>> {
    let n = a.len();
    let aug = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let reduced = gauss_jordan(aug, n)?;
    Some(reduced.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mul<T: Field>(a: &[Vec<T>], b: &[Vec<T>]) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(T::zero(), |acc, (x, brow)| {
                        acc + x.clone() * brow[j].clone()
                    })
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Matrix<T> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}
