//! Small dense exact linear algebra over the rationals.

use num_traits::{Signed, Zero};

use crate::arith::Rational;

/// Row-reduces `rows` in place and returns the rank.
fn eliminate(rows: &mut [Vec<Rational>], cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for value in rows[rank].iter_mut() {
            *value = &*value / &lead;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (value, p) in row.iter_mut().zip(&pivot_row) {
                *value = &*value - &factor * p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.len();
    eliminate(&mut rows.to_vec(), cols)
}

/// Unique solution of the square system `a x = b`, if `a` is invertible.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut row = row.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    if eliminate(&mut aug, n) < n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// A nonzero vector spanning the kernel of `rows`, when the kernel is a line.
pub fn kernel_line(rows: &[Vec<Rational>], cols: usize) -> Option<Vec<Rational>> {
    let mut m = rows.to_vec();
    let r = eliminate(&mut m, cols);
    if r + 1 != cols {
        return None;
    }
    let mut pivots = Vec::new();
    for row in m.iter().take(r) {
        pivots.push(row.iter().position(|v| !v.is_zero()).expect("pivot row"));
    }
    let free = (0..cols).find(|c| !pivots.contains(c)).expect("one free column");
    let mut x = vec![Rational::zero(); cols];
    x[free] = Rational::from_integer(1.into());
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = -row[free].clone();
    }
    Some(x)
}

pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let lead = m[col][col].clone();
        det *= &lead;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &lead;
            let pivot_row = m[col].clone();
            for (value, p) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                *value -= &factor * p;
            }
        }
    }
    det
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Affine dimension of a point set (−1 for the empty set).
pub fn affine_dim(points: &[&Vec<Rational>]) -> isize {
    let Some((first, rest)) = points.split_first() else {
        return -1;
    };
    let diffs: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs) as isize
}

pub fn abs_det(rows: &[Vec<Rational>]) -> Rational {
    determinant(rows).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn determinant_and_solve() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(determinant(&a), int(5));
        assert_eq!(solve(&a, &[int(3), int(5)]).unwrap(), vec![rat(4, 5), rat(7, 5)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[int(1), int(2)]).is_none());
    }

    #[test]
    fn kernel_and_rank() {
        let rows = m(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(rank(&rows), 2);
        let k = kernel_line(&rows, 3).unwrap();
        assert!(rows.iter().all(|r| dot(r, &k).is_zero()));
        assert!(kernel_line(&m(&[&[1, 0, 0]]), 3).is_none());
    }
}
