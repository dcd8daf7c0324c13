//! Exact Gaussian elimination over a number field.

use crate::algebra::field::{Fe, Field};
use crate::algebra::modular;

const MODULAR_THRESHOLD: usize = 256;

pub type Matrix = Vec<Vec<Fe>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let piv = match (r..rows).find(|&i| !m[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, piv);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    let t = &f * &pivot_row[j];
                    row[j] = &row[j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel of an (rows x cols) matrix.
///
/// Large matrices with rational entries go through the multi-modular route;
/// the result is the same reduced basis as exact elimination.
pub fn kernel(field: &Field, m: &Matrix, cols: usize) -> Vec<Vec<Fe>> {
    if m.len() * cols >= MODULAR_THRESHOLD && m.iter().all(|r| r.iter().all(|x| x.is_rational())) {
        if let Some(basis) = modular::kernel_q(field, m, cols) {
            return basis;
        }
    }
    kernel_exact(field, m, cols)
}

pub(crate) fn kernel_exact(field: &Field, m: &Matrix, cols: usize) -> Vec<Vec<Fe>> {
    let mut a = m.clone();
    let pivots = if a.is_empty() { vec![] } else { rref(&mut a) };
    let mut basis = vec![];
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[r][free];
        }
        basis.push(v);
    }
    basis
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

pub fn determinant(field: &Field, m: &Matrix) -> Fe {
    let n = m.len();
    let mut a = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let piv = match (c..n).find(|&i| !a[i][c].is_zero()) {
            Some(p) => p,
            None => return field.zero(),
        };
        if piv != c {
            a.swap(c, piv);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().unwrap();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
    }
    det
}

/// Solve A x = b; returns one solution if consistent.
pub fn solve(field: &Field, a: &Matrix, b: &[Fe]) -> Option<Vec<Fe>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b.iter())
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}
