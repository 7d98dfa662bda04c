//! Dense linear algebra over a finite field (row-major matrices).

use crate::finite_field::{Field, Fq};

pub type Matrix = Vec<Vec<Fq>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Fq::ONE } else { Fq::ZERO }).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, k: &Field) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Fq::ZERO, |acc, l| k.add(acc, k.mul(row[l], b[l][j]))))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Fq], k: &Field) -> Vec<Fq> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Fq::ZERO, |acc, (&x, &y)| k.add(acc, k.mul(x, y))))
        .collect()
}

pub fn mat_sub_scalar(a: &Matrix, c: Fq, k: &Field) -> Matrix {
    let mut m = a.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = k.sub(row[i], c);
    }
    m
}

pub fn mat_pow(a: &Matrix, e: u64, k: &Field) -> Matrix {
    let mut acc = identity(a.len());
    for _ in 0..e {
        acc = mat_mul(&acc, a, k);
    }
    acc
}

/// Row-reduces in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, k: &Field) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = k.inv(m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, &pv) in m[i].iter_mut().zip(&pivot_row) {
                    *x = k.sub(*x, k.mul(f, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix, k: &Field) -> usize {
    let mut m = m.clone();
    rref(&mut m, k).len()
}

/// Some solution x of A x = b, if one exists.
pub fn solve(a: &Matrix, b: &[Fq], k: &Field) -> Option<Vec<Fq>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a.iter().zip(b).map(|(row, &bi)| {
        let mut r = row.clone();
        r.push(bi);
        r
    }).collect();
    let pivots = rref(&mut aug, k);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Fq::ZERO; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols];
    }
    Some(x)
}

/// Whether `v` lies in the column span of the vectors `span`.
pub fn in_span(span: &[Vec<Fq>], v: &[Fq], k: &Field) -> bool {
    if span.is_empty() {
        return v.iter().all(|c| c.is_zero());
    }
    let a: Matrix = (0..v.len()).map(|i| span.iter().map(|s| s[i]).collect()).collect();
    solve(&a, v, k).is_some()
}
