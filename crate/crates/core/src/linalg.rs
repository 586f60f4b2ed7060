//! Dense linear algebra over F_p: rank, reduced row echelon form, kernels and solving.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::Field;

/// Row-major dense matrix with entries in [0, p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&r[..cols]);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_at(&mut self, f: &Field, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = f.add(self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul(&self, o: &Mat, f: &Field) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let p = f.p() as u64;
        let mut out = Mat::zeros(self.rows, o.cols);
        let mut acc = vec![0u64; o.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = &o.data[k * o.cols..(k + 1) * o.cols];
                for (x, &b) in acc.iter_mut().zip(row) {
                    *x = (*x + a * b as u64) % p;
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * o.cols + j] = *x as u32;
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32], f: &Field) -> Vec<u32> {
        let p = f.p() as u64;
        (0..self.rows)
            .map(|r| {
                let mut s = 0u64;
                for (a, b) in self.row(r).iter().zip(v) {
                    s = (s + *a as u64 * *b as u64) % p;
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, o: &Mat, f: &Field) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.add(*a, *b)).collect(),
        }
    }

    pub fn scale(&self, s: u32, f: &Field) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(*a, s)).collect() }
    }

    pub fn neg(&self, f: &Field) -> Mat {
        self.scale(f.neg(1), f)
    }

    /// Stacks `self` on top of `o`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        let mut m = Mat::zeros(self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            m.data[r * m.cols..r * m.cols + self.cols].copy_from_slice(self.row(r));
            m.data[r * m.cols + self.cols..(r + 1) * m.cols].copy_from_slice(o.row(r));
        }
        m
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Mat, f: &Field) -> Vec<usize> {
    let p = f.p() as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    let cols = m.cols;
    for c in 0..cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| m.data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.data[r * cols + c]).unwrap() as u64;
        for j in c..cols {
            let i = r * cols + j;
            m.data[i] = ((m.data[i] as u64 * inv) % p) as u32;
        }
        let (before, rest) = m.data.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [u32]| {
            let factor = row[c] as u64;
            if factor == 0 {
                return;
            }
            let neg = p - factor;
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = ((row[j] as u64 + neg * pivot_row[j] as u64) % p) as u32;
                }
            }
        };
        for row in before.chunks_mut(cols) {
            eliminate(row);
        }
        for row in after.chunks_mut(cols) {
            eliminate(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat, f: &Field) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a = if m.rows > m.cols { m.transpose() } else { m.clone() };
    rref(&mut a, f).len()
}

/// Basis of the right kernel {x : m·x = 0}, as vectors of length `m.cols`.
pub fn kernel(m: &Mat, f: &Field) -> Vec<Vec<u32>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, f);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u32; m.cols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(a.get(r, free));
        }
        basis.push(v);
    }
    basis
}

/// Some x with m·x = b, if one exists.
pub fn solve(m: &Mat, b: &[u32], f: &Field) -> Option<Vec<u32>> {
    let mut aug = Mat::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        aug.data[r * (m.cols + 1)..r * (m.cols + 1) + m.cols].copy_from_slice(m.row(r));
        aug.data[r * (m.cols + 1) + m.cols] = b[r];
    }
    let pivots = rref(&mut aug, f);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![0u32; m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, m.cols);
    }
    Some(x)
}

/// Inverse of a square matrix, if invertible.
pub fn inverse(m: &Mat, f: &Field) -> Option<Mat> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = m.hstack(&Mat::identity(n));
    let pivots = rref(&mut aug, f);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Mat::zeros(n, n);
    for r in 0..n {
        inv.data[r * n..(r + 1) * n].copy_from_slice(&aug.row(r)[n..]);
    }
    Some(inv)
}

/// Basis (rows of an rref matrix) of the span of the given vectors.
pub fn span_basis(vectors: &[Vec<u32>], len: usize, f: &Field) -> Vec<Vec<u32>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Mat::from_rows(vectors, len);
    let k = rref(&mut m, f).len();
    (0..k).map(|r| m.row(r).to_vec()).collect()
}
