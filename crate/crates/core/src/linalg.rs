//! Dense and sparse exact linear algebra over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Row-major dense matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Upper-triangular Jordan block with eigenvalue `lambda`.
    pub fn jordan(lambda: &Rational, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, lambda.clone());
            if i + 1 < n {
                m.set(i, i + 1, Rational::one());
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scaled(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        rank_of_rows(rows, self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// A basis of `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (reduced, pivots) = rref(
            (0..self.rows).map(|r| self.row(r).to_vec()).collect(),
            self.cols,
        );
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in reduced.iter().zip(&pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect();
        write!(f, "Matrix{rows:?}")
    }
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank_of_rows(rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Incremental row reduction for sparse rows; tracks the rank of a growing span.
#[derive(Debug, Default, Clone)]
pub struct SparseEchelon {
    /// Pivot column to reduced row (pivot entry normalized to 1).
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        loop {
            let pivot = row
                .iter()
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(&c, v)| (c, v.clone()));
            let Some((c, factor)) = pivot else {
                return row;
            };
            for (&j, v) in &self.rows[&c] {
                let entry = row.entry(j).or_insert_with(Rational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(&j);
                }
            }
        }
    }

    /// Whether the row lies in the current span.
    pub fn contains(&self, row: &BTreeMap<usize, Rational>) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Adds a row; returns `true` when the rank grows.
    pub fn insert(&mut self, row: BTreeMap<usize, Rational>) -> bool {
        let row = self.reduce(row);
        let Some((&c, lead)) = row.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lead.clone();
        let row: BTreeMap<usize, Rational> = row.into_iter().map(|(j, v)| (j, v * &inv)).collect();
        self.rows.insert(c, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let x = Matrix::from_rows(ns[0].iter().map(|v| vec![v.clone()]).collect());
        assert!(a.mul(&x).is_zero());
    }

    #[test]
    fn jordan_blocks() {
        let j = Matrix::jordan(&rational(2), 3);
        assert!(j.is_invertible());
        assert!(!Matrix::jordan(&rational(0), 2).is_invertible());
        assert_eq!(j.mul(&Matrix::identity(3)), j);
    }

    #[test]
    fn sparse_echelon_tracks_rank() {
        let mut e = SparseEchelon::new();
        let row = |pairs: &[(usize, i64)]| {
            pairs
                .iter()
                .map(|&(c, v)| (c, rational(v)))
                .collect::<BTreeMap<_, _>>()
        };
        assert!(e.insert(row(&[(0, 1), (1, -1)])));
        assert!(e.insert(row(&[(1, 1), (2, -1)])));
        assert!(!e.insert(row(&[(0, 1), (2, -1)])));
        assert!(e.contains(&row(&[(0, 2), (2, -2)])));
        assert_eq!(e.rank(), 2);
    }
}
