use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::rational::{format_rational, Rational};

/// Dense square matrix over exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RepMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RepMatrix {
    pub fn zeros(n: usize) -> Self {
        RepMatrix { n, entries: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix rows must form a square");
        RepMatrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RepMatrix { n: self.n, entries: self.entries.iter().map(|e| e * k).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Positions of nonzero entries.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self[(i, j)].is_zero())
            .collect()
    }

    /// Gaussian elimination with exact pivots.
    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut a = self.rows();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &p;
                let (top, rest) = a.split_at_mut(r);
                for (x, y) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x -= &f * y;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Self::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = a[col][col].clone();
            for c in 0..n {
                a[col][c] /= &p;
                inv[col][c] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let da = &f * &a[col][c];
                    a[r][c] -= da;
                    let di = &f * &inv[col][c];
                    inv[r][c] -= di;
                }
            }
        }
        Some(Self::from_rows(inv))
    }
}

impl Index<(usize, usize)> for RepMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RepMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.n + j]
    }
}

impl Mul for &RepMatrix {
    type Output = RepMatrix;

    fn mul(self, rhs: &RepMatrix) -> RepMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = RepMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &RepMatrix {
    type Output = RepMatrix;

    fn add(self, rhs: &RepMatrix) -> RepMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        RepMatrix { n: self.n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}
