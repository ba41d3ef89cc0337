//! Dense exact rational linear algebra.

use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: alloc::vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Rational>(rows: usize, cols: usize, mut f: F) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Option<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Matrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `vᵀ A v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        self.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Principal submatrix on the given indices.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Row echelon form in place; returns the pivot columns.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else { continue };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for i in r + 1..self.rows {
                if self[(i, c)].is_zero() {
                    continue;
                }
                let f = &self[(i, c)] * &inv;
                for j in c..self.cols {
                    let d = &f * &self[(r, j)];
                    self[(i, j)] -= d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else { return Rational::zero() };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let inv = m[(c, c)].recip();
            det *= &m[(c, c)];
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= d;
                }
            }
        }
        det
    }

    /// Solves `A x = b` for square nonsingular `A`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let n = self.rows;
        if !self.is_square() || b.len() != n {
            return None;
        }
        let mut aug = Matrix::from_fn(n, n + 1, |i, j| if j < n { self[(i, j)].clone() } else { b[i].clone() });
        let piv = aug.eliminate();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut x = alloc::vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut s = aug[(i, n)].clone();
            for j in i + 1..n {
                s -= &aug[(i, j)] * &x[j];
            }
            x[i] = s / &aug[(i, i)];
        }
        Some(x)
    }

    /// Sylvester's criterion via unpivoted elimination: every leading pivot must be positive.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let mut m = self.clone();
        for c in 0..n {
            if !m[(c, c)].is_positive() {
                return false;
            }
            let inv = m[(c, c)].recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= d;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pivot {
    One { index: usize, d: Rational },
    /// Block `[[0, a], [a, 0]]` on two indices.
    Two { first: usize, second: usize, a: Rational },
}

/// A congruence `T A Tᵀ = D` with `D` block diagonal built from the recorded pivots.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub t: Matrix,
    pub pivots: Vec<Pivot>,
    pub size: usize,
}

impl Congruence {
    pub fn inertia(&self) -> Inertia {
        let mut out = Inertia::default();
        let mut used = 0;
        for p in &self.pivots {
            match p {
                Pivot::One { d, .. } => {
                    used += 1;
                    if d.is_positive() {
                        out.positive += 1;
                    } else {
                        out.negative += 1;
                    }
                }
                Pivot::Two { .. } => {
                    used += 2;
                    out.positive += 1;
                    out.negative += 1;
                }
            }
        }
        out.zero = self.size - used;
        out
    }

    /// A vector with strictly positive quadratic form, if one exists.
    pub fn positive_direction(&self) -> Option<Vec<Rational>> {
        self.pivots.iter().find_map(|p| match p {
            Pivot::One { index, d } if d.is_positive() => Some(self.t.row(*index).to_vec()),
            Pivot::Two { first, second, a } => {
                let s = if a.is_positive() { Rational::one() } else { -Rational::one() };
                Some(self.t.row(*first).iter().zip(self.t.row(*second)).map(|(x, y)| x + &s * y).collect())
            }
            _ => None,
        })
    }
}

/// Exact symmetric congruence diagonalization with diagonal and 2×2 pivoting.
pub fn diagonalize(a: &Matrix) -> Congruence {
    assert!(a.is_symmetric(), "diagonalize needs a symmetric matrix");
    let n = a.rows;
    let mut s = a.clone();
    let mut t = Matrix::identity(n);
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    // subtract f times row/col k from row/col j, keeping s symmetric
    let sym_op = |s: &mut Matrix, t: &mut Matrix, j: usize, k: usize, f: &Rational| {
        for c in 0..n {
            let d = f * &s[(k, c)];
            s[(j, c)] -= d;
        }
        for r in 0..n {
            let d = f * &s[(r, k)];
            s[(r, j)] -= d;
        }
        for c in 0..n {
            let d = f * &t[(k, c)];
            t[(j, c)] -= d;
        }
    };
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&k| !s[(k, k)].is_zero()) {
            let k = active.remove(pos);
            let inv = s[(k, k)].recip();
            for &j in &active {
                if !s[(j, k)].is_zero() {
                    let f = &s[(j, k)] * &inv;
                    sym_op(&mut s, &mut t, j, k, &f);
                }
            }
            pivots.push(Pivot::One { index: k, d: s[(k, k)].clone() });
            continue;
        }
        let pair = active
            .iter()
            .enumerate()
            .find_map(|(p, &k)| active[p + 1..].iter().find(|&&l| !s[(k, l)].is_zero()).map(|&l| (k, l)));
        let Some((k, l)) = pair else { break };
        active.retain(|&x| x != k && x != l);
        let a_kl = s[(k, l)].clone();
        for &j in &active {
            let (sjk, sjl) = (s[(j, k)].clone(), s[(j, l)].clone());
            if !sjl.is_zero() {
                sym_op(&mut s, &mut t, j, k, &(&sjl / &a_kl));
            }
            if !sjk.is_zero() {
                sym_op(&mut s, &mut t, j, l, &(&sjk / &a_kl));
            }
        }
        pivots.push(Pivot::Two { first: k, second: l, a: a_kl });
    }
    Congruence { t, pivots, size: n }
}

pub fn inertia(a: &Matrix) -> Inertia {
    diagonalize(a).inertia()
}
