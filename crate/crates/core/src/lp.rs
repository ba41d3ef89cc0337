//! Exact rational linear programming.
//!
//! `maximize c·x subject to A x <= b` with free `x` is solved through its dual
//! `minimize b·y subject to Aᵀ y = c, y >= 0` by a two-phase dense-tableau simplex with Bland's
//! rule. The dual tableau has one row per variable, which keeps it small when there are few
//! variables and many constraints. Every answer is re-verified exactly before it is returned.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    rows: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    /// One nonnegative multiplier per `<=` row, with `Aᵀ y = c` and `b·y = value`.
    pub duals: Vec<Rational>,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    /// `y >= 0` with `Aᵀ y = 0` and `b·y < 0`.
    Infeasible { farkas: Vec<Rational> },
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> LinearProgram {
        LinearProgram { num_vars, objective: alloc::vec![Rational::zero(); num_vars], rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> (&[Rational], &Rational) {
        (&self.rows[i].0, &self.rows[i].1)
    }

    pub fn maximize(&mut self, c: Vec<Rational>) {
        assert_eq!(c.len(), self.num_vars, "objective length");
        self.objective = c;
    }

    /// `a·x <= b`; returns the row index.
    pub fn le(&mut self, a: Vec<Rational>, b: Rational) -> usize {
        assert_eq!(a.len(), self.num_vars, "row length");
        self.rows.push((a, b));
        self.rows.len() - 1
    }

    pub fn ge(&mut self, a: Vec<Rational>, b: Rational) -> usize {
        self.le(a.into_iter().map(|v| -v).collect(), -b)
    }

    /// Adds `a·x <= b` and `a·x >= b`; returns both row indices.
    pub fn eq(&mut self, a: Vec<Rational>, b: Rational) -> (usize, usize) {
        let i = self.le(a.clone(), b.clone());
        (i, self.ge(a, b))
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|(a, b)| dot(a, x) <= *b)
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        match self.solve_with(&self.objective)? {
            Some(out) => Ok(out),
            None => {
                // dual infeasible: the primal is unbounded or infeasible
                let zero = alloc::vec![Rational::zero(); self.num_vars];
                match self.solve_with(&zero)? {
                    Some(LpOutcome::Optimal(_)) => Ok(LpOutcome::Unbounded),
                    Some(other) => Ok(other),
                    None => Err(Error::Internal("zero objective made the dual infeasible".into())),
                }
            }
        }
    }

    /// `None` when the dual has no feasible point.
    fn solve_with(&self, c: &[Rational]) -> Result<Option<LpOutcome>> {
        let k = self.num_vars;
        let m = self.rows.len();
        // dual constraint matrix A' = Aᵀ (k × m), right-hand side c, costs b
        let mut t = Tableau::new(k, m, |i, j| self.rows[j].0[i].clone(), c);
        if !t.phase_one()? {
            return Ok(None);
        }
        let costs: Vec<Rational> = self.rows.iter().map(|(_, b)| b.clone()).collect();
        match t.phase_two(&costs)? {
            Phase2::Unbounded(ray) => {
                let farkas = ray;
                let ok = farkas.iter().all(|v| !v.is_negative())
                    && (0..k).all(|i| self.rows.iter().zip(&farkas).map(|((a, _), y)| &a[i] * y).sum::<Rational>().is_zero())
                    && self.rows.iter().zip(&farkas).map(|((_, b), y)| b * y).sum::<Rational>().is_negative();
                if !ok {
                    return Err(Error::Internal("infeasibility certificate failed verification".into()));
                }
                Ok(Some(LpOutcome::Infeasible { farkas }))
            }
            Phase2::Optimal { y, basis, rows } => {
                let x = self.primal_from_basis(&basis, &rows, &costs)?;
                let value = dot(c, &x);
                let dual_value: Rational = costs.iter().zip(&y).map(|(b, v)| b * v).sum();
                if !self.is_feasible_point(&x) || value != dual_value {
                    return Err(Error::Internal("simplex answer failed exact verification".into()));
                }
                Ok(Some(LpOutcome::Optimal(LpSolution { x, duals: y, value })))
            }
        }
    }

    /// Simplex multipliers `π` with `π·A'_j = b_j` on the basic columns; rows dropped as
    /// redundant get `π = 0`.
    fn primal_from_basis(&self, basis: &[usize], rows: &[usize], costs: &[Rational]) -> Result<Vec<Rational>> {
        let r = rows.len();
        // Bᵀ π_R = c_B where B = A'[rows, basis]
        let bt = Matrix::from_fn(r, r, |i, j| self.rows[basis[i]].0[rows[j]].clone());
        let rhs: Vec<Rational> = basis.iter().map(|&j| costs[j].clone()).collect();
        let pi = bt.solve(&rhs).ok_or_else(|| Error::Internal("singular final basis".into()))?;
        let mut x = alloc::vec![Rational::zero(); self.num_vars];
        for (p, &i) in rows.iter().enumerate() {
            x[i] = pi[p].clone();
        }
        Ok(x)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

enum Phase2 {
    Optimal { y: Vec<Rational>, basis: Vec<usize>, rows: Vec<usize> },
    Unbounded(Vec<Rational>),
}

/// Standard-form tableau for `A' y = c`, `y >= 0`, with artificial columns `m..m+k`.
struct Tableau {
    m: usize,
    k: usize,
    /// Each row: `m + k` coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Original constraint index of each surviving row.
    origin: Vec<usize>,
}

impl Tableau {
    fn new<F: Fn(usize, usize) -> Rational>(k: usize, m: usize, a: F, c: &[Rational]) -> Tableau {
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let flip = c[i].is_negative();
            let sign = |v: Rational| if flip { -v } else { v };
            let mut row: Vec<Rational> = (0..m).map(|j| sign(a(i, j))).collect();
            row.extend((0..k).map(|p| if p == i { Rational::one() } else { Rational::zero() }));
            row.push(sign(c[i].clone()));
            rows.push(row);
        }
        Tableau { m, k, rows, basis: (m..m + k).collect(), origin: (0..k).collect() }
    }

    fn width(&self) -> usize {
        self.m + self.k
    }

    fn pivot(&mut self, r: usize, col: usize, obj: &mut [Rational]) {
        let w = self.width();
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in 0..=w {
                if !prow[j].is_zero() {
                    row[j] -= &f * &prow[j];
                }
            }
        }
        if !obj[col].is_zero() {
            let f = obj[col].clone();
            for j in 0..=w {
                if !prow[j].is_zero() {
                    obj[j] -= &f * &prow[j];
                }
            }
        }
        self.basis[r] = col;
    }

    /// Reduced-cost row (last entry is minus the objective value).
    fn objective_row(&self, costs: &[Rational]) -> Vec<Rational> {
        let w = self.width();
        let mut obj: Vec<Rational> = (0..=w).map(|j| if j < w { costs[j].clone() } else { Rational::zero() }).collect();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &costs[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                if !row[j].is_zero() {
                    obj[j] -= cb * &row[j];
                }
            }
        }
        obj
    }

    /// Bland's rule. `Ok(Some(col))` reports an unbounded entering column.
    fn run(&mut self, obj: &mut [Rational], allowed: usize) -> Result<Option<usize>> {
        let w = self.width();
        let mut iterations = 0usize;
        loop {
            iterations += 1;
            if iterations > 1_000_000 {
                return Err(Error::Internal("simplex iteration limit".into()));
            }
            let Some(col) = (0..allowed).find(|&j| obj[j].is_negative()) else { return Ok(None) };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[col];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Ok(Some(col)),
                Some((r, _)) => self.pivot(r, col, obj),
            }
        }
    }

    /// Returns whether the system `A' y = c, y >= 0` is feasible; on success no artificial
    /// variable stays basic (redundant rows are removed).
    fn phase_one(&mut self) -> Result<bool> {
        let w = self.width();
        let costs: Vec<Rational> = (0..w).map(|j| if j >= self.m { Rational::one() } else { Rational::zero() }).collect();
        let mut obj = self.objective_row(&costs);
        if self.run(&mut obj, w)?.is_some() {
            return Err(Error::Internal("phase one cannot be unbounded".into()));
        }
        if !obj[w].is_zero() {
            return Ok(false);
        }
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.m {
                match (0..self.m).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(col) => self.pivot(r, col, &mut obj),
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        self.origin.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        Ok(true)
    }

    fn phase_two(&mut self, costs: &[Rational]) -> Result<Phase2> {
        let w = self.width();
        let mut full_costs = costs.to_vec();
        full_costs.extend((0..self.k).map(|_| Rational::zero()));
        let mut obj = self.objective_row(&full_costs);
        if let Some(col) = self.run(&mut obj, self.m)? {
            let mut ray = alloc::vec![Rational::zero(); self.m];
            ray[col] = Rational::one();
            for (i, row) in self.rows.iter().enumerate() {
                let b = self.basis[i];
                if b < self.m {
                    ray[b] = -row[col].clone();
                }
            }
            return Ok(Phase2::Unbounded(ray));
        }
        let mut y = alloc::vec![Rational::zero(); self.m];
        for (i, row) in self.rows.iter().enumerate() {
            y[self.basis[i]] = row[w].clone();
        }
        Ok(Phase2::Optimal { y, basis: self.basis.clone(), rows: self.origin.clone() })
    }
}
