//! Tabulated setfunctions and exhaustive property checks.

use alloc::vec::Vec;
use core::ops::Index;

use bitflags::bitflags;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset, DEFAULT_MAX_N};
use crate::rational::{self, Rational};

bitflags! {
    /// Properties a setfunction claims. Claims are never trusted; see [`SetFunction::audit_flags`].
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
    pub struct Flags: u16 {
        const SUBMODULAR = 1;
        const SUPERMODULAR = 1 << 1;
        const MODULAR = 1 << 2;
        const INCREASING = 1 << 3;
        const DECREASING = 1 << 4;
        const STRONGLY_SUBMODULAR = 1 << 5;
        const NORMALIZED = 1 << 6;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum NumericMode {
    #[default]
    Exact,
    /// Values were produced by floating point; comparisons allow this much slack.
    Approximate(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction {
    ground: GroundSet,
    values: Vec<Rational>,
    flags: Flags,
    mode: NumericMode,
}

impl Index<Subset> for SetFunction {
    type Output = Rational;
    fn index(&self, s: Subset) -> &Rational {
        &self.values[s.index()]
    }
}

impl SetFunction {
    pub fn tabulate<F: FnMut(Subset) -> Rational>(ground: GroundSet, f: F) -> Result<SetFunction> {
        SetFunction::tabulate_with_limit(ground, DEFAULT_MAX_N, f)
    }

    pub fn tabulate_with_limit<F: FnMut(Subset) -> Rational>(
        ground: GroundSet,
        limit: usize,
        mut f: F,
    ) -> Result<SetFunction> {
        ground.check_tabulable(limit)?;
        let values = (0..1u64 << ground.len()).map(|m| f(Subset(m))).collect();
        Ok(SetFunction { ground, values, flags: Flags::empty(), mode: NumericMode::Exact })
    }

    pub fn from_values(ground: GroundSet, values: Vec<Rational>) -> Result<SetFunction> {
        ground.check_tabulable(crate::ground::TABLE_HARD_LIMIT)?;
        if values.len() != 1usize << ground.len() {
            return Err(Error::ShapeError(alloc::format!(
                "expected {} values, got {}",
                1usize << ground.len(),
                values.len()
            )));
        }
        Ok(SetFunction { ground, values, flags: Flags::empty(), mode: NumericMode::Exact })
    }

    pub fn from_ints(ground: GroundSet, values: &[i64]) -> Result<SetFunction> {
        SetFunction::from_values(ground, values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn zero(ground: GroundSet) -> SetFunction {
        SetFunction::tabulate_with_limit(ground, crate::ground::TABLE_HARD_LIMIT, |_| Rational::zero())
            .expect("ground set already validated")
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, s: Subset) -> &Rational {
        &self.values[s.index()]
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn with_flags(mut self, flags: Flags) -> SetFunction {
        self.flags = flags;
        self
    }

    pub fn mode(&self) -> &NumericMode {
        &self.mode
    }

    pub fn with_mode(mut self, mode: NumericMode) -> SetFunction {
        self.mode = mode;
        self
    }

    pub fn tolerance(&self) -> Rational {
        match &self.mode {
            NumericMode::Exact => Rational::zero(),
            NumericMode::Approximate(t) => t.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.mode == NumericMode::Exact
    }

    /// Copy with a single value replaced; flags are dropped.
    pub fn with_value(&self, s: Subset, v: Rational) -> SetFunction {
        let mut out = self.clone();
        out.values[s.index()] = v;
        out.flags = Flags::empty();
        out
    }

    pub fn map<F: FnMut(Subset, &Rational) -> Rational>(&self, mut f: F) -> SetFunction {
        let values = self.values.iter().enumerate().map(|(m, v)| f(Subset(m as u64), v)).collect();
        SetFunction { ground: self.ground.clone(), values, flags: Flags::empty(), mode: self.mode.clone() }
    }

    pub fn zip_with<F: FnMut(&Rational, &Rational) -> Rational>(
        &self,
        other: &SetFunction,
        mut f: F,
    ) -> Result<SetFunction> {
        self.same_ground(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(SetFunction { ground: self.ground.clone(), values, flags: Flags::empty(), mode: self.combined_mode(other) })
    }

    pub fn same_ground(&self, other: &SetFunction) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch);
        }
        Ok(())
    }

    fn combined_mode(&self, other: &SetFunction) -> NumericMode {
        match (&self.mode, &other.mode) {
            (NumericMode::Exact, NumericMode::Exact) => NumericMode::Exact,
            _ => NumericMode::Approximate(self.tolerance() + other.tolerance()),
        }
    }

    pub fn add(&self, other: &SetFunction) -> Result<SetFunction> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SetFunction) -> Result<SetFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn pointwise_min(&self, other: &SetFunction) -> Result<SetFunction> {
        self.zip_with(other, rational::min)
    }

    pub fn scale(&self, c: &Rational) -> SetFunction {
        self.map(|_, v| v * c)
    }

    pub fn shift(&self, c: &Rational) -> SetFunction {
        self.map(|_, v| v + c)
    }

    pub fn neg(&self) -> SetFunction {
        self.map(|_, v| -v)
    }

    /// `X -> phi(J \ X)`.
    pub fn complement(&self) -> SetFunction {
        let n = self.n();
        self.map(|s, _| self[s.complement(n)].clone())
    }

    /// Supremum norm `max |phi(X)|`.
    pub fn sup_norm(&self) -> Rational {
        self.values.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn max_value(&self) -> Rational {
        self.values.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_value(&self) -> Rational {
        self.values.iter().min().cloned().unwrap_or_else(Rational::zero)
    }

    /// `a <= b` up to the numeric tolerance.
    pub fn le(&self, a: &Rational, b: &Rational) -> bool {
        match &self.mode {
            NumericMode::Exact => a <= b,
            NumericMode::Approximate(t) => a <= &(b + t),
        }
    }

    pub fn approx_eq(&self, a: &Rational, b: &Rational) -> bool {
        self.le(a, b) && self.le(b, a)
    }

    pub fn is_normalized(&self) -> bool {
        self.approx_eq(&self[Subset::EMPTY], &Rational::zero())
    }

    pub fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NormalizationViolated)
        }
    }

    /// First failure of `phi(X+i) + phi(X+j) >= phi(X+i+j) + phi(X)`, reported as the pair `(X+i, X+j)`.
    /// The local inequalities are equivalent to submodularity.
    pub fn submodular_violation(&self) -> Option<(Subset, Subset)> {
        self.local_violation(|lhs, rhs| self.le(rhs, lhs))
    }

    pub fn supermodular_violation(&self) -> Option<(Subset, Subset)> {
        self.local_violation(|lhs, rhs| self.le(lhs, rhs))
    }

    fn local_violation<F: Fn(&Rational, &Rational) -> bool>(&self, ok: F) -> Option<(Subset, Subset)> {
        let n = self.n();
        for x in crate::ground::all_subsets(n) {
            for i in 0..n {
                if x.contains(i) {
                    continue;
                }
                for j in i + 1..n {
                    if x.contains(j) {
                        continue;
                    }
                    let (xi, xj) = (x.with(i), x.with(j));
                    let lhs = &self[xi] + &self[xj];
                    let rhs = &self[xi.with(j)] + &self[x];
                    if !ok(&lhs, &rhs) {
                        return Some((xi, xj));
                    }
                }
            }
        }
        None
    }

    /// Checks `phi(X) + phi(Y) >= phi(X|Y) + phi(X&Y)` literally for every incomparable pair.
    pub fn submodular_violation_exhaustive(&self) -> Option<(Subset, Subset)> {
        let n = 1u64 << self.n();
        for x in 0..n {
            for y in x + 1..n {
                let (xs, ys) = (Subset(x), Subset(y));
                if xs.comparable(ys) {
                    continue;
                }
                let lhs = &self.values[x as usize] + &self.values[y as usize];
                let rhs = &self[xs.union(ys)] + &self[xs.intersection(ys)];
                if !self.le(&rhs, &lhs) {
                    return Some((xs, ys));
                }
            }
        }
        None
    }

    pub fn supermodular_violation_exhaustive(&self) -> Option<(Subset, Subset)> {
        self.neg().submodular_violation_exhaustive()
    }

    pub fn is_submodular(&self) -> bool {
        self.submodular_violation().is_none()
    }

    pub fn is_supermodular(&self) -> bool {
        self.supermodular_violation().is_none()
    }

    pub fn is_modular(&self) -> bool {
        self.is_submodular() && self.is_supermodular()
    }

    pub fn require_submodular(&self) -> Result<()> {
        match self.submodular_violation() {
            None => Ok(()),
            Some((x, y)) => Err(Error::NotSubmodular { x, y }),
        }
    }

    pub fn require_supermodular(&self) -> Result<()> {
        match self.supermodular_violation() {
            None => Ok(()),
            Some((x, y)) => Err(Error::NotSupermodular { x, y }),
        }
    }

    /// A pair `X` ⊂ `X+i` with `phi(X) > phi(X+i)`.
    pub fn increasing_violation(&self) -> Option<(Subset, Subset)> {
        let n = self.n();
        for x in crate::ground::all_subsets(n) {
            for i in 0..n {
                if !x.contains(i) && !self.le(&self[x], &self[x.with(i)]) {
                    return Some((x, x.with(i)));
                }
            }
        }
        None
    }

    pub fn decreasing_violation(&self) -> Option<(Subset, Subset)> {
        self.neg().increasing_violation()
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing_violation().is_none()
    }

    pub fn is_decreasing(&self) -> bool {
        self.decreasing_violation().is_none()
    }

    pub fn require_increasing(&self) -> Result<()> {
        match self.increasing_violation() {
            None => Ok(()),
            Some((x, y)) => Err(Error::NotIncreasing { x, y }),
        }
    }

    /// A disjoint pair with `phi(X|Y) > phi(X) + phi(Y)`.
    pub fn subadditive_violation(&self) -> Option<(Subset, Subset)> {
        let full = self.full();
        for x in crate::ground::all_subsets(self.n()) {
            for y in x.complement(self.n()).intersection(full).subsets() {
                if y < x {
                    continue;
                }
                if !self.le(&self[x.union(y)], &(&self[x] + &self[y])) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Verifies each claimed flag; returns the flags whose claim fails.
    pub fn audit_flags(&self) -> Flags {
        let mut bad = Flags::empty();
        let checks: [(Flags, fn(&SetFunction) -> bool); 6] = [
            (Flags::SUBMODULAR, SetFunction::is_submodular),
            (Flags::SUPERMODULAR, SetFunction::is_supermodular),
            (Flags::MODULAR, SetFunction::is_modular),
            (Flags::INCREASING, SetFunction::is_increasing),
            (Flags::DECREASING, SetFunction::is_decreasing),
            (Flags::NORMALIZED, SetFunction::is_normalized),
        ];
        for (flag, check) in checks {
            if self.flags.contains(flag) && !check(self) {
                bad |= flag;
            }
        }
        if self.flags.contains(Flags::STRONGLY_SUBMODULAR) && !crate::geometry::is_strongly_submodular(self) {
            bad |= Flags::STRONGLY_SUBMODULAR;
        }
        bad
    }

    /// Values that are not certifiable exactly are flagged by a nonzero tolerance.
    pub fn has_negative_values(&self) -> bool {
        self.values.iter().any(|v| v.is_negative())
    }
}
