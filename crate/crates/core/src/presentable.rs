//! Finite unions of rational subintervals of `[0,1]`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};
use crate::rational::{self, Rational};
use crate::setfn::SetFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Interval {
        Interval { lo, hi, lo_closed, hi_closed }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Interval {
        Interval::new(lo, hi, true, true)
    }

    /// `[lo, hi)`
    pub fn half_open(lo: Rational, hi: Rational) -> Interval {
        Interval::new(lo, hi, true, false)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Canonical form: sorted, pairwise disjoint, and no two intervals could be merged.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PresentableSet {
    intervals: Vec<Interval>,
}

impl PresentableSet {
    pub fn empty() -> PresentableSet {
        PresentableSet::default()
    }

    pub fn unit() -> PresentableSet {
        PresentableSet { intervals: alloc::vec![Interval::closed(Rational::zero(), Rational::one())] }
    }

    pub fn new(intervals: Vec<Interval>) -> Result<PresentableSet> {
        for iv in &intervals {
            if iv.lo < Rational::zero() || iv.hi > Rational::one() {
                return Err(Error::BadArgument(alloc::format!("interval {iv} leaves [0,1]")));
            }
        }
        Ok(PresentableSet::canonical(intervals))
    }

    pub fn interval(iv: Interval) -> Result<PresentableSet> {
        PresentableSet::new(alloc::vec![iv])
    }

    fn canonical(mut intervals: Vec<Interval>) -> PresentableSet {
        intervals.retain(|iv| !iv.is_empty());
        // closed left ends sort before open ones at the same point
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            if let Some(cur) = out.last_mut() {
                let touches = iv.lo < cur.hi || (iv.lo == cur.hi && (cur.hi_closed || iv.lo_closed));
                if touches {
                    if iv.hi > cur.hi {
                        cur.hi = iv.hi;
                        cur.hi_closed = iv.hi_closed;
                    } else if iv.hi == cur.hi {
                        cur.hi_closed |= iv.hi_closed;
                    }
                    continue;
                }
            }
            out.push(iv);
        }
        PresentableSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    pub fn union(&self, other: &PresentableSet) -> PresentableSet {
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        PresentableSet::canonical(all)
    }

    pub fn complement(&self) -> PresentableSet {
        let mut gaps = Vec::with_capacity(self.intervals.len() + 1);
        let mut start = Rational::zero();
        let mut start_closed = true;
        for iv in &self.intervals {
            gaps.push(Interval::new(start, iv.lo.clone(), start_closed, !iv.lo_closed));
            start = iv.hi.clone();
            start_closed = !iv.hi_closed;
        }
        gaps.push(Interval::new(start, Rational::one(), start_closed, true));
        PresentableSet::canonical(gaps)
    }

    pub fn intersection(&self, other: &PresentableSet) -> PresentableSet {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &PresentableSet) -> PresentableSet {
        self.intersection(&other.complement())
    }

    /// Total length.
    pub fn measure(&self) -> Rational {
        self.intervals.iter().map(|iv| &iv.hi - &iv.lo).sum()
    }

    /// Supremum of the point set; `0` for the empty set.
    pub fn sup(&self) -> Rational {
        self.intervals.last().map(|iv| iv.hi.clone()).unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for PresentableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// A partition of `[0,1]` into finitely many presentable cells, viewed as a finite ground set.
#[derive(Clone, Debug)]
pub struct Quotient {
    ground: GroundSet,
    cells: Vec<PresentableSet>,
}

impl Quotient {
    /// Cells become atoms labelled `c0, c1, ...`.
    pub fn new(cells: Vec<PresentableSet>) -> Result<Quotient> {
        let mut covered = PresentableSet::empty();
        for cell in &cells {
            if cell.is_empty() || !covered.intersection(cell).is_empty() {
                return Err(Error::NotAPartition);
            }
            covered = covered.union(cell);
        }
        if covered != PresentableSet::unit() {
            return Err(Error::NotAPartition);
        }
        let labels: Vec<String> = (0..cells.len()).map(|i| alloc::format!("c{i}")).collect();
        Ok(Quotient { ground: GroundSet::new(&labels)?, cells })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn cells(&self) -> &[PresentableSet] {
        &self.cells
    }

    /// The presentable set represented by a subset of cells.
    pub fn pullback(&self, s: Subset) -> PresentableSet {
        s.atoms().fold(PresentableSet::empty(), |acc, i| acc.union(&self.cells[i]))
    }

    /// Tabulates an interval-defined setfunction on the quotient.
    pub fn tabulate<F: Fn(&PresentableSet) -> Rational>(&self, f: F) -> Result<SetFunction> {
        SetFunction::tabulate(self.ground.clone(), |s| f(&self.pullback(s)))
    }
}

/// Partition of `[0,1]` into `k` equal pieces `[0,1/k), ..., [(k-1)/k, 1]`.
pub fn uniform_cells(k: usize) -> Vec<PresentableSet> {
    (0..k)
        .map(|i| {
            let lo = rational::ratio(i as i64, k as i64);
            let hi = rational::ratio(i as i64 + 1, k as i64);
            PresentableSet::canonical(alloc::vec![Interval::new(lo, hi, true, i + 1 == k)])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn half_open(a: Rational, b: Rational) -> PresentableSet {
        PresentableSet::interval(Interval::half_open(a, b)).unwrap()
    }

    #[test]
    fn touching_intervals_merge() {
        let a = half_open(ratio(0, 1), ratio(1, 2));
        let b = PresentableSet::interval(Interval::closed(ratio(1, 2), ratio(1, 1))).unwrap();
        assert_eq!(a.union(&b), PresentableSet::unit());
        assert_eq!(a.union(&b).measure(), ratio(1, 1));
        let c = PresentableSet::interval(Interval::new(ratio(1, 2), ratio(1, 1), false, true)).unwrap();
        assert_eq!(a.union(&c).intervals().len(), 2);
    }

    #[test]
    fn sup_and_complement() {
        let s = PresentableSet::new(alloc::vec![
            Interval::closed(ratio(0, 1), ratio(1, 4)),
            Interval::closed(ratio(1, 2), ratio(3, 4)),
        ])
        .unwrap();
        assert_eq!(s.sup(), ratio(3, 4));
        assert_eq!(PresentableSet::empty().sup(), ratio(0, 1));
        let c = half_open(ratio(0, 1), ratio(1, 2)).complement();
        assert_eq!(c, PresentableSet::interval(Interval::closed(ratio(1, 2), ratio(1, 1))).unwrap());
        assert_eq!(PresentableSet::unit().complement(), PresentableSet::empty());
        assert_eq!(PresentableSet::empty().complement(), PresentableSet::unit());
    }

    #[test]
    fn points_survive_set_algebra() {
        let p = PresentableSet::interval(Interval::closed(ratio(1, 2), ratio(1, 2))).unwrap();
        let c = p.complement();
        assert!(!c.contains(&ratio(1, 2)));
        assert!(c.contains(&ratio(0, 1)) && c.contains(&ratio(1, 1)));
        assert_eq!(c.measure(), ratio(1, 1));
        assert_eq!(c.union(&p), PresentableSet::unit());
    }

    #[test]
    fn quotient_rejects_overlaps_and_gaps() {
        let cells = uniform_cells(3);
        let q = Quotient::new(cells.clone()).unwrap();
        assert_eq!(q.ground().len(), 3);
        assert_eq!(q.pullback(Subset(0b011)), half_open(ratio(0, 1), ratio(2, 3)));
        let mut bad = cells.clone();
        bad[0] = PresentableSet::interval(Interval::closed(ratio(0, 1), ratio(1, 3))).unwrap();
        assert!(matches!(Quotient::new(bad), Err(Error::NotAPartition)));
        assert!(matches!(Quotient::new(cells[..2].to_vec()), Err(Error::NotAPartition)));
    }

    #[test]
    fn sup_on_a_quotient_is_increasing_and_submodular() {
        let q = Quotient::new(uniform_cells(4)).unwrap();
        let f = q.tabulate(PresentableSet::sup).unwrap();
        assert!(f.is_increasing() && f.is_submodular() && f.is_normalized());
        let m = q.tabulate(PresentableSet::measure).unwrap();
        assert!(m.is_modular());
    }
}
