//! Labelled finite ground sets and bitmask subsets.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Soft limit on the number of atoms for exhaustive work.
pub const DEFAULT_MAX_N: usize = 20;
/// Masks are 64 bits wide.
pub const MAX_ATOMS: usize = 64;
/// Hard ceiling for tabulated setfunctions, even when the soft limit is raised.
pub const TABLE_HARD_LIMIT: usize = 26;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    pub fn from_atoms<I: IntoIterator<Item = usize>>(atoms: I) -> Subset {
        Subset(atoms.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | (1u64 << i))
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_proper_subset_of(self, o: Subset) -> bool {
        self != o && self.is_subset_of(o)
    }

    pub fn comparable(self, o: Subset) -> bool {
        self.is_subset_of(o) || o.is_subset_of(self)
    }

    pub fn is_disjoint(self, o: Subset) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn atoms(self) -> Atoms {
        Atoms(self.0)
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> Submasks {
        Submasks { of: self.0, next: Some(0) }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.atoms().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

pub struct Atoms(u64);

impl Iterator for Atoms {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

pub struct Submasks {
    of: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = Subset;
    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        // increasing enumeration of submasks: add one with carry restricted to `of`
        self.next = if cur == self.of { None } else { Some((cur | !self.of).wrapping_add(1) & self.of) };
        Some(Subset(cur))
    }
}

/// All subsets of an `n`-atom ground set in mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0..1u64 << n).map(Subset)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<GroundSet> {
        if labels.len() > MAX_ATOMS {
            return Err(Error::TooLarge { size: labels.len(), limit: MAX_ATOMS });
        }
        let mut out: Vec<String> = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            if out.iter().any(|o| o == l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
            out.push(l.to_string());
        }
        Ok(GroundSet { labels: out })
    }

    /// Ground set labelled `0, 1, ..., n-1`.
    pub fn numbered(n: usize) -> GroundSet {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        GroundSet::new(&labels).expect("numbered labels are distinct")
    }

    /// Ground set labelled `a, b, c, ...` (falls back to `x26`, ... past `z`).
    pub fn lettered(n: usize) -> GroundSet {
        let labels: Vec<String> = (0..n)
            .map(|i| if i < 26 { char::from(b'a' + i as u8).to_string() } else { alloc::format!("x{i}") })
            .collect();
        GroundSet::new(&labels).expect("letter labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut s = Subset::EMPTY;
        for l in labels {
            s = s.with(self.index_of(l.as_ref())?);
        }
        Ok(s)
    }

    pub fn subset_labels(&self, s: Subset) -> Vec<&str> {
        s.atoms().map(|i| self.label(i)).collect()
    }

    /// Ground set formed by the atoms of `s`, in their original order.
    pub fn restrict(&self, s: Subset) -> GroundSet {
        GroundSet { labels: s.atoms().map(|i| self.labels[i].clone()).collect() }
    }

    pub fn check_tabulable(&self, limit: usize) -> Result<()> {
        let limit = limit.min(TABLE_HARD_LIMIT);
        if self.len() > limit {
            return Err(Error::TooLarge { size: self.len(), limit });
        }
        Ok(())
    }
}

/// Moves the bits of `s` (a subset of `of`) into consecutive low positions.
pub fn compress(s: Subset, of: Subset) -> Subset {
    let mut out = 0u64;
    for (k, i) in of.atoms().enumerate() {
        if s.contains(i) {
            out |= 1 << k;
        }
    }
    Subset(out)
}

/// Inverse of [`compress`].
pub fn expand(s: Subset, of: Subset) -> Subset {
    let mut out = 0u64;
    for (k, i) in of.atoms().enumerate() {
        if s.contains(k) {
            out |= 1 << i;
        }
    }
    Subset(out)
}
