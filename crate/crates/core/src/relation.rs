//! Finite relations between two ground sets.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};

/// A relation `R ⊆ I × J`, stored as the neighbourhood of each left atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    left: GroundSet,
    right: GroundSet,
    rows: Vec<Subset>,
}

impl Relation {
    pub fn new(left: GroundSet, right: GroundSet, rows: Vec<Subset>) -> Result<Relation> {
        if rows.len() != left.len() {
            return Err(Error::ShapeError(alloc::format!("{} rows for {} left atoms", rows.len(), left.len())));
        }
        if rows.iter().any(|r| !r.is_subset_of(right.full())) {
            return Err(Error::ShapeError("row mentions a right atom out of range".into()));
        }
        Ok(Relation { left, right, rows })
    }

    pub fn from_pairs(left: GroundSet, right: GroundSet, pairs: &[(usize, usize)]) -> Result<Relation> {
        let mut rows = alloc::vec![Subset::EMPTY; left.len()];
        for &(i, j) in pairs {
            if i >= left.len() || j >= right.len() {
                return Err(Error::ShapeError("pair out of range".into()));
            }
            rows[i] = rows[i].with(j);
        }
        Relation::new(left, right, rows)
    }

    /// Membership relation `x ∈ Y` between `V` and the family of all subsets `Y` of `V`.
    /// Right atoms are labelled by masks; needs `|V| <= 6`.
    pub fn membership(v: &GroundSet) -> Result<Relation> {
        let n = v.len();
        if n > 6 {
            return Err(Error::TooLarge { size: n, limit: 6 });
        }
        let labels: Vec<alloc::string::String> = (0..1u64 << n).map(|m| alloc::format!("{}", Subset(m))).collect();
        let right = GroundSet::new(&labels)?;
        let rows = (0..n).map(|x| Subset((0..1u64 << n).filter(|m| m >> x & 1 == 1).fold(0, |acc, m| acc | 1 << m))).collect();
        Relation::new(v.clone(), right, rows)
    }

    pub fn left(&self) -> &GroundSet {
        &self.left
    }

    pub fn right(&self) -> &GroundSet {
        &self.right
    }

    pub fn row(&self, i: usize) -> Subset {
        self.rows[i]
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// `R(X)`: right atoms related to some atom of `X`.
    pub fn image(&self, x: Subset) -> Subset {
        x.atoms().fold(Subset::EMPTY, |acc, i| acc.union(self.rows[i]))
    }

    /// Right atoms related to every atom of `X`; the coimage of `∅` is the full right set.
    pub fn coimage(&self, x: Subset) -> Subset {
        x.atoms().fold(self.right.full(), |acc, i| acc.intersection(self.rows[i]))
    }

    pub fn transpose(&self) -> Relation {
        let mut rows = alloc::vec![Subset::EMPTY; self.right.len()];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.atoms() {
                rows[j] = rows[j].with(i);
            }
        }
        Relation { left: self.right.clone(), right: self.left.clone(), rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_and_coimage_identities() {
        let l = GroundSet::lettered(3);
        let r = GroundSet::numbered(3);
        let rel = Relation::from_pairs(l, r, &[(0, 0), (0, 1), (1, 1), (2, 2)]).unwrap();
        assert_eq!(rel.image(Subset(0b011)), Subset(0b011));
        assert_eq!(rel.image(Subset::EMPTY), Subset::EMPTY);
        assert_eq!(rel.coimage(Subset::EMPTY), Subset(0b111));
        assert_eq!(rel.coimage(Subset(0b011)), Subset(0b010));
        for x in Subset::full(3).subsets() {
            for y in Subset::full(3).subsets() {
                assert_eq!(rel.image(x.union(y)), rel.image(x).union(rel.image(y)));
                assert_eq!(rel.coimage(x.union(y)), rel.coimage(x).intersection(rel.coimage(y)));
            }
        }
        assert_eq!(rel.transpose().transpose(), rel);
    }

    #[test]
    fn membership_relation_has_full_rows() {
        let rel = Relation::membership(&GroundSet::lettered(2)).unwrap();
        assert_eq!(rel.right().len(), 4);
        assert_eq!(rel.row(0), Subset(0b1010));
        assert_eq!(rel.row(1), Subset(0b1100));
    }
}
