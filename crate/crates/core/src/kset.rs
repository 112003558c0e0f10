//! k-sets over a dense ground set `0..n`.
//!
//! A k-set is a tuple of `k` pairwise disjoint subsets `(X_1, ..., X_k)` of the
//! ground set. It is stored as one position per element, with `0` meaning the
//! element is unassigned, so disjointness cannot be violated.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a ground-set element, in `0..n`.
pub type ElementId = usize;

/// Coordinate an element is assigned to: `0` is unassigned, `1..=k` are the coordinates.
pub type Position = usize;

pub const UNASSIGNED: Position = 0;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KSet {
    k: usize,
    assign: Vec<u32>,
    support: usize,
}

impl KSet {
    /// The empty k-set `0` over `n` elements.
    pub fn empty(n: usize, k: usize) -> Result<Self> {
        check_shape(n, k)?;
        Ok(KSet {
            k,
            assign: vec![0; n],
            support: 0,
        })
    }

    /// Builds a k-set from an explicit position vector.
    pub fn from_positions(k: usize, positions: &[Position]) -> Result<Self> {
        check_shape(positions.len(), k)?;
        let mut support = 0;
        let mut assign = Vec::with_capacity(positions.len());
        for &p in positions {
            if p > k {
                return Err(Error::PositionOutOfRange { position: p, k });
            }
            if p != UNASSIGNED {
                support += 1;
            }
            assign.push(p as u32);
        }
        Ok(KSet { k, assign, support })
    }

    /// Builds a k-set from `(element, position)` pairs.
    pub fn from_pairs(n: usize, k: usize, pairs: &[(ElementId, Position)]) -> Result<Self> {
        let mut x = KSet::empty(n, k)?;
        for &(e, i) in pairs {
            x.insert_mut(e, i)?;
        }
        Ok(x)
    }

    /// The k-set whose base-`(k+1)` digits, least significant first, are the positions.
    pub fn from_index(n: usize, k: usize, mut index: u64) -> Result<Self> {
        check_shape(n, k)?;
        let base = (k + 1) as u64;
        let mut positions = vec![0; n];
        for p in positions.iter_mut() {
            *p = (index % base) as usize;
            index /= base;
        }
        KSet::from_positions(k, &positions)
    }

    pub fn n(&self) -> usize {
        self.assign.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `x(e)`, or `0` when `e` is unassigned.
    pub fn position(&self, e: ElementId) -> Position {
        self.assign[e] as Position
    }

    pub fn positions(&self) -> impl DoubleEndedIterator<Item = Position> + ExactSizeIterator + '_ {
        self.assign.iter().map(|&p| p as Position)
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.assign[e] != 0
    }

    /// `|supp(x)|`.
    pub fn support_size(&self) -> usize {
        self.support
    }

    pub fn is_empty(&self) -> bool {
        self.support == 0
    }

    pub fn support(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.assign
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0)
            .map(|(e, _)| e)
    }

    /// `supp_i(x) = X_i`.
    pub fn coordinate(&self, i: Position) -> impl Iterator<Item = ElementId> + '_ {
        self.assign
            .iter()
            .enumerate()
            .filter(move |(_, &p)| p as Position == i)
            .map(|(e, _)| e)
    }

    /// Pair-list form `{(e_1, i_1), ..., (e_t, i_t)}`, sorted by element.
    pub fn pairs(&self) -> Vec<(ElementId, Position)> {
        self.assign
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0)
            .map(|(e, &p)| (e, p as Position))
            .collect()
    }

    /// `x ⊔ (e, i)` as a new value.
    pub fn insert(&self, e: ElementId, i: Position) -> Result<Self> {
        let mut next = self.clone();
        next.insert_mut(e, i)?;
        Ok(next)
    }

    pub fn insert_mut(&mut self, e: ElementId, i: Position) -> Result<()> {
        self.check_insert(e, i)?;
        self.assign[e] = i as u32;
        self.support += 1;
        Ok(())
    }

    pub(crate) fn check_insert(&self, e: ElementId, i: Position) -> Result<()> {
        if e >= self.n() {
            return Err(Error::ElementOutOfRange {
                element: e,
                n: self.n(),
            });
        }
        if i == UNASSIGNED || i > self.k {
            return Err(Error::PositionOutOfRange {
                position: i,
                k: self.k,
            });
        }
        if self.assign[e] != 0 {
            return Err(Error::AlreadyAssigned {
                element: e,
                position: self.assign[e] as Position,
            });
        }
        Ok(())
    }

    /// `x ⊓ y`: coordinate-wise intersection.
    pub fn meet(&self, other: &KSet) -> Result<Self> {
        self.check_same_shape(other)?;
        let positions: Vec<Position> = self
            .assign
            .iter()
            .zip(&other.assign)
            .map(|(&a, &b)| if a == b { a as Position } else { 0 })
            .collect();
        KSet::from_positions(self.k, &positions)
    }

    /// `x ⊔ y`: coordinate-wise union, dropping elements claimed by two different coordinates.
    pub fn join(&self, other: &KSet) -> Result<Self> {
        self.check_same_shape(other)?;
        let positions: Vec<Position> = self
            .assign
            .iter()
            .zip(&other.assign)
            .map(|(&a, &b)| match (a, b) {
                (0, b) => b as Position,
                (a, 0) => a as Position,
                (a, b) if a == b => a as Position,
                _ => 0,
            })
            .collect();
        KSet::from_positions(self.k, &positions)
    }

    /// `x ⊑ y`: `X_i ⊆ Y_i` for every coordinate.
    pub fn is_subset(&self, other: &KSet) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self
            .assign
            .iter()
            .zip(&other.assign)
            .all(|(&a, &b)| a == 0 || a == b))
    }

    /// Lexicographic order on the sorted pair lists.
    pub fn cmp_pairs(&self, other: &KSet) -> Ordering {
        self.pairs().cmp(&other.pairs())
    }

    fn check_same_shape(&self, other: &KSet) -> Result<()> {
        if self.n() != other.n() || self.k != other.k {
            return Err(Error::ShapeMismatch {
                n1: self.n(),
                k1: self.k,
                n2: other.n(),
                k2: other.k,
            });
        }
        Ok(())
    }
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::param("n", "ground set must be non-empty"));
    }
    if k < 2 {
        return Err(Error::param("k", format!("need k >= 2, got {k}")));
    }
    Ok(())
}

/// Number of k-sets over `n` elements, `(k+1)^n`, or `None` on overflow.
pub fn lattice_size(n: usize, k: usize) -> Option<u64> {
    ((k + 1) as u64).checked_pow(u32::try_from(n).ok()?)
}

/// Iterates over all `(k+1)^n` k-sets in index order.
pub fn all_ksets(n: usize, k: usize) -> Result<impl Iterator<Item = KSet>> {
    check_shape(n, k)?;
    let total = lattice_size(n, k)
        .ok_or_else(|| Error::SizeGuard(format!("(k+1)^n overflows for n={n}, k={k}")))?;
    Ok((0..total).map(move |idx| KSet::from_index(n, k, idx).expect("shape checked")))
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, (e, i)) in self.pairs().into_iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}:{i}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KSet(n={}, k={}, {})", self.n(), self.k, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(k: usize, p: &[usize]) -> KSet {
        KSet::from_positions(k, p).unwrap()
    }

    #[test]
    fn empty_kset() {
        let x = KSet::empty(3, 2).unwrap();
        assert_eq!(x.positions().collect::<Vec<_>>(), vec![0, 0, 0]);
        assert_eq!(x.support_size(), 0);
        let x = KSet::empty(1, 2).unwrap();
        assert_eq!(x.positions().collect::<Vec<_>>(), vec![0]);
        assert!(matches!(
            KSet::empty(3, 1),
            Err(Error::InvalidParameter { name: "k", .. })
        ));
        assert!(KSet::empty(0, 2).is_err());
    }

    #[test]
    fn insert_examples() {
        let x = KSet::empty(2, 2).unwrap().insert(0, 1).unwrap();
        assert_eq!(x, ks(2, &[1, 0]));
        let y = x.insert(1, 2).unwrap();
        assert_eq!(y, ks(2, &[1, 2]));
        assert!(matches!(
            x.insert(0, 2),
            Err(Error::AlreadyAssigned {
                element: 0,
                position: 1
            })
        ));
        assert!(matches!(x.insert(1, 0), Err(Error::PositionOutOfRange { .. })));
        assert!(matches!(x.insert(1, 3), Err(Error::PositionOutOfRange { .. })));
        assert!(matches!(x.insert(5, 1), Err(Error::ElementOutOfRange { .. })));
    }

    #[test]
    fn meet_examples() {
        assert_eq!(ks(2, &[1, 2]).meet(&ks(2, &[1, 0])).unwrap(), ks(2, &[1, 0]));
        assert_eq!(ks(2, &[1, 0]).meet(&ks(2, &[2, 0])).unwrap(), ks(2, &[0, 0]));
        let x = ks(3, &[3, 0, 1]);
        assert_eq!(x.meet(&x).unwrap(), x);
    }

    #[test]
    fn join_examples() {
        assert_eq!(ks(2, &[1, 0]).join(&ks(2, &[0, 2])).unwrap(), ks(2, &[1, 2]));
        assert_eq!(ks(2, &[1, 2]).join(&ks(2, &[2, 1])).unwrap(), ks(2, &[0, 0]));
        let x = ks(3, &[3, 0, 1]);
        assert_eq!(x.join(&KSet::empty(3, 3).unwrap()).unwrap(), x);
    }

    #[test]
    fn subset_examples() {
        assert!(ks(2, &[1, 0]).is_subset(&ks(2, &[1, 2])).unwrap());
        assert!(!ks(2, &[1, 0]).is_subset(&ks(2, &[2, 2])).unwrap());
        assert!(KSet::empty(2, 2).unwrap().is_subset(&ks(2, &[2, 1])).unwrap());
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a = KSet::empty(2, 2).unwrap();
        let b = KSet::empty(3, 2).unwrap();
        let c = KSet::empty(2, 3).unwrap();
        assert!(matches!(a.meet(&b), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(a.join(&c), Err(Error::ShapeMismatch { .. })));
        assert!(a.is_subset(&c).is_err());
    }

    #[test]
    fn display_pair_list() {
        assert_eq!(ks(3, &[0, 2, 0, 1]).to_string(), "(1:2, 3:1)");
        assert_eq!(KSet::empty(2, 2).unwrap().to_string(), "()");
    }

    #[test]
    fn exhaustive_lattice_laws_n4_k2() {
        let all: Vec<KSet> = all_ksets(4, 2).unwrap().collect();
        assert_eq!(all.len(), 81);
        for x in &all {
            for y in &all {
                let m = x.meet(y).unwrap();
                assert!(m.is_subset(x).unwrap() && m.is_subset(y).unwrap());
                assert_eq!(m, y.meet(x).unwrap());
                assert_eq!(x.join(y).unwrap(), y.join(x).unwrap());
                if x.is_subset(y).unwrap() && y.is_subset(x).unwrap() {
                    assert_eq!(x, y);
                }
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        let x = KSet::from_index(4, 2, 5).unwrap();
        // 5 = 2 + 1*3
        assert_eq!(x, ks(2, &[2, 1, 0, 0]));
        assert_eq!(lattice_size(4, 2), Some(81));
    }
}
