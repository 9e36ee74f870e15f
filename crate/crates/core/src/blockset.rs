//! Sets of blocks and their 0/1 incidence vectors.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::num::{rat, Rational};

/// A set of block indices, kept sorted and duplicate-free.
///
/// `Ord` is the canonical enumeration order: by cardinality, then
/// lexicographically on the sorted members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct BlockSubset {
    members: Vec<usize>,
}

impl From<Vec<usize>> for BlockSubset {
    fn from(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        BlockSubset { members }
    }
}

impl From<BlockSubset> for Vec<usize> {
    fn from(s: BlockSubset) -> Self {
        s.members
    }
}

impl FromIterator<usize> for BlockSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        BlockSubset::from(iter.into_iter().collect::<Vec<_>>())
    }
}

impl Ord for BlockSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for BlockSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlockSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

impl BlockSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(b: usize) -> Self {
        BlockSubset { members: vec![b] }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, b: usize) -> bool {
        self.members.binary_search(&b).is_ok()
    }

    pub fn is_subset(&self, other: &BlockSubset) -> bool {
        self.members.iter().all(|&b| other.contains(b))
    }

    pub fn union(&self, other: &BlockSubset) -> BlockSubset {
        self.members.iter().chain(other.members.iter()).copied().collect()
    }

    pub fn intersection(&self, other: &BlockSubset) -> BlockSubset {
        BlockSubset {
            members: self.members.iter().copied().filter(|&b| other.contains(b)).collect(),
        }
    }

    pub fn difference(&self, other: &BlockSubset) -> BlockSubset {
        BlockSubset {
            members: self.members.iter().copied().filter(|&b| !other.contains(b)).collect(),
        }
    }

    pub fn with(&self, b: usize) -> BlockSubset {
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search(&b) {
            members.insert(pos, b);
        }
        BlockSubset { members }
    }

    pub fn without(&self, b: usize) -> BlockSubset {
        BlockSubset {
            members: self.members.iter().copied().filter(|&x| x != b).collect(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.members.last().copied()
    }

    pub fn incidence(&self, block_count: usize) -> IncidenceVector {
        let mut coords = vec![0u8; block_count];
        for &b in &self.members {
            coords[b] = 1;
        }
        IncidenceVector { coords }
    }

    /// All subsets, as bitmask-indexed iteration (only for small sets).
    pub fn subsets(&self) -> impl Iterator<Item = BlockSubset> + '_ {
        let k = self.members.len();
        assert!(k < 64, "subset enumeration over {k} elements");
        (0u64..(1u64 << k)).map(move |mask| {
            BlockSubset {
                members: (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.members[i])
                    .collect(),
            }
        })
    }
}

/// The 0/1 coordinate vector of a block subset, indexed in canonical block order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IncidenceVector {
    pub coords: Vec<u8>,
}

impl IncidenceVector {
    pub fn to_subset(&self) -> BlockSubset {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.coords.iter().map(|&c| rat(c as i64)).collect()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.coords.iter().map(|&c| c as i64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_cardinality_then_lex() {
        let mut v: Vec<BlockSubset> = vec![
            vec![1, 2].into(),
            vec![0].into(),
            vec![].into(),
            vec![0, 1, 2].into(),
            vec![2].into(),
            vec![0, 1].into(),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{}", "{0}", "{2}", "{0,1}", "{1,2}", "{0,1,2}"]);
    }

    #[test]
    fn set_operations() {
        let a: BlockSubset = vec![0, 2].into();
        let b: BlockSubset = vec![2, 3].into();
        assert_eq!(a.union(&b).members(), &[0, 2, 3]);
        assert_eq!(a.intersection(&b).members(), &[2]);
        assert_eq!(a.difference(&b).members(), &[0]);
        assert!(BlockSubset::singleton(2).is_subset(&a));
        assert_eq!(a.with(1).members(), &[0, 1, 2]);
        assert_eq!(a.without(0).members(), &[2]);
        assert_eq!(a.subsets().count(), 4);
        assert_eq!(a.incidence(4).coords, vec![1, 0, 1, 0]);
        assert_eq!(a.incidence(4).to_subset(), a);
    }
}
