use std::collections::BTreeMap;

use super::StateId;
use crate::error::{Error, Result};

pub type BlockId = usize;

/// Equivalence relation on `0..n` stored as disjoint blocks.
///
/// Canonical form: members sorted, blocks ordered by their smallest member.
/// Two partitions are equal iff they denote the same relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<BlockId>,
    blocks: Vec<Vec<StateId>>,
}

impl Partition {
    pub fn from_blocks(n: usize, blocks: Vec<Vec<StateId>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::BadPartition);
            }
            for &s in block {
                if s >= n || seen[s] {
                    return Err(Error::BadPartition);
                }
                seen[s] = true;
            }
        }
        if seen.iter().any(|&b| !b) {
            return Err(Error::BadPartition);
        }
        Ok(Self::canonical(n, blocks))
    }

    /// Groups states by an arbitrary key.
    pub fn from_keys<K: Ord>(n: usize, mut key: impl FnMut(StateId) -> K) -> Self {
        let mut groups: BTreeMap<K, Vec<StateId>> = BTreeMap::new();
        for s in 0..n {
            groups.entry(key(s)).or_default().push(s);
        }
        Self::canonical(n, groups.into_values().collect())
    }

    /// One block holding every state.
    pub fn trivial(n: usize) -> Self {
        Self::from_keys(n, |_| ())
    }

    /// Every state on its own.
    pub fn identity(n: usize) -> Self {
        Self::from_keys(n, |s| s)
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<StateId>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut block_of = vec![0; n];
        for (i, b) in blocks.iter().enumerate() {
            for &s in b {
                block_of[s] = i;
            }
        }
        Self { block_of, blocks }
    }

    pub fn num_states(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, s: StateId) -> BlockId {
        self.block_of[s]
    }

    pub fn block(&self, b: BlockId) -> &[StateId] {
        &self.blocks[b]
    }

    pub fn blocks(&self) -> &[Vec<StateId>] {
        &self.blocks
    }

    pub fn same_block(&self, s: StateId, t: StateId) -> bool {
        self.block_of[s] == self.block_of[t]
    }

    /// Common refinement: states share a block iff they do in both.
    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.num_states(), other.num_states());
        Self::from_keys(self.num_states(), |s| (self.block_of[s], other.block_of[s]))
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&s| coarser.same_block(s, b[0])))
    }
}
