//! Refinable partition of `0..n` with mark-and-split.
//!
//! States live in one array, each block owning a contiguous range. Marked
//! states of a block are swapped to the front of its range, so marking is
//! O(1) and splitting off the marked part costs O(marked).

use std::ops::Range;

pub type BlockId = usize;

#[derive(Debug, Clone)]
struct Block {
    start: usize,
    end: usize,
    marked: usize,
}

#[derive(Debug, Clone)]
pub struct RefinablePartition {
    elements: Vec<usize>,
    location: Vec<usize>,
    block_of: Vec<BlockId>,
    blocks: Vec<Block>,
}

impl RefinablePartition {
    /// The partition with a single block holding every state (or no blocks
    /// when `n == 0`).
    pub fn single(n: usize) -> Self {
        let blocks = if n == 0 { vec![] } else { vec![Block { start: 0, end: n, marked: 0 }] };
        RefinablePartition { elements: (0..n).collect(), location: (0..n).collect(), block_of: vec![0; n], blocks }
    }

    /// Builds a partition from a block label per state. Block ids are
    /// assigned in order of first appearance.
    pub fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut ids = std::collections::HashMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (s, &l) in labels.iter().enumerate() {
            let id = *ids.entry(l).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[id].push(s);
        }
        let mut p = RefinablePartition {
            elements: Vec::with_capacity(n),
            location: vec![0; n],
            block_of: vec![0; n],
            blocks: Vec::with_capacity(members.len()),
        };
        for (id, states) in members.into_iter().enumerate() {
            let start = p.elements.len();
            for s in states {
                p.location[s] = p.elements.len();
                p.block_of[s] = id;
                p.elements.push(s);
            }
            p.blocks.push(Block { start, end: p.elements.len(), marked: 0 });
        }
        p
    }

    pub fn num_states(&self) -> usize {
        self.elements.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn block_of(&self, state: usize) -> BlockId {
        self.block_of[state]
    }

    #[inline]
    pub fn block_len(&self, b: BlockId) -> usize {
        self.blocks[b].end - self.blocks[b].start
    }

    fn range(&self, b: BlockId) -> Range<usize> {
        self.blocks[b].start..self.blocks[b].end
    }

    /// Members of block `b`, in internal order.
    pub fn members(&self, b: BlockId) -> &[usize] {
        &self.elements[self.range(b)]
    }

    pub fn min_member(&self, b: BlockId) -> usize {
        *self.members(b).iter().min().expect("blocks are nonempty")
    }

    pub fn marked_count(&self, b: BlockId) -> usize {
        self.blocks[b].marked
    }

    /// Marks `state` within its block. Marking twice is a no-op.
    pub fn mark(&mut self, state: usize) {
        let b = self.block_of[state];
        let block = &mut self.blocks[b];
        let pos = self.location[state];
        let first_unmarked = block.start + block.marked;
        if pos < first_unmarked {
            return;
        }
        block.marked += 1;
        let other = self.elements[first_unmarked];
        self.elements.swap(pos, first_unmarked);
        self.location[state] = first_unmarked;
        self.location[other] = pos;
    }

    pub fn is_marked(&self, state: usize) -> bool {
        let b = &self.blocks[self.block_of[state]];
        self.location[state] < b.start + b.marked
    }

    pub fn marked(&self, b: BlockId) -> &[usize] {
        let block = &self.blocks[b];
        &self.elements[block.start..block.start + block.marked]
    }

    pub fn unmarked(&self, b: BlockId) -> &[usize] {
        let block = &self.blocks[b];
        &self.elements[block.start + block.marked..block.end]
    }

    pub fn clear_marks(&mut self, b: BlockId) {
        self.blocks[b].marked = 0;
    }

    /// Splits block `b` along its marks. The marked part moves to a fresh
    /// block when `move_marked` is true, otherwise the unmarked part does;
    /// the other part keeps id `b`. Returns `None` (and clears the marks)
    /// when either part would be empty. Cost is linear in the moved part.
    pub fn split(&mut self, b: BlockId, move_marked: bool) -> Option<BlockId> {
        let Block { start, end, marked } = self.blocks[b];
        self.blocks[b].marked = 0;
        if marked == 0 || marked == end - start {
            return None;
        }
        let new_id = self.blocks.len();
        let mid = start + marked;
        let moved = if move_marked {
            self.blocks[b].start = mid;
            self.blocks.push(Block { start, end: mid, marked: 0 });
            start..mid
        } else {
            self.blocks[b].end = mid;
            self.blocks.push(Block { start: mid, end, marked: 0 });
            mid..end
        };
        for &s in &self.elements[moved] {
            self.block_of[s] = new_id;
        }
        Some(new_id)
    }

    /// Block label per state, renumbered by first occurrence in state order.
    /// Two partitions are equal iff their canonical labels are equal.
    pub fn canonical_labels(&self) -> Vec<usize> {
        let mut rename = vec![usize::MAX; self.blocks.len()];
        let mut next = 0;
        self.block_of
            .iter()
            .map(|&b| {
                if rename[b] == usize::MAX {
                    rename[b] = next;
                    next += 1;
                }
                rename[b]
            })
            .collect()
    }

    /// Blocks as sorted state lists, ordered by their least state.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.blocks.len())
            .map(|b| {
                let mut m = self.members(b).to_vec();
                m.sort_unstable();
                m
            })
            .collect();
        out.sort();
        out
    }

    /// Structural check used by tests: blocks are disjoint, nonempty and
    /// cover every state, and the index arrays agree.
    pub fn check_invariants(&self) -> bool {
        let n = self.elements.len();
        let mut covered = 0;
        for (id, block) in self.blocks.iter().enumerate() {
            if block.start >= block.end || block.end > n || block.marked > block.end - block.start {
                return false;
            }
            for pos in block.start..block.end {
                let s = self.elements[pos];
                if self.location[s] != pos || self.block_of[s] != id {
                    return false;
                }
            }
            covered += block.end - block.start;
        }
        covered == n
    }
}

impl PartialEq for RefinablePartition {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_labels() == other.canonical_labels()
    }
}

impl Eq for RefinablePartition {}
