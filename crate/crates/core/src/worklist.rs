//! The splitter list with queue or stack extraction.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::partition::BlockId;

/// Extraction order of the splitter list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    /// Queue: the oldest entry is extracted first.
    Fifo,
    /// Stack: the newest entry is extracted first.
    Lifo,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::Fifo, Strategy::Lifo];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Fifo => "fifo",
            Strategy::Lifo => "lifo",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "fifo" | "queue" => Ok(Strategy::Fifo),
            "lifo" | "stack" => Ok(Strategy::Lifo),
            other => Err(format!("unknown strategy '{other}' (expected fifo or lifo)")),
        }
    }
}

/// One splitter `(C, a, l1)`.
///
/// `set` is `None` only for the empty set that initialization enqueues when
/// every state is final or every state is non-final. `length` is the current
/// word length of the cover-automata variant; plain minimization carries it
/// along without reading it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitterEntry {
    pub set: Option<BlockId>,
    pub letter: usize,
    pub length: usize,
}

#[derive(Debug, Clone)]
pub struct Worklist {
    strategy: Strategy,
    alphabet_size: usize,
    entries: VecDeque<SplitterEntry>,
    // (block * alphabet_size + letter) -> length of the queued entry
    present: Vec<Option<usize>>,
}

impl Worklist {
    pub fn new(strategy: Strategy, alphabet_size: usize) -> Self {
        Worklist { strategy, alphabet_size, entries: VecDeque::new(), present: Vec::new() }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn slot(&self, block: BlockId, letter: usize) -> usize {
        block * self.alphabet_size + letter
    }

    /// Length of the queued entry for `(block, letter)`, if any.
    pub fn contains(&self, block: BlockId, letter: usize) -> Option<usize> {
        self.present.get(self.slot(block, letter)).copied().flatten()
    }

    pub fn contains_block(&self, block: BlockId) -> bool {
        (0..self.alphabet_size).any(|c| self.contains(block, c).is_some())
    }

    pub fn push(&mut self, entry: SplitterEntry) {
        if let Some(b) = entry.set {
            let slot = self.slot(b, entry.letter);
            if slot >= self.present.len() {
                self.present.resize(slot + 1, None);
            }
            debug_assert!(self.present[slot].is_none(), "duplicate splitter ({b}, {})", entry.letter);
            self.present[slot] = Some(entry.length);
        }
        self.entries.push_back(entry);
    }

    pub fn pop(&mut self) -> Option<SplitterEntry> {
        let entry = match self.strategy {
            Strategy::Fifo => self.entries.pop_front(),
            Strategy::Lifo => self.entries.pop_back(),
        }?;
        if let Some(b) = entry.set {
            let slot = self.slot(b, entry.letter);
            self.present[slot] = None;
        }
        Some(entry)
    }

    /// Entries from oldest to newest.
    pub fn iter(&self) -> impl Iterator<Item = &SplitterEntry> {
        self.entries.iter()
    }

    #[cfg(test)]
    fn index_agrees(&self) -> bool {
        let queued = self.entries.iter().filter(|e| e.set.is_some()).count();
        let flagged = self.present.iter().filter(|p| p.is_some()).count();
        queued == flagged
            && self.entries.iter().all(|e| match e.set {
                Some(b) => self.contains(b, e.letter) == Some(e.length),
                None => true,
            })
    }
}
