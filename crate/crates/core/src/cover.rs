//! Deterministic finite cover automata (DFCA).
//!
//! A DFA `A` covers a finite language `L` whose longest word has length `l`
//! when `L(A) ∩ Σ^{≤l} = L`. Two states are similar when every word of length
//! at most `l - max(level(p), level(q))` leads both to the same finality, and
//! similar states can be merged without losing the cover property.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::hopcroft::{ChoiceTrace, CoverContext, Hopcroft, RunStats, TiePolicy};
use crate::partition::RefinablePartition;
use crate::worklist::Strategy;

/// The bound `l`: the length of the longest word of the covered language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverSpec {
    pub l: usize,
}

/// Shortest distance of every state from the start state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMap(pub Vec<usize>);

impl LevelMap {
    pub fn level(&self, state: usize) -> usize {
        self.0[state]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Breadth-first levels. Every state must be reachable.
pub fn state_levels(d: &Dfa) -> Result<LevelMap> {
    d.validate()?;
    let mut level = vec![usize::MAX; d.num_states];
    level[d.start] = 0;
    let mut queue = VecDeque::from([d.start]);
    while let Some(p) = queue.pop_front() {
        for c in 0..d.alphabet_size {
            let q = d.next(p, c);
            if level[q] == usize::MAX {
                level[q] = level[p] + 1;
                queue.push_back(q);
            }
        }
    }
    if let Some(q) = level.iter().position(|&l| l == usize::MAX) {
        return Err(Error::UnreachableState(q));
    }
    Ok(LevelMap(level))
}

/// True iff `p` and `q` agree on finality for every word of length at most
/// `depth`, by layered exploration of state pairs.
fn agree_up_to(d: &Dfa, p: usize, q: usize, depth: usize) -> bool {
    let mut frontier: HashSet<(usize, usize)> = HashSet::from([(p, q)]);
    for k in 0..=depth {
        if frontier.iter().any(|&(a, b)| d.is_final(a) != d.is_final(b)) {
            return false;
        }
        if k == depth {
            break;
        }
        let next: HashSet<(usize, usize)> = frontier
            .iter()
            .flat_map(|&(a, b)| (0..d.alphabet_size).map(move |c| (d.next(a, c), d.next(b, c))))
            .filter(|&(a, b)| a != b)
            .collect();
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    true
}

fn similar_with_levels(d: &Dfa, levels: &LevelMap, spec: CoverSpec, p: usize, q: usize) -> bool {
    let m = levels.level(p).max(levels.level(q));
    if m > spec.l {
        return true;
    }
    agree_up_to(d, p, q, spec.l - m)
}

/// Brute-force similarity of two states.
pub fn similar_states(d: &Dfa, spec: CoverSpec, p: usize, q: usize) -> Result<bool> {
    let levels = state_levels(d)?;
    if p >= d.num_states || q >= d.num_states {
        return Err(Error::IndexOutOfRange("state"));
    }
    Ok(similar_with_levels(d, &levels, spec, p, q))
}

/// Lengths in the right language of `p` for a unary automaton,
/// `{ |w| : δ(p, w) ∈ F, |w| ≤ l - level(p) }`, intersected with `Σ^{≤limit}`.
pub fn right_language_lengths(
    d: &Dfa,
    levels: &LevelMap,
    spec: CoverSpec,
    p: usize,
    limit: usize,
) -> Result<BTreeSet<usize>> {
    d.require_unary()?;
    let Some(own) = spec.l.checked_sub(levels.level(p)) else {
        return Ok(BTreeSet::new());
    };
    let bound = own.min(limit);
    let mut out = BTreeSet::new();
    let mut state = p;
    for len in 0..=bound {
        if d.is_final(state) {
            out.insert(len);
        }
        state = d.next(state, 0);
    }
    Ok(out)
}

/// Output of [`korner_minimize`].
#[derive(Debug, Clone)]
pub struct CoverMinimization {
    pub partition: RefinablePartition,
    pub stats: RunStats,
    pub trace: ChoiceTrace,
}

/// Hopcroft's algorithm modified for cover automata: splitters are triples
/// `(C, a, l1)`, a block `B` is split only by the states `p` with
/// `level(p) + l1 < l`, and halves enqueued while processing `(C, a, l1)`
/// carry length `l1 + 1`. States skipped by a split remain with the half that
/// keeps the block's identity.
pub fn korner_minimize(d: &Dfa, spec: CoverSpec, strategy: Strategy, policy: TiePolicy) -> Result<CoverMinimization> {
    let levels = state_levels(d)?;
    let run = Hopcroft::new(d)
        .strategy(strategy)
        .policy(policy)
        .run_inner(Some(CoverContext { levels: levels.as_slice(), l: spec.l }))?;
    Ok(CoverMinimization { partition: run.partition, stats: run.stats, trace: run.trace })
}

/// Merges every block into its lowest-level state (lowest index among equal
/// levels), redirecting transitions, and prunes states left unreachable.
/// Every block must be pairwise similar.
pub fn merge_similar(d: &Dfa, blocks: &RefinablePartition, spec: CoverSpec) -> Result<Dfa> {
    let levels = state_levels(d)?;
    if blocks.num_states() != d.num_states {
        return Err(Error::IndexOutOfRange("partition"));
    }
    for b in 0..blocks.num_blocks() {
        let members = blocks.members(b);
        for (i, &p) in members.iter().enumerate() {
            for &q in &members[i + 1..] {
                if !similar_with_levels(d, &levels, spec, p, q) {
                    return Err(Error::NotSimilarBlock { block: b, p: p.min(q), q: p.max(q) });
                }
            }
        }
    }
    let survivor: Vec<usize> = (0..blocks.num_blocks())
        .map(|b| *blocks.members(b).iter().min_by_key(|&&s| (levels.level(s), s)).expect("nonempty"))
        .collect();
    let redirect = |s: usize| survivor[blocks.block_of(s)];
    let start = redirect(d.start);

    let mut reachable = vec![false; d.num_states];
    reachable[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for c in 0..d.alphabet_size {
            let q = redirect(d.next(p, c));
            if !reachable[q] {
                reachable[q] = true;
                queue.push_back(q);
            }
        }
    }
    let kept: Vec<usize> = (0..d.num_states).filter(|&s| reachable[s]).collect();
    let mut index = vec![usize::MAX; d.num_states];
    for (i, &s) in kept.iter().enumerate() {
        index[s] = i;
    }
    let transitions =
        kept.iter().map(|&s| (0..d.alphabet_size).map(|c| index[redirect(d.next(s, c))]).collect()).collect();
    let finals = kept.iter().enumerate().filter(|(_, &s)| d.is_final(s)).map(|(i, _)| i);
    Dfa::new(d.alphabet_size, transitions, index[start], finals)
}

fn find_similar_pair(d: &Dfa, spec: CoverSpec) -> Result<Option<(usize, usize)>> {
    let levels = state_levels(d)?;
    for p in 0..d.num_states {
        for q in p + 1..d.num_states {
            if similar_with_levels(d, &levels, spec, p, q) {
                return Ok(Some((p, q)));
            }
        }
    }
    Ok(None)
}

/// True iff no two distinct states are similar.
pub fn minimal_dfca_check(d: &Dfa, spec: CoverSpec) -> Result<bool> {
    Ok(find_similar_pair(d, spec)?.is_none())
}

/// `accepted_lengths(candidate, l) = lengths`.
pub fn is_cover_automaton(candidate: &Dfa, lengths: &BTreeSet<usize>, spec: CoverSpec) -> Result<bool> {
    candidate.require_unary()?;
    if let Some(&length) = lengths.iter().find(|&&len| len > spec.l) {
        return Err(Error::LengthExceedsL { length, l: spec.l });
    }
    Ok(&candidate.accepted_lengths(spec.l)? == lengths)
}

/// Result of the full cover-minimization pipeline.
#[derive(Debug, Clone)]
pub struct CoverPipeline {
    pub minimized: Dfa,
    /// Blocks found by [`korner_minimize`].
    pub blocks: usize,
    pub stats: RunStats,
    /// Pairwise merges needed after the first pass.
    pub extra_merges: usize,
}

/// Runs [`korner_minimize`], merges its blocks, then keeps merging similar
/// pairs (recomputing similarity on the merged automaton each time) until the
/// automaton is a minimal DFCA. Similarity is not transitive, so the first
/// pass alone need not reach minimality.
pub fn merge_to_fixpoint(d: &Dfa, spec: CoverSpec, strategy: Strategy, policy: TiePolicy) -> Result<CoverPipeline> {
    let first = korner_minimize(d, spec, strategy, policy)?;
    let mut current = merge_similar(d, &first.partition, spec)?;
    let mut extra_merges = 0;
    while let Some((p, q)) = find_similar_pair(&current, spec)? {
        let labels: Vec<usize> = (0..current.num_states).map(|s| if s == q { p } else { s }).collect();
        current = merge_similar(&current, &RefinablePartition::from_labels(&labels), spec)?;
        extra_merges += 1;
    }
    Ok(CoverPipeline { minimized: current, blocks: first.partition.num_blocks(), stats: first.stats, extra_merges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::debruijn::cyclic_automaton;

    fn example() -> Dfa {
        cyclic_automaton(&"11101000".parse().unwrap(), 0).unwrap()
    }

    const L8: CoverSpec = CoverSpec { l: 8 };

    #[test]
    fn levels() {
        assert_eq!(state_levels(&example()).unwrap().0, (0..8).collect::<Vec<_>>());
        assert_eq!(state_levels(&Dfa::unary(vec![0], 0, []).unwrap()).unwrap().0, vec![0]);
        let fan = Dfa::new(2, vec![vec![1, 2], vec![3, 3], vec![3, 3], vec![3, 3]], 0, [3]).unwrap();
        assert_eq!(state_levels(&fan).unwrap().0, vec![0, 1, 1, 2]);
        let unreachable = Dfa::unary(vec![0, 0], 0, []).unwrap();
        assert!(matches!(state_levels(&unreachable), Err(Error::UnreachableState(1))));
    }

    #[test]
    fn similarity_examples() {
        let d = example();
        assert!(similar_states(&d, L8, 3, 7).unwrap());
        assert!(!similar_states(&d, L8, 4, 7).unwrap());
        for p in 0..8 {
            assert!(similar_states(&d, L8, p, p).unwrap());
        }
    }

    #[test]
    fn cover_examples() {
        let lengths = BTreeSet::from([0, 1, 2, 4, 8]);
        assert!(is_cover_automaton(&example(), &lengths, L8).unwrap());
        let all = Dfa::unary(vec![0], 0, [0]).unwrap();
        assert!(!is_cover_automaton(&all, &lengths, L8).unwrap());
        assert!(matches!(
            is_cover_automaton(&all, &BTreeSet::from([9]), L8),
            Err(Error::LengthExceedsL { length: 9, l: 8 })
        ));
        // exact acceptor: path 0..=8 plus a sink
        let mut succ: Vec<usize> = (1..=9).collect();
        succ.push(9);
        let exact = Dfa::unary(succ, 0, [0, 1, 2, 4, 8]).unwrap();
        assert!(is_cover_automaton(&exact, &lengths, L8).unwrap());
    }

    #[test]
    fn minimality_examples() {
        assert!(!minimal_dfca_check(&example(), L8).unwrap());
        assert!(minimal_dfca_check(&Dfa::unary(vec![0], 0, [0]).unwrap(), L8).unwrap());
    }

    #[test]
    fn merging_three_and_seven() {
        let d = example();
        let mut labels: Vec<usize> = (0..8).collect();
        labels[7] = 3;
        let merged = merge_similar(&d, &RefinablePartition::from_labels(&labels), L8).unwrap();
        assert_eq!(merged.num_states, 7);
        assert!(is_cover_automaton(&merged, &BTreeSet::from([0, 1, 2, 4, 8]), L8).unwrap());
    }

    #[test]
    fn identity_merge_is_identity() {
        let d = example();
        let singletons = RefinablePartition::from_labels(&(0..8).collect::<Vec<_>>());
        assert_eq!(merge_similar(&d, &singletons, L8).unwrap(), d);
    }

    #[test]
    fn merging_dissimilar_states_fails() {
        let d = example();
        let mut labels: Vec<usize> = (0..8).collect();
        labels[7] = 4;
        assert!(matches!(
            merge_similar(&d, &RefinablePartition::from_labels(&labels), L8),
            Err(Error::NotSimilarBlock { p: 4, q: 7, .. })
        ));
    }

    #[test]
    fn korner_on_example() {
        let d = example();
        let run = korner_minimize(&d, L8, Strategy::Fifo, TiePolicy::min_state()).unwrap();
        let p = &run.partition;
        assert_eq!(p.block_of(3), p.block_of(7));
        for b in 0..p.num_blocks() {
            let m = p.members(b);
            for &x in m {
                for &y in m {
                    assert!(similar_states(&d, L8, x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn korner_trivial_cases() {
        let all_final = cyclic_automaton(&"1111".parse().unwrap(), 0).unwrap();
        for l in [0, 3, 10] {
            let run = korner_minimize(&all_final, CoverSpec { l }, Strategy::Fifo, TiePolicy::default()).unwrap();
            assert_eq!(run.partition.num_blocks(), 1);
        }
        let run = korner_minimize(&example(), CoverSpec { l: 0 }, Strategy::Fifo, TiePolicy::default()).unwrap();
        assert_eq!(run.partition.blocks(), vec![vec![0, 1, 2, 4], vec![3, 5, 6, 7]]);
    }

    #[test]
    fn pipeline_on_example() {
        let out = merge_to_fixpoint(&example(), L8, Strategy::Fifo, TiePolicy::default()).unwrap();
        assert!(out.minimized.num_states < 8);
        assert!(is_cover_automaton(&out.minimized, &BTreeSet::from([0, 1, 2, 4, 8]), L8).unwrap());
        assert!(minimal_dfca_check(&out.minimized, L8).unwrap());
    }

    #[test]
    fn right_languages_agree_with_similarity() {
        let d = example();
        let levels = state_levels(&d).unwrap();
        for p in 0..8 {
            for q in 0..8 {
                let m = levels.level(p).max(levels.level(q));
                let limit = L8.l - m;
                let same = right_language_lengths(&d, &levels, L8, p, limit).unwrap()
                    == right_language_lengths(&d, &levels, L8, q, limit).unwrap();
                assert_eq!(same, similar_states(&d, L8, p, q).unwrap(), "{p} {q}");
            }
        }
    }
}
