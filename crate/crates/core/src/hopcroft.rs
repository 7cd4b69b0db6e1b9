//! Hopcroft's partition-refinement minimization with every source of
//! nondeterminism exposed.
//!
//! Three choices are left open by the classical algorithm:
//!
//! 1. the extraction order of the splitter list ([`Strategy`]);
//! 2. which fragment is enqueued when a block splits into two halves of equal
//!    size ([`EqualSizeChoice`]);
//! 3. when a block that is already queued splits, which fragment stays at the
//!    queued position and which one is appended as a fresh entry
//!    ([`Placement`]).
//!
//! Choices 2 and 3 are recorded in a [`ChoiceTrace`], and a trace can be
//! replayed to reproduce a run exactly. The run is instrumented with
//! [`RunStats`]; the headline counter is the splitter mass, the total number
//! of states in all sets extracted from the list.

use std::fmt;
use std::str::FromStr;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::partition::{BlockId, RefinablePartition};
use crate::worklist::{SplitterEntry, Strategy, Worklist};

/// Which half is enqueued when both halves of a split have the same size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EqualSizeChoice {
    /// The half containing the smallest state index.
    MinState,
    /// The other half, i.e. the one whose least state is larger.
    MaxState,
    /// Prefer a half whose presence in the list will not cause a queued set
    /// to be split; falls back to [`EqualSizeChoice::MinState`].
    LookaheadAvoidSplit,
    /// Read from a replayed trace.
    FromTrace,
}

/// Which fragment keeps the queued position of a split block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    SmallerStays,
    LargerStays,
    FromTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TiePolicy {
    pub equal_size_choice: EqualSizeChoice,
    pub replacement_placement: Placement,
}

impl TiePolicy {
    pub const fn new(equal_size_choice: EqualSizeChoice, replacement_placement: Placement) -> Self {
        TiePolicy { equal_size_choice, replacement_placement }
    }

    pub const fn min_state() -> Self {
        TiePolicy::new(EqualSizeChoice::MinState, Placement::LargerStays)
    }

    pub const fn max_state() -> Self {
        TiePolicy::new(EqualSizeChoice::MaxState, Placement::LargerStays)
    }

    pub const fn lookahead() -> Self {
        TiePolicy::new(EqualSizeChoice::LookaheadAvoidSplit, Placement::LargerStays)
    }

    pub const fn from_trace() -> Self {
        TiePolicy::new(EqualSizeChoice::FromTrace, Placement::FromTrace)
    }

    /// Every policy that does not need a trace.
    pub fn all_untraced() -> Vec<TiePolicy> {
        let mut out = Vec::new();
        for choice in [EqualSizeChoice::MinState, EqualSizeChoice::MaxState, EqualSizeChoice::LookaheadAvoidSplit] {
            for placement in [Placement::SmallerStays, Placement::LargerStays] {
                out.push(TiePolicy::new(choice, placement));
            }
        }
        out
    }

    fn uses_trace(&self) -> bool {
        self.equal_size_choice == EqualSizeChoice::FromTrace || self.replacement_placement == Placement::FromTrace
    }
}

impl Default for TiePolicy {
    fn default() -> Self {
        TiePolicy::min_state()
    }
}

impl fmt::Display for EqualSizeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EqualSizeChoice::MinState => "minstate",
            EqualSizeChoice::MaxState => "maxstate",
            EqualSizeChoice::LookaheadAvoidSplit => "lookahead",
            EqualSizeChoice::FromTrace => "trace",
        })
    }
}

impl FromStr for EqualSizeChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "minstate" => Ok(EqualSizeChoice::MinState),
            "maxstate" => Ok(EqualSizeChoice::MaxState),
            "lookahead" => Ok(EqualSizeChoice::LookaheadAvoidSplit),
            "trace" => Ok(EqualSizeChoice::FromTrace),
            other => Err(format!("unknown tie policy '{other}' (expected minstate, maxstate or lookahead)")),
        }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Placement::SmallerStays => "smaller-stays",
            Placement::LargerStays => "larger-stays",
            Placement::FromTrace => "trace",
        })
    }
}

impl FromStr for Placement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "smaller-stays" => Ok(Placement::SmallerStays),
            "larger-stays" => Ok(Placement::LargerStays),
            "trace" => Ok(Placement::FromTrace),
            other => Err(format!("unknown placement '{other}' (expected smaller-stays or larger-stays)")),
        }
    }
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.equal_size_choice, self.replacement_placement)
    }
}

/// One of the two fragments of a split block `B` by a splitter `(C, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `{ p ∈ B | δ(p, a) ∈ C }`
    Inside,
    /// The rest of `B` (excluding states ignored by the cover variant).
    Outside,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Inside => Side::Outside,
            Side::Outside => Side::Inside,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SiteKind {
    /// Equal-size halves; the decision names the enqueued half.
    Tie,
    /// A queued block split; the decision names the half that stays queued.
    Placement,
}

/// Where in a run a decision was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DecisionSite {
    pub kind: SiteKind,
    /// Number of splitters extracted so far (0 during initialization).
    pub step: usize,
    /// Block id of the splitter being processed; `None` during initialization.
    pub splitter: Option<BlockId>,
    /// Block being split (during initialization, the block holding state 0).
    pub block: BlockId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decision {
    pub site: DecisionSite,
    pub side: Side,
}

/// The ordered decisions of one run.
///
/// Text form, one decision per line (`-` for a missing splitter):
///
/// ```text
/// tie 0 - 0 inside
/// placement 4 2 1 outside
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ChoiceTrace {
    pub decisions: Vec<Decision>,
}

impl ChoiceTrace {
    pub fn len(&self) -> usize {
        self.decisions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decisions.is_empty()
    }
}

impl fmt::Display for ChoiceTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decisions {
            let kind = match d.site.kind {
                SiteKind::Tie => "tie",
                SiteKind::Placement => "placement",
            };
            let splitter = d.site.splitter.map_or_else(|| "-".to_string(), |s| s.to_string());
            let side = match d.side {
                Side::Inside => "inside",
                Side::Outside => "outside",
            };
            writeln!(f, "{kind} {} {splitter} {} {side}", d.site.step, d.site.block)?;
        }
        Ok(())
    }
}

impl FromStr for ChoiceTrace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut decisions = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let bad = |message: &str| Error::Parse { line, message: message.to_string() };
            let words: Vec<&str> = content.split_whitespace().collect();
            let [kind, step, splitter, block, side] = words[..] else {
                return Err(bad("expected 'KIND STEP SPLITTER BLOCK SIDE'"));
            };
            let kind = match kind {
                "tie" => SiteKind::Tie,
                "placement" => SiteKind::Placement,
                _ => return Err(bad("kind must be 'tie' or 'placement'")),
            };
            let step = step.parse().map_err(|_| bad("bad step"))?;
            let splitter = match splitter {
                "-" => None,
                s => Some(s.parse().map_err(|_| bad("bad splitter"))?),
            };
            let block = block.parse().map_err(|_| bad("bad block"))?;
            let side = match side {
                "inside" => Side::Inside,
                "outside" => Side::Outside,
                _ => return Err(bad("side must be 'inside' or 'outside'")),
            };
            decisions.push(Decision { site: DecisionSite { kind, step, splitter, block }, side });
        }
        Ok(ChoiceTrace { decisions })
    }
}

/// Mass and enqueued states attributed to one extracted splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitterRecord {
    /// `|C|` at extraction time.
    pub size: usize,
    /// States newly brought into the list while processing it: the sizes of
    /// the halves enqueued because their parent was not queued. Fragments
    /// re-appended after an in-list split were already in the list.
    pub added: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RunStats {
    /// Sum of `|C|` over all extracted splitters, measured at extraction.
    pub total_splitter_mass: usize,
    pub insertions: usize,
    pub extractions: usize,
    /// Splits of blocks that were queued at the time.
    pub in_list_replacements: usize,
    pub splits: usize,
    pub max_worklist_size: usize,
    pub per_splitter_added: Vec<SplitterRecord>,
}

/// One block split, recorded when event recording is enabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitEvent {
    pub step: usize,
    pub block_size: usize,
    pub inside: usize,
    pub outside: usize,
    /// Size of the half enqueued because the block was not queued.
    pub enqueued: Option<usize>,
    pub was_queued: bool,
}

#[derive(Debug, Clone)]
pub struct Minimization {
    pub partition: RefinablePartition,
    pub stats: RunStats,
    pub trace: ChoiceTrace,
    pub events: Vec<SplitEvent>,
}

/// Configures and runs one minimization.
#[derive(Debug, Clone)]
pub struct Hopcroft<'a> {
    dfa: &'a Dfa,
    strategy: Strategy,
    policy: TiePolicy,
    replay: Option<&'a ChoiceTrace>,
    record_events: bool,
}

impl<'a> Hopcroft<'a> {
    pub fn new(dfa: &'a Dfa) -> Self {
        Hopcroft { dfa, strategy: Strategy::Fifo, policy: TiePolicy::default(), replay: None, record_events: false }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn policy(mut self, policy: TiePolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Decisions are read from `trace` while it lasts and from the policy
    /// afterwards. Every site must match the recorded one.
    pub fn replay(mut self, trace: &'a ChoiceTrace) -> Self {
        self.replay = Some(trace);
        self
    }

    pub fn record_events(mut self, on: bool) -> Self {
        self.record_events = on;
        self
    }

    pub fn run(self) -> Result<Minimization> {
        self.run_inner(None)
    }

    pub(crate) fn run_inner(self, cover: Option<CoverContext<'_>>) -> Result<Minimization> {
        self.dfa.validate()?;
        if self.replay.is_none() && self.policy.uses_trace() {
            return Err(Error::TraceMismatch { index: 0, reason: "trace-driven policy without a trace".into() });
        }
        let mut engine = Engine::new(self.dfa, self.strategy, self.policy, self.replay, cover, self.record_events);
        engine.run()?;
        if let Some(trace) = self.replay {
            if engine.cursor < trace.len() {
                return Err(Error::TraceMismatch {
                    index: engine.cursor,
                    reason: format!("run ended with {} unused decisions", trace.len() - engine.cursor),
                });
            }
        }
        Ok(Minimization {
            partition: engine.partition,
            stats: engine.stats,
            trace: ChoiceTrace { decisions: engine.trace },
            events: engine.events,
        })
    }
}

/// Minimizes `d` and returns the coarsest stable partition refining
/// `{F, Q - F}` together with instrumentation and the decisions taken.
pub fn hopcroft_minimize(d: &Dfa, strategy: Strategy, policy: TiePolicy) -> Result<Minimization> {
    Hopcroft::new(d).strategy(strategy).policy(policy).run()
}

/// Replays `trace`; once it is exhausted the default policy decides.
pub fn run_with_trace(d: &Dfa, strategy: Strategy, trace: &ChoiceTrace) -> Result<Minimization> {
    Hopcroft::new(d).strategy(strategy).replay(trace).run()
}

/// Level map and bound for the cover-automata variant. A state `p` takes part
/// in a split by `(C, a, l1)` only when `level(p) + l1 < l`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CoverContext<'a> {
    pub levels: &'a [usize],
    pub l: usize,
}

struct Engine<'a> {
    dfa: &'a Dfa,
    preds: Vec<Vec<Vec<usize>>>,
    partition: RefinablePartition,
    worklist: Worklist,
    policy: TiePolicy,
    replay: &'a [Decision],
    cursor: usize,
    cover: Option<CoverContext<'a>>,
    stats: RunStats,
    trace: Vec<Decision>,
    events: Vec<SplitEvent>,
    record_events: bool,
    step: usize,
    splitter: Option<BlockId>,
    // per-block scratch counters for the lookahead policy
    counts: Vec<usize>,
}

impl<'a> Engine<'a> {
    fn new(
        dfa: &'a Dfa,
        strategy: Strategy,
        policy: TiePolicy,
        replay: Option<&'a ChoiceTrace>,
        cover: Option<CoverContext<'a>>,
        record_events: bool,
    ) -> Self {
        let finals = dfa.final_mask();
        let labels: Vec<usize> = finals.iter().map(|&f| f as usize).collect();
        Engine {
            dfa,
            preds: dfa.predecessors(),
            partition: RefinablePartition::from_labels(&labels),
            worklist: Worklist::new(strategy, dfa.alphabet_size),
            policy,
            replay: replay.map_or(&[][..], |t| &t.decisions[..]),
            cursor: 0,
            cover,
            stats: RunStats::default(),
            trace: Vec::new(),
            events: Vec::new(),
            record_events,
            step: 0,
            splitter: None,
            counts: vec![0; dfa.num_states],
        }
    }

    fn ignored(&self, p: usize, length: usize) -> bool {
        match self.cover {
            Some(ctx) => ctx.levels[p] + length >= ctx.l,
            None => false,
        }
    }

    fn push(&mut self, entry: SplitterEntry) {
        self.worklist.push(entry);
        self.stats.insertions += 1;
        self.stats.max_worklist_size = self.stats.max_worklist_size.max(self.worklist.len());
    }

    fn run(&mut self) -> Result<()> {
        self.initialize()?;
        while let Some(entry) = self.worklist.pop() {
            self.step += 1;
            self.stats.extractions += 1;
            let size = entry.set.map_or(0, |c| self.partition.block_len(c));
            self.stats.total_splitter_mass += size;
            let added = match entry.set {
                Some(c) => {
                    self.splitter = Some(c);
                    self.process(c, entry.letter, entry.length)?
                }
                None => 0,
            };
            self.stats.per_splitter_added.push(SplitterRecord { size, added });
        }
        Ok(())
    }

    fn initialize(&mut self) -> Result<()> {
        let k = self.dfa.alphabet_size;
        if self.partition.num_blocks() < 2 {
            for letter in 0..k {
                self.push(SplitterEntry { set: None, letter, length: 0 });
            }
            return Ok(());
        }
        // Block 0 holds state 0; block 1 is the other finality class.
        let (a, b) = (self.partition.block_len(0), self.partition.block_len(1));
        let chosen = if a < b {
            0
        } else if b < a {
            1
        } else {
            let site = DecisionSite { kind: SiteKind::Tie, step: 0, splitter: None, block: 0 };
            let inside: Vec<usize> = self.partition.members(0).to_vec();
            let outside: Vec<usize> = self.partition.members(1).to_vec();
            // Inside names the block holding state 0 here.
            match self.decide_tie(site, &inside, &outside, &vec![true; k])? {
                Side::Inside => 0,
                Side::Outside => 1,
            }
        };
        for letter in 0..k {
            self.push(SplitterEntry { set: Some(chosen), letter, length: 0 });
        }
        Ok(())
    }

    /// Processes splitter `(C, letter, length)`; returns the number of states
    /// newly enqueued.
    fn process(&mut self, c: BlockId, letter: usize, length: usize) -> Result<usize> {
        let splitter_states = self.partition.members(c).to_vec();
        let mut touched = Vec::new();
        for &s in &splitter_states {
            for i in 0..self.preds[letter][s].len() {
                let p = self.preds[letter][s][i];
                if self.ignored(p, length) {
                    continue;
                }
                let b = self.partition.block_of(p);
                if self.partition.marked_count(b) == 0 {
                    touched.push(b);
                }
                self.partition.mark(p);
            }
        }
        let mut added = 0;
        for b in touched {
            added += self.split_block(b, length)?;
        }
        Ok(added)
    }

    fn outside_states(&self, b: BlockId, length: usize) -> Vec<usize> {
        self.partition.unmarked(b).iter().copied().filter(|&p| !self.ignored(p, length)).collect()
    }

    fn split_block(&mut self, b: BlockId, length: usize) -> Result<usize> {
        let k = self.dfa.alphabet_size;
        let block_size = self.partition.block_len(b);
        let inside_len = self.partition.marked_count(b);
        let (outside_len, has_ignored) = if self.cover.is_some() {
            let n = self.partition.unmarked(b).iter().filter(|&&p| !self.ignored(p, length)).count();
            (n, n + inside_len < block_size)
        } else {
            (block_size - inside_len, false)
        };
        if inside_len == 0 || outside_len == 0 {
            self.partition.clear_marks(b);
            return Ok(0);
        }

        let queued: Vec<Option<usize>> = (0..k).map(|c| self.worklist.contains(b, c)).collect();
        let any_queued = queued.iter().any(Option::is_some);
        let needs_insert: Vec<bool> = queued.iter().map(Option::is_none).collect();
        let smaller = match inside_len.cmp(&outside_len) {
            std::cmp::Ordering::Less => Some(Side::Inside),
            std::cmp::Ordering::Greater => Some(Side::Outside),
            std::cmp::Ordering::Equal => None,
        };

        let enqueued_side = if needs_insert.iter().any(|&x| x) {
            Some(match smaller {
                Some(side) => side,
                None => {
                    let site = DecisionSite { kind: SiteKind::Tie, step: self.step, splitter: self.splitter, block: b };
                    let inside = self.partition.marked(b).to_vec();
                    let outside = self.outside_states(b, length);
                    self.decide_tie(site, &inside, &outside, &needs_insert)?
                }
            })
        } else {
            None
        };
        let stay_side = if any_queued {
            let site = DecisionSite { kind: SiteKind::Placement, step: self.step, splitter: self.splitter, block: b };
            self.decide_placement(site, b, smaller, length)?
        } else {
            enqueued_side.expect("unqueued block enqueues a half").other()
        };

        let new_id = match (stay_side, has_ignored) {
            // inside moves out
            (Side::Outside, _) => self.partition.split(b, true),
            (Side::Inside, false) => self.partition.split(b, false),
            (Side::Inside, true) => {
                let outside = self.outside_states(b, length);
                self.partition.clear_marks(b);
                for p in outside {
                    self.partition.mark(p);
                }
                self.partition.split(b, true)
            }
        }
        .expect("both halves are nonempty");
        let id_of = |side: Side| if side == stay_side { b } else { new_id };

        let mut added = 0;
        let mut enqueued = None;
        for (letter, q) in queued.iter().enumerate() {
            match q {
                Some(queued_length) => {
                    self.push(SplitterEntry { set: Some(new_id), letter, length: *queued_length });
                    self.stats.in_list_replacements += 1;
                }
                None => {
                    let side = enqueued_side.expect("decided above");
                    let id = id_of(side);
                    let size = match side {
                        Side::Inside => inside_len,
                        Side::Outside => outside_len,
                    };
                    self.push(SplitterEntry { set: Some(id), letter, length: length + 1 });
                    added += size;
                    enqueued = Some(size);
                }
            }
        }
        self.stats.splits += 1;
        if self.record_events {
            self.events.push(SplitEvent {
                step: self.step,
                block_size,
                inside: inside_len,
                outside: outside_len,
                enqueued,
                was_queued: any_queued,
            });
        }
        Ok(added)
    }

    /// Takes the next replayed decision if one is left, checking its site.
    fn replayed(&mut self, site: DecisionSite) -> Result<Option<Side>> {
        let Some(recorded) = self.replay.get(self.cursor) else {
            return Ok(None);
        };
        if recorded.site != site {
            return Err(Error::TraceMismatch {
                index: self.cursor,
                reason: format!("trace expects {:?}, run reached {:?}", recorded.site, site),
            });
        }
        self.cursor += 1;
        Ok(Some(recorded.side))
    }

    fn record(&mut self, site: DecisionSite, side: Side) -> Side {
        self.trace.push(Decision { site, side });
        side
    }

    fn decide_tie(
        &mut self,
        site: DecisionSite,
        inside: &[usize],
        outside: &[usize],
        letters: &[bool],
    ) -> Result<Side> {
        if let Some(side) = self.replayed(site)? {
            return Ok(self.record(site, side));
        }
        let min_side = min_state_side(inside, outside);
        let side = match self.policy.equal_size_choice {
            EqualSizeChoice::MinState | EqualSizeChoice::FromTrace => min_side,
            EqualSizeChoice::MaxState => min_side.other(),
            EqualSizeChoice::LookaheadAvoidSplit => {
                let inside_ok = self.avoids_split(inside, letters);
                let outside_ok = self.avoids_split(outside, letters);
                match (inside_ok, outside_ok) {
                    (true, false) => Side::Inside,
                    (false, true) => Side::Outside,
                    _ => min_side,
                }
            }
        };
        Ok(self.record(site, side))
    }

    fn decide_placement(
        &mut self,
        site: DecisionSite,
        b: BlockId,
        smaller: Option<Side>,
        length: usize,
    ) -> Result<Side> {
        if let Some(side) = self.replayed(site)? {
            return Ok(self.record(site, side));
        }
        let smaller = match smaller {
            Some(side) => side,
            None => {
                let inside = self.partition.marked(b).to_vec();
                let outside = self.outside_states(b, length);
                min_state_side(&inside, &outside)
            }
        };
        let side = match self.policy.replacement_placement {
            Placement::SmallerStays => smaller,
            Placement::LargerStays | Placement::FromTrace => smaller.other(),
        };
        Ok(self.record(site, side))
    }

    /// Whether enqueueing `candidate` (for the letters flagged in `letters`)
    /// is expected to leave every currently queued set intact.
    ///
    /// With a queue, everything already queued is extracted before the
    /// candidate, so the risk is that a queued `(D, c)` splits the candidate:
    /// `δ(candidate, c)` meets both `D` and its complement. With a stack the
    /// candidate comes out first, so the risk is that it splits a queued
    /// block `D`: the `c`-predecessors of the candidate cover part, but not
    /// all, of `D`.
    fn avoids_split(&mut self, candidate: &[usize], letters: &[bool]) -> bool {
        let mut touched: Vec<BlockId> = Vec::new();
        let mut ok = true;
        for (c, &wanted) in letters.iter().enumerate() {
            match self.worklist.strategy() {
                Strategy::Fifo => {
                    for &p in candidate {
                        let d = self.partition.block_of(self.dfa.next(p, c));
                        if self.counts[d] == 0 {
                            touched.push(d);
                        }
                        self.counts[d] += 1;
                    }
                    for &d in &touched {
                        if self.counts[d] < candidate.len() && self.worklist.contains(d, c).is_some() {
                            ok = false;
                        }
                    }
                }
                Strategy::Lifo => {
                    if !wanted {
                        continue;
                    }
                    for &s in candidate {
                        for &p in &self.preds[c][s] {
                            let d = self.partition.block_of(p);
                            if self.counts[d] == 0 {
                                touched.push(d);
                            }
                            self.counts[d] += 1;
                        }
                    }
                    for &d in &touched {
                        if self.counts[d] < self.partition.block_len(d) && self.worklist.contains_block(d) {
                            ok = false;
                        }
                    }
                }
            }
            for d in touched.drain(..) {
                self.counts[d] = 0;
            }
            if !ok {
                break;
            }
        }
        ok
    }
}

fn min_state_side(inside: &[usize], outside: &[usize]) -> Side {
    let min_in = inside.iter().min().copied().unwrap_or(usize::MAX);
    let min_out = outside.iter().min().copied().unwrap_or(usize::MAX);
    if min_in <= min_out {
        Side::Inside
    } else {
        Side::Outside
    }
}

/// Merges every block of a stable partition into one state. Blocks are
/// numbered by their least state, so the identity partition reproduces `d`.
pub fn quotient(d: &Dfa, p: &RefinablePartition) -> Result<Dfa> {
    d.validate()?;
    if p.num_states() != d.num_states {
        return Err(Error::UnstablePartition(format!(
            "partition covers {} states, automaton has {}",
            p.num_states(),
            d.num_states
        )));
    }
    let labels = p.canonical_labels();
    let num_blocks = labels.iter().max().map_or(0, |&m| m + 1);
    let mut representative = vec![usize::MAX; num_blocks];
    for (s, &l) in labels.iter().enumerate() {
        if representative[l] == usize::MAX {
            representative[l] = s;
        }
    }
    for (s, &l) in labels.iter().enumerate() {
        let r = representative[l];
        if d.is_final(s) != d.is_final(r) {
            return Err(Error::UnstablePartition(format!("states {r} and {s} differ in finality")));
        }
        for letter in 0..d.alphabet_size {
            if labels[d.next(s, letter)] != labels[d.next(r, letter)] {
                return Err(Error::UnstablePartition(format!("states {r} and {s} disagree on letter {letter}")));
            }
        }
    }
    let transitions =
        representative.iter().map(|&r| (0..d.alphabet_size).map(|c| labels[d.next(r, c)]).collect()).collect();
    let finals = representative.iter().enumerate().filter(|(_, &r)| d.is_final(r)).map(|(l, _)| l);
    Dfa::new(d.alphabet_size, transitions, labels[d.start], finals)
}
