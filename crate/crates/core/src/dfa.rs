//! Complete deterministic automata over integer alphabets.
//!
//! States are `0..num_states` and letters are `0..alphabet_size`. A unary
//! automaton uses letter `0`, printed as `a`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A deterministic finite automaton with a full transition table.
///
/// The fields are public so that malformed automata can be described (for
/// example when parsing); every algorithm that needs the invariants calls
/// [`Dfa::validate`] first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    pub num_states: usize,
    pub alphabet_size: usize,
    /// `transitions[state][letter]` is the target state.
    pub transitions: Vec<Vec<usize>>,
    pub start: usize,
    pub finals: BTreeSet<usize>,
}

impl Dfa {
    /// Builds and validates an automaton.
    pub fn new(
        alphabet_size: usize,
        transitions: Vec<Vec<usize>>,
        start: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let dfa = Dfa {
            num_states: transitions.len(),
            alphabet_size,
            transitions,
            start,
            finals: finals.into_iter().collect(),
        };
        dfa.validate()?;
        Ok(dfa)
    }

    /// A unary automaton from its successor function.
    pub fn unary(successors: Vec<usize>, start: usize, finals: impl IntoIterator<Item = usize>) -> Result<Self> {
        Dfa::new(1, successors.into_iter().map(|t| vec![t]).collect(), start, finals)
    }

    /// Checks completeness and index ranges.
    pub fn validate(&self) -> Result<()> {
        if self.num_states == 0 {
            return Err(Error::IndexOutOfRange("num_states"));
        }
        if self.alphabet_size == 0 {
            return Err(Error::IndexOutOfRange("alphabet_size"));
        }
        if self.transitions.len() != self.num_states {
            return Err(Error::IndexOutOfRange("transitions"));
        }
        if self.start >= self.num_states {
            return Err(Error::IndexOutOfRange("start"));
        }
        if self.finals.iter().any(|&f| f >= self.num_states) {
            return Err(Error::IndexOutOfRange("finals"));
        }
        for (state, row) in self.transitions.iter().enumerate() {
            if row.len() > self.alphabet_size {
                return Err(Error::IndexOutOfRange("transitions"));
            }
            for letter in 0..self.alphabet_size {
                match row.get(letter) {
                    None => return Err(Error::IncompleteTransition { state, letter }),
                    Some(&t) if t >= self.num_states => return Err(Error::IndexOutOfRange("transitions")),
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn next(&self, state: usize, letter: usize) -> usize {
        self.transitions[state][letter]
    }

    #[inline]
    pub fn is_final(&self, state: usize) -> bool {
        self.finals.contains(&state)
    }

    /// Finality as a dense vector, indexed by state.
    pub fn final_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.num_states];
        for &f in &self.finals {
            mask[f] = true;
        }
        mask
    }

    pub fn is_unary(&self) -> bool {
        self.alphabet_size == 1
    }

    pub(crate) fn require_unary(&self) -> Result<()> {
        if self.is_unary() {
            Ok(())
        } else {
            Err(Error::NotUnary(self.alphabet_size))
        }
    }

    /// State reached from `from` after reading `word`.
    pub fn run_from(&self, from: usize, word: &[usize]) -> Result<usize> {
        word.iter().try_fold(from, |state, &letter| {
            if letter >= self.alphabet_size {
                Err(Error::BadLetter { letter, alphabet_size: self.alphabet_size })
            } else {
                Ok(self.next(state, letter))
            }
        })
    }

    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        Ok(self.is_final(self.run_from(self.start, word)?))
    }

    /// `{ m <= max_len : a^m is accepted }` for a unary automaton.
    pub fn accepted_lengths(&self, max_len: usize) -> Result<BTreeSet<usize>> {
        self.require_unary()?;
        let mut out = BTreeSet::new();
        let mut state = self.start;
        for m in 0..=max_len {
            if self.is_final(state) {
                out.insert(m);
            }
            state = self.next(state, 0);
        }
        Ok(out)
    }

    /// Inverse transition lists: `preds[letter][state]` holds every `p` with
    /// `next(p, letter) == state`, in increasing order of `p`.
    pub fn predecessors(&self) -> Vec<Vec<Vec<usize>>> {
        let mut preds = vec![vec![Vec::new(); self.num_states]; self.alphabet_size];
        for (p, row) in self.transitions.iter().enumerate() {
            for (letter, &t) in row.iter().enumerate() {
                preds[letter][t].push(p);
            }
        }
        preds
    }

    /// Serializes to the line-oriented text format read by [`Dfa::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "states {}", self.num_states);
        let _ = writeln!(out, "alphabet {}", self.alphabet_size);
        let _ = writeln!(out, "start {}", self.start);
        out.push_str("finals");
        for f in &self.finals {
            let _ = write!(out, " {f}");
        }
        out.push('\n');
        for (s, row) in self.transitions.iter().enumerate() {
            for (letter, t) in row.iter().enumerate() {
                let _ = writeln!(out, "trans {s} {letter} {t}");
            }
        }
        out
    }

    /// Parses the text format:
    ///
    /// ```text
    /// states N
    /// alphabet K
    /// start I
    /// finals i1 i2 ...
    /// trans S L T      (N*K lines, each (S, L) exactly once)
    /// ```
    ///
    /// Blank lines and `#` comments are skipped. Errors carry the 1-based line
    /// number of the offending line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let last_line = text.lines().count().max(1);

        let mut header = |key: &str| -> Result<(usize, Vec<usize>)> {
            let (line, content) = lines.next().ok_or_else(|| Error::Parse {
                line: last_line,
                message: format!("unexpected end of input, expected '{key}'"),
            })?;
            let mut words = content.split_whitespace();
            if words.next() != Some(key) {
                return Err(Error::Parse { line, message: format!("expected '{key}'") });
            }
            let values = words.map(|w| parse_index(w, line)).collect::<Result<Vec<_>>>()?;
            Ok((line, values))
        };

        let single = |(line, values): (usize, Vec<usize>), key: &str| -> Result<usize> {
            match values.as_slice() {
                [v] => Ok(*v),
                _ => Err(Error::Parse { line, message: format!("'{key}' takes exactly one number") }),
            }
        };

        let (states_line, states) = header("states").map(|h| (h.0, single(h, "states")))?;
        let states = states?;
        if states == 0 {
            return Err(Error::Parse { line: states_line, message: "at least one state is required".into() });
        }
        let (alphabet_line, alphabet) = header("alphabet").map(|h| (h.0, single(h, "alphabet")))?;
        let alphabet = alphabet?;
        if alphabet == 0 {
            return Err(Error::Parse { line: alphabet_line, message: "alphabet must be nonempty".into() });
        }
        let (start_line, start) = header("start").map(|h| (h.0, single(h, "start")))?;
        let start = start?;
        if start >= states {
            return Err(Error::Parse { line: start_line, message: format!("start state {start} out of range") });
        }
        let (finals_line, finals) = header("finals")?;
        if let Some(f) = finals.iter().find(|&&f| f >= states) {
            return Err(Error::Parse { line: finals_line, message: format!("final state {f} out of range") });
        }

        let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet]; states];
        let mut last = finals_line;
        for (line, content) in lines {
            last = line;
            let mut words = content.split_whitespace();
            if words.next() != Some("trans") {
                return Err(Error::Parse { line, message: "expected 'trans S L T'".into() });
            }
            let nums = words.map(|w| parse_index(w, line)).collect::<Result<Vec<_>>>()?;
            let [s, l, t] = nums[..] else {
                return Err(Error::Parse { line, message: "'trans' takes exactly three numbers".into() });
            };
            if s >= states || t >= states {
                return Err(Error::Parse { line, message: "state index out of range".into() });
            }
            if l >= alphabet {
                return Err(Error::Parse { line, message: format!("letter {l} out of range") });
            }
            if table[s][l].replace(t).is_some() {
                return Err(Error::Parse { line, message: format!("duplicate transition for ({s}, {l})") });
            }
        }
        let mut transitions = Vec::with_capacity(states);
        for (s, row) in table.into_iter().enumerate() {
            let mut out = Vec::with_capacity(alphabet);
            for (l, t) in row.into_iter().enumerate() {
                out.push(t.ok_or_else(|| Error::Parse {
                    line: last,
                    message: format!("missing transition for ({s}, {l})"),
                })?);
            }
            transitions.push(out);
        }
        Dfa::new(alphabet, transitions, start, finals)
    }
}

fn parse_index(word: &str, line: usize) -> Result<usize> {
    word.parse().map_err(|_| Error::Parse { line, message: format!("'{word}' is not a non-negative integer") })
}

/// Free-function form of [`Dfa::validate`].
pub fn validate_dfa(d: &Dfa) -> Result<()> {
    d.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop1(final_: bool) -> Dfa {
        Dfa::unary(vec![0], 0, if final_ { vec![0] } else { vec![] }).unwrap()
    }

    #[test]
    fn smallest_complete_dfa_is_valid() {
        assert!(validate_dfa(&loop1(true)).is_ok());
    }

    #[test]
    fn missing_entry_is_incomplete() {
        let d = Dfa {
            num_states: 2,
            alphabet_size: 1,
            transitions: vec![vec![], vec![0]],
            start: 0,
            finals: BTreeSet::new(),
        };
        assert!(matches!(d.validate(), Err(Error::IncompleteTransition { state: 0, letter: 0 })));
    }

    #[test]
    fn final_out_of_range() {
        let d = Dfa {
            num_states: 4,
            alphabet_size: 1,
            transitions: vec![vec![1], vec![2], vec![3], vec![0]],
            start: 0,
            finals: [5].into(),
        };
        assert!(matches!(d.validate(), Err(Error::IndexOutOfRange("finals"))));
    }

    #[test]
    fn acceptance() {
        assert!(loop1(true).accepts(&[]).unwrap());
        let dead = loop1(false);
        for len in 0..5 {
            assert!(!dead.accepts(&vec![0; len]).unwrap());
        }
        assert!(matches!(dead.accepts(&[1]), Err(Error::BadLetter { letter: 1, .. })));
    }

    #[test]
    fn accepted_lengths_needs_unary() {
        let d = Dfa::new(2, vec![vec![0, 0]], 0, [0]).unwrap();
        assert!(matches!(d.accepted_lengths(3), Err(Error::NotUnary(2))));
    }

    #[test]
    fn text_round_trip() {
        let d = Dfa::new(2, vec![vec![1, 0], vec![1, 1]], 0, [1]).unwrap();
        let text = d.to_text();
        assert_eq!(Dfa::parse(&text).unwrap(), d);
    }

    #[test]
    fn parse_allows_comments_and_empty_finals() {
        let text = "# header\nstates 1\nalphabet 1 # unary\nstart 0\nfinals\n\ntrans 0 0 0\n";
        let d = Dfa::parse(text).unwrap();
        assert!(d.finals.is_empty());
    }

    #[test]
    fn parse_errors_name_lines() {
        let cases = [
            ("states x\n", 1),
            ("states 2\nalphabet 1\nstart 0\nfinals 7\n", 4),
            ("states 1\nalphabet 1\nstart 0\nfinals\ntrans 0 0 0\ntrans 0 0 0\n", 6),
            ("states 1\nalphabet 1\nstart 0\nfinals\ntrans 0 1 0\n", 5),
            ("states 2\nalphabet 1\nstart 0\nfinals\ntrans 0 0 1\n", 5),
            ("states 2\nbogus 1\n", 2),
        ];
        for (text, want) in cases {
            match Dfa::parse(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
