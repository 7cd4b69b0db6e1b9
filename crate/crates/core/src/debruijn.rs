//! Binary words, de Bruijn sequences and the cyclic unary automata built
//! from them.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::dfa::Dfa;
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 24;

/// A word over `{0, 1}`. Used both as a finality pattern for cyclic
/// automata and as a state signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BinaryWord(pub Vec<bool>);

impl BinaryWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// The `len`-bit big-endian rendering of `value`.
    pub fn from_value(value: u64, len: usize) -> Self {
        BinaryWord((0..len).map(|i| (value >> (len - 1 - i)) & 1 == 1).collect())
    }

    pub fn rotate_left(&self, k: usize) -> Self {
        let mut bits = self.0.clone();
        if !bits.is_empty() {
            let k = k % bits.len();
            bits.rotate_left(k);
        }
        BinaryWord(bits)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("'{other}' is not a binary digit")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BinaryWord)
    }
}

/// Cyclic binary de Bruijn sequence of the given order.
///
/// Built with the prefer-one greedy rule starting from `0^order` and then
/// rotated to begin with `order` ones, so order 3 yields `11101000`.
pub fn de_bruijn_sequence(order: usize) -> Result<BinaryWord> {
    if order == 0 {
        return Err(Error::IndexOutOfRange("order"));
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    let len = 1usize << order;
    let mask = len - 1;
    let mut seen = vec![false; len];
    // The window 0^order is the seed.
    seen[0] = true;
    let mut bits = vec![false; order];
    let mut window = 0usize;
    while bits.len() < len + order - 1 {
        let one = ((window << 1) | 1) & mask;
        let zero = (window << 1) & mask;
        window = if !seen[one] {
            bits.push(true);
            one
        } else if !seen[zero] {
            bits.push(false);
            zero
        } else {
            break;
        };
        seen[window] = true;
    }
    // The linear sequence has length 2^order + order - 1; its last order-1
    // bits wrap around onto the seed.
    bits.truncate(len);
    let word = BinaryWord(bits);
    let ones_at = (0..len)
        .find(|&i| (0..order).all(|j| word.0[(i + j) % len]))
        .expect("a de Bruijn sequence contains the all-ones window");
    Ok(word.rotate_left(ones_at))
}

/// True iff `w` has length `2^k` (`k >= 1`) and its `2^k` cyclic windows of
/// length `k` are pairwise distinct.
pub fn is_de_bruijn(w: &BinaryWord) -> bool {
    let len = w.len();
    if len < 2 || !len.is_power_of_two() {
        return false;
    }
    let order = len.trailing_zeros() as usize;
    let mut seen = HashSet::with_capacity(len);
    (0..len).all(|i| {
        let window = (0..order).fold(0usize, |acc, j| (acc << 1) | w.0[(i + j) % len] as usize);
        seen.insert(window)
    })
}

/// The unary cycle `i -> i + 1 (mod |w|)` whose state `i` is final iff
/// `w[i] = 1`.
pub fn cyclic_automaton(w: &BinaryWord, start_offset: usize) -> Result<Dfa> {
    let len = w.len();
    if len == 0 {
        return Err(Error::IndexOutOfRange("word"));
    }
    if start_offset >= len {
        return Err(Error::OffsetOutOfRange { offset: start_offset, len });
    }
    let successors = (0..len).map(|i| (i + 1) % len).collect();
    let finals = w.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i);
    Dfa::unary(successors, start_offset, finals)
}

/// Finality of `p, δ(p), δ²(p), …` for `k` steps.
pub fn state_signature(d: &Dfa, p: usize, k: usize) -> Result<BinaryWord> {
    d.require_unary()?;
    if p >= d.num_states {
        return Err(Error::IndexOutOfRange("state"));
    }
    let mut state = p;
    let mut bits = Vec::with_capacity(k);
    for _ in 0..k {
        bits.push(d.is_final(state));
        state = d.next(state, 0);
    }
    Ok(BinaryWord(bits))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(de_bruijn_sequence(1).unwrap().to_string(), "10");
        assert_eq!(de_bruijn_sequence(2).unwrap().to_string(), "1100");
        assert_eq!(de_bruijn_sequence(3).unwrap().to_string(), "11101000");
    }

    #[test]
    fn order_guards() {
        assert!(matches!(de_bruijn_sequence(25), Err(Error::OrderTooLarge(25))));
        assert!(de_bruijn_sequence(0).is_err());
    }

    #[test]
    fn de_bruijn_predicate() {
        assert!(is_de_bruijn(&w("11101000")));
        assert!(!is_de_bruijn(&w("11111111")));
        assert!(is_de_bruijn(&w("1100")));
        assert!(!is_de_bruijn(&w("110")));
        assert!(!is_de_bruijn(&w("1")));
    }

    #[test]
    fn every_order_up_to_twelve_is_de_bruijn() {
        for k in 1..=12 {
            let s = de_bruijn_sequence(k).unwrap();
            assert_eq!(s.len(), 1 << k);
            assert!(is_de_bruijn(&s), "order {k}");
            assert!(s.0[..k].iter().all(|&b| b));
        }
    }

    #[test]
    fn order_three_automaton() {
        let d = cyclic_automaton(&w("11101000"), 0).unwrap();
        assert_eq!(d.num_states, 8);
        assert_eq!(d.finals, BTreeSet::from([0, 1, 2, 4]));
        assert_eq!(d.accepted_lengths(8).unwrap(), BTreeSet::from([0, 1, 2, 4, 8]));
        assert_eq!(state_signature(&d, 0, 3).unwrap().to_string(), "111");
        assert_eq!(state_signature(&d, 3, 3).unwrap().to_string(), "010");
        for &f in &d.finals {
            assert_eq!(state_signature(&d, f, 1).unwrap().to_string(), "1");
        }
    }

    #[test]
    fn single_state_cycle() {
        let d = cyclic_automaton(&w("1"), 0).unwrap();
        assert_eq!(d.transitions, vec![vec![0]]);
        assert!(d.is_final(0));
    }

    #[test]
    fn offset_out_of_range() {
        assert!(matches!(cyclic_automaton(&w("10"), 2), Err(Error::OffsetOutOfRange { .. })));
    }

    #[test]
    fn signatures_enumerate_all_windows() {
        for k in 1..=8 {
            let d = cyclic_automaton(&de_bruijn_sequence(k).unwrap(), 0).unwrap();
            let sigs: BTreeSet<_> = (0..d.num_states).map(|p| state_signature(&d, p, k).unwrap()).collect();
            assert_eq!(sigs.len(), 1 << k);
        }
    }

    #[test]
    fn signature_needs_unary() {
        let d = Dfa::new(2, vec![vec![0, 0]], 0, [0]).unwrap();
        assert!(matches!(state_signature(&d, 0, 2), Err(Error::NotUnary(2))));
    }
}
