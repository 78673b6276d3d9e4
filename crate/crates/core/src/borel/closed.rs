//! Closed subsets of Cantor space by negative information, and emptiness.

use std::collections::HashSet;

use crate::jumps::{not_into_jump, JumpName};
use crate::kernel::{Descriptor, EventuallyPeriodic, Machine, Nat, Oracle, PrefixMachine};

use super::words::{decode_code, word_code, Word};

/// Cantor space minus the cylinders of the enumerated words.
#[derive(Clone, Debug)]
pub struct ClosedCantorSet {
    pub removed: Oracle,
}

impl ClosedCantorSet {
    pub fn new(removed: Oracle) -> Self {
        ClosedCantorSet { removed }
    }

    /// Finitely many removed words, then stutters.
    pub fn from_removed(words: &[Word]) -> Self {
        let codes = words.iter().map(|w| word_code(w)).collect();
        ClosedCantorSet {
            removed: Oracle::fixture(codes, vec![0]),
        }
    }

    /// Removed words among the first `len` stream entries.
    pub fn removed_words(&self, len: usize) -> Vec<Word> {
        self.removed
            .prefix(len)
            .into_iter()
            .filter_map(decode_code)
            .collect()
    }

    /// Every removed word when the stream is a fixture ending in stutters.
    pub fn finite_removed(&self) -> Option<Vec<Word>> {
        let ep = self.removed.as_fixture()?.normalized();
        (ep.period() == [0]).then(|| ep.pre().iter().copied().filter_map(decode_code).collect())
    }

    /// `x` avoids every word among the first `len` stream entries.
    pub fn avoids(&self, x: &EventuallyPeriodic, len: usize) -> bool {
        self.removed_words(len)
            .iter()
            .all(|w| x.prefix(w.len()) != w.iter().map(|&b| b as Nat).collect::<Vec<_>>())
    }

    /// Emptiness as a Sierpinski name.
    pub fn is_empty_name(&self) -> Oracle {
        is_empty_machine().apply(&self.removed)
    }

    /// Nonemptiness as a jump name of Sierpinski space. Exact (with the row
    /// bound known) when the removed stream is a finite fixture.
    pub fn is_non_empty_jump(&self) -> JumpName {
        match self.finite_removed() {
            Some(words) => {
                let t = cover_position(&words);
                // column i of row 0 is 1 iff no cover is visible among the first i outputs
                let ones = t.map_or(0, |t| self.stutter_offset(t) + 1);
                let limit = EventuallyPeriodic::new(vec![t.is_none() as Nat], vec![0]);
                JumpName::fixture(
                    limit,
                    if t.is_some() {
                        vec![vec![1; ones]]
                    } else {
                        Vec::new()
                    },
                )
            }
            None => JumpName::new(not_into_jump().apply(&self.is_empty_name())),
        }
    }

    /// Stream position of the `k`-th nonzero token.
    fn stutter_offset(&self, k: usize) -> usize {
        let ep = self.removed.as_fixture().expect("fixture stream");
        let mut seen = 0;
        for (pos, &c) in ep.pre().iter().enumerate() {
            if c != 0 {
                if seen == k {
                    return pos;
                }
                seen += 1;
            }
        }
        unreachable!("token {k} is past the end of the removed list")
    }
}

/// Does a finite set of removed cylinders cover Cantor space?
#[derive(Default)]
pub struct Cover {
    removed: HashSet<Word>,
    proper_prefixes: HashSet<Word>,
    covered: bool,
}

impl Cover {
    pub fn add(&mut self, w: Word) -> bool {
        if !self.covered {
            for k in 0..w.len() {
                self.proper_prefixes.insert(w[..k].to_vec());
            }
            self.removed.insert(w);
            self.covered = self.covers(&mut Vec::new());
        }
        self.covered
    }

    pub fn is_covered(&self) -> bool {
        self.covered
    }

    fn covers(&self, w: &mut Word) -> bool {
        if self.removed.contains(w) {
            return true;
        }
        if !self.proper_prefixes.contains(w) {
            return false;
        }
        [0, 1].iter().all(|&b| {
            w.push(b);
            let c = self.covers(w);
            w.pop();
            c
        })
    }
}

/// Index (among the words) of the word whose arrival completes a cover.
pub fn cover_position(words: &[Word]) -> Option<usize> {
    let mut cover = Cover::default();
    words.iter().position(|w| cover.add(w.clone()))
}

/// Exact emptiness of Cantor space minus finitely many cylinders, by brute
/// force over the longest removed length.
pub fn brute_force_empty(words: &[Word]) -> bool {
    let len = words.iter().map(Vec::len).max().unwrap_or(0);
    super::words::words_of_length(len).all(|x| words.iter().any(|w| x.starts_with(w)))
}

struct IsEmpty;

impl PrefixMachine for IsEmpty {
    fn run(&self, input: &[Nat], _fuel: usize) -> Vec<Nat> {
        let mut cover = Cover::default();
        input
            .iter()
            .map(|&c| {
                if let Some(w) = decode_code(c) {
                    cover.add(w);
                }
                cover.is_covered() as Nat
            })
            .collect()
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table("isempty".into())
    }
}

/// Removed-word stream to a Sierpinski name: entry `k` is 1 iff the words
/// among the first `k + 1` tokens cover a full level of the binary tree.
pub fn is_empty_machine() -> Machine {
    Machine::new(IsEmpty)
}
