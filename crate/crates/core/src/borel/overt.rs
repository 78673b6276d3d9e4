//! Overt subsets of Cantor space by hit enumerations, the image of a Baire
//! map, and a Baire parametrization of a nonempty overt set.

use std::collections::{BTreeSet, HashSet};
use std::sync::{Arc, Mutex};

use crate::exec::Exec;
use crate::kernel::{unpair, Descriptor, Machine, Nat, Oracle, PrefixMachine, Sequence};

use super::words::{decode_code, word_code, word_index, word_of_index, Word, MAX_WORD_LEN};

/// Enumeration of the words whose cylinders meet a closed set.
#[derive(Clone, Debug)]
pub struct OvertCantorSet {
    pub hits: Oracle,
}

impl OvertCantorSet {
    pub fn new(hits: Oracle) -> Self {
        OvertCantorSet { hits }
    }

    /// Entry `i` lists word number `i` when it satisfies `hit`, else stutters.
    pub fn from_predicate(hit: impl Fn(&[u8]) -> bool + Send + Sync + 'static) -> Self {
        OvertCantorSet {
            hits: Oracle::from_fn(move |i| if hit(&word_of_index(i)) { i + 1 } else { 0 }),
        }
    }

    /// Words of length `<= max_len` among the first `scan` entries.
    pub fn hit_words(&self, max_len: usize, scan: usize) -> BTreeSet<Word> {
        self.hits
            .prefix(scan)
            .into_iter()
            .filter_map(decode_code)
            .filter(|w| w.len() <= max_len)
            .collect()
    }
}

/// Words of length `<= max_len` satisfying `hit`, by brute force.
pub fn brute_force_hits(hit: &dyn Fn(&[u8]) -> bool, max_len: usize) -> BTreeSet<Word> {
    (0..=max_len)
        .flat_map(super::words::words_of_length)
        .filter(|w| hit(w))
        .collect()
}

// ---------------------------------------------------------------------------
// Image of a Baire map

/// Inputs `{0..=base}^len` with the fuel for a stage.
fn stage_plan(stage: Nat) -> (usize, Nat, usize) {
    let (block, round) = unpair(stage);
    let (len, base) = unpair(block);
    (len as usize, base, 32 * (round as usize + 1))
}

/// Cap on words read off one run; keeps codes in range.
const IMAGE_WORD_CAP: usize = 32;

struct ImageState {
    tokens: Vec<Nat>,
    seen: HashSet<Word>,
    next_stage: Nat,
}

struct ImageStream {
    f: Machine,
    exec: Exec,
    state: Mutex<ImageState>,
}

impl ImageStream {
    fn run_stage(&self, state: &mut ImageState) {
        let (len, base, fuel) = stage_plan(state.next_stage);
        state.next_stage += 1;
        let count = (base + 1)
            .checked_pow(len as u32)
            .expect("stage input count overflows");
        let outputs = self.exec.map_range(0..count as usize, |k| {
            let mut u = vec![0; len];
            let mut k = k as Nat;
            for slot in u.iter_mut().rev() {
                *slot = k % (base + 1);
                k /= base + 1;
            }
            self.f.step(&u, fuel)
        });
        let before = state.tokens.len();
        for out in outputs {
            let binary = out
                .iter()
                .take_while(|&&v| v <= 1)
                .count()
                .min(IMAGE_WORD_CAP);
            for l in 0..=binary {
                let w: Word = out[..l].iter().map(|&v| v as u8).collect();
                if state.seen.insert(w.clone()) {
                    state.tokens.push(word_code(&w));
                }
            }
        }
        if state.tokens.len() == before {
            state.tokens.push(0);
        }
    }
}

impl Sequence for ImageStream {
    fn at(&self, n: Nat) -> Nat {
        self.prefix(n as usize + 1)[n as usize]
    }

    fn prefix(&self, len: usize) -> Vec<Nat> {
        let mut state = self.state.lock().unwrap_or_else(|e| e.into_inner());
        while state.tokens.len() < len {
            self.run_stage(&mut state);
        }
        state.tokens[..len].to_vec()
    }
}

/// `Image(f)` for `f : Baire -> Cantor`. Stage `<<L, B>, r>` runs `f` on
/// every input word in `{0..=B}^L` at fuel `32 (r + 1)` and lists each new
/// binary prefix of an output; a stage with nothing new stutters once.
pub fn image_of_baire_map(f: &Machine) -> OvertCantorSet {
    image_of_baire_map_with(f, Exec::default())
}

pub fn image_of_baire_map_with(f: &Machine, exec: Exec) -> OvertCantorSet {
    let stream = ImageStream {
        f: f.clone(),
        exec,
        state: Mutex::new(ImageState {
            tokens: Vec::new(),
            seen: HashSet::new(),
            next_stage: 0,
        }),
    };
    OvertCantorSet {
        hits: Oracle::new(stream),
    }
}

// ---------------------------------------------------------------------------
// Parametrization

struct ImageInverse {
    hits: Oracle,
    root: Word,
}

/// Hit entries visible at a given fuel.
fn visible_hits(fuel: usize) -> usize {
    8 * fuel + 64
}

impl ImageInverse {
    fn position(hits: &[Nat], w: &[u8]) -> Option<usize> {
        let code = word_index(w) + 1;
        hits.iter().position(|&c| c == code)
    }
}

impl PrefixMachine for ImageInverse {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let hits = self.hits.prefix(visible_hits(fuel));
        if Self::position(&hits, &self.root).is_none() {
            return Vec::new();
        }
        let mut w = self.root.clone();
        let mut out: Vec<Nat> = w.iter().map(|&b| b as Nat).collect();
        for &choice in input {
            if w.len() >= MAX_WORD_LEN {
                break;
            }
            let (t, b) = (choice / 2, (choice % 2) as u8);
            let mut ext = [w.clone(), w.clone()];
            ext[0].push(0);
            ext[1].push(1);
            let pos = [
                Self::position(&hits, &ext[0]),
                Self::position(&hits, &ext[1]),
            ];
            // the first extension to appear; limit-faithfulness promises one
            let first = match pos {
                [Some(p), Some(q)] => Some(if p < q { (0, p) } else { (1, q) }),
                [Some(p), None] => Some((0, p)),
                [None, Some(q)] => Some((1, q)),
                [None, None] => None,
            };
            let Some((first_bit, first_pos)) = first else {
                break;
            };
            // window of hits consulted for the requested bit
            let window = (first_pos + 2).saturating_mul(t as usize + 1);
            let bit = match pos[b as usize] {
                Some(p) if p < window => b,
                _ if window <= hits.len() => first_bit,
                _ => break,
            };
            w.push(bit);
            out.push(bit as Nat);
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Opaque("overt-inverse".into())
    }
}

/// A map `Baire -> Cantor` whose image is dense in `A` starting at `root`.
///
/// Entry `i = 2t + b` of the path at a vertex labelled `w` picks `w b` when
/// that word is listed within the first `(p + 2)(t + 1)` hits, `p` being the
/// position of the first listed extension of `w`; otherwise it picks that
/// first extension. When `root` is never listed (empty `A`) the machine never
/// outputs. Labels stop growing at the longest codable word.
pub fn overt_image_inverse(a: &OvertCantorSet, root: &[u8]) -> Machine {
    Machine::new(ImageInverse {
        hits: a.hits.clone(),
        root: root.to_vec(),
    })
}

/// Shared fixture predicates on words.
pub type HitPredicate = Arc<dyn Fn(&[u8]) -> bool + Send + Sync>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{binary_part, constant};

    #[test]
    fn constant_image_lists_prefixes() {
        let p = [1, 0, 1, 1, 0, 0, 1, 0];
        let a = image_of_baire_map(&constant(p.to_vec()));
        let words = a.hit_words(8, 200);
        for l in 0..=8 {
            assert!(words.contains(&p[..l].iter().map(|&v| v as u8).collect::<Vec<_>>()));
        }
        assert!(words
            .iter()
            .all(|w| w.iter().zip(p.iter()).all(|(&a, &b)| a as Nat == b)));
    }

    #[test]
    fn binary_part_image_is_everything() {
        let a = image_of_baire_map(&binary_part());
        let all = brute_force_hits(&|_| true, 5);
        let got = a.hit_words(5, 3000);
        assert_eq!(got, all);
    }

    #[test]
    fn inverse_on_even_zero_set() {
        let a = OvertCantorSet::from_predicate(|w| w.iter().step_by(2).all(|&b| b == 0));
        let m = overt_image_inverse(&a, &[]);
        assert_eq!(m.apply(&Oracle::constant(0)).prefix(12), vec![0; 12]);
        let out = m
            .apply(&Oracle::fixture(vec![], vec![1, 3, 0, 5]))
            .prefix(12);
        assert!(out.iter().step_by(2).all(|&b| b == 0), "{out:?}");
    }

    #[test]
    fn empty_set_inverse_is_silent() {
        let a = OvertCantorSet::new(Oracle::constant(0));
        assert!(overt_image_inverse(&a, &[]).step(&[0, 1, 2], 50).is_empty());
    }
}
