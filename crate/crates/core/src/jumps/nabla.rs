//! The finite-mindchange representation.
//!
//! A ∇-name is a stream of tokens. `0` is a reset; any other token `t` appends
//! `t - 1` to the current candidate. The denoted base name is the candidate
//! after the last reset; a name with no reset at all is read from position 0.

use crate::kernel::{pair, unpair, Descriptor, Machine, Nat, Oracle, Prefix, PrefixMachine};

/// What a decoder sees while scanning a ∇-name prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessTrajectory {
    /// One entry per candidate: the step at which it started and its content
    /// at the end of the scan (or just before the next reset).
    pub guesses: Vec<(usize, Prefix)>,
    /// Number of reset tokens scanned.
    pub mindchanges: usize,
}

impl GuessTrajectory {
    pub fn final_candidate(&self) -> &Prefix {
        &self
            .guesses
            .last()
            .expect("trajectory has at least one guess")
            .1
    }
}

pub fn nabla_decode(prefix: &[Nat]) -> GuessTrajectory {
    let mut guesses = vec![(0, Prefix::default())];
    let mut mindchanges = 0;
    for (t, &tok) in prefix.iter().enumerate() {
        if tok == 0 {
            mindchanges += 1;
            if t == 0 {
                continue;
            }
            guesses.push((t, Prefix::default()));
        } else {
            guesses.last_mut().unwrap().1 .0.push(tok - 1);
        }
    }
    GuessTrajectory {
        guesses,
        mindchanges,
    }
}

/// Tokens for a sequence of candidate stages.
///
/// Starts with a reset; a stage extending the previous one appends only its
/// new entries, any other stage forces a reset and a full re-emission.
pub fn nabla_encode(stages: &[Prefix]) -> Vec<Nat> {
    let mut out = vec![0];
    let mut current: &[Nat] = &[];
    for stage in stages {
        let s = stage.items();
        if crate::kernel::is_prefix(current, s) {
            out.extend(s[current.len()..].iter().map(|v| v + 1));
        } else {
            out.push(0);
            out.extend(s.iter().map(|v| v + 1));
        }
        current = s;
    }
    out
}

/// A name of `X^∇`.
#[derive(Clone, Debug)]
pub struct NablaName {
    pub base: Oracle,
}

impl NablaName {
    pub fn new(base: Oracle) -> Self {
        NablaName { base }
    }

    /// Encode a finite list of stages followed by an infinite final stage
    /// whose continuation is `tail` (entries appended after the last stage).
    pub fn from_stages(stages: &[Prefix], tail: &crate::kernel::EventuallyPeriodic) -> Self {
        let pre = nabla_encode(stages);
        let period: Vec<Nat> = tail.period().iter().map(|v| v + 1).collect();
        let mut pre = pre;
        pre.extend(tail.pre().iter().map(|v| v + 1));
        NablaName {
            base: Oracle::fixture(pre, period),
        }
    }

    pub fn trajectory(&self, len: usize) -> GuessTrajectory {
        nabla_decode(&self.base.prefix(len))
    }
}

/// A Sierpinski candidate is true once it holds a nonzero value: token >= 2.
fn token_is_top(tok: Nat) -> bool {
    tok >= 2
}

/// `top_so_far[t]`: the candidate decoded from `tokens[..t]` denotes true.
fn candidate_truth(tokens: &[Nat]) -> Vec<bool> {
    let mut truth = Vec::with_capacity(tokens.len() + 1);
    let mut cur = false;
    truth.push(cur);
    for &tok in tokens {
        if tok == 0 {
            cur = false;
        } else if token_is_top(tok) {
            cur = true;
        }
        truth.push(cur);
    }
    truth
}

struct NablaToJumpPair;

impl PrefixMachine for NablaToJumpPair {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let truth = candidate_truth(input);
        let mut out = Vec::new();
        for c in 0..(fuel as Nat).div_ceil(2) {
            let (n, t) = unpair(c);
            let (a, b) = if n > 0 {
                (0, 0)
            } else {
                match truth.get(t as usize) {
                    Some(&top) => (top as Nat, (!top) as Nat),
                    None => break,
                }
            };
            out.push(a);
            out.push(b);
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table("nabla2jump".into())
    }
}

/// `b -> (b, ¬b)` from `S^∇` into `S' x S'`.
///
/// Output is the product name of two jump names: row 0, column `t` of the
/// first is 1 iff the candidate after `t` tokens is true; the second is its
/// pointwise complement; all other rows are 0.
pub fn nabla_to_jump_pair() -> Machine {
    Machine::new(NablaToJumpPair)
}

/// Emit state shared by the guess-wise ∇ machines.
struct Emitter {
    out: Vec<Nat>,
    emitted: usize,
}

impl Emitter {
    fn new() -> Self {
        Emitter {
            out: vec![0],
            emitted: 0,
        }
    }

    fn reset(&mut self) {
        self.out.push(0);
        self.emitted = 0;
    }

    /// Bring the emitted candidate up to `target` (which extends it).
    fn catch_up(&mut self, target: &[Nat]) {
        for &v in &target[self.emitted.min(target.len())..] {
            self.out.push(v + 1);
        }
        self.emitted = self.emitted.max(target.len());
    }
}

/// Candidates of a ∇-name while it is being read.
#[derive(Default)]
struct Reader {
    candidate: Vec<Nat>,
}

impl Reader {
    /// Feed one token; true when it was a reset.
    fn feed(&mut self, tok: Nat) -> bool {
        if tok == 0 {
            self.candidate.clear();
            true
        } else {
            self.candidate.push(tok - 1);
            false
        }
    }
}

struct NablaLift(Machine);

impl PrefixMachine for NablaLift {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let mut em = Emitter::new();
        let mut rd = Reader::default();
        for (t, &tok) in input.iter().enumerate() {
            if em.out.len() >= fuel {
                break;
            }
            if rd.feed(tok) && t > 0 {
                em.reset();
            }
            let target = self.0.step(&rd.candidate, rd.candidate.len());
            em.catch_up(&target);
        }
        em.out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::NablaLift(Box::new(self.0.descriptor()))
    }
}

/// Guess-wise lifting `F -> F^∇`: after every input token, run `F` on the
/// current candidate (fuel = its length) and extend the output candidate;
/// an input reset forces an output reset. Mindchanges never increase.
pub fn nabla_lift(f: &Machine) -> Machine {
    Machine::new(NablaLift(f.clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NablaLogic {
    And,
    Or,
}

struct NablaBinary(NablaLogic);

impl PrefixMachine for NablaBinary {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let mut em = Emitter::new();
        let (mut left, mut right) = (Reader::default(), Reader::default());
        for t in 0..input.len() / 2 {
            if em.out.len() >= fuel {
                break;
            }
            let r1 = left.feed(input[2 * t]);
            let r2 = right.feed(input[2 * t + 1]);
            if (r1 || r2) && t > 0 {
                em.reset();
            }
            let both = crate::setops::logic::binary_contract(
                &left.candidate,
                &right.candidate,
                self.0 == NablaLogic::And,
            );
            em.catch_up(&both);
        }
        em.out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table(match self.0 {
            NablaLogic::And => "nand".into(),
            NablaLogic::Or => "nor".into(),
        })
    }
}

/// ∧ / ∨ on `S^∇ x S^∇`, guess by guess. Input is the product name of two
/// ∇-names; the output resets whenever either input does, so its mindchange
/// count is at most the sum of the inputs' plus one.
pub fn nabla_logic(which: NablaLogic) -> Machine {
    Machine::new(NablaBinary(which))
}

/// Row `n`, column `t` of a jump name inside a product name.
pub(crate) fn jump_entry(product: &[Nat], side: usize, n: Nat, t: Nat) -> Option<Nat> {
    product.get(2 * pair(n, t) as usize + side).copied()
}
