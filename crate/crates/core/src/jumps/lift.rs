//! Realizer-level constructions for the limit jump.
//!
//! A jump name `q` is read as a double sequence: row `n`, column `i` is
//! `q(<n, i>)`, and the denoted base name is the row-wise limit. Column `j`
//! of `q` is therefore the `j`-th approximation `p_j(n) = q(<n, j>)`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::kernel::{
    pair, pair_nested, unpair, unpair_nested, Descriptor, Family, Machine, Nat, Oracle,
    PrefixMachine, Reindex,
};

/// `p_j[..len]` read out of a visible jump-name prefix, if fully visible.
fn approximation(input: &[Nat], j: Nat, len: usize) -> Option<Vec<Nat>> {
    (0..len as Nat)
        .map(|m| input.get(pair(m, j) as usize).copied())
        .collect()
}

/// Memo of time-bounded runs `F^i(p_j)` for one call.
struct Runs<'a> {
    cache: HashMap<(Nat, Nat), Vec<Nat>>,
    run: Box<dyn Fn(Nat, Nat) -> Vec<Nat> + 'a>,
}

impl<'a> Runs<'a> {
    fn get(&mut self, i: Nat, j: Nat) -> &Vec<Nat> {
        let run = &self.run;
        self.cache.entry((i, j)).or_insert_with(|| run(i, j))
    }

    /// Entry `n` of the run with the largest `j <= i` that has emitted it,
    /// or the placeholder 0.
    fn latest_defined(&mut self, n: Nat, i: Nat) -> Nat {
        // a fuel-i run emits at most i entries
        if n >= i {
            return 0;
        }
        for j in (0..=i).rev() {
            if let Some(&v) = self.get(i, j).get(n as usize) {
                return v;
            }
        }
        0
    }
}

struct JumpLift(Machine);

impl PrefixMachine for JumpLift {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let f = &self.0;
        let mut runs = Runs {
            cache: HashMap::new(),
            run: Box::new(move |i, j| {
                // every approximation needed here was checked visible by the caller
                let p = approximation(input, j, i as usize).expect("approximation visible");
                f.step(&p, i as usize)
            }),
        };
        let mut out = Vec::with_capacity(fuel);
        for c in 0..fuel as Nat {
            let (n, i) = unpair(c);
            // columns 0..=i of rows 0..i must be visible
            if i > 0 && pair(i - 1, i) as usize >= input.len() {
                break;
            }
            let v = if i == 0 { 0 } else { runs.latest_defined(n, i) };
            out.push(v);
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::JumpLift(Box::new(self.0.descriptor()))
    }

    fn apply_direct(&self, input: &Oracle) -> Option<Oracle> {
        // A reindexing F emits entry n at fuel i, on any approximation,
        // iff every source up to n is below i; then mu(n, i) = i.
        let index = self.0.as_reindex()?;
        let reach: Mutex<Vec<Nat>> = Mutex::default();
        let input = input.clone();
        Some(Oracle::from_fn(move |c| {
            let (n, i) = unpair(c);
            if i == 0 || n >= i {
                return 0;
            }
            let k = index(n);
            let furthest = {
                let mut reach = reach.lock().unwrap_or_else(|e| e.into_inner());
                while reach.len() as Nat <= n {
                    let m = reach.len() as Nat;
                    let prev = reach.last().copied().unwrap_or(0);
                    reach.push(prev.max(index(m)));
                }
                reach[n as usize]
            };
            if furthest < i {
                input.at(pair(k, i))
            } else {
                0
            }
        }))
    }
}

/// The lifting `F -> F'` of a realizer to jump names.
///
/// Output position `<n, i>` carries `F^i(p_mu)(n)` where `F^i` is `F` at fuel
/// `i`, `p_j` is column `j` of the input and `mu` is the largest `j <= i` for
/// which that run has emitted entry `n` (placeholder 0 when none has). Each
/// position is a fixed function of the input, so the machine is monotone; on
/// inputs whose columns converge to `p`, row `n` settles on `F(p)(n)`.
pub fn jump_lift(f: &Machine) -> Machine {
    Machine::new(JumpLift(f.clone()))
}

/// `jump_lift` applied `levels` times.
pub fn jump_lift_n(f: &Machine, levels: u32) -> Machine {
    (0..levels).fold(f.clone(), |m, _| jump_lift(&m))
}

struct PointwiseLimit(Family);

impl PrefixMachine for PointwiseLimit {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let fam = &self.0;
        let mut runs = Runs {
            cache: HashMap::new(),
            run: Box::new(move |i, j| fam.member(j).step(&input[..i as usize], i as usize)),
        };
        let mut out = Vec::with_capacity(fuel);
        for c in 0..fuel as Nat {
            let (n, i) = unpair(c);
            if i as usize > input.len() {
                break;
            }
            let v = if i == 0 { 0 } else { runs.latest_defined(n, i) };
            out.push(v);
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::PwLim(self.0.descriptors())
    }
}

/// Pointwise limit of `f_0, f_1, ...`: position `<n, i>` is
/// `f_mu^i(x)(n)` with `mu` the largest `j <= i` whose fuel-`i` run has
/// emitted entry `n`.
pub fn pointwise_limit(family: &Family) -> Machine {
    Machine::new(PointwiseLimit(family.clone()))
}

/// `p -> (<n, i> -> p(n))`: every row constant.
pub fn inject_into_jump() -> Machine {
    Reindex::machine(Descriptor::Table("inject".into()), |c| unpair(c).0)
}

struct NotIntoJump;

impl PrefixMachine for NotIntoJump {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        // quiet[i]: no nonzero among the first i entries
        let mut quiet = Vec::with_capacity(input.len() + 1);
        quiet.push(true);
        for &v in input {
            let last = *quiet.last().unwrap();
            quiet.push(last && v == 0);
        }
        let mut out = Vec::new();
        for c in 0..fuel as Nat {
            let (n, i) = unpair(c);
            if n > 0 {
                out.push(0);
                continue;
            }
            match quiet.get(i as usize) {
                Some(&q) => out.push(q as Nat),
                None => break,
            }
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table("notjump".into())
    }
}

/// Negation from Sierpinski names into jump names of Sierpinski space:
/// row 0, column `i` is 1 while the first `i` entries are all 0.
pub fn not_into_jump() -> Machine {
    Machine::new(NotIntoJump)
}

/// Product of two level-`k` names to a level-`k` name of the product.
///
/// Input `P x Q`; output base index `2b + s` at columns `cs` reads component
/// `s` at base index `b`, same columns.
pub fn product_shuffle(levels: u32) -> Machine {
    Reindex::machine(Descriptor::Table(format!("jprod{levels}")), move |c| {
        let (base, cols) = unpair_nested(c, levels);
        2 * pair_nested(base / 2, &cols) + base % 2
    })
}

/// Family of level-`k` names (tupled) to a level-`k` name of the family.
pub fn family_shuffle(levels: u32) -> Machine {
    Reindex::machine(Descriptor::Table(format!("jfam{levels}")), move |c| {
        let (base, cols) = unpair_nested(c, levels);
        let (n, m) = unpair(base);
        pair(n, pair_nested(m, &cols))
    })
}

/// Inverse of [`family_shuffle`]: a level-`k` name of a family to the tupled
/// family of level-`k` names, `s_n(<m, i>) = q(<<n, m>, i>)` at level one.
pub fn family_unshuffle(levels: u32) -> Machine {
    Reindex::machine(Descriptor::Table(format!("jsplit{levels}")), move |c| {
        let (n, x) = unpair(c);
        let (m, cols) = unpair_nested(x, levels);
        pair_nested(pair(n, m), &cols)
    })
}
