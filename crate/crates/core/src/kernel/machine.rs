//! Fueled monotone prefix machines.
//!
//! A machine maps a finite input prefix and a fuel budget to a finite output
//! prefix. Every machine in the crate satisfies three laws, enforced where it
//! can be enforced structurally and fuzzed everywhere else:
//!
//! * monotone: `u ⊑ v` and `m <= n` imply `step(u, m) ⊑ step(v, n)`;
//! * deterministic;
//! * fuel-bounded: `step(u, n)` reads at most `u[..n]` and emits at most `n`
//!   entries.
//!
//! Running a machine at fuel `n` is the time-bounded run that the jump
//! construction needs; [`run_on_oracle`] drives it on an infinite input.

use std::fmt;
use std::sync::{Arc, Mutex};

use super::descriptor::Descriptor;
use super::oracle::{Oracle, Sequence};
use super::Nat;

/// A finite initial segment of a name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Prefix(pub Vec<Nat>);

impl Prefix {
    pub fn new(items: Vec<Nat>) -> Self {
        Prefix(items)
    }

    pub fn items(&self) -> &[Nat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ⊑ other`.
    pub fn is_prefix_of(&self, other: &Prefix) -> bool {
        is_prefix(&self.0, &other.0)
    }
}

impl From<Vec<Nat>> for Prefix {
    fn from(v: Vec<Nat>) -> Self {
        Prefix(v)
    }
}

/// `u ⊑ v` on slices.
pub fn is_prefix(u: &[Nat], v: &[Nat]) -> bool {
    u.len() <= v.len() && v[..u.len()] == *u
}

/// Implementation side of a machine. Callers go through [`Machine::step`],
/// which truncates the input to the fuel before calling in.
pub trait PrefixMachine: Send + Sync {
    /// `input` is already cut to at most `fuel` entries.
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat>;

    fn descriptor(&self) -> Descriptor;

    /// Random-access form of the limit output, when one is cheaper than
    /// driving prefixes.
    fn apply_direct(&self, _input: &Oracle) -> Option<Oracle> {
        None
    }

    /// Source map, for machines that copy output position `c` from input
    /// position `index(c)` and stop at the first invisible source.
    fn as_reindex(&self) -> Option<IndexMap> {
        None
    }
}

pub type IndexMap = Arc<dyn Fn(Nat) -> Nat + Send + Sync>;

/// Shared handle to a [`PrefixMachine`].
#[derive(Clone)]
pub struct Machine(Arc<dyn PrefixMachine>);

impl Machine {
    pub fn new(m: impl PrefixMachine + 'static) -> Self {
        Machine(Arc::new(m))
    }

    /// Host-code machine, used in tests; its descriptor is opaque.
    pub fn from_fn(
        label: impl Into<String>,
        f: impl Fn(&[Nat], usize) -> Vec<Nat> + Send + Sync + 'static,
    ) -> Self {
        Machine::new(HostMachine {
            label: label.into(),
            f,
        })
    }

    pub fn step(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let visible = &input[..input.len().min(fuel)];
        let mut out = self.0.run(visible, fuel);
        out.truncate(fuel);
        out
    }

    pub fn descriptor(&self) -> Descriptor {
        self.0.descriptor()
    }

    /// The machine applied to an infinite input, as a lazily driven name.
    pub fn as_reindex(&self) -> Option<IndexMap> {
        self.0.as_reindex()
    }

    pub fn apply(&self, input: &Oracle) -> Oracle {
        if let Some(out) = self.0.apply_direct(input) {
            return out;
        }
        Oracle::new(MachineOutput {
            machine: self.clone(),
            input: input.clone(),
            memo: Mutex::default(),
        })
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Machine) -> Machine {
        compose(self, then)
    }
}

impl fmt::Debug for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Machine({})", self.descriptor())
    }
}

struct HostMachine<F> {
    label: String,
    f: F,
}

impl<F> PrefixMachine for HostMachine<F>
where
    F: Fn(&[Nat], usize) -> Vec<Nat> + Send + Sync,
{
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        (self.f)(input, fuel)
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Opaque(self.label.clone())
    }
}

/// Largest fuel a lazily evaluated machine output will try before giving up.
pub const OUTPUT_FUEL_CAP: usize = 1 << 22;

struct MachineOutput {
    machine: Machine,
    input: Oracle,
    /// Longest output prefix computed so far.
    memo: Mutex<Vec<Nat>>,
}

impl MachineOutput {
    /// Input is read in doubling prefixes so a slow upstream stream is only
    /// asked for what the machine needs; output fuel stays at least `2 len`.
    fn drive(&self, len: usize) -> Vec<Nat> {
        let mut read = 16;
        loop {
            let fuel = (2 * len).max(read);
            let out = self.machine.step(&self.input.prefix(read), fuel);
            if out.len() >= len {
                return out;
            }
            if read >= OUTPUT_FUEL_CAP {
                panic!(
                    "machine {} produced {} of {} entries within fuel {}; the map is undefined on this input",
                    self.machine.descriptor(),
                    out.len(),
                    len,
                    fuel
                );
            }
            read = (read * 2).min(OUTPUT_FUEL_CAP);
        }
    }
}

impl MachineOutput {
    /// Exactly `len` entries. A drive keeps everything its fuel produced,
    /// which is usually well past `len`, so sequential reads stay cheap.
    fn cached(&self, len: usize) -> Vec<Nat> {
        let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        if memo.len() < len {
            *memo = self.drive(len);
        }
        memo[..len].to_vec()
    }
}

impl Sequence for MachineOutput {
    fn at(&self, n: Nat) -> Nat {
        let memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(&v) = memo.get(n as usize) {
            return v;
        }
        drop(memo);
        self.cached(n as usize + 1)[n as usize]
    }

    fn prefix(&self, len: usize) -> Vec<Nat> {
        if len == 0 {
            return Vec::new();
        }
        self.cached(len)
    }
}

/// Entry `out_index` of `M(p[..fuel])` at fuel `fuel`, if already emitted.
pub fn run_on_oracle(m: &Machine, p: &Oracle, out_index: usize, fuel: usize) -> Option<Nat> {
    m.step(&p.prefix(fuel), fuel).get(out_index).copied()
}

// ---------------------------------------------------------------------------
// Basic combinators

struct Identity;

impl PrefixMachine for Identity {
    fn run(&self, input: &[Nat], _fuel: usize) -> Vec<Nat> {
        input.to_vec()
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Id
    }

    fn apply_direct(&self, input: &Oracle) -> Option<Oracle> {
        Some(input.clone())
    }

    fn as_reindex(&self) -> Option<IndexMap> {
        Some(Arc::new(|c| c))
    }
}

pub fn identity() -> Machine {
    Machine::new(Identity)
}

struct Constant(Vec<Nat>);

impl PrefixMachine for Constant {
    fn run(&self, _input: &[Nat], fuel: usize) -> Vec<Nat> {
        let last = *self.0.last().unwrap_or(&0);
        (0..fuel)
            .map(|i| self.0.get(i).copied().unwrap_or(last))
            .collect()
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Const(self.0.clone())
    }
}

/// Ignores its input; emits `values` and then repeats the last entry (or 0s).
pub fn constant(values: Vec<Nat>) -> Machine {
    Machine::new(Constant(values))
}

struct Compose(Machine, Machine);

impl PrefixMachine for Compose {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let mid = self.0.step(input, fuel);
        self.1.step(&mid, fuel)
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Compose(Box::new(self.0.descriptor()), Box::new(self.1.descriptor()))
    }

    fn apply_direct(&self, input: &Oracle) -> Option<Oracle> {
        Some(self.1.apply(&self.0.apply(input)))
    }
}

/// `(G ∘ F).step(u, n) = G.step(F.step(u, n), n)`: run `first`, feed `second`.
pub fn compose(first: &Machine, second: &Machine) -> Machine {
    Machine::new(Compose(first.clone(), second.clone()))
}

/// Compose a chain left to right. An empty chain is the identity.
pub fn compose_all(chain: &[Machine]) -> Machine {
    chain
        .iter()
        .skip(1)
        .fold(chain.first().cloned().unwrap_or_else(identity), |acc, m| {
            compose(&acc, m)
        })
}

struct Pairing(Option<(Machine, Machine)>);

impl PrefixMachine for Pairing {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let (a, b) = match &self.0 {
            Some((f, g)) => (f.step(input, fuel), g.step(input, fuel)),
            None => (input.to_vec(), input.to_vec()),
        };
        interleave_prefixes(&a, &b)
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Interleave(
            self.0
                .as_ref()
                .map(|(f, g)| (Box::new(f.descriptor()), Box::new(g.descriptor()))),
        )
    }

    fn apply_direct(&self, input: &Oracle) -> Option<Oracle> {
        Some(match &self.0 {
            Some((f, g)) => super::oracle::interleave(&f.apply(input), &g.apply(input)),
            None => super::oracle::interleave(input, input),
        })
    }
}

/// `p -> F(p) x G(p)`.
pub fn pairing(f: &Machine, g: &Machine) -> Machine {
    Machine::new(Pairing(Some((f.clone(), g.clone()))))
}

/// `p -> p x p`.
pub fn diagonal() -> Machine {
    Machine::new(Pairing(None))
}

/// Longest prefix of `a x b` determined by the two prefixes.
pub fn interleave_prefixes(a: &[Nat], b: &[Nat]) -> Vec<Nat> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    for (i, &x) in a.iter().enumerate() {
        out.push(x);
        match b.get(i) {
            Some(&y) => out.push(y),
            None => break,
        }
    }
    out
}

struct Project(u8);

impl PrefixMachine for Project {
    fn run(&self, input: &[Nat], _fuel: usize) -> Vec<Nat> {
        input
            .iter()
            .skip(self.0 as usize)
            .step_by(2)
            .copied()
            .collect()
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Split(self.0)
    }

    fn apply_direct(&self, input: &Oracle) -> Option<Oracle> {
        Some(super::oracle::project(input, self.0 as Nat))
    }
}

/// Component `side` of a product name.
pub fn split(side: u8) -> Machine {
    assert!(side <= 1, "split side must be 0 or 1");
    Machine::new(Project(side))
}

struct Delay(usize, Machine);

impl PrefixMachine for Delay {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        if input.len() < self.0 {
            Vec::new()
        } else {
            self.1.step(input, fuel)
        }
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Delay(self.0 as Nat, Box::new(self.1.descriptor()))
    }
}

/// Emit nothing until `reads` input entries are visible, then behave as `m`.
pub fn delay(reads: usize, m: &Machine) -> Machine {
    Machine::new(Delay(reads, m.clone()))
}

struct Pointwise {
    name: &'static str,
    f: fn(Nat) -> Nat,
}

impl PrefixMachine for Pointwise {
    fn run(&self, input: &[Nat], _fuel: usize) -> Vec<Nat> {
        input.iter().map(|&v| (self.f)(v)).collect()
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table(self.name.to_string())
    }
}

/// `p -> (p(n) + 1)_n`.
pub fn successor() -> Machine {
    Machine::new(Pointwise {
        name: "succ",
        f: |v| v + 1,
    })
}

/// Binary complement of every entry (values above 1 count as 1).
pub fn bit_flip() -> Machine {
    Machine::new(Pointwise {
        name: "flip",
        f: |v| if v == 0 { 1 } else { 0 },
    })
}

/// Clamp every entry into `{0, 1}`: the identity on binary names.
pub fn binary_part() -> Machine {
    Machine::new(Pointwise {
        name: "bin",
        f: |v| v.min(1),
    })
}

struct HeadSwap;

impl PrefixMachine for HeadSwap {
    fn run(&self, input: &[Nat], _fuel: usize) -> Vec<Nat> {
        input
            .iter()
            .enumerate()
            .map(|(i, &v)| if i == 0 { 1 - v.min(1) } else { v })
            .collect()
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table("headswap".into())
    }
}

/// Flip the first bit of a Cantor name, copy the rest.
pub fn head_swap() -> Machine {
    Machine::new(HeadSwap)
}

struct HeadParity;

impl PrefixMachine for HeadParity {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        match input.first() {
            None => Vec::new(),
            Some(&h) => (0..fuel).map(|i| if i == 0 { h % 2 } else { 0 }).collect(),
        }
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table("headparity".into())
    }
}

/// Baire to Cantor: `p -> (p(0) mod 2) 0 0 0 ...`.
pub fn head_parity() -> Machine {
    Machine::new(HeadParity)
}

/// Output position `c` copies input position `index(c)`.
///
/// Emission stops at the first position whose source is not visible, which
/// keeps the machine monotone for any index map.
pub struct Reindex {
    descriptor: Descriptor,
    index: IndexMap,
}

impl Reindex {
    pub fn machine(
        descriptor: Descriptor,
        index: impl Fn(Nat) -> Nat + Send + Sync + 'static,
    ) -> Machine {
        Machine::new(Reindex {
            descriptor,
            index: Arc::new(index),
        })
    }
}

impl PrefixMachine for Reindex {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let mut out = Vec::new();
        for c in 0..fuel as Nat {
            match input.get((self.index)(c) as usize) {
                Some(&v) => out.push(v),
                None => break,
            }
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        self.descriptor.clone()
    }

    fn apply_direct(&self, input: &Oracle) -> Option<Oracle> {
        let (index, input) = (self.index.clone(), input.clone());
        Some(Oracle::from_fn(move |c| input.at(index(c))))
    }

    fn as_reindex(&self) -> Option<IndexMap> {
        Some(self.index.clone())
    }
}

/// Where a partially applied machine finds its bound argument.
#[derive(Clone, Debug)]
pub enum Env {
    /// A full name.
    Name(Oracle),
    /// Only a finite part is known; consumers stop where it ends.
    Known(Vec<Nat>),
}

impl Env {
    fn visible(&self, len: usize) -> Vec<Nat> {
        match self {
            Env::Name(o) => o.prefix(len),
            Env::Known(v) => v[..v.len().min(len)].to_vec(),
        }
    }
}

struct PairWith {
    bound: Env,
    bound_first: bool,
    descriptor: Descriptor,
}

impl PrefixMachine for PairWith {
    fn run(&self, input: &[Nat], _fuel: usize) -> Vec<Nat> {
        let env = self.bound.visible(input.len());
        if self.bound_first {
            interleave_prefixes(&env, input)
        } else {
            interleave_prefixes(input, &env)
        }
    }

    fn descriptor(&self) -> Descriptor {
        self.descriptor.clone()
    }
}

/// `x -> x x y` for a fixed second component `y`.
pub fn pair_with_second(y: &Oracle) -> Machine {
    let descriptor = match y.as_fixture() {
        Some(ep) => Descriptor::PairWith(ep.clone()),
        None => Descriptor::Opaque("pairwith-host".into()),
    };
    Machine::new(PairWith {
        bound: Env::Name(y.clone()),
        bound_first: false,
        descriptor,
    })
}

/// `y -> env x y`: the left argument is bound from the environment.
pub fn pair_env_first(env: Env) -> Machine {
    Machine::new(PairWith {
        bound: env,
        bound_first: true,
        descriptor: Descriptor::PairEnv,
    })
}
