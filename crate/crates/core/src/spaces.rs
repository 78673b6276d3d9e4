//! Represented spaces: descriptors, fixture points with ground truth, the
//! Sierpinski observation protocol and function-space names.
//!
//! Semantic checks (name validity, equality) are exact on eventually periodic
//! fixtures and fall back to comparison at a depth for opaque names.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{
    interleave, machine::PrefixMachine, split_name, Descriptor, Env, EventuallyPeriodic, Machine,
    Nat, Oracle,
};

/// Default comparison depth for opaque names.
pub const DEFAULT_DEPTH: usize = 32;

/// How many jumps (or the mindchange functor) separate a set's values from
/// plain Sierpinski space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    /// `Jump(0)` is the base level.
    Jump(u32),
    Nabla,
}

impl Level {
    pub const BASE: Level = Level::Jump(0);

    pub fn jumps(self) -> Option<u32> {
        match self {
            Level::Jump(k) => Some(k),
            Level::Nabla => None,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Jump(0) => write!(f, "base"),
            Level::Jump(k) => write!(f, "jump^{k}"),
            Level::Nabla => write!(f, "nabla"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceDescriptor {
    Nat,
    Sierpinski,
    Two,
    Cantor,
    Baire,
    Product(Box<SpaceDescriptor>, Box<SpaceDescriptor>),
    Coproduct(Vec<SpaceDescriptor>),
    Function(Box<SpaceDescriptor>, Box<SpaceDescriptor>),
    Open(Box<SpaceDescriptor>, Level),
    Closed(Box<SpaceDescriptor>, Level),
    Jump(Box<SpaceDescriptor>),
    Nabla(Box<SpaceDescriptor>),
    E0,
}

impl SpaceDescriptor {
    pub fn product(a: SpaceDescriptor, b: SpaceDescriptor) -> Self {
        SpaceDescriptor::Product(Box::new(a), Box::new(b))
    }

    pub fn function(a: SpaceDescriptor, b: SpaceDescriptor) -> Self {
        SpaceDescriptor::Function(Box::new(a), Box::new(b))
    }

    pub fn jump(a: SpaceDescriptor) -> Self {
        SpaceDescriptor::Jump(Box::new(a))
    }

    /// `X^(k)`.
    pub fn jump_n(a: SpaceDescriptor, k: u32) -> Self {
        (0..k).fold(a, |s, _| SpaceDescriptor::jump(s))
    }

    /// The value space `dS` of `level`-open sets.
    pub fn sierpinski_at(level: Level) -> Self {
        match level {
            Level::Jump(k) => Self::jump_n(SpaceDescriptor::Sierpinski, k),
            Level::Nabla => SpaceDescriptor::Nabla(Box::new(SpaceDescriptor::Sierpinski)),
        }
    }

    /// Decide whether a fixture is a valid name. `None` when the tag has no
    /// syntactic criterion on flat fixtures (jump and function spaces).
    pub fn name_valid(&self, name: &EventuallyPeriodic) -> Option<bool> {
        use SpaceDescriptor::*;
        match self {
            Sierpinski | Baire => Some(true),
            Cantor | E0 => Some(name.is_binary()),
            Two => Some(name.at(0) <= 1),
            Nat => Some(decode_nat_fixture(name).is_some()),
            Product(a, b) => {
                let (x, y) = (decimate(name, 0, 2), decimate(name, 1, 2));
                Some(a.name_valid(&x)? && b.name_valid(&y)?)
            }
            Coproduct(parts) => {
                let head = name.at(0) as usize;
                let tail = name.shifted(1);
                match parts.get(head) {
                    Some(s) => s.name_valid(&tail),
                    None => Some(false),
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpaceDescriptor::*;
        match self {
            Nat => write!(f, "N"),
            Sierpinski => write!(f, "S"),
            Two => write!(f, "2"),
            Cantor => write!(f, "Cantor"),
            Baire => write!(f, "Baire"),
            Product(a, b) => write!(f, "({a} x {b})"),
            Coproduct(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "Sum[{}]", s.join(", "))
            }
            Function(a, b) => write!(f, "C({a}, {b})"),
            Open(a, l) => write!(f, "O[{l}]({a})"),
            Closed(a, l) => write!(f, "A[{l}]({a})"),
            Jump(a) => write!(f, "{a}'"),
            Nabla(a) => write!(f, "{a}^nabla"),
            E0 => write!(f, "E0"),
        }
    }
}

/// `b(i) = a(offset + stride * i)`, exactly.
fn decimate(a: &EventuallyPeriodic, offset: usize, stride: usize) -> EventuallyPeriodic {
    let pre_len = a.pre().len();
    let start = pre_len.saturating_sub(offset).div_ceil(stride);
    let plen = crate::kernel::oracle::lcm(a.period().len(), stride) / stride;
    let at = |i: usize| a.at((offset + stride * i) as Nat);
    EventuallyPeriodic::new(
        (0..start).map(at).collect(),
        (start..start + plen).map(at).collect(),
    )
}

/// Ground truth attached to fixture points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Denotation {
    Nat(Nat),
    Bool(bool),
    /// A point of Cantor space, Baire space or `E0`.
    Sequence(EventuallyPeriodic),
    Pair(Box<Denotation>, Box<Denotation>),
    Summand(usize, Box<Denotation>),
}

#[derive(Clone, Debug)]
pub struct SpacePoint {
    pub space: SpaceDescriptor,
    pub name: Oracle,
    pub denotation: Option<Denotation>,
}

impl SpacePoint {
    pub fn opaque(space: SpaceDescriptor, name: Oracle) -> Self {
        SpacePoint {
            space,
            name,
            denotation: None,
        }
    }

    /// `n` as `0^n 1 0^ω`.
    pub fn nat(n: Nat) -> Self {
        SpacePoint {
            space: SpaceDescriptor::Nat,
            name: encode_nat(n).into(),
            denotation: Some(Denotation::Nat(n)),
        }
    }

    /// Bottom (`None`) or top observed first at step `k`.
    pub fn sierpinski(top_at: Option<usize>) -> Self {
        let name = match top_at {
            Some(k) => EventuallyPeriodic::top_at(k),
            None => EventuallyPeriodic::constant(0),
        };
        SpacePoint {
            space: SpaceDescriptor::Sierpinski,
            name: name.into(),
            denotation: Some(Denotation::Bool(top_at.is_some())),
        }
    }

    /// A fixture point of Cantor space, Baire space or `E0`.
    pub fn sequence(space: SpaceDescriptor, seq: EventuallyPeriodic) -> Self {
        SpacePoint {
            space,
            name: seq.clone().into(),
            denotation: Some(Denotation::Sequence(seq)),
        }
    }

    pub fn cantor(seq: EventuallyPeriodic) -> Self {
        debug_assert!(seq.is_binary(), "Cantor fixture must be binary");
        Self::sequence(SpaceDescriptor::Cantor, seq)
    }

    pub fn pair(a: &SpacePoint, b: &SpacePoint) -> Self {
        let denotation = match (&a.denotation, &b.denotation) {
            (Some(x), Some(y)) => Some(Denotation::Pair(Box::new(x.clone()), Box::new(y.clone()))),
            _ => None,
        };
        SpacePoint {
            space: SpaceDescriptor::product(a.space.clone(), b.space.clone()),
            name: interleave(&a.name, &b.name),
            denotation,
        }
    }

    /// Components of a product point.
    pub fn split(&self) -> Result<(SpacePoint, SpacePoint)> {
        let SpaceDescriptor::Product(sa, sb) = &self.space else {
            return Err(mismatch("a product space", &self.space));
        };
        let (na, nb) = split_name(&self.name);
        let (da, db) = match &self.denotation {
            Some(Denotation::Pair(x, y)) => (Some((**x).clone()), Some((**y).clone())),
            _ => (None, None),
        };
        Ok((
            SpacePoint {
                space: (**sa).clone(),
                name: na,
                denotation: da,
            },
            SpacePoint {
                space: (**sb).clone(),
                name: nb,
                denotation: db,
            },
        ))
    }

    /// Check the stored denotation against the name, on fixture forms.
    pub fn check_denotation(&self) -> Option<bool> {
        let den = self.denotation.as_ref()?;
        let ep = self.name.as_fixture()?;
        if self.space.name_valid(ep) == Some(false) {
            return Some(false);
        }
        Some(match (&self.space, den) {
            (SpaceDescriptor::Nat, Denotation::Nat(n)) => decode_nat_fixture(ep) == Some(*n),
            (SpaceDescriptor::Sierpinski, Denotation::Bool(b)) => {
                ep.first_nonzero().is_some() == *b
            }
            (SpaceDescriptor::Two, Denotation::Bool(b)) => (ep.at(0) == 1) == *b,
            (SpaceDescriptor::Cantor | SpaceDescriptor::Baire, Denotation::Sequence(s)) => {
                ep.same_sequence(s)
            }
            (SpaceDescriptor::E0, Denotation::Sequence(s)) => ep.tails_agree(s),
            _ => return None,
        })
    }
}

fn mismatch(expected: &str, found: &SpaceDescriptor) -> Error {
    Error::SpaceMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

pub fn encode_nat(n: Nat) -> EventuallyPeriodic {
    let mut pre = vec![0; n as usize];
    pre.push(1);
    EventuallyPeriodic::new(pre, vec![0])
}

/// First-1 search, reading at most `limit` entries.
pub fn decode_nat(name: &Oracle, limit: usize) -> Option<Nat> {
    (0..limit as Nat).find(|&i| name.at(i) == 1)
}

fn decode_nat_fixture(ep: &EventuallyPeriodic) -> Option<Nat> {
    let n = ep.normalized();
    let pre = n.pre();
    let ok =
        n.period() == [0] && pre.last() == Some(&1) && pre[..pre.len() - 1].iter().all(|&v| v == 0);
    ok.then(|| pre.len() as Nat - 1)
}

/// Equality of two points of the same space: exact on denotations, otherwise
/// name comparison at `depth`.
pub fn points_equal(a: &SpacePoint, b: &SpacePoint, depth: usize) -> bool {
    if a.space != b.space {
        return false;
    }
    match (&a.denotation, &b.denotation) {
        (Some(x), Some(y)) => denotations_equal(&a.space, x, y),
        _ => match &a.space {
            SpaceDescriptor::Sierpinski => {
                let fa = observe_name(&a.name, depth).is_top();
                let fb = observe_name(&b.name, depth).is_top();
                fa == fb
            }
            SpaceDescriptor::Nat => decode_nat(&a.name, depth) == decode_nat(&b.name, depth),
            _ => a.name.agrees_with(&b.name, depth),
        },
    }
}

fn denotations_equal(space: &SpaceDescriptor, x: &Denotation, y: &Denotation) -> bool {
    match (space, x, y) {
        (SpaceDescriptor::E0, Denotation::Sequence(p), Denotation::Sequence(q)) => p.tails_agree(q),
        (_, Denotation::Sequence(p), Denotation::Sequence(q)) => p.same_sequence(q),
        (SpaceDescriptor::Product(sa, sb), Denotation::Pair(x1, x2), Denotation::Pair(y1, y2)) => {
            denotations_equal(sa, x1, y1) && denotations_equal(sb, x2, y2)
        }
        _ => x == y,
    }
}

/// Outcome of watching a Sierpinski name for a bounded number of steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SierpObservation {
    ObservedTop { at_step: usize },
    NotYetBottom { fuel_used: usize },
}

impl SierpObservation {
    pub fn is_top(self) -> bool {
        matches!(self, SierpObservation::ObservedTop { .. })
    }
}

/// Scan `fuel` entries of a Sierpinski name for the first nonzero one.
pub fn observe_name(name: &Oracle, fuel: usize) -> SierpObservation {
    observe_prefix(&name.prefix(fuel), fuel)
}

/// [`observe_name`] on an already materialized prefix.
pub fn observe_prefix(prefix: &[Nat], fuel: usize) -> SierpObservation {
    match prefix.iter().take(fuel).position(|&v| v != 0) {
        Some(t) => SierpObservation::ObservedTop { at_step: t },
        None => SierpObservation::NotYetBottom { fuel_used: fuel },
    }
}

pub fn observe(s: &SpacePoint, fuel: usize) -> Result<SierpObservation> {
    if s.space != SpaceDescriptor::Sierpinski {
        return Err(mismatch("S", &s.space));
    }
    Ok(observe_name(&s.name, fuel))
}

// ---------------------------------------------------------------------------
// Function spaces
//
// A name of C(X, Y) interleaves two streams: even positions carry the text
// of a machine descriptor (byte + 1, then 0s), odd positions carry an
// environment name that `pairenv` reads.

/// Longest descriptor text accepted when decoding a function name.
pub const MAX_DESCRIPTOR_LEN: usize = 1 << 16;

pub fn encode_function_name(text: &str, env: Option<Oracle>) -> Oracle {
    let bytes: Vec<Nat> = text.bytes().map(|b| b as Nat + 1).collect();
    let text_part = EventuallyPeriodic::new(bytes, vec![0]);
    match env {
        Some(e) => interleave(&Oracle::new(text_part), &e),
        None => EventuallyPeriodic::interleave(&text_part, &EventuallyPeriodic::constant(0)).into(),
    }
}

/// Descriptor text of a finite function-name prefix, once terminated.
fn text_of_prefix(prefix: &[Nat]) -> Option<std::result::Result<String, Error>> {
    let mut bytes = Vec::new();
    for &v in prefix.iter().step_by(2) {
        if v == 0 {
            return Some(
                String::from_utf8(bytes)
                    .map_err(|e| Error::Decode(format!("descriptor is not UTF-8: {e}"))),
            );
        }
        if v > 256 {
            return Some(Err(Error::Decode(format!("entry {v} is not a byte code"))));
        }
        bytes.push((v - 1) as u8);
    }
    None
}

pub fn decode_function_name(name: &Oracle) -> Result<(Descriptor, Oracle)> {
    let prefix = name.prefix(2 * MAX_DESCRIPTOR_LEN + 2);
    let text = text_of_prefix(&prefix)
        .ok_or_else(|| Error::Decode("descriptor text is not terminated".into()))??;
    let desc = crate::dsl::parse_machine(&text).map_err(|e| Error::Decode(e.to_string()))?;
    Ok((desc, crate::kernel::project(name, 1)))
}

/// A point of `C(X, Y)` named by a serializable descriptor.
pub fn function_point(
    dom: SpaceDescriptor,
    cod: SpaceDescriptor,
    desc: &Descriptor,
) -> Result<SpacePoint> {
    if !desc.is_serializable() {
        return Err(Error::Precondition(format!(
            "descriptor {desc} has host-code parts"
        )));
    }
    Ok(SpacePoint::opaque(
        SpaceDescriptor::function(dom, cod),
        encode_function_name(&desc.to_string(), None),
    ))
}

/// Apply a function point to a point of its domain.
pub fn eval_function(f: &SpacePoint, x: &SpacePoint) -> Result<SpacePoint> {
    let SpaceDescriptor::Function(dom, cod) = &f.space else {
        return Err(mismatch("a function space", &f.space));
    };
    if **dom != x.space {
        return Err(mismatch(&dom.to_string(), &x.space));
    }
    let (desc, env) = decode_function_name(&f.name)?;
    let m = crate::dsl::build_machine(&desc, Some(Env::Name(env)))?;
    Ok(SpacePoint::opaque((**cod).clone(), m.apply(&x.name)))
}

/// `C(X x Y, Z) -> C(X, C(Y, Z))`.
pub fn curry_name(f: &SpacePoint) -> Result<SpacePoint> {
    let SpaceDescriptor::Function(dom, cod) = &f.space else {
        return Err(mismatch("a function space", &f.space));
    };
    let SpaceDescriptor::Product(x, y) = &**dom else {
        return Err(mismatch("a function space on a product", &f.space));
    };
    let (desc, _) = decode_function_name(&f.name)?;
    let curried = Descriptor::Curry(Box::new(desc));
    function_point(
        (**x).clone(),
        SpaceDescriptor::function((**y).clone(), (**cod).clone()),
        &curried,
    )
}

/// `C(X, C(Y, Z)) -> C(X x Y, Z)`.
pub fn uncurry_name(g: &SpacePoint) -> Result<SpacePoint> {
    let SpaceDescriptor::Function(x, inner) = &g.space else {
        return Err(mismatch("a function space", &g.space));
    };
    let SpaceDescriptor::Function(y, z) = &**inner else {
        return Err(mismatch("a function space into a function space", &g.space));
    };
    let (desc, _) = decode_function_name(&g.name)?;
    let uncurried = Descriptor::Uncurry(Box::new(desc));
    function_point(
        SpaceDescriptor::product((**x).clone(), (**y).clone()),
        (**z).clone(),
        &uncurried,
    )
}

struct Curry {
    inner: Descriptor,
    text: Vec<Nat>,
}

impl PrefixMachine for Curry {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let mut out = Vec::new();
        for i in 0..fuel.div_ceil(2) {
            out.push(self.text.get(i).copied().unwrap_or(0));
            match input.get(i) {
                Some(&v) => out.push(v),
                None => break,
            }
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Curry(Box::new(self.inner.clone()))
    }
}

/// `x -> name of (y -> F(x x y))`. `F` must not itself read an environment.
pub fn curry_machine(inner: &Descriptor) -> Machine {
    let body = Descriptor::Compose(Box::new(Descriptor::PairEnv), Box::new(inner.clone()));
    let text = body.to_string().bytes().map(|b| b as Nat + 1).collect();
    Machine::new(Curry {
        inner: inner.clone(),
        text,
    })
}

struct Uncurry(Machine);

impl PrefixMachine for Uncurry {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let x: Vec<Nat> = input.iter().step_by(2).copied().collect();
        let y: Vec<Nat> = input.iter().skip(1).step_by(2).copied().collect();
        let fname = self.0.step(&x, fuel);
        let Some(Ok(text)) = text_of_prefix(&fname) else {
            return Vec::new();
        };
        let Ok(desc) = crate::dsl::parse_machine(&text) else {
            return Vec::new();
        };
        let env: Vec<Nat> = fname.iter().skip(1).step_by(2).copied().collect();
        match crate::dsl::build_machine(&desc, Some(Env::Known(env))) {
            Ok(m) => m.step(&y, fuel),
            Err(_) => Vec::new(),
        }
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Uncurry(Box::new(self.0.descriptor()))
    }
}

/// `(x x y) -> G(x)(y)` where `G(x)` is a function name.
pub fn uncurry_machine(g: &Machine) -> Machine {
    Machine::new(Uncurry(g.clone()))
}
