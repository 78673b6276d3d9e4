//! Serializable combinator expressions for machines.
//!
//! Grammar (whitespace is insignificant between tokens):
//!
//! ```text
//! m ::= id
//!     | const(<nat>, ...)            emit the list, then repeat its last entry
//!     | compose(<m>, <m>)            run the first, feed the second
//!     | interleave                   p -> p x p
//!     | interleave(<m>, <m>)         p -> F(p) x G(p)
//!     | split(0|1)                   component of a product name
//!     | delay(<nat>, <m>)            silent until <nat> inputs are visible
//!     | table(<name>)                named primitive, see `dsl::TABLE_NAMES`
//!     | cyl(<bits>)                  Sierpinski name of "input extends bits"
//!     | jumplift(<m>)                the limit-jump lifting of <m>
//!     | nablalift(<m>)               the guess-wise lifting of <m> to ∇-names
//!     | pwlim(<m>, ...)              pointwise limit; the family repeats its last member
//!     | family(<m>, ...)             p -> tupleRows(F_0(p), F_1(p), ...), last repeats
//!     | pairwith(<fixture>)          x -> x x y for a fixed fixture y
//!     | pairenv                      y -> env x y, env bound by a function name
//!     | curry(<m>)                   x -> name of (y -> m(x x y))
//!     | uncurry(<m>)                 (x x y) -> (m(x))(y)
//! ```
//!
//! `<fixture>` is `ep [a,b ; c,d]`: preperiod `a,b`, then `c,d` forever.

use std::fmt;

use super::oracle::EventuallyPeriodic;
use super::Nat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Id,
    Const(Vec<Nat>),
    Compose(Box<Descriptor>, Box<Descriptor>),
    Interleave(Option<(Box<Descriptor>, Box<Descriptor>)>),
    Split(u8),
    Delay(Nat, Box<Descriptor>),
    Table(String),
    Cylinder(Vec<u8>),
    JumpLift(Box<Descriptor>),
    NablaLift(Box<Descriptor>),
    PwLim(Vec<Descriptor>),
    Family(Vec<Descriptor>),
    PairWith(EventuallyPeriodic),
    PairEnv,
    Curry(Box<Descriptor>),
    Uncurry(Box<Descriptor>),
    /// Host-code machine. Printed but not parseable.
    Opaque(String),
}

impl Descriptor {
    /// True when the printed form parses back (no host-code parts).
    pub fn is_serializable(&self) -> bool {
        use Descriptor::*;
        match self {
            Opaque(_) => false,
            Compose(a, b) => a.is_serializable() && b.is_serializable(),
            Interleave(Some((a, b))) => a.is_serializable() && b.is_serializable(),
            Delay(_, m) | JumpLift(m) | NablaLift(m) | Curry(m) | Uncurry(m) => m.is_serializable(),
            PwLim(ms) | Family(ms) => ms.iter().all(Descriptor::is_serializable),
            _ => true,
        }
    }
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Descriptor::*;
        match self {
            Id => write!(f, "id"),
            Const(v) => write!(f, "const({})", list(v)),
            Compose(a, b) => write!(f, "compose({a},{b})"),
            Interleave(None) => write!(f, "interleave"),
            Interleave(Some((a, b))) => write!(f, "interleave({a},{b})"),
            Split(s) => write!(f, "split({s})"),
            Delay(k, m) => write!(f, "delay({k},{m})"),
            Table(name) => write!(f, "table({name})"),
            Cylinder(bits) => {
                write!(f, "cyl(")?;
                for b in bits {
                    write!(f, "{b}")?;
                }
                write!(f, ")")
            }
            JumpLift(m) => write!(f, "jumplift({m})"),
            NablaLift(m) => write!(f, "nablalift({m})"),
            PwLim(ms) => write!(f, "pwlim({})", list(ms)),
            Family(ms) => write!(f, "family({})", list(ms)),
            PairWith(ep) => write!(f, "pairwith({ep})"),
            PairEnv => write!(f, "pairenv"),
            Curry(m) => write!(f, "curry({m})"),
            Uncurry(m) => write!(f, "uncurry({m})"),
            Opaque(label) => write!(f, "<host:{label}>"),
        }
    }
}
