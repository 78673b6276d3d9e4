//! Total sequences `N -> N`: the names every represented space ranges over.

use std::fmt;
use std::sync::Arc;

use super::pairing::{pair, unpair};
use super::Nat;

/// An eventually periodic sequence: `pre` followed by `period` repeated.
///
/// These are the fixtures of the test layer. Tail properties (eventual
/// agreement, finitely many nonzero entries, row limits) are decidable on
/// them by looking at one period past the longest preperiod.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodic {
    pre: Vec<Nat>,
    period: Vec<Nat>,
}

impl EventuallyPeriodic {
    /// Panics when `period` is empty.
    pub fn new(pre: Vec<Nat>, period: Vec<Nat>) -> Self {
        assert!(
            !period.is_empty(),
            "eventually periodic sequence needs a non-empty period"
        );
        EventuallyPeriodic { pre, period }
    }

    pub fn constant(v: Nat) -> Self {
        Self::new(vec![], vec![v])
    }

    /// `[0; k] ++ [1] ++ 0^w`: a Sierpinski name that turns true at step `k`.
    pub fn top_at(k: usize) -> Self {
        let mut pre = vec![0; k];
        pre.push(1);
        Self::new(pre, vec![0])
    }

    pub fn pre(&self) -> &[Nat] {
        &self.pre
    }

    pub fn period(&self) -> &[Nat] {
        &self.period
    }

    pub fn at(&self, n: Nat) -> Nat {
        let n = n as usize;
        if n < self.pre.len() {
            self.pre[n]
        } else {
            self.period[(n - self.pre.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<Nat> {
        (0..len as Nat).map(|i| self.at(i)).collect()
    }

    /// Shortest equivalent presentation.
    pub fn normalized(&self) -> Self {
        let full = self.prefix(self.pre.len() + self.period.len());
        // smallest period
        let plen = self.period.len();
        let mut best_p = plen;
        for p in 1..=plen {
            if plen.is_multiple_of(p) && (0..plen).all(|i| self.period[i] == self.period[i % p]) {
                best_p = p;
                break;
            }
        }
        let mut start = self.pre.len();
        // pull the preperiod back while the sequence is already periodic
        while start > 0 && full[start - 1] == self.at((start - 1 + best_p) as Nat) {
            start -= 1;
        }
        let pre = full[..start].to_vec();
        let period = (start..start + best_p).map(|i| self.at(i as Nat)).collect();
        EventuallyPeriodic { pre, period }
    }

    /// Index after which both sequences are periodic, and a common period.
    fn joint_window(&self, other: &Self) -> (usize, usize) {
        let start = self.pre.len().max(other.pre.len());
        (start, lcm(self.period.len(), other.period.len()))
    }

    /// Pointwise equality, decided exactly.
    pub fn same_sequence(&self, other: &Self) -> bool {
        let (start, w) = self.joint_window(other);
        (0..(start + w) as Nat).all(|i| self.at(i) == other.at(i))
    }

    /// `exists n. self[n..] == other[n..]`, decided exactly.
    pub fn tails_agree(&self, other: &Self) -> bool {
        self.tail_agreement_start(other).is_some()
    }

    /// Least `n` with `self[n..] == other[n..]`, if any.
    pub fn tail_agreement_start(&self, other: &Self) -> Option<usize> {
        let (start, w) = self.joint_window(other);
        if !(start..start + w).all(|i| self.at(i as Nat) == other.at(i as Nat)) {
            return None;
        }
        let mut n = start;
        while n > 0 && self.at((n - 1) as Nat) == other.at((n - 1) as Nat) {
            n -= 1;
        }
        Some(n)
    }

    /// Values occurring infinitely often.
    pub fn recurring_values(&self) -> Vec<Nat> {
        let mut v = self.period.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Limit of the sequence, if it is eventually constant.
    pub fn limit(&self) -> Option<Nat> {
        let first = self.period[0];
        self.period.iter().all(|&x| x == first).then_some(first)
    }

    /// Index of the first nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        let len = self.pre.len() + self.period.len();
        (0..len).find(|&i| self.at(i as Nat) != 0)
    }

    pub fn is_binary(&self) -> bool {
        self.pre.iter().chain(self.period.iter()).all(|&v| v <= 1)
    }

    /// `(a x b)(2i) = a(i)`, `(a x b)(2i+1) = b(i)`, as an exact fixture.
    pub fn interleave(a: &Self, b: &Self) -> Self {
        let start = a.pre.len().max(b.pre.len());
        let w = lcm(a.period.len(), b.period.len());
        let mut pre = Vec::with_capacity(2 * start);
        for i in 0..start as Nat {
            pre.push(a.at(i));
            pre.push(b.at(i));
        }
        let mut period = Vec::with_capacity(2 * w);
        for i in start as Nat..(start + w) as Nat {
            period.push(a.at(i));
            period.push(b.at(i));
        }
        EventuallyPeriodic::new(pre, period).normalized()
    }

    /// Entry-wise map, exact.
    pub fn map(&self, f: impl Fn(Nat) -> Nat) -> Self {
        EventuallyPeriodic::new(
            self.pre.iter().map(|&v| f(v)).collect(),
            self.period.iter().map(|&v| f(v)).collect(),
        )
    }

    /// The sequence with its first `k` entries dropped.
    pub fn shifted(&self, k: usize) -> Self {
        if k <= self.pre.len() {
            return EventuallyPeriodic::new(self.pre[k..].to_vec(), self.period.clone());
        }
        let off = (k - self.pre.len()) % self.period.len();
        let mut period = self.period[off..].to_vec();
        period.extend_from_slice(&self.period[..off]);
        EventuallyPeriodic::new(vec![], period)
    }
}

impl fmt::Display for EventuallyPeriodic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Nat]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "ep [{};{}]", join(&self.pre), join(&self.period))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A total deterministic sequence `N -> N`.
pub trait Sequence: Send + Sync {
    fn at(&self, n: Nat) -> Nat;

    fn prefix(&self, len: usize) -> Vec<Nat> {
        (0..len as Nat).map(|i| self.at(i)).collect()
    }

    /// The exact fixture form, when this sequence has one.
    fn fixture(&self) -> Option<&EventuallyPeriodic> {
        None
    }
}

impl Sequence for EventuallyPeriodic {
    fn at(&self, n: Nat) -> Nat {
        EventuallyPeriodic::at(self, n)
    }

    fn prefix(&self, len: usize) -> Vec<Nat> {
        EventuallyPeriodic::prefix(self, len)
    }

    fn fixture(&self) -> Option<&EventuallyPeriodic> {
        Some(self)
    }
}

struct FnSequence<F>(F);

impl<F> Sequence for FnSequence<F>
where
    F: Fn(Nat) -> Nat + Send + Sync,
{
    fn at(&self, n: Nat) -> Nat {
        (self.0)(n)
    }
}

/// Shared handle to a [`Sequence`].
#[derive(Clone)]
pub struct Oracle(Arc<dyn Sequence>);

impl Oracle {
    pub fn new(seq: impl Sequence + 'static) -> Self {
        Oracle(Arc::new(seq))
    }

    pub fn from_fn(f: impl Fn(Nat) -> Nat + Send + Sync + 'static) -> Self {
        Oracle::new(FnSequence(f))
    }

    pub fn fixture(pre: Vec<Nat>, period: Vec<Nat>) -> Self {
        Oracle::new(EventuallyPeriodic::new(pre, period))
    }

    pub fn constant(v: Nat) -> Self {
        Oracle::new(EventuallyPeriodic::constant(v))
    }

    pub fn at(&self, n: Nat) -> Nat {
        self.0.at(n)
    }

    pub fn prefix(&self, len: usize) -> Vec<Nat> {
        self.0.prefix(len)
    }

    pub fn as_fixture(&self) -> Option<&EventuallyPeriodic> {
        self.0.fixture()
    }

    /// Compare on `0..depth`, or exactly when both are fixtures.
    pub fn agrees_with(&self, other: &Oracle, depth: usize) -> bool {
        match (self.as_fixture(), other.as_fixture()) {
            (Some(a), Some(b)) => a.same_sequence(b),
            _ => self.prefix(depth) == other.prefix(depth),
        }
    }
}

impl From<EventuallyPeriodic> for Oracle {
    fn from(ep: EventuallyPeriodic) -> Self {
        Oracle::new(ep)
    }
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_fixture() {
            Some(ep) => write!(f, "Oracle({ep})"),
            None => write!(f, "Oracle({:?}..)", self.prefix(8)),
        }
    }
}

/// `p x q`: even positions from `p`, odd positions from `q`.
pub fn interleave(p: &Oracle, q: &Oracle) -> Oracle {
    if let (Some(a), Some(b)) = (p.as_fixture(), q.as_fixture()) {
        return EventuallyPeriodic::interleave(a, b).into();
    }
    let (p, q) = (p.clone(), q.clone());
    Oracle::from_fn(move |n| if n % 2 == 0 { p.at(n / 2) } else { q.at(n / 2) })
}

/// Inverse of [`interleave`].
pub fn split(r: &Oracle) -> (Oracle, Oracle) {
    (project(r, 0), project(r, 1))
}

/// Component `side` (0 or 1) of a product name.
pub fn project(r: &Oracle, side: Nat) -> Oracle {
    let r = r.clone();
    Oracle::from_fn(move |n| r.at(2 * n + side))
}

/// `tupleRows(ps)(<j, m>) = ps(j)(m)`.
pub fn tuple_rows(rows: impl Fn(Nat) -> Oracle + Send + Sync + 'static) -> Oracle {
    Oracle::from_fn(move |c| {
        let (j, m) = unpair(c);
        rows(j).at(m)
    })
}

/// [`tuple_rows`] over a finite list; rows past the end repeat the last one.
pub fn tuple_rows_vec(rows: Vec<Oracle>) -> Oracle {
    assert!(!rows.is_empty(), "tuple_rows_vec needs at least one row");
    tuple_rows(move |j| rows[(j as usize).min(rows.len() - 1)].clone())
}

/// Row `j` of a tupled name: `m -> q(<j, m>)`.
pub fn row(q: &Oracle, j: Nat) -> Oracle {
    let q = q.clone();
    Oracle::from_fn(move |m| q.at(pair(j, m)))
}

/// Column `i` of a tupled name: `n -> q(<n, i>)`.
pub fn column(q: &Oracle, i: Nat) -> Oracle {
    let q = q.clone();
    Oracle::from_fn(move |n| q.at(pair(n, i)))
}
