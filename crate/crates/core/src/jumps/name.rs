//! Names of jump spaces and of the finite and ω levels of the jump tower.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{pair, pair_nested, EventuallyPeriodic, Machine, Nat, Oracle};

use super::lift::inject_into_jump;

/// A name of `X'`: row `n`, column `i` is `base(<n, i>)`.
#[derive(Clone)]
pub struct JumpName {
    pub base: Oracle,
    row_bound: Option<Arc<dyn Fn(Nat) -> Nat + Send + Sync>>,
    limit: Option<EventuallyPeriodic>,
}

impl JumpName {
    pub fn new(base: Oracle) -> Self {
        JumpName {
            base,
            row_bound: None,
            limit: None,
        }
    }

    /// A fixture: row `n` is `noise[n]` followed by `limit(n)` forever.
    /// Rows past `noise.len()` are constant from column 0.
    pub fn fixture(limit: EventuallyPeriodic, noise: Vec<Vec<Nat>>) -> Self {
        let noise = Arc::new(noise);
        let lim = limit.clone();
        let rows = noise.clone();
        let base = Oracle::from_fn(move |c| {
            let (n, i) = crate::kernel::unpair(c);
            match rows.get(n as usize).and_then(|r| r.get(i as usize)) {
                Some(&v) => v,
                None => lim.at(n),
            }
        });
        let bounds = noise.clone();
        JumpName {
            base,
            row_bound: Some(Arc::new(move |n| {
                bounds.get(n as usize).map_or(0, |r| r.len() as Nat)
            })),
            limit: Some(limit),
        }
    }

    /// `injectIntoJump`: constant rows of `p`.
    pub fn inject(p: &Oracle) -> Self {
        let base = inject_into_jump().apply(p);
        JumpName {
            base,
            row_bound: Some(Arc::new(|_| 0)),
            limit: p.as_fixture().cloned(),
        }
    }

    pub fn entry(&self, n: Nat, i: Nat) -> Nat {
        self.base.at(pair(n, i))
    }

    pub fn row(&self, n: Nat) -> Oracle {
        crate::kernel::row(&self.base, n)
    }

    /// Column from which row `n` is constant, when known.
    pub fn row_bound(&self, n: Nat) -> Option<Nat> {
        self.row_bound.as_ref().map(|b| b(n))
    }

    /// Exact row-wise limit, for fixtures.
    pub fn exact_limit(&self) -> Option<&EventuallyPeriodic> {
        self.limit.as_ref()
    }

    /// Row limit read off at the known stabilization bound.
    pub fn stabilized(&self, n: Nat) -> Option<Nat> {
        self.row_bound(n).map(|b| self.entry(n, b))
    }

    /// Apply a machine to the base name. The result carries no bounds.
    pub fn map(&self, m: &Machine) -> JumpName {
        JumpName::new(m.apply(&self.base))
    }
}

impl fmt::Debug for JumpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.limit {
            Some(l) => write!(f, "JumpName(limit {l})"),
            None => write!(f, "JumpName({:?})", self.base),
        }
    }
}

/// Level index for the tower `X, X', X'', ..., X^(ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerLevel {
    Finite(u32),
    Omega,
}

/// Largest finite level decodable from an ω-level head.
pub const MAX_TOWER_LEVEL: u32 = 8;

/// A name of `X^(k)` for finite `k`: `lim^k` of it names a point of `X`.
#[derive(Clone, Debug)]
pub struct TowerName {
    pub level: u32,
    pub name: Oracle,
}

impl TowerName {
    /// Entry at base index `n` and columns `cols` (innermost first).
    pub fn entry(&self, n: Nat, cols: &[Nat]) -> Nat {
        assert_eq!(cols.len(), self.level as usize, "one column per level");
        self.name.at(pair_nested(n, cols))
    }
}

/// Encode a finite-level name at `level`. For ω the head is the summand.
pub fn encode_level_name(level: TowerLevel, point: &TowerName) -> Result<Oracle> {
    match level {
        TowerLevel::Finite(k) if k == point.level => Ok(point.name.clone()),
        TowerLevel::Finite(k) => Err(Error::Precondition(format!(
            "name of level {} cannot be encoded at level {k}",
            point.level
        ))),
        TowerLevel::Omega => {
            if point.level > MAX_TOWER_LEVEL {
                return Err(Error::UnsupportedLevel(format!(
                    "level {} above {MAX_TOWER_LEVEL}",
                    point.level
                )));
            }
            let head = point.level as Nat;
            let tail = point.name.clone();
            Ok(Oracle::from_fn(
                move |n| if n == 0 { head } else { tail.at(n - 1) },
            ))
        }
    }
}

/// Inverse of [`encode_level_name`].
pub fn decode_level_name(level: TowerLevel, name: &Oracle) -> Result<TowerName> {
    match level {
        TowerLevel::Finite(k) => Ok(TowerName {
            level: k,
            name: name.clone(),
        }),
        TowerLevel::Omega => {
            let head = name.at(0);
            if head > MAX_TOWER_LEVEL as Nat {
                return Err(Error::Precondition(format!(
                    "ω-level head {head} out of range 0..={MAX_TOWER_LEVEL}"
                )));
            }
            let inner = name.clone();
            Ok(TowerName {
                level: head as u32,
                name: Oracle::from_fn(move |n| inner.at(n + 1)),
            })
        }
    }
}
