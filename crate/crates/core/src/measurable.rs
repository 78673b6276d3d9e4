//! Measurable functions as preimage maps, heterogeneous composition, and the
//! `κ` plumbing for opens of `N`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::jumps::{family_shuffle, jump_lift_n, nabla_lift};
use crate::kernel::{compose, pair, tuple_rows, Descriptor, Machine, Nat, Oracle, Reindex};
use crate::setops::DOpenSet;
use crate::spaces::{Level, SpaceDescriptor};

type PreimageFn = dyn Fn(&DOpenSet) -> Result<DOpenSet> + Send + Sync;

/// A point of `C^d(X, Y)`: opens of `Y` to `d`-opens of `X`.
#[derive(Clone)]
pub struct MeasurableFunctionName {
    pub domain: SpaceDescriptor,
    pub codomain: SpaceDescriptor,
    pub level: Level,
    preimage: Arc<PreimageFn>,
}

impl fmt::Debug for MeasurableFunctionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Measurable[{}]({} -> {})",
            self.level, self.domain, self.codomain
        )
    }
}

impl MeasurableFunctionName {
    /// The `level`-open preimage of a base-level open of the codomain.
    pub fn preimage(&self, u: &DOpenSet) -> Result<DOpenSet> {
        if u.domain != self.codomain {
            return Err(Error::SpaceMismatch {
                expected: self.codomain.to_string(),
                found: u.domain.to_string(),
            });
        }
        if u.level != Level::BASE {
            return Err(Error::Precondition(format!(
                "preimages are taken of base-level opens, got {}",
                u.level
            )));
        }
        (self.preimage)(u)
    }
}

/// Lift a machine on base names to `level` names of the same spaces.
pub fn level_lift(m: &Machine, level: Level) -> Machine {
    match level {
        Level::Jump(k) => jump_lift_n(m, k),
        Level::Nabla => nabla_lift(m),
    }
}

/// `C(X, dY) -> C^d(X, Y)`: `U -> f ; d(U)`.
pub fn continuous_to_measurable(
    f: &Machine,
    domain: SpaceDescriptor,
    codomain: SpaceDescriptor,
    level: Level,
) -> MeasurableFunctionName {
    let f = f.clone();
    let dom = domain.clone();
    MeasurableFunctionName {
        domain,
        codomain,
        level,
        preimage: Arc::new(move |u| {
            Ok(DOpenSet::new(
                dom.clone(),
                level,
                compose(&f, &level_lift(&u.machine, level)),
            ))
        }),
    }
}

/// Level of `e` applied after `d`, where supported.
pub fn compose_levels(e: Level, d: Level) -> Result<Level> {
    match (e, d) {
        (Level::Jump(a), Level::Jump(b)) => Ok(Level::Jump(a + b)),
        (Level::Jump(0), Level::Nabla) | (Level::Nabla, Level::Jump(0)) => Ok(Level::Nabla),
        _ => Err(Error::UnsupportedLevel(format!(
            "cannot compose {e} after {d}"
        ))),
    }
}

/// `C(X, eY) x C^d(Y, Z) -> C^{ed}(X, Z)`: `U -> f ; e(g⁻¹(U))`.
pub fn compose_het(
    f: &Machine,
    domain: SpaceDescriptor,
    e: Level,
    g: &MeasurableFunctionName,
) -> Result<MeasurableFunctionName> {
    let level = compose_levels(e, g.level)?;
    let (f, g2, dom) = (f.clone(), g.clone(), domain.clone());
    Ok(MeasurableFunctionName {
        domain,
        codomain: g.codomain.clone(),
        level,
        preimage: Arc::new(move |u| {
            let inner = g2.preimage(u)?;
            Ok(DOpenSet::new(
                dom.clone(),
                level,
                compose(&f, &level_lift(&inner.machine, e)),
            ))
        }),
    })
}

/// `κ(y)`: opens of `Y` evaluated at a `d`-name `y`.
#[derive(Clone, Debug)]
pub struct Kappa {
    pub y: Oracle,
    pub level: Level,
}

pub fn kappa(y: &Oracle, level: Level) -> Kappa {
    Kappa {
        y: y.clone(),
        level,
    }
}

impl Kappa {
    /// `d(U)(y)`, a name of `dS`.
    pub fn apply(&self, u: &DOpenSet) -> Result<Oracle> {
        if u.level != Level::BASE {
            return Err(Error::Precondition(format!(
                "κ takes base-level opens, got {}",
                u.level
            )));
        }
        Ok(level_lift(&u.machine, self.level).apply(&self.y))
    }
}

/// `O(N)` is named by its tupled membership rows: row `n` is a Sierpinski
/// name of `n ∈ U`.
pub fn open_nat_space() -> SpaceDescriptor {
    SpaceDescriptor::Open(Box::new(SpaceDescriptor::Nat), Level::BASE)
}

/// The open `{U ∈ O(N) | n ∈ U}`: reads row `n`.
pub fn contains_point(n: Nat) -> DOpenSet {
    let m = Reindex::machine(Descriptor::Opaque(format!("row{n}")), move |m| pair(n, m));
    DOpenSet::new(open_nat_space(), Level::BASE, m)
}

/// Recover a jump-`k` name of an open of `N` from its `κ` image: feed `phi`
/// the opens [`contains_point`]`(n)` and reassemble the rows with the
/// family shuffle. `phi` must succeed on these opens.
pub fn kappa_inverse_on_open_nat(
    phi: impl Fn(&DOpenSet) -> Result<Oracle> + Send + Sync + 'static,
    k: u32,
) -> Result<Oracle> {
    phi(&contains_point(0))?;
    let cache: Mutex<HashMap<Nat, Oracle>> = Mutex::default();
    let rows = tuple_rows(move |n| {
        let mut cache = cache.lock().unwrap_or_else(|e| e.into_inner());
        cache
            .entry(n)
            .or_insert_with(|| phi(&contains_point(n)).expect("phi failed on a membership open"))
            .clone()
    });
    Ok(family_shuffle(k).apply(&rows))
}
