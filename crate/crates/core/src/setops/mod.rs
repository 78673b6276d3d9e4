//! The algebra of d-open sets: maps into `dS`, combined by lifted
//! Sierpinski logic.

pub mod logic;

use std::fmt;

use crate::error::{Error, Result};
use crate::jumps::{inject_into_jump, jump_lift_n, not_into_jump};
use crate::kernel::{
    compose, constant, pair_with_second, pairing, split, tupled, Descriptor, Family, Machine, Nat,
    Oracle, PrefixMachine,
};
use crate::spaces::{Level, SpaceDescriptor, SpacePoint};

pub use logic::{
    base_logic, binary_contract, lifted_logic, sierp_and, sierp_join, sierp_or, Logic,
};

/// A continuous map into `dS`, read as the set of points sent to top.
#[derive(Clone)]
pub struct DOpenSet {
    pub domain: SpaceDescriptor,
    pub level: Level,
    pub machine: Machine,
}

impl fmt::Debug for DOpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DOpenSet[{} on {}]({})",
            self.level,
            self.domain,
            self.machine.descriptor()
        )
    }
}

/// A realized continuous map between represented spaces.
#[derive(Clone, Debug)]
pub struct ContinuousMap {
    pub domain: SpaceDescriptor,
    pub codomain: SpaceDescriptor,
    pub machine: Machine,
}

impl ContinuousMap {
    pub fn new(domain: SpaceDescriptor, codomain: SpaceDescriptor, machine: Machine) -> Self {
        ContinuousMap {
            domain,
            codomain,
            machine,
        }
    }

    pub fn identity(space: SpaceDescriptor) -> Self {
        ContinuousMap::new(space.clone(), space, crate::kernel::identity())
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ContinuousMap) -> Result<ContinuousMap> {
        if self.codomain != g.domain {
            return Err(mismatch(&g.domain, &self.codomain));
        }
        Ok(ContinuousMap::new(
            self.domain.clone(),
            g.codomain.clone(),
            compose(&self.machine, &g.machine),
        ))
    }
}

fn mismatch(expected: &SpaceDescriptor, found: &SpaceDescriptor) -> Error {
    Error::SpaceMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

struct Cylinder(Vec<u8>);

impl PrefixMachine for Cylinder {
    fn run(&self, input: &[Nat], _fuel: usize) -> Vec<Nat> {
        let w = &self.0;
        let hit = input.len() >= w.len() && w.iter().zip(input).all(|(&b, &v)| b as Nat == v);
        (0..input.len())
            .map(|k| (hit && k + 1 >= w.len()) as Nat)
            .collect()
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Cylinder(self.0.clone())
    }
}

/// Sierpinski name of "the input extends `w`": entry `k` is 1 iff `k + 1 >= |w|`
/// and the visible input starts with `w`.
pub fn cylinder_machine(w: &[u8]) -> Machine {
    Machine::new(Cylinder(w.to_vec()))
}

impl DOpenSet {
    pub fn new(domain: SpaceDescriptor, level: Level, machine: Machine) -> Self {
        DOpenSet {
            domain,
            level,
            machine,
        }
    }

    /// The basic open `[w]` of Cantor space.
    pub fn cylinder(w: &[u8]) -> Self {
        DOpenSet::new(SpaceDescriptor::Cantor, Level::BASE, cylinder_machine(w))
    }

    /// Everything (`full = true`) or nothing, at `level`.
    pub fn trivial(domain: SpaceDescriptor, level: Level, full: bool) -> Self {
        let m = match level {
            Level::Nabla => constant(vec![0, if full { 2 } else { 1 }]),
            Level::Jump(_) => constant(vec![full as Nat]),
        };
        DOpenSet::new(domain, level, m)
    }

    /// The membership name of a point, a name of `dS`.
    pub fn membership(&self, x: &Oracle) -> Oracle {
        self.machine.apply(x)
    }

    fn check_same(&self, other: &DOpenSet) -> Result<()> {
        if self.domain != other.domain {
            return Err(mismatch(&self.domain, &other.domain));
        }
        if self.level != other.level {
            return Err(Error::Precondition(format!(
                "levels differ: {} vs {}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    fn binary(&self, other: &DOpenSet, which: Logic) -> Result<DOpenSet> {
        self.check_same(other)?;
        let m = compose(
            &pairing(&self.machine, &other.machine),
            &lifted_logic(self.level, which)?,
        );
        Ok(DOpenSet::new(self.domain.clone(), self.level, m))
    }

    pub fn intersect(&self, other: &DOpenSet) -> Result<DOpenSet> {
        self.binary(other, Logic::And)
    }

    pub fn union(&self, other: &DOpenSet) -> Result<DOpenSet> {
        self.binary(other, Logic::Or)
    }
}

/// `f⁻¹(U)`.
pub fn preimage(f: &ContinuousMap, u: &DOpenSet) -> Result<DOpenSet> {
    if f.codomain != u.domain {
        return Err(mismatch(&u.domain, &f.codomain));
    }
    Ok(DOpenSet::new(
        f.domain.clone(),
        u.level,
        compose(&f.machine, &u.machine),
    ))
}

/// Preimage under an untyped endomap of `U`'s domain.
pub fn preimage_by(m: &Machine, u: &DOpenSet) -> DOpenSet {
    DOpenSet::new(u.domain.clone(), u.level, compose(m, &u.machine))
}

/// `{x | (x, y) ∈ U}`.
pub fn cut(y: &SpacePoint, u: &DOpenSet) -> Result<DOpenSet> {
    let SpaceDescriptor::Product(x_space, y_space) = &u.domain else {
        return Err(Error::SpaceMismatch {
            expected: "a product space".into(),
            found: u.domain.to_string(),
        });
    };
    if **y_space != y.space {
        return Err(mismatch(y_space, &y.space));
    }
    Ok(DOpenSet::new(
        (**x_space).clone(),
        u.level,
        compose(&pair_with_second(&y.name), &u.machine),
    ))
}

/// `U x V` over the product of the domains.
pub fn product_set(u: &DOpenSet, v: &DOpenSet) -> Result<DOpenSet> {
    if u.level != v.level {
        return Err(Error::Precondition(format!(
            "levels differ: {} vs {}",
            u.level, v.level
        )));
    }
    let left = compose(&split(0), &u.machine);
    let right = compose(&split(1), &v.machine);
    let m = compose(&pairing(&left, &right), &lifted_logic(u.level, Logic::And)?);
    Ok(DOpenSet::new(
        SpaceDescriptor::product(u.domain.clone(), v.domain.clone()),
        u.level,
        m,
    ))
}

/// `⋃_n U_n` for a family of set machines over `domain` at `level`.
pub fn countable_union(
    domain: SpaceDescriptor,
    level: Level,
    members: &Family,
) -> Result<DOpenSet> {
    let join = lifted_logic(level, Logic::Join)?;
    Ok(DOpenSet::new(
        domain,
        level,
        compose(&tupled(members), &join),
    ))
}

/// [`countable_union`] of a list; the last set repeats.
pub fn union_of(sets: &[DOpenSet]) -> Result<DOpenSet> {
    let first = sets
        .first()
        .ok_or_else(|| Error::Precondition("empty list of sets".into()))?;
    for s in sets {
        first.check_same(s)?;
    }
    let fam = Family::from_list(sets.iter().map(|s| s.machine.clone()).collect());
    countable_union(first.domain.clone(), first.level, &fam)
}

/// The same set (or its complement) one jump level higher.
pub fn level_up(u: &DOpenSet, complement: bool) -> Result<DOpenSet> {
    let Level::Jump(k) = u.level else {
        return Err(Error::UnsupportedLevel(
            "levelUp needs a jump level, not nabla".into(),
        ));
    };
    // constant rows on the outermost level: lim of them is the level-k name itself
    let lift = if complement {
        jump_lift_n(&not_into_jump(), k)
    } else {
        inject_into_jump()
    };
    Ok(DOpenSet::new(
        u.domain.clone(),
        Level::Jump(k + 1),
        compose(&u.machine, &lift),
    ))
}
