//! Named fixture sets with exact membership, shared by tests and the CLI.

use std::sync::Arc;

use crate::kernel::{EventuallyPeriodic, Nat};
use crate::setops::{level_up, DOpenSet};
use crate::spaces::{Level, SpaceDescriptor};

use super::overt::{HitPredicate, OvertCantorSet};
use super::sigma2::finitely_many_ones_chi;

/// An overt subset of Cantor space given by its hit predicate.
#[derive(Clone)]
pub struct OvertFixture {
    pub label: &'static str,
    pub hit: HitPredicate,
}

impl OvertFixture {
    pub fn set(&self) -> OvertCantorSet {
        let hit = self.hit.clone();
        OvertCantorSet::from_predicate(move |w| hit(w))
    }
}

fn is_prefix_of_point(w: &[u8], q: &EventuallyPeriodic) -> bool {
    w.iter()
        .enumerate()
        .all(|(i, &b)| q.at(i as Nat) == b as Nat)
}

/// Full space, `{p | p(2i) = 0}`, the single point `(01)^ω`, `{0^ω, 1^ω}` and
/// the golden-mean shift (no `11`).
pub fn overt_fixtures() -> Vec<OvertFixture> {
    let single = EventuallyPeriodic::new(vec![], vec![0, 1]);
    vec![
        OvertFixture {
            label: "full",
            hit: Arc::new(|_| true),
        },
        OvertFixture {
            label: "even-zero",
            hit: Arc::new(|w| w.iter().step_by(2).all(|&b| b == 0)),
        },
        OvertFixture {
            label: "single",
            hit: Arc::new(move |w| is_prefix_of_point(w, &single)),
        },
        OvertFixture {
            label: "two-points",
            hit: Arc::new(|w| w.iter().all(|&b| b == 0) || w.iter().all(|&b| b == 1)),
        },
        OvertFixture {
            label: "golden-mean",
            hit: Arc::new(|w| !w.windows(2).any(|p| p == [1, 1])),
        },
    ]
}

/// A jump-one open subset of Cantor space with exact membership.
pub struct Sigma2Fixture {
    pub label: &'static str,
    pub set: DOpenSet,
    pub contains: fn(&EventuallyPeriodic) -> bool,
}

/// Finitely many ones; `[1]` lifted; the complement of `[00]`.
pub fn sigma2_fixtures() -> Vec<Sigma2Fixture> {
    let finones = DOpenSet::new(
        SpaceDescriptor::Cantor,
        Level::Jump(1),
        finitely_many_ones_chi(),
    );
    vec![
        Sigma2Fixture {
            label: "finitely-many-ones",
            set: finones,
            contains: |p| p.period().iter().all(|&v| v == 0),
        },
        Sigma2Fixture {
            label: "up-cyl-1",
            set: level_up(&DOpenSet::cylinder(&[1]), false).expect("base level"),
            contains: |p| p.at(0) == 1,
        },
        Sigma2Fixture {
            label: "upc-cyl-00",
            set: level_up(&DOpenSet::cylinder(&[0, 0]), true).expect("base level"),
            contains: |p| p.prefix(2) != [0, 0],
        },
    ]
}

/// The empty jump-one open set.
pub fn empty_sigma2() -> DOpenSet {
    DOpenSet::trivial(SpaceDescriptor::Cantor, Level::Jump(1), false)
}
