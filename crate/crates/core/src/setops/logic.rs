//! Sierpinski logic on names, bit-exact.

use crate::error::{Error, Result};
use crate::jumps::{family_shuffle, jump_lift_n, nabla_logic, product_shuffle, NablaLogic};
use crate::kernel::{compose, Descriptor, Machine, Nat, PrefixMachine};
use crate::spaces::Level;

/// `seen[k]`: some entry among the first `k + 1` is nonzero.
fn seen(v: &[Nat]) -> impl Iterator<Item = bool> + '_ {
    v.iter().scan(false, |acc, &x| {
        *acc |= x != 0;
        Some(*acc)
    })
}

/// `out(k) = 1` iff `a` or `b` (both, for `and`) has a nonzero among the first
/// `k + 1` entries; defined for `k < min(|a|, |b|)`.
pub fn binary_contract(a: &[Nat], b: &[Nat], is_and: bool) -> Vec<Nat> {
    seen(a)
        .zip(seen(b))
        .map(|(x, y)| if is_and { x && y } else { x || y } as Nat)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Logic {
    And,
    Or,
    Join,
}

impl Logic {
    fn table(self) -> &'static str {
        match self {
            Logic::And => "and",
            Logic::Or => "or",
            Logic::Join => "join",
        }
    }
}

struct Base(Logic);

impl PrefixMachine for Base {
    fn run(&self, input: &[Nat], _fuel: usize) -> Vec<Nat> {
        match self.0 {
            Logic::Join => seen(input).map(Nat::from).collect(),
            which => {
                let p: Vec<Nat> = input.iter().step_by(2).copied().collect();
                let q: Vec<Nat> = input.iter().skip(1).step_by(2).copied().collect();
                binary_contract(&p, &q, which == Logic::And)
            }
        }
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table(self.0.table().into())
    }
}

/// `∧`, `∨` on product names of Sierpinski names.
pub fn sierp_and() -> Machine {
    Machine::new(Base(Logic::And))
}

pub fn sierp_or() -> Machine {
    Machine::new(Base(Logic::Or))
}

/// `⋁` on tupled rows: `out(k) = 1` iff some position `<j, m> <= k` is nonzero.
pub fn sierp_join() -> Machine {
    Machine::new(Base(Logic::Join))
}

pub fn base_logic(which: Logic) -> Machine {
    Machine::new(Base(which))
}

/// The logic machine on level-`level` names.
pub fn lifted_logic(level: Level, which: Logic) -> Result<Machine> {
    match (level, which) {
        (Level::Jump(0), w) => Ok(base_logic(w)),
        (Level::Jump(k), Logic::Join) => Ok(compose(&family_shuffle(k), &jump_lift_n(&sierp_join(), k))),
        (Level::Jump(k), w) => Ok(compose(&product_shuffle(k), &jump_lift_n(&base_logic(w), k))),
        (Level::Nabla, Logic::And) => Ok(nabla_logic(NablaLogic::And)),
        (Level::Nabla, Logic::Or) => Ok(nabla_logic(NablaLogic::Or)),
        (Level::Nabla, Logic::Join) => Err(Error::UnsupportedLevel(
            "countable join at the nabla level: the mindchange functor does not preserve countable products".into(),
        )),
    }
}
