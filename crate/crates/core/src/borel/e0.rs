//! The space `E0`: binary sequences up to eventual agreement.

use crate::jumps::JumpName;
use crate::kernel::{
    interleave, unpair, Descriptor, EventuallyPeriodic, Machine, Nat, Oracle, PrefixMachine,
};

/// A point of `E0` with optional fixture data for exact equality.
#[derive(Clone, Debug)]
pub struct E0Point {
    pub name: Oracle,
    pub tail: Option<EventuallyPeriodic>,
}

impl E0Point {
    pub fn fixture(seq: EventuallyPeriodic) -> Self {
        E0Point {
            name: seq.clone().into(),
            tail: Some(seq),
        }
    }

    /// Exact equality in `E0`, when both points are fixtures.
    pub fn same_point(&self, other: &E0Point) -> Option<bool> {
        Some(self.tail.as_ref()?.tails_agree(other.tail.as_ref()?))
    }
}

struct E0Equal;

impl PrefixMachine for E0Equal {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let pairs = input.len() / 2;
        // agree_run[j]: length of the agreement run starting at j
        let mut agree_run = vec![0usize; pairs + 1];
        for j in (0..pairs).rev() {
            agree_run[j] = if input[2 * j] == input[2 * j + 1] {
                agree_run[j + 1] + 1
            } else {
                0
            };
        }
        let mut out = Vec::new();
        for c in 0..fuel as Nat {
            let (n, i) = unpair(c);
            if (n + i) as usize >= pairs {
                break;
            }
            out.push((agree_run[n as usize] > i as usize) as Nat);
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table("e0eq".into())
    }
}

/// On `x x y`: row `n`, column `i` is 1 iff `x` and `y` agree on `n..=n+i`.
/// Rows are 1s then possibly 0s forever; row `n` converges to 1 iff the
/// sequences agree from `n` on.
pub fn e0_equal_machine() -> Machine {
    Machine::new(E0Equal)
}

pub fn e0_equal_jump(x: &E0Point, y: &E0Point) -> JumpName {
    JumpName::new(e0_equal_machine().apply(&interleave(&x.name, &y.name)))
}
