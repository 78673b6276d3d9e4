//! Countable families of machines, `n -> F_n`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::descriptor::Descriptor;
use super::machine::{Machine, PrefixMachine};
use super::pairing::unpair;
use super::Nat;

#[derive(Clone)]
pub struct Family {
    member: Arc<dyn Fn(Nat) -> Machine + Send + Sync>,
    listed: Option<Vec<Machine>>,
    label: String,
}

impl Family {
    /// `F_n = members[min(n, len - 1)]`.
    pub fn from_list(members: Vec<Machine>) -> Self {
        assert!(!members.is_empty(), "a family needs at least one member");
        let shared = members.clone();
        Family {
            member: Arc::new(move |n| shared[(n as usize).min(shared.len() - 1)].clone()),
            listed: Some(members),
            label: String::new(),
        }
    }

    pub fn from_fn(
        label: impl Into<String>,
        f: impl Fn(Nat) -> Machine + Send + Sync + 'static,
    ) -> Self {
        Family {
            member: Arc::new(f),
            listed: None,
            label: label.into(),
        }
    }

    pub fn member(&self, n: Nat) -> Machine {
        (self.member)(n)
    }

    pub fn descriptors(&self) -> Vec<Descriptor> {
        match &self.listed {
            Some(ms) => ms.iter().map(Machine::descriptor).collect(),
            None => vec![Descriptor::Opaque(self.label.clone())],
        }
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family({:?})", self.descriptors())
    }
}

struct Tupled(Family);

impl PrefixMachine for Tupled {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let mut rows: HashMap<Nat, Vec<Nat>> = HashMap::new();
        let mut out = Vec::new();
        for c in 0..fuel as Nat {
            let (j, m) = unpair(c);
            let row = rows
                .entry(j)
                .or_insert_with(|| self.0.member(j).step(input, fuel));
            match row.get(m as usize) {
                Some(&v) => out.push(v),
                None => break,
            }
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Family(self.0.descriptors())
    }
}

/// `p -> tupleRows(F_0(p), F_1(p), ...)`.
pub fn tupled(family: &Family) -> Machine {
    Machine::new(Tupled(family.clone()))
}
