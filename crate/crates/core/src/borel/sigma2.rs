//! Decomposition of a jump-one open subset of Cantor space into countably
//! many closed pieces, and its use for deciding nonemptiness in the limit.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::jumps::{jump_lift, JumpName};
use crate::kernel::{
    pair, unpair, Descriptor, EventuallyPeriodic, Machine, Nat, Oracle, PrefixMachine,
};
use crate::setops::{sierp_join, DOpenSet};
use crate::spaces::{Level, SpaceDescriptor};

use super::closed::ClosedCantorSet;
use super::words::{word_code, word_of_index};

pub const DEFAULT_MAX_DEPTH: usize = 12;

/// Machine fuel at extension depth `d`.
pub fn stage_fuel(d: usize) -> usize {
    8 * (d + 1) * (d + 1)
}

/// For every word of length `d`: per row `n`, the largest column `i` with a
/// zero at `<n, i>` in the fuel-bounded output, or -1.
struct Stage {
    zero_cols: Vec<Vec<i64>>,
}

impl Stage {
    fn compute(m: &Machine, d: usize, exec: Exec) -> Stage {
        let fuel = stage_fuel(d);
        let first = (1usize << d) - 1;
        let zero_cols = exec.map_range(0..1 << d, |k| {
            let w: Vec<Nat> = word_of_index((first + k) as Nat)
                .into_iter()
                .map(Nat::from)
                .collect();
            let out = m.step(&w, fuel);
            let mut rows: Vec<i64> = Vec::new();
            for (c, &v) in out.iter().enumerate() {
                if v == 0 {
                    let (n, i) = unpair(c as Nat);
                    if rows.len() <= n as usize {
                        rows.resize(n as usize + 1, -1);
                    }
                    rows[n as usize] = rows[n as usize].max(i as i64);
                }
            }
            rows
        });
        Stage { zero_cols }
    }

    /// Extension `k` of length `d` certifies exclusion from piece `<n, k0>`.
    fn bad(&self, k: usize, n: Nat, k0: Nat) -> bool {
        self.zero_cols[k]
            .get(n as usize)
            .is_some_and(|&i| i >= k0 as i64)
    }
}

/// `U = ⋃ A_{n,k}` with `A_{n,k} = {p | χ(p)(<n, i>) = 1 for all i >= k}`.
///
/// Piece `<n, k>` is a removed-word stream in stages `d = 0..=max_depth`.
/// Stage `d` runs `χ` on every word of length `d` at fuel [`stage_fuel`]`(d)`;
/// a word is certified when all its length-`d` extensions show a zero at some
/// `<n, i>` with `i >= k`. The stage lists each newly certified word not
/// already covered, shortest first, or a single stutter. After the last stage
/// the stream stutters forever.
pub struct Sigma2Decomposition {
    stages: Vec<Stage>,
    pieces: Mutex<HashMap<(Nat, Nat), Arc<EventuallyPeriodic>>>,
}

impl Sigma2Decomposition {
    pub fn new(u: &DOpenSet, max_depth: usize) -> Result<Self> {
        Self::with_exec(u, max_depth, Exec::default())
    }

    pub fn with_exec(u: &DOpenSet, max_depth: usize, exec: Exec) -> Result<Self> {
        if u.domain != SpaceDescriptor::Cantor {
            return Err(Error::SpaceMismatch {
                expected: "Cantor".into(),
                found: u.domain.to_string(),
            });
        }
        if u.level != Level::Jump(1) {
            return Err(Error::UnsupportedLevel(format!(
                "decomposition needs jump^1, got {}",
                u.level
            )));
        }
        let stages = (0..=max_depth)
            .map(|d| Stage::compute(&u.machine, d, exec))
            .collect();
        Ok(Sigma2Decomposition {
            stages,
            pieces: Mutex::default(),
        })
    }

    pub fn max_depth(&self) -> usize {
        self.stages.len() - 1
    }

    fn stream(&self, n: Nat, k0: Nat) -> Vec<Nat> {
        let mut tokens = Vec::new();
        // covered[l][x]: word x of length l lies under a listed word
        let mut covered: Vec<Vec<bool>> = Vec::new();
        for (d, stage) in self.stages.iter().enumerate() {
            covered.push(vec![false; 1 << d]);
            // certified[l][x] for this stage, bottom-up from length d
            let mut certified: Vec<Vec<bool>> = vec![Vec::new(); d + 1];
            certified[d] = (0..1 << d).map(|k| stage.bad(k, n, k0)).collect();
            for l in (0..d).rev() {
                certified[l] = (0..1 << l)
                    .map(|x| certified[l + 1][2 * x] && certified[l + 1][2 * x + 1])
                    .collect();
            }
            let before = tokens.len();
            for l in 0..=d {
                for x in 0..1usize << l {
                    if l > 0 && covered[l - 1][x / 2] {
                        covered[l][x] = true;
                    }
                    if !covered[l][x] && certified[l][x] {
                        covered[l][x] = true;
                        tokens.push(word_code(&word_of_index(((1 << l) - 1 + x) as Nat)));
                    }
                }
            }
            if tokens.len() == before {
                tokens.push(0);
            }
        }
        tokens
    }

    /// The removed-word stream of `A_{n,k}`.
    pub fn piece(&self, n: Nat, k: Nat) -> ClosedCantorSet {
        let mut cache = self.pieces.lock().unwrap_or_else(|e| e.into_inner());
        let ep = cache
            .entry((n, k))
            .or_insert_with(|| Arc::new(EventuallyPeriodic::new(self.stream(n, k), vec![0])))
            .clone();
        ClosedCantorSet::new(Oracle::from((*ep).clone()))
    }

    /// Piece number `c = <n, k>`.
    pub fn piece_at(&self, c: Nat) -> ClosedCantorSet {
        let (n, k) = unpair(c);
        self.piece(n, k)
    }

    /// Is `x` in some piece `<n, k> <= max_code`?
    pub fn union_contains(&self, x: &EventuallyPeriodic, max_code: Nat) -> bool {
        (0..=max_code).any(|c| {
            let a = self.piece_at(c);
            let words = a.finite_removed().expect("pieces are finite fixtures");
            words.iter().all(|w| {
                !x.prefix(w.len())
                    .iter()
                    .zip(w)
                    .all(|(&v, &b)| v == b as Nat)
            })
        })
    }
}

/// `χ` for "finitely many nonzero entries": row `n`, column `i` is 1 iff
/// `p(n..=n+i)` is all zero.
struct FinitelyManyOnes;

impl PrefixMachine for FinitelyManyOnes {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        // zeros_from[j]: length of the zero run starting at j
        let mut zeros_from = vec![0usize; input.len() + 1];
        for j in (0..input.len()).rev() {
            zeros_from[j] = if input[j] == 0 {
                zeros_from[j + 1] + 1
            } else {
                0
            };
        }
        let mut out = Vec::new();
        for c in 0..fuel as Nat {
            let (n, i) = unpair(c);
            let last = (n + i) as usize;
            if last >= input.len() {
                break;
            }
            out.push((zeros_from[n as usize] > i as usize) as Nat);
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table("finones".into())
    }
}

pub fn finitely_many_ones_chi() -> Machine {
    Machine::new(FinitelyManyOnes)
}

/// Nonemptiness of `U` as a name of `S'`: the lifted join over the pieces'
/// nonemptiness names.
pub fn jump_overt_cantor(decomposition: &Arc<Sigma2Decomposition>) -> JumpName {
    let rows: Arc<Mutex<HashMap<Nat, JumpName>>> = Arc::default();
    let dec = decomposition.clone();
    // level-one name of the family: <<c, m>, i> -> row c at <m, i>
    let family = Oracle::from_fn(move |pos| {
        let (x, i) = unpair(pos);
        let (c, m) = unpair(x);
        let mut rows = rows.lock().unwrap_or_else(|e| e.into_inner());
        let r = rows
            .entry(c)
            .or_insert_with(|| dec.piece_at(c).is_non_empty_jump());
        r.base.at(pair(m, i))
    });
    JumpName::new(jump_lift(&sierp_join()).apply(&family))
}

/// Every row in the first `len` output positions is 0 from some column on.
pub fn stable_bottom_window(name: &JumpName, len: usize) -> bool {
    let prefix = name.base.prefix(len);
    let mut rows: Vec<Vec<Nat>> = Vec::new();
    for (c, &v) in prefix.iter().enumerate() {
        let (n, _) = unpair(c as Nat);
        if rows.len() <= n as usize {
            rows.resize(n as usize + 1, Vec::new());
        }
        rows[n as usize].push(v);
    }
    rows.iter()
        .all(|r| crate::scan::classify_row(r).value() == Some(0))
}
