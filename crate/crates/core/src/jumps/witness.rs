//! From a pair of complementary jump names of Sierpinski space back to a
//! finite-mindchange name, by searching for row-convergence witnesses.

use crate::kernel::{unpair, Descriptor, Machine, Nat, PrefixMachine};

use super::nabla::jump_entry;

const TOKEN_TOP: Nat = 2;
const TOKEN_BOTTOM: Nat = 1;

/// Witness `c = <n, k>` for side `s` claims: row `n` of side `s` is nonzero
/// at every column `>= k`. At stage `t` every code `c <= t` is a candidate and
/// columns up to `t` have been sampled.
struct WitnessSearch;

impl WitnessSearch {
    /// Input positions needed to run stage `t`.
    fn visible_for(t: Nat) -> usize {
        let n_max = crate::kernel::pairing::diagonal(t);
        2 * crate::kernel::pair(n_max, t) as usize + 2
    }
}

impl PrefixMachine for WitnessSearch {
    fn run(&self, input: &[Nat], fuel: usize) -> Vec<Nat> {
        let mut out = Vec::new();
        // dead[c][s]
        let mut dead: Vec<[bool; 2]> = Vec::new();
        let mut guess: Option<bool> = None;
        let mut t: Nat = 0;
        while out.len() < fuel && Self::visible_for(t) <= input.len() {
            // new code c = t, checked on columns k..=t
            let (n, k) = unpair(t);
            let mut fresh = [false; 2];
            for (side, flag) in fresh.iter_mut().enumerate() {
                *flag = (k..t).any(|i| jump_entry(input, side, n, i) == Some(0));
            }
            dead.push(fresh);
            // column t for every live code
            for (c, flags) in dead.iter_mut().enumerate() {
                let (n, k) = unpair(c as Nat);
                if k > t {
                    continue;
                }
                for (side, flag) in flags.iter_mut().enumerate() {
                    if !*flag && jump_entry(input, side, n, t) == Some(0) {
                        *flag = true;
                    }
                }
            }
            let leader = dead
                .iter()
                .enumerate()
                .flat_map(|(c, flags)| (0..2).map(move |s| (c, s, flags[s])))
                .find(|&(_, _, is_dead)| !is_dead)
                .map(|(_, s, _)| s == 0);
            let next = leader.or(guess).unwrap_or(false);
            match guess {
                None => out.push(0),
                Some(g) if g != next => out.push(0),
                _ => {}
            }
            out.push(if next { TOKEN_TOP } else { TOKEN_BOTTOM });
            guess = Some(next);
            t += 1;
        }
        out
    }

    fn descriptor(&self) -> Descriptor {
        Descriptor::Table("jump2nabla".into())
    }
}

/// `(p, q) -> ∇-name` for `p`, `q` jump names of Sierpinski space denoting
/// complementary values. The guess follows the live witness of least
/// (code, side) rank, side `p` first; with no live witness the previous guess
/// (initially false) is kept. If the least never-falsified witness has code
/// `c*`, at most [`mindchange_bound`]`(c*)` resets are emitted.
pub fn jump_pair_to_nabla() -> Machine {
    Machine::new(WitnessSearch)
}

pub fn mindchange_bound(least_surviving_code: Nat) -> usize {
    2 * least_surviving_code as usize + 2
}
