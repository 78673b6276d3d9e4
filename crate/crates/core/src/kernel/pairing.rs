//! Cantor pairing on the naturals.
//!
//! `pair(n, i) = (n + i)(n + i + 1) / 2 + i`. Every tupling convention in the
//! crate (rows of double sequences, families of names, nested jump levels) is
//! expressed through this one bijection.

use super::Nat;

/// Encode `(n, i)` as a single natural.
#[inline]
pub fn pair(n: Nat, i: Nat) -> Nat {
    let s = n + i;
    s * (s + 1) / 2 + i
}

/// Exact inverse of [`pair`].
#[inline]
pub fn unpair(c: Nat) -> (Nat, Nat) {
    let s = diagonal(c);
    let i = c - s * (s + 1) / 2;
    (s - i, i)
}

/// The diagonal `n + i` containing code `c`.
#[inline]
pub fn diagonal(c: Nat) -> Nat {
    // Floating estimate, then corrected; exact for every u64 code we produce.
    let mut s = (((8.0 * c as f64 + 1.0).sqrt() - 1.0) / 2.0) as Nat;
    while s * (s + 1) / 2 > c {
        s -= 1;
    }
    while (s + 1) * (s + 2) / 2 <= c {
        s += 1;
    }
    s
}

/// Unfold `levels` nested pairings: `c = <<<base, i_1>, i_2>, ... i_levels>`.
///
/// Returns the innermost base index and the columns outermost-last, i.e.
/// `columns[0]` is the innermost column.
pub fn unpair_nested(mut c: Nat, levels: u32) -> (Nat, Vec<Nat>) {
    let mut cols = Vec::with_capacity(levels as usize);
    for _ in 0..levels {
        let (a, i) = unpair(c);
        cols.push(i);
        c = a;
    }
    cols.reverse();
    (c, cols)
}

/// Inverse of [`unpair_nested`].
pub fn pair_nested(base: Nat, columns: &[Nat]) -> Nat {
    columns.iter().fold(base, |acc, &i| pair(acc, i))
}
