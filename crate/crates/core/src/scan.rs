//! Stabilization scanner for jump names.
//!
//! Heuristic by nature: a row that has been constant over the second half of a
//! finite window may still change later. Used by tests and the CLI `estimate`
//! verb to read off the limits of fixture-driven names.

use crate::kernel::{pair, pair_nested, Nat, Oracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowState {
    /// Constant from column `bound` to the end of the window.
    Stable {
        bound: Nat,
        value: Nat,
    },
    Unsettled,
}

impl RowState {
    pub fn value(self) -> Option<Nat> {
        match self {
            RowState::Stable { value, .. } => Some(value),
            RowState::Unsettled => None,
        }
    }
}

/// Classify one row read over a window of columns.
pub fn classify_row(row: &[Nat]) -> RowState {
    let Some(&last) = row.last() else {
        return RowState::Unsettled;
    };
    let bound = row.iter().rposition(|&v| v != last).map_or(0, |p| p + 1);
    if 2 * bound <= row.len() {
        RowState::Stable {
            bound: bound as Nat,
            value: last,
        }
    } else {
        RowState::Unsettled
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub rows: Vec<RowState>,
    /// Columns read per row.
    pub columns: Nat,
}

/// The jump-level truth read off a scan of a name of `S'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Top,
    Bottom,
    Unknown,
}

impl ScanReport {
    /// Top if some row settles on a nonzero value, bottom if every scanned
    /// row settles on 0.
    pub fn sierpinski_verdict(&self) -> Verdict {
        if self
            .rows
            .iter()
            .any(|r| matches!(r, RowState::Stable { value, .. } if *value != 0))
        {
            Verdict::Top
        } else if self.rows.iter().all(|r| r.value() == Some(0)) {
            Verdict::Bottom
        } else {
            Verdict::Unknown
        }
    }

    pub fn limits(&self) -> Vec<Option<Nat>> {
        self.rows.iter().map(|r| r.value()).collect()
    }

    pub fn max_bound(&self) -> Option<Nat> {
        self.rows
            .iter()
            .map(|r| match r {
                RowState::Stable { bound, .. } => Some(*bound),
                RowState::Unsettled => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|b| b.into_iter().max().unwrap_or(0))
    }
}

/// Scan rows `0..rows` of a level-one name over columns `0..columns`.
pub fn scan_jump_name(name: &Oracle, rows: Nat, columns: Nat) -> ScanReport {
    if rows == 0 || columns == 0 {
        return ScanReport {
            rows: Vec::new(),
            columns,
        };
    }
    let prefix = name.prefix(pair(rows - 1, columns - 1) as usize + 1);
    let rows = (0..rows)
        .map(|n| {
            let r: Vec<Nat> = (0..columns).map(|i| prefix[pair(n, i) as usize]).collect();
            classify_row(&r)
        })
        .collect();
    ScanReport { rows, columns }
}

/// Iterated limits of a level-`level` name at base indices `0..rows`, each
/// level scanned over `columns` columns. `None` where some level is unsettled.
pub fn scan_level_name(name: &Oracle, level: u32, rows: Nat, columns: Nat) -> Vec<Option<Nat>> {
    if rows == 0 || columns == 0 {
        return Vec::new();
    }
    let top = pair_nested(rows - 1, &vec![columns - 1; level as usize]);
    let prefix = name.prefix(top as usize + 1);
    (0..rows)
        .map(|n| nested_limit(&prefix, n, &mut Vec::new(), level, columns))
        .collect()
}

/// `lim_{c_{j+1}} ... lim_{c_L}` with `c_1..c_j` fixed in `cols`.
fn nested_limit(
    prefix: &[Nat],
    n: Nat,
    cols: &mut Vec<Nat>,
    level: u32,
    columns: Nat,
) -> Option<Nat> {
    if cols.len() == level as usize {
        return Some(prefix[pair_nested(n, cols) as usize]);
    }
    let mut row = Vec::with_capacity(columns as usize);
    for i in 0..columns {
        cols.push(i);
        let v = nested_limit(prefix, n, cols, level, columns);
        cols.pop();
        row.push(v?);
    }
    classify_row(&row).value()
}
