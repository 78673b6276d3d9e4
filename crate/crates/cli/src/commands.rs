use std::sync::Arc;

use serde_json::{json, Value};
use tte_core::borel::sigma2::stage_fuel;
use tte_core::borel::{
    brute_force_empty, format_word, image_of_baire_map, jump_overt_cantor, Sigma2Decomposition,
};
use tte_core::dsl::{
    build_machine, parse_jump, parse_jump_pair, parse_machine, parse_point, parse_set,
};
use tte_core::jumps::nabla::nabla_decode;
use tte_core::jumps::{jump_pair_to_nabla, nabla_to_jump_pair};
use tte_core::kernel::{compose, interleave, pair, pair_nested, split_name, Nat, Oracle};
use tte_core::scan::{scan_jump_name, scan_level_name, RowState, ScanReport, Verdict};
use tte_core::setops::DOpenSet;
use tte_core::spaces::{observe_name, Level, SierpObservation, SpaceDescriptor, SpacePoint};
use tte_core::{Error, Result};

use crate::report::Report;

pub const OBSERVE_FUEL: usize = 1024;
pub const SCAN_FUEL: usize = 16384;
pub const TRACE_FUEL: usize = 256;
/// Hit-stream entries read by `overt --machine`; the image enumeration runs
/// exponentially many inputs per stage, so the scan default would not finish.
pub const IMAGE_FUEL: usize = 2048;

const HEURISTIC_NOTE: &str = "heuristic: finite stabilization scan, not a semantic claim";

fn accepts(domain: &SpaceDescriptor, point: &SpaceDescriptor) -> bool {
    match (domain, point) {
        (SpaceDescriptor::Baire, SpaceDescriptor::Cantor) => true,
        (SpaceDescriptor::Product(a, b), SpaceDescriptor::Product(c, d)) => {
            accepts(a, c) && accepts(b, d)
        }
        _ => domain == point,
    }
}

fn set_at_point(set: &str, point: &str) -> Result<(DOpenSet, SpacePoint)> {
    let u = parse_set(set)?;
    let x = parse_point(point)?;
    if !accepts(&u.domain, &x.space) {
        return Err(Error::SpaceMismatch {
            expected: u.domain.to_string(),
            found: x.space.to_string(),
        });
    }
    Ok((u, x))
}

pub fn observe(set: &str, point: &str, fuel: usize) -> Result<Report> {
    let (u, x) = set_at_point(set, point)?;
    if u.level != Level::BASE {
        return Err(Error::UnsupportedLevel(format!(
            "observe needs a base-level set, got {}; try estimate",
            u.level
        )));
    }
    let r = Report::new("observe")
        .field("set", set)
        .field("point", point)
        .field("level", u.level.to_string());
    Ok(match observe_name(&u.membership(&x.name), fuel) {
        SierpObservation::ObservedTop { at_step } => r
            .field("outcome", "ObservedTop")
            .field("step", at_step)
            .fuel_used(at_step + 1),
        SierpObservation::NotYetBottom { fuel_used } => r
            .field("outcome", "NotYet")
            .field("step", Value::Null)
            .fuel_used(fuel_used),
    })
}

pub fn eval(machine: &str, point: &str, fuel: usize) -> Result<Report> {
    let m = build_machine(&parse_machine(machine)?, None)?;
    let x = parse_point(point)?;
    let out = m.step(&x.name.prefix(fuel), fuel);
    Ok(Report::new("eval")
        .field("machine", machine)
        .field("point", point)
        .field("length", out.len())
        .field("output", out)
        .fuel_used(fuel))
}

pub fn decompose(set: &str, pieces: usize, depth: usize) -> Result<Report> {
    let dec = Sigma2Decomposition::new(&parse_set(set)?, depth)?;
    let summaries: Vec<Value> = (0..pieces as Nat)
        .map(|c| {
            let (n, k) = tte_core::kernel::unpair(c);
            let removed = dec.piece_at(c).finite_removed().unwrap_or_default();
            json!({
                "code": c,
                "n": n,
                "k": k,
                "removed": removed.iter().map(|w| format_word(w)).collect::<Vec<_>>(),
                "empty": brute_force_empty(&removed),
            })
        })
        .collect();
    Ok(Report::new("decompose")
        .field("set", set)
        .field("depth", depth)
        .field("pieces", summaries)
        .fuel_used(stage_fuel(depth)))
}

pub fn overt_image(machine: &str, depth: usize, fuel: usize) -> Result<Report> {
    let m = build_machine(&parse_machine(machine)?, None)?;
    let words: Vec<String> = image_of_baire_map(&m)
        .hit_words(depth, fuel)
        .iter()
        .map(|w| format_word(w))
        .collect();
    Ok(Report::new("overt")
        .field("machine", machine)
        .field("depth", depth)
        .field("count", words.len())
        .field("hits", words)
        .fuel_used(fuel))
}

pub fn overt_set(set: &str, depth: usize, fuel: usize) -> Result<Report> {
    const ROWS: Nat = 4;
    let dec = Arc::new(Sigma2Decomposition::new(&parse_set(set)?, depth)?);
    let name = jump_overt_cantor(&dec);
    let cols = columns_within(fuel, ROWS, 1);
    let scan = scan_jump_name(&name.base, ROWS, cols);
    Ok(Report::new("overt")
        .field("set", set)
        .field("depth", depth)
        .field("verdict", verdict_text(scan.sierpinski_verdict()))
        .field("rows", rows_json(&scan))
        .field("note", HEURISTIC_NOTE)
        .fuel_used(scanned(ROWS, cols, 1)))
}

fn trace(p: &Oracle, q: &Oracle, fuel: usize) -> (Vec<Value>, bool, usize) {
    let out = jump_pair_to_nabla().apply(&interleave(p, q)).prefix(fuel);
    let t = nabla_decode(&out);
    let truth = |c: &tte_core::kernel::Prefix| c.items().iter().any(|&v| v != 0);
    let steps = t
        .guesses
        .iter()
        .map(|(at, c)| json!({ "at": at, "value": truth(c) }))
        .collect();
    (steps, truth(t.final_candidate()), t.mindchanges)
}

pub fn mindchanges(pair_text: &str, fuel: usize) -> Result<Report> {
    let (p, q) = parse_jump_pair(pair_text)?;
    let (steps, last, count) = trace(&p.base, &q.base, fuel);
    Ok(Report::new("mindchanges")
        .field("pair", pair_text)
        .field("trajectory", steps)
        .field("mindchanges", count)
        .field("final", last)
        .fuel_used(fuel))
}

pub fn estimate_set(set: &str, point: &str, rows: Nat, fuel: usize) -> Result<Report> {
    let (u, x) = set_at_point(set, point)?;
    let name = u.membership(&x.name);
    let r = Report::new("estimate")
        .field("set", set)
        .field("point", point)
        .field("level", u.level.to_string());
    let r = match u.level {
        Level::Jump(0) => {
            let obs = observe_name(&name, fuel);
            let v = if obs.is_top() {
                Verdict::Top
            } else {
                Verdict::Unknown
            };
            r.field("verdict", verdict_text(v)).fuel_used(fuel)
        }
        Level::Jump(1) => {
            let cols = columns_within(fuel, rows, 1);
            let scan = scan_jump_name(&name, rows, cols);
            r.field("verdict", verdict_text(scan.sierpinski_verdict()))
                .field("rows", rows_json(&scan))
                .fuel_used(scanned(rows, cols, 1))
        }
        Level::Jump(k) => {
            let cols = columns_within(fuel, rows, k);
            let limits = scan_level_name(&name, k, rows, cols);
            let v = if limits.iter().any(|l| matches!(l, Some(v) if *v != 0)) {
                Verdict::Top
            } else if limits.iter().all(|l| *l == Some(0)) {
                Verdict::Bottom
            } else {
                Verdict::Unknown
            };
            r.field("verdict", verdict_text(v))
                .field("limits", limits)
                .fuel_used(scanned(rows, cols, k))
        }
        Level::Nabla => {
            let t = nabla_decode(&name.prefix(fuel));
            let v = t.final_candidate().items().iter().any(|&v| v != 0);
            r.field(
                "verdict",
                verdict_text(if v { Verdict::Top } else { Verdict::Bottom }),
            )
            .field("mindchanges", t.mindchanges)
            .fuel_used(fuel)
        }
    };
    Ok(r.field("note", HEURISTIC_NOTE))
}

pub fn estimate_jump(jump: &str, rows: Nat, fuel: usize) -> Result<Report> {
    let j = parse_jump(jump)?;
    let cols = columns_within(fuel, rows, 1);
    let scan = scan_jump_name(&j.base, rows, cols);
    Ok(Report::new("estimate")
        .field("jump", jump)
        .field("verdict", verdict_text(scan.sierpinski_verdict()))
        .field("rows", rows_json(&scan))
        .field("note", HEURISTIC_NOTE)
        .fuel_used(scanned(rows, cols, 1)))
}

/// `S' x S' -> S^∇ -> S' x S'`, compared by scan verdicts on each side.
pub fn roundtrip(pair_text: &str, fuel: usize) -> Result<Report> {
    const ROWS: Nat = 8;
    let (p, q) = parse_jump_pair(pair_text)?;
    let cols = columns_within(fuel, ROWS, 1);
    let before = [&p.base, &q.base].map(|o| scan_jump_name(o, ROWS, cols).sierpinski_verdict());
    // the return trip only writes row 0, and the witness search is quadratic
    let back_cols = columns_within(fuel / 2, 1, 1).min(cols);
    let out =
        compose(&jump_pair_to_nabla(), &nabla_to_jump_pair()).apply(&interleave(&p.base, &q.base));
    let (a, b) = split_name(&out);
    let after = [&a, &b].map(|o| scan_jump_name(o, 1, back_cols).sierpinski_verdict());
    Ok(Report::new("roundtrip")
        .field("pair", pair_text)
        .field("before", before.map(verdict_text).to_vec())
        .field("after", after.map(verdict_text).to_vec())
        .field("preserved", before == after)
        .field("note", HEURISTIC_NOTE)
        .fuel_used(scanned(ROWS, cols, 1) + 2 * scanned(1, back_cols, 1)))
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Top => "top",
        Verdict::Bottom => "bottom",
        Verdict::Unknown => "unknown",
    }
}

fn rows_json(scan: &ScanReport) -> Vec<Value> {
    scan.rows
        .iter()
        .map(|r| match r {
            RowState::Stable { bound, value } => json!({ "value": value, "from": bound }),
            RowState::Unsettled => Value::Null,
        })
        .collect()
}

/// Entries read by a scan of `rows` rows and `cols` columns at `level`.
fn scanned(rows: Nat, cols: Nat, level: u32) -> usize {
    if rows == 0 || cols == 0 {
        return 0;
    }
    pair_nested(rows - 1, &vec![cols - 1; level as usize]) as usize + 1
}

/// The widest scan that reads at most `fuel` entries, at least one column.
fn columns_within(fuel: usize, rows: Nat, level: u32) -> Nat {
    let mut cols = 1;
    while scanned(rows, cols + 1, level) <= fuel {
        cols += 1;
    }
    debug_assert!(level > 1 || scanned(rows, cols, 1) == pair(rows - 1, cols - 1) as usize + 1);
    cols
}
