//! The ten acceptance criteria, run in sequence with one PASS/FAIL line each.
//!
//! Everything runs inside a single test so the wall-clock budgets measure one
//! criterion at a time rather than whatever else the harness is running.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;
use tte_core::borel::fixtures::{empty_sigma2, overt_fixtures, sigma2_fixtures};
use tte_core::borel::{
    brute_force_hits, e0_equal_jump, image_of_baire_map, jump_overt_cantor, overt_image_inverse,
    stable_bottom_window, E0Point, Sigma2Decomposition,
};
use tte_core::dsl::build_machine;
use tte_core::jumps::{
    jump_lift, jump_pair_to_nabla, mindchange_bound, nabla_decode, nabla_to_jump_pair, JumpName,
    NablaName,
};
use tte_core::kernel::{
    compose, interleave, is_prefix, pair, split_name, tuple_rows, unpair, Descriptor,
    EventuallyPeriodic, Machine, Nat, Oracle, Prefix,
};
use tte_core::measurable::{contains_point, kappa, kappa_inverse_on_open_nat};
use tte_core::scan::{scan_jump_name, Verdict};
use tte_core::setops::{base_logic, Logic};
use tte_core::spaces::{observe_name, Level, SierpObservation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);
type OpenNat = (Vec<Nat>, fn(Nat) -> Nat, Nat);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ep(pre: &[Nat], period: &[Nat]) -> EventuallyPeriodic {
    EventuallyPeriodic::new(pre.to_vec(), period.to_vec())
}

fn verdict(name: &Oracle, rows: Nat, cols: Nat) -> Verdict {
    scan_jump_name(name, rows, cols).sierpinski_verdict()
}

// ---------------------------------------------------------------------------
// 1. machine model

const TABLES: &[&str] = &[
    "succ",
    "flip",
    "bin",
    "headswap",
    "headparity",
    "and",
    "or",
    "join",
    "inject",
    "notjump",
    "nabla2jump",
    "jump2nabla",
    "isempty",
    "e0eq",
    "finones",
    "nand",
    "nor",
    "jprod1",
    "jfam1",
];

fn random_descriptor(rng: &mut StdRng, depth: u32) -> Descriptor {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        return match rng.gen_range(0..6) {
            0 => Descriptor::Id,
            1 => Descriptor::Const(
                (0..rng.gen_range(1..4))
                    .map(|_| rng.gen_range(0..3))
                    .collect(),
            ),
            2 => Descriptor::Split(rng.gen_range(0..2)),
            3 => Descriptor::Interleave(None),
            4 => Descriptor::Table(TABLES[rng.gen_range(0..TABLES.len())].to_string()),
            _ => Descriptor::Cylinder(
                (0..rng.gen_range(0..3))
                    .map(|_| rng.gen_range(0..2))
                    .collect(),
            ),
        };
    }
    let sub = |rng: &mut StdRng| Box::new(random_descriptor(rng, depth - 1));
    match rng.gen_range(0..6) {
        0 => Descriptor::Compose(sub(rng), sub(rng)),
        1 => Descriptor::Interleave(Some((sub(rng), sub(rng)))),
        2 => Descriptor::Delay(rng.gen_range(0..6), sub(rng)),
        3 => Descriptor::JumpLift(sub(rng)),
        4 => Descriptor::NablaLift(sub(rng)),
        _ => Descriptor::PwLim((0..rng.gen_range(1..3)).map(|_| *sub(rng)).collect()),
    }
}

fn machine_model() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x7e7e);
    let mut violations = Vec::new();
    for case in 0..10_000 {
        let d = random_descriptor(&mut rng, 3);
        let m = build_machine(&d, None).map_err(|e| format!("{d}: {e}"))?;
        let u: Vec<Nat> = (0..rng.gen_range(0..24))
            .map(|_| rng.gen_range(0..4))
            .collect();
        let mut v = u.clone();
        v.extend((0..rng.gen_range(0..24)).map(|_| rng.gen_range(0..4)));
        let (a, b) = (rng.gen_range(0..40), rng.gen_range(0..40));
        let (small, large) = (a.min(b), a.max(b));
        let lo = m.step(&u, small);
        let hi = m.step(&v, large);
        if !is_prefix(&lo, &hi) {
            violations.push(format!("#{case} monotonicity {d}"));
        }
        if hi != m.step(&v, large) {
            violations.push(format!("#{case} determinism {d}"));
        }
        if hi.len() > large {
            violations.push(format!("#{case} fuel bound {d}"));
        }
    }
    ensure(violations.is_empty(), || {
        format!("{} violations, first {}", violations.len(), violations[0])
    })?;
    Ok("10000 machine/prefix pairs, 0 violations".into())
}

// ---------------------------------------------------------------------------
// 2. Sierpinski logic

/// First step at which a fixture name shows a nonzero entry, exactly.
fn first_top(s: &EventuallyPeriodic) -> Option<usize> {
    let pre = s.pre().len();
    (0..pre + s.period().len()).find(|&i| s.at(i as Nat) != 0)
}

fn sierp_panel() -> Vec<EventuallyPeriodic> {
    vec![
        ep(&[], &[0]),
        ep(&[1], &[0]),
        ep(&[0, 0, 0, 0, 0], &[1]),
        ep(&[0, 0], &[0, 3]),
        ep(&[0; 9], &[2, 0]),
        ep(&[0, 7], &[0]),
        ep(&[], &[0, 0, 0, 1]),
    ]
}

fn expected_observation(top: Option<usize>, fuel: usize) -> SierpObservation {
    match top {
        Some(k) if k < fuel => SierpObservation::ObservedTop { at_step: k },
        _ => SierpObservation::NotYetBottom { fuel_used: fuel },
    }
}

fn check_output(out: &Oracle, top: Option<usize>, fuel: usize, label: &str) -> Result<(), String> {
    let prefix = out.prefix(fuel);
    let expect: Vec<Nat> = (0..fuel)
        .map(|k| top.is_some_and(|t| k >= t) as Nat)
        .collect();
    ensure(prefix == expect, || {
        format!("{label}: output differs from the contract")
    })?;
    let got = observe_name(out, fuel);
    ensure(got == expected_observation(top, fuel), || {
        format!("{label}: observed {got:?}, expected top at {top:?}")
    })
}

fn sierpinski_logic() -> Outcome {
    const FUEL: usize = 256;
    let panel = sierp_panel();
    let mut cases = 0;
    for which in [Logic::And, Logic::Or] {
        let m = base_logic(which);
        for c in 0..20 {
            let (p, q) = (&panel[c % panel.len()], &panel[(c * 3 + 1) % panel.len()]);
            let (a, b) = (first_top(p), first_top(q));
            let truth = match which {
                Logic::And => a.is_some() && b.is_some(),
                _ => a.is_some() || b.is_some(),
            };
            let top = match which {
                Logic::And => a.zip(b).map(|(x, y)| x.max(y)),
                _ => [a, b].into_iter().flatten().min(),
            };
            ensure(top.is_some() == truth, || "panel bookkeeping".into())?;
            let out = m.apply(&interleave(&p.clone().into(), &q.clone().into()));
            check_output(&out, top, FUEL, &format!("{which:?}({p}, {q})"))?;
            cases += 1;
        }
    }
    let join = base_logic(Logic::Join);
    for c in 0..10usize {
        // rows drawn from the panel, shifted per case; rows past 6 are bottom
        let rows: Vec<EventuallyPeriodic> = (0..6)
            .map(|j| {
                if (j + c) % 3 == 0 && c < 8 {
                    panel[(j * c + 2) % panel.len()].clone()
                } else {
                    ep(&[], &[0])
                }
            })
            .collect();
        let top = rows
            .iter()
            .enumerate()
            .filter_map(|(j, r)| first_top(r).map(|m| pair(j as Nat, m as Nat) as usize))
            .min();
        let shared = Arc::new(rows);
        let table = shared.clone();
        let input = tuple_rows(move |j| {
            table
                .get(j as usize)
                .cloned()
                .unwrap_or_else(|| ep(&[], &[0]))
                .into()
        });
        check_output(&join.apply(&input), top, FUEL, &format!("Join case {c}"))?;
        cases += 1;
    }
    Ok(format!(
        "{cases} cases (20 and, 20 or, 10 join), step bounds exact"
    ))
}

// ---------------------------------------------------------------------------
// 3. jump functor laws

fn m(text: &str) -> Machine {
    build_machine(&tte_core::dsl::parse_machine(text).unwrap(), None).unwrap()
}

fn lifted_limits(name: &Oracle, rows: Nat, cols: Nat) -> Vec<Option<Nat>> {
    scan_jump_name(name, rows, cols).limits()
}

fn jump_functor() -> Outcome {
    const DEPTH: Nat = 16;
    const COLS: Nat = 96;
    let pairs = [
        ("table(flip)", "table(headswap)"),
        ("table(succ)", "id"),
        ("table(headswap)", "table(headparity)"),
        ("delay(3,id)", "table(flip)"),
        ("split(0)", "table(succ)"),
        ("table(bin)", "table(flip)"),
        ("id", "delay(2,table(headswap))"),
        ("split(1)", "table(headparity)"),
        ("const(1,2)", "table(succ)"),
        ("interleave(id,table(flip))", "split(1)"),
    ];
    let names = [
        JumpName::fixture(ep(&[], &[0]), vec![vec![1, 1, 1], vec![], vec![0, 1]]),
        JumpName::fixture(ep(&[1], &[0]), vec![vec![0; 6], vec![1; 4]]),
        JumpName::fixture(
            ep(&[], &[0, 1]),
            vec![vec![1, 0, 1, 0], vec![1], vec![], vec![0, 0, 0, 0, 0]],
        ),
        JumpName::fixture(ep(&[1, 1, 0], &[1]), vec![vec![], vec![], vec![1; 7]]),
        JumpName::fixture(
            ep(&[0, 1, 1], &[0, 0, 1]),
            (0..8).map(|n| vec![n % 2; n as usize]).collect(),
        ),
    ];
    let mut checked = 0;
    for q in &names {
        let limit: Oracle = q.exact_limit().unwrap().clone().into();
        let id_rows = lifted_limits(
            &jump_lift(&tte_core::kernel::identity()).apply(&q.base),
            DEPTH,
            COLS,
        );
        ensure(
            id_rows
                == limit
                    .prefix(DEPTH as usize)
                    .into_iter()
                    .map(Some)
                    .collect::<Vec<_>>(),
            || "identity lift changed a limit".into(),
        )?;
        for (f, g) in pairs {
            let (f, g) = (m(f), m(g));
            let brute: Vec<Option<Nat>> = g
                .apply(&f.apply(&limit))
                .prefix(DEPTH as usize)
                .into_iter()
                .map(Some)
                .collect();
            let whole = lifted_limits(&jump_lift(&compose(&f, &g)).apply(&q.base), DEPTH, COLS);
            let parts = lifted_limits(
                &compose(&jump_lift(&f), &jump_lift(&g)).apply(&q.base),
                DEPTH,
                COLS,
            );
            ensure(whole == brute, || {
                format!("lift({f:?} then {g:?}) rows {whole:?} vs brute {brute:?}")
            })?;
            ensure(parts == brute, || {
                format!("lift {f:?} then lift {g:?} rows {parts:?} vs brute {brute:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} pair/name cases plus identity, depth {DEPTH}"
    ))
}

// ---------------------------------------------------------------------------
// 4. mindchange space vs pairs of jump names

/// Least code `<n, k>` whose claim "row `n` of one side is nonzero from column
/// `k` on" holds over the horizon.
fn least_surviving_code(p: &Oracle, q: &Oracle, horizon: Nat) -> Option<Nat> {
    (0..horizon).find(|&c| {
        let (n, k) = unpair(c);
        [p, q]
            .iter()
            .any(|side| (k..horizon).all(|i| side.at(pair(n, i)) != 0))
    })
}

fn to_nabla(p: &Oracle, q: &Oracle, len: usize) -> (bool, usize) {
    let out = jump_pair_to_nabla().apply(&interleave(p, q)).prefix(len);
    let t = nabla_decode(&out);
    (
        t.final_candidate().items().iter().any(|&v| v != 0),
        t.mindchanges,
    )
}

fn nabla_pairs() -> Outcome {
    const HORIZON: Nat = 120;
    const LEN: usize = 600;
    let pf = |v: &[Nat]| Prefix::new(v.to_vec());
    let nablas: Vec<(Vec<Prefix>, EventuallyPeriodic)> = vec![
        (vec![pf(&[0])], ep(&[], &[0])),
        (vec![pf(&[1])], ep(&[], &[0])),
        (vec![pf(&[0, 0]), pf(&[1])], ep(&[], &[0])),
        (vec![pf(&[1]), pf(&[0, 0, 0])], ep(&[], &[0])),
        (vec![pf(&[0]), pf(&[1]), pf(&[0]), pf(&[1])], ep(&[], &[0])),
        (
            vec![pf(&[1]), pf(&[0]), pf(&[2]), pf(&[0, 0])],
            ep(&[0, 0], &[0]),
        ),
        (vec![pf(&[0; 5])], ep(&[0, 0, 0], &[1])),
        (vec![pf(&[3]), pf(&[0])], ep(&[], &[0])),
        ((0..6).map(|i| pf(&[i % 2])).collect(), ep(&[], &[0])),
        ((0..7).map(|i| pf(&[i % 2])).collect(), ep(&[], &[0])),
    ];
    let mut cases = 0;
    for (stages, tail) in &nablas {
        let truth =
            stages.last().unwrap().items().iter().any(|&v| v != 0) || first_top(tail).is_some();
        let name = NablaName::from_stages(stages, tail);
        let (p, q) = split_name(&nabla_to_jump_pair().apply(&name.base));
        let sides = [verdict(&p, 4, 64), verdict(&q, 4, 64)];
        let want = if truth {
            [Verdict::Top, Verdict::Bottom]
        } else {
            [Verdict::Bottom, Verdict::Top]
        };
        ensure(sides == want, || {
            format!("nabla {stages:?}: pair verdicts {sides:?}")
        })?;
        let (back, mc) = to_nabla(&p, &q, LEN);
        ensure(back == truth, || {
            format!("nabla {stages:?}: round trip gave {back}")
        })?;
        let c = least_surviving_code(&p, &q, HORIZON).ok_or("no surviving witness")?;
        ensure(mc <= mindchange_bound(c), || {
            format!("{mc} mindchanges over bound {}", mindchange_bound(c))
        })?;
        cases += 1;
    }

    let bot = || ep(&[], &[0]);
    let jumps: Vec<(JumpName, JumpName)> = vec![
        (
            JumpName::fixture(ep(&[1], &[0]), vec![]),
            JumpName::fixture(bot(), vec![]),
        ),
        (
            JumpName::fixture(bot(), vec![]),
            JumpName::fixture(ep(&[1], &[0]), vec![]),
        ),
        // dying witnesses: the false side claims rows for a while
        (
            JumpName::fixture(bot(), vec![vec![1; 8]]),
            JumpName::fixture(ep(&[0, 0, 1], &[0]), vec![]),
        ),
        (
            JumpName::fixture(ep(&[0, 1], &[0]), vec![vec![], vec![0; 5]]),
            JumpName::fixture(bot(), vec![vec![1; 12], vec![1; 3]]),
        ),
        (
            JumpName::fixture(bot(), vec![vec![1; 4], vec![1; 9], vec![1; 2]]),
            JumpName::fixture(ep(&[0, 0, 0, 1], &[0]), vec![]),
        ),
        (
            JumpName::fixture(ep(&[], &[1]), vec![vec![0; 10]]),
            JumpName::fixture(bot(), vec![vec![1; 10]]),
        ),
        (
            JumpName::fixture(bot(), (0..5).map(|n| vec![1; 2 * n + 1]).collect()),
            JumpName::fixture(ep(&[0; 5], &[1]), vec![]),
        ),
        (
            JumpName::fixture(ep(&[0, 0, 0, 0, 0, 3], &[0]), vec![]),
            JumpName::fixture(bot(), vec![vec![1; 20]]),
        ),
        (
            JumpName::fixture(bot(), vec![vec![0, 1, 1, 1, 1, 1, 1]]),
            JumpName::fixture(ep(&[2], &[0]), vec![vec![0; 4]]),
        ),
        (
            JumpName::fixture(ep(&[1], &[1]), vec![vec![0; 3], vec![0; 3]]),
            JumpName::fixture(bot(), vec![vec![1; 6], vec![1; 6]]),
        ),
    ];
    for (i, (p, q)) in jumps.iter().enumerate() {
        let truth = first_top(p.exact_limit().unwrap()).is_some();
        ensure(
            truth != first_top(q.exact_limit().unwrap()).is_some(),
            || format!("pair {i} not complementary"),
        )?;
        let (b, mc) = to_nabla(&p.base, &q.base, LEN);
        ensure(b == truth, || format!("pair {i}: nabla denotes {b}"))?;
        let c = least_surviving_code(&p.base, &q.base, HORIZON).ok_or("no surviving witness")?;
        ensure(mc <= mindchange_bound(c), || {
            format!(
                "pair {i}: {mc} mindchanges over bound {}",
                mindchange_bound(c)
            )
        })?;
        let back =
            nabla_to_jump_pair().apply(&jump_pair_to_nabla().apply(&interleave(&p.base, &q.base)));
        let (p2, q2) = split_name(&back);
        let sides = [verdict(&p2, 2, 96), verdict(&q2, 2, 96)];
        let want = if truth {
            [Verdict::Top, Verdict::Bottom]
        } else {
            [Verdict::Bottom, Verdict::Top]
        };
        ensure(sides == want, || {
            format!("pair {i}: round trip verdicts {sides:?}")
        })?;
        cases += 1;
    }
    Ok(format!(
        "{cases} fixtures, booleans preserved, mindchanges within 2c*+2"
    ))
}

// ---------------------------------------------------------------------------
// 5. Sigma2 decomposition

/// Points with infinitely many ones keep a one within the first twelve bits
/// after every row index up to ten, so depth 12 can refute codes up to 64.
fn sigma2_panel() -> Vec<EventuallyPeriodic> {
    vec![
        ep(&[], &[0]),
        ep(&[], &[1]),
        ep(&[1], &[0]),
        ep(&[0], &[1]),
        ep(&[], &[1, 0]),
        ep(&[], &[0, 1]),
        ep(&[0, 0], &[0]),
        ep(&[0, 0, 1], &[1, 0]),
        ep(&[1, 1, 0, 1], &[0]),
        ep(&[0, 1], &[0, 0, 1]),
        ep(&[1, 0], &[1]),
        ep(&[0, 0, 0, 0, 1], &[0]),
    ]
}

fn sigma2_decomposition() -> Outcome {
    let mut mismatches = Vec::new();
    let panel = sigma2_panel();
    for f in sigma2_fixtures() {
        let dec = Sigma2Decomposition::new(&f.set, 12).map_err(|e| e.to_string())?;
        for x in &panel {
            if dec.union_contains(x, 64) != (f.contains)(x) {
                mismatches.push(format!("{} at {x}", f.label));
            }
        }
    }
    ensure(mismatches.is_empty(), || {
        format!("mismatches: {mismatches:?}")
    })?;
    Ok(format!("3 sets x {} points, 0 mismatches", panel.len()))
}

// ---------------------------------------------------------------------------
// 6. jump-overtness of Cantor space

fn jump_overtness() -> Outcome {
    for f in sigma2_fixtures().into_iter().take(2) {
        let dec = Arc::new(Sigma2Decomposition::new(&f.set, 10).map_err(|e| e.to_string())?);
        let v = verdict(&jump_overt_cantor(&dec).base, 4, 128);
        ensure(v == Verdict::Top, || format!("{}: {v:?}", f.label))?;
    }
    let empty = Arc::new(Sigma2Decomposition::new(&empty_sigma2(), 10).map_err(|e| e.to_string())?);
    ensure(
        stable_bottom_window(&jump_overt_cantor(&empty), 1 << 14),
        || "no stable bottom window".into(),
    )?;
    Ok("top on both nonempty fixtures, bottom window 2^14 on the empty one".into())
}

// ---------------------------------------------------------------------------
// 7. overt image round trip

fn overt_round_trip() -> Outcome {
    const LEN: usize = 5;
    for f in overt_fixtures() {
        let inverse = overt_image_inverse(&f.set(), &[]);
        let got = image_of_baire_map(&inverse).hit_words(LEN, 1200);
        let want = brute_force_hits(&*f.hit, LEN);
        ensure(got == want, || {
            let missing: BTreeSet<_> = want.difference(&got).collect();
            let extra: BTreeSet<_> = got.difference(&want).collect();
            format!("{}: missing {missing:?}, extra {extra:?}", f.label)
        })?;
    }
    Ok(format!("5 fixtures, hit words equal up to length {LEN}"))
}

// ---------------------------------------------------------------------------
// 8. kappa plumbing on opens of N

/// Limit of entry `<n, m>`: `n ∈ U` and `m >= delay(n)`; the first `noise`
/// columns of every row are inverted.
fn open_nat_name(members: Arc<Vec<Nat>>, delay: fn(Nat) -> Nat, noise: Nat) -> Oracle {
    Oracle::from_fn(move |c| {
        let (x, i) = unpair(c);
        let (n, m) = unpair(x);
        let lim = (members.contains(&n) && m >= delay(n)) as Nat;
        if i < noise {
            1 - lim
        } else {
            lim
        }
    })
}

fn kappa_plumbing() -> Outcome {
    const DEPTH: Nat = 16;
    let opens: Vec<OpenNat> = vec![
        (vec![], |_| 0, 1),
        (vec![0], |_| 0, 0),
        (vec![2, 5], |n| n % 2, 2),
        ((0..8).collect(), |_| 1, 3),
        (vec![1, 3, 5, 7], |n| n / 2, 1),
        (vec![0, 4], |_| 0, 4),
        (vec![6], |n| n, 2),
        ((0..40).step_by(3).collect(), |n| n % 3, 1),
        (vec![1, 2], |_| 2, 0),
        ((0..40).collect(), |_| 0, 2),
    ];
    for (members, delay, noise) in opens {
        let members = Arc::new(members);
        let y = open_nat_name(members.clone(), delay, noise);
        let k = kappa(&y, Level::Jump(1));
        let back = kappa_inverse_on_open_nat(move |u| k.apply(u), 1).map_err(|e| e.to_string())?;
        let want = lifted_limits(&y, DEPTH, 48);
        let got = lifted_limits(&back, DEPTH, 48);
        ensure(got == want, || {
            format!("U = {members:?}: limits {got:?} vs {want:?}")
        })?;
        for n in 0..6 {
            let member = kappa(&back, Level::Jump(1))
                .apply(&contains_point(n))
                .map_err(|e| e.to_string())?;
            let v = verdict(&member, 8, 64);
            ensure((v == Verdict::Top) == members.contains(&n), || {
                format!("U = {members:?}, n = {n}: {v:?}")
            })?;
        }
    }
    Ok(format!(
        "10 opens, limits exact at depth {DEPTH}, membership round trips"
    ))
}

// ---------------------------------------------------------------------------
// 9. E0 equality

/// Eventual agreement, decided from the fixture periods.
fn tails_agree_exact(x: &EventuallyPeriodic, y: &EventuallyPeriodic) -> bool {
    let start = x.pre().len().max(y.pre().len());
    let span = x.period().len() * y.period().len();
    (start..start + span).all(|i| x.at(i as Nat) == y.at(i as Nat))
}

fn e0_equality() -> Outcome {
    let panel = [
        ep(&[], &[0]),
        ep(&[1, 1, 0], &[0]),
        ep(&[], &[0, 1]),
        ep(&[1], &[1, 0]),
        ep(&[0, 0, 1], &[1]),
        ep(&[], &[1, 1, 0]),
    ];
    let mut checked = 0;
    for x in &panel {
        for y in &panel {
            let name = e0_equal_jump(&E0Point::fixture(x.clone()), &E0Point::fixture(y.clone()));
            let v = verdict(&name.base, 12, 64);
            let want = if tails_agree_exact(x, y) {
                Verdict::Top
            } else {
                Verdict::Bottom
            };
            ensure(v == want, || format!("{x} ~ {y}: {v:?}, expected {want:?}"))?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} ordered pairs agree with tail equivalence"
    ))
}

// ---------------------------------------------------------------------------
// 10. CLI golden set

const GOLDEN: &[(&str, &[&str])] = &[
    (
        "observe-cyl",
        &[
            "observe",
            "--set",
            "cyl 1",
            "--point",
            "ep [;1,0]",
            "--fuel",
            "64",
        ],
    ),
    (
        "observe-union",
        &[
            "observe",
            "--set",
            "or(cyl 0, cyl 1)",
            "--point",
            "ep [;0]",
            "--fuel",
            "32",
        ],
    ),
    (
        "observe-pre",
        &[
            "observe",
            "--set",
            "pre(table(headswap), cyl 1)",
            "--point",
            "ep [0;1]",
            "--fuel",
            "64",
        ],
    ),
    (
        "eval-flip",
        &[
            "eval",
            "--machine",
            "table(flip)",
            "--point",
            "ep [0;1]",
            "--fuel",
            "16",
        ],
    ),
    (
        "decompose",
        &[
            "decompose",
            "--set",
            "lvl(1, table(finones))",
            "--pieces",
            "16",
            "--depth",
            "10",
        ],
    ),
    (
        "overt-image",
        &[
            "overt",
            "--machine",
            "table(headparity)",
            "--depth",
            "3",
            "--fuel",
            "512",
        ],
    ),
    (
        "overt-set",
        &[
            "overt",
            "--set",
            "up(cyl 1)",
            "--depth",
            "8",
            "--fuel",
            "4096",
        ],
    ),
    (
        "mindchanges",
        &[
            "mindchanges",
            "--pair",
            "jfix(ep [;1] ; 0: 0 0 0), jfix(ep [;0] ; 0: 1 1 1)",
            "--fuel",
            "256",
        ],
    ),
    (
        "estimate-up",
        &[
            "estimate",
            "--set",
            "up(up(cyl 1))",
            "--point",
            "ep [1;0]",
            "--fuel",
            "4096",
        ],
    ),
    (
        "estimate-jump",
        &[
            "estimate",
            "--jump",
            "jfix(ep [0,1;0] ; 1: 0 0 0 0)",
            "--rows",
            "4",
        ],
    ),
    (
        "roundtrip",
        &[
            "roundtrip",
            "--pair",
            "jfix(ep [;0] ; 0: 1 1 1 1 1), inj top 2",
            "--fuel",
            "4096",
        ],
    ),
    (
        "observe-notyet",
        &[
            "observe", "--set", "cyl 11", "--point", "ep [1;0]", "--fuel", "100",
        ],
    ),
];

fn tte(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tte"))
        .args(args)
        .env_remove("TTE_FUEL")
        .output()
        .expect("run tte")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn cli_golden() -> Outcome {
    let schema: Value = serde_json::from_str(include_str!("../../../docs/report.schema.json"))
        .map_err(|e| e.to_string())?;
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let update = std::env::var_os("TTE_UPDATE_GOLDEN").is_some();
    for (label, args) in GOLDEN {
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let first = tte(&json_args);
        ensure(first.status.success(), || {
            format!("{label}: {}", String::from_utf8_lossy(&first.stderr))
        })?;
        let again = tte(&json_args);
        ensure(first.stdout == again.stdout, || {
            format!("{label}: reruns differ")
        })?;
        let report: Value =
            serde_json::from_slice(&first.stdout).map_err(|e| format!("{label}: {e}"))?;
        let errors: Vec<String> = validator
            .iter_errors(&report)
            .map(|e| e.to_string())
            .collect();
        ensure(errors.is_empty(), || {
            format!("{label}: schema errors {errors:?}")
        })?;

        let text = tte(args);
        let text_keys: Vec<&str> = std::str::from_utf8(&text.stdout)
            .unwrap()
            .lines()
            .filter_map(|l| l.split(':').next())
            .collect();
        let json_keys: Vec<&str> = report
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        ensure(text_keys == json_keys, || {
            format!("{label}: text fields {text_keys:?} vs json {json_keys:?}")
        })?;

        let path = golden_dir().join(format!("{label}.json"));
        if update {
            std::fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
            std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
        } else {
            let stored = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            ensure(stored == first.stdout, || {
                format!("{label}: output differs from {}", path.display())
            })?;
        }
    }
    let statuses = [
        (tte(&["observe", "--set", "cyl(", "--point", "ep [;1]"]), 2),
        (
            tte(&["observe", "--set", "up(cyl 1)", "--point", "ep [;1]"]),
            3,
        ),
        (tte(&["observe", "--set", "cyl 1", "--point", "nat 3"]), 4),
    ];
    for (out, code) in statuses {
        ensure(out.status.code() == Some(code), || {
            format!("exit {:?}, expected {code}", out.status.code())
        })?;
    }
    Ok(format!(
        "{} commands byte-identical, schema-valid and golden; exit codes 2/3/4",
        GOLDEN.len()
    ))
}

// ---------------------------------------------------------------------------

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("machine-model suite", 30, machine_model),
        ("Sierpinski logic", 5, sierpinski_logic),
        ("jump functor laws", 60, jump_functor),
        ("mindchange pairs", 10, nabla_pairs),
        ("Sigma2 decomposition", 120, sigma2_decomposition),
        ("jump-overtness of Cantor", 120, jump_overtness),
        ("overt image round trip", 60, overt_round_trip),
        ("kappa plumbing", 10, kappa_plumbing),
        ("E0 equality", 10, e0_equality),
        ("CLI golden set", 20, cli_golden),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= Duration::from_secs(budget) {
                Ok(detail)
            } else {
                Err(format!("{detail}; over the {budget} s budget"))
            }
        });
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        // written past the harness capture so the summary always shows
        let line = format!(
            "{tag} {:>2} {name}: {detail} ({:.2} s)\n",
            i + 1,
            elapsed.as_secs_f64()
        );
        let _ = std::io::stdout().lock().write_all(line.as_bytes());
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
