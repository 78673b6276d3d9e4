use tte_core::dsl::{build_machine, parse_machine, parse_set};
use tte_core::jumps::{inject_into_jump, nabla_decode, JumpName, NablaName};
use tte_core::kernel::{
    constant, head_swap, interleave, tuple_rows, Descriptor, EventuallyPeriodic, Family, Machine,
    Nat, Oracle, Prefix,
};
use tte_core::scan::{scan_jump_name, Verdict};
use tte_core::setops::{
    countable_union, cut, cylinder_machine, level_up, lifted_logic, preimage, sierp_or,
    ContinuousMap, DOpenSet, Logic,
};
use tte_core::spaces::{
    curry_name, eval_function, function_point, observe, observe_name, uncurry_name, Level,
    SierpObservation, SpaceDescriptor, SpacePoint,
};

fn ep(pre: &[Nat], per: &[Nat]) -> EventuallyPeriodic {
    EventuallyPeriodic::new(pre.to_vec(), per.to_vec())
}

fn panel() -> Vec<EventuallyPeriodic> {
    let mut out = Vec::new();
    for pre in [vec![], vec![0], vec![1], vec![0, 1], vec![1, 1]] {
        for per in [vec![0], vec![1], vec![0, 1], vec![1, 0, 0]] {
            out.push(ep(&pre, &per));
        }
    }
    out
}

fn machine(text: &str) -> Machine {
    build_machine(&parse_machine(text).unwrap(), None).unwrap()
}

fn top(o: &Oracle, fuel: usize) -> bool {
    observe_name(o, fuel).is_top()
}

#[test]
fn observe_examples() {
    let bottom = SpacePoint::sierpinski(None);
    assert_eq!(
        observe(&bottom, 100).unwrap(),
        SierpObservation::NotYetBottom { fuel_used: 100 }
    );
    let p = SpacePoint::opaque(
        SpaceDescriptor::Sierpinski,
        Oracle::fixture(vec![0, 0, 0, 1], vec![0]),
    );
    assert_eq!(
        observe(&p, 10).unwrap(),
        SierpObservation::ObservedTop { at_step: 3 }
    );
    let or = sierp_or().apply(&interleave(
        &bottom.name,
        &EventuallyPeriodic::top_at(5).into(),
    ));
    match observe_name(&or, 64) {
        SierpObservation::ObservedTop { at_step } => assert!(at_step <= 11),
        other => panic!("{other:?}"),
    }
    assert!(observe(&SpacePoint::nat(3), 10).is_err());
}

#[test]
fn observation_is_fuel_monotone() {
    for k in [0, 3, 17] {
        let s = SpacePoint::sierpinski(Some(k));
        let first = (0..40).find(|&f| observe(&s, f).unwrap().is_top()).unwrap();
        assert!((first..60)
            .all(|f| observe(&s, f).unwrap() == SierpObservation::ObservedTop { at_step: k }));
    }
}

#[test]
fn function_space_evaluation() {
    let x = SpacePoint::cantor(ep(&[1, 0], &[1, 1, 0]));
    let f = function_point(
        SpaceDescriptor::Cantor,
        SpaceDescriptor::Cantor,
        &Descriptor::Id,
    )
    .unwrap();
    assert_eq!(
        eval_function(&f, &x).unwrap().name.prefix(32),
        x.name.prefix(32)
    );

    let c = function_point(
        SpaceDescriptor::Cantor,
        SpaceDescriptor::Cantor,
        &Descriptor::Const(vec![1, 0, 0]),
    )
    .unwrap();
    assert_eq!(
        eval_function(&c, &x).unwrap().name.prefix(8),
        vec![1, 0, 0, 0, 0, 0, 0, 0]
    );

    let and_top = parse_machine("compose(pairwith(ep [;1]), table(and))").unwrap();
    let g = function_point(
        SpaceDescriptor::Sierpinski,
        SpaceDescriptor::Sierpinski,
        &and_top,
    )
    .unwrap();
    for (s, truth) in [
        (SpacePoint::sierpinski(Some(2)), true),
        (SpacePoint::sierpinski(None), false),
    ] {
        let out = eval_function(&g, &s).unwrap();
        assert_eq!(observe(&out, 64).unwrap().is_top(), truth);
    }
}

#[test]
fn currying_laws() {
    let prod = SpaceDescriptor::product(SpaceDescriptor::Cantor, SpaceDescriptor::Cantor);
    let first =
        function_point(prod.clone(), SpaceDescriptor::Cantor, &Descriptor::Split(0)).unwrap();
    let curried = curry_name(&first).unwrap();
    let x = SpacePoint::cantor(ep(&[0, 1, 1], &[0, 1]));
    let y = SpacePoint::cantor(ep(&[], &[1]));
    let gx = eval_function(&curried, &x).unwrap();
    assert_eq!(
        eval_function(&gx, &y).unwrap().name.prefix(32),
        x.name.prefix(32)
    );

    let back = uncurry_name(&curried).unwrap();
    let xs = panel();
    for (i, a) in xs.iter().enumerate() {
        let b = &xs[(7 * i + 3) % xs.len()];
        let xy = SpacePoint::pair(
            &SpacePoint::cantor(a.clone()),
            &SpacePoint::cantor(b.clone()),
        );
        let direct = eval_function(&first, &xy).unwrap();
        let round = eval_function(&back, &xy).unwrap();
        assert_eq!(direct.name.prefix(16), round.name.prefix(16));
    }

    let sprod = SpaceDescriptor::product(SpaceDescriptor::Sierpinski, SpaceDescriptor::Sierpinski);
    let and = function_point(
        sprod,
        SpaceDescriptor::Sierpinski,
        &Descriptor::Table("and".into()),
    )
    .unwrap();
    let with_top =
        eval_function(&curry_name(&and).unwrap(), &SpacePoint::sierpinski(Some(0))).unwrap();
    for s in [
        SpacePoint::sierpinski(None),
        SpacePoint::sierpinski(Some(4)),
    ] {
        let truth = s.name.prefix(32).iter().any(|&v| v != 0);
        assert_eq!(
            observe(&eval_function(&with_top, &s).unwrap(), 32)
                .unwrap()
                .is_top(),
            truth
        );
    }
}

#[test]
fn distributivity_on_a_panel() {
    let (u, v, w) = (
        DOpenSet::cylinder(&[1]),
        DOpenSet::cylinder(&[0, 1]),
        DOpenSet::cylinder(&[]),
    );
    let left = u.union(&v).unwrap().intersect(&w).unwrap();
    let right = u
        .intersect(&w)
        .unwrap()
        .union(&v.intersect(&w).unwrap())
        .unwrap();
    for p in panel() {
        let o: Oracle = p.into();
        assert_eq!(
            observe_name(&left.membership(&o), 512),
            observe_name(&right.membership(&o), 512)
        );
    }
}

#[test]
fn idempotence_and_cover() {
    let u = DOpenSet::cylinder(&[1, 0]);
    let uu = u.union(&u).unwrap();
    let ui = u.intersect(&u).unwrap();
    let both = DOpenSet::cylinder(&[0])
        .union(&DOpenSet::cylinder(&[1]))
        .unwrap();
    for p in panel().into_iter().take(10) {
        let o: Oracle = p.into();
        let base = top(&u.membership(&o), 64);
        assert_eq!(top(&uu.membership(&o), 64), base);
        assert_eq!(top(&ui.membership(&o), 64), base);
        assert!(top(&both.membership(&o), 32));
    }
}

#[test]
fn preimage_laws() {
    let u = DOpenSet::cylinder(&[1]);
    let id = ContinuousMap::identity(SpaceDescriptor::Cantor);
    let swap = ContinuousMap::new(
        SpaceDescriptor::Cantor,
        SpaceDescriptor::Cantor,
        head_swap(),
    );
    let pid = preimage(&id, &u).unwrap();
    let pswap = preimage(&swap, &u).unwrap();
    let c = ContinuousMap::new(
        SpaceDescriptor::Cantor,
        SpaceDescriptor::Cantor,
        constant(vec![1]),
    );
    let pc = preimage(&c, &u).unwrap();
    for p in panel() {
        let o: Oracle = p.clone().into();
        assert_eq!(top(&pid.membership(&o), 64), p.at(0) == 1);
        assert_eq!(top(&pswap.membership(&o), 64), p.at(0) == 0);
        assert!(top(&pc.membership(&o), 64));
    }
    let twice = swap.then(&swap).unwrap();
    let a = preimage(&twice, &u).unwrap();
    let b = preimage(&swap, &preimage(&swap, &u).unwrap()).unwrap();
    for p in panel() {
        let o: Oracle = p.into();
        assert_eq!(
            observe_name(&a.membership(&o), 64),
            observe_name(&b.membership(&o), 64)
        );
    }
}

#[test]
fn cut_examples() {
    let prod = SpaceDescriptor::product(SpaceDescriptor::Cantor, SpaceDescriptor::Cantor);
    let first_in_v = DOpenSet::new(
        prod.clone(),
        Level::BASE,
        machine("compose(split(0), cyl(1))"),
    );
    let second_in_w = DOpenSet::new(prod, Level::BASE, machine("compose(split(1), cyl(0))"));
    for y in panel().into_iter().step_by(3) {
        let yp = SpacePoint::cantor(y.clone());
        let a = cut(&yp, &first_in_v).unwrap();
        let b = cut(&yp, &second_in_w).unwrap();
        for x in panel() {
            let o: Oracle = x.clone().into();
            assert_eq!(top(&a.membership(&o), 32), x.at(0) == 1);
            assert_eq!(top(&b.membership(&o), 32), y.at(0) == 0);
        }
    }
}

#[test]
fn countable_union_of_cylinders() {
    // [0^n 1] for every n
    let fam = Family::from_fn("zeros-then-one", |n| {
        let mut w = vec![0u8; n as usize];
        w.push(1);
        cylinder_machine(&w)
    });
    let u = countable_union(SpaceDescriptor::Cantor, Level::BASE, &fam).unwrap();
    for p in panel() {
        let has_one = p.first_nonzero().is_some();
        let obs = observe_name(&u.membership(&p.into()), 10_000);
        assert_eq!(obs.is_top(), has_one);
    }
    assert!(countable_union(SpaceDescriptor::Cantor, Level::Nabla, &fam).is_err());
}

#[test]
fn union_is_monotone_in_members() {
    let small = Family::from_list(vec![cylinder_machine(&[1, 1])]);
    let big = Family::from_list(vec![cylinder_machine(&[1, 1]), cylinder_machine(&[0])]);
    let a = countable_union(SpaceDescriptor::Cantor, Level::BASE, &small).unwrap();
    let b = countable_union(SpaceDescriptor::Cantor, Level::BASE, &big).unwrap();
    for p in panel() {
        let o: Oracle = p.into();
        if top(&a.membership(&o), 256) {
            assert!(top(&b.membership(&o), 256));
        }
    }
}

fn jump_verdict(o: &Oracle) -> Verdict {
    scan_jump_name(o, 8, 64).sierpinski_verdict()
}

#[test]
fn lifted_logic_examples() {
    let or1 = lifted_logic(Level::Jump(1), Logic::Or).unwrap();
    let bottom_j = JumpName::fixture(EventuallyPeriodic::constant(0), vec![vec![1, 1, 0]]);
    let top_j = JumpName::inject(&EventuallyPeriodic::top_at(0).into());
    let out = or1.apply(&interleave(&bottom_j.base, &top_j.base));
    assert_eq!(jump_verdict(&out), Verdict::Top);

    let join1 = lifted_logic(Level::Jump(1), Logic::Join).unwrap();
    let rows = tuple_rows(|j| {
        let s = if j == 4 {
            EventuallyPeriodic::top_at(1)
        } else {
            EventuallyPeriodic::constant(0)
        };
        inject_into_jump().apply(&s.into())
    });
    // the first nonzero join row is <4, 1> = 16
    assert_eq!(
        scan_jump_name(&join1.apply(&rows), 20, 64).sierpinski_verdict(),
        Verdict::Top
    );

    let and_n = lifted_logic(Level::Nabla, Logic::And).unwrap();
    let flip = |v: Nat| {
        NablaName::from_stages(
            &[Prefix::new(vec![0]), Prefix::new(vec![v])],
            &EventuallyPeriodic::constant(v),
        )
    };
    let out = and_n.apply(&interleave(&flip(1).base, &flip(1).base));
    let t = nabla_decode(&out.prefix(200));
    assert!(t.mindchanges <= 3, "{} mindchanges", t.mindchanges);
    assert!(t.final_candidate().items().iter().any(|&v| v != 0));
    assert!(lifted_logic(Level::Nabla, Logic::Join).is_err());
}

#[test]
fn level_up_semantics() {
    let u = DOpenSet::cylinder(&[1]);
    let up = level_up(&u, false).unwrap();
    let upc = level_up(&u, true).unwrap();
    let up2 = level_up(&up, false).unwrap();
    for p in panel() {
        let o: Oracle = p.clone().into();
        let inside = p.at(0) == 1;
        assert_eq!(jump_verdict(&up.membership(&o)) == Verdict::Top, inside);
        assert_eq!(jump_verdict(&upc.membership(&o)) == Verdict::Top, !inside);
        let lim2 = tte_core::scan::scan_level_name(&up2.membership(&o), 2, 4, 24);
        assert_eq!(lim2.iter().any(|v| matches!(v, Some(x) if *x != 0)), inside);
    }
    let nabla = DOpenSet::trivial(SpaceDescriptor::Cantor, Level::Nabla, true);
    assert!(level_up(&nabla, false).is_err());
}

#[test]
fn set_dsl_builds_equivalent_sets() {
    let a = parse_set("up(pre(id, cyl 1))").unwrap();
    let b = level_up(&DOpenSet::cylinder(&[1]), false).unwrap();
    for p in panel() {
        let o: Oracle = p.into();
        assert_eq!(
            jump_verdict(&a.membership(&o)),
            jump_verdict(&b.membership(&o))
        );
    }
    let cover = parse_set("or(cyl 0, cyl 1)").unwrap();
    assert!(panel()
        .into_iter()
        .all(|p| top(&cover.membership(&p.into()), 32)));
}
