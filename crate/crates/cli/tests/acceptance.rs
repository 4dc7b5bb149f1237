//! Acceptance criteria 1-10, one PASS/FAIL line each. Run with
//! `cargo test -p tracecat-cli --test acceptance -- --nocapture`.

mod common;
#[path = "../../core/tests/common/mod.rs"]
mod oracle;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use oracle::colimits::{check_identity_colimit, check_monotone, identity_diagram, random_presentation};
use oracle::systems::{equivariant_by_tables, system_is_valid};
use oracle::universal::monoid_instance;
use oracle::{five_events, transposition_class, words};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tracecat::fpcm::{self, right_adjoint, CategoryFlag, FiniteMonoid};
use tracecat::space::{self, SpaceDiagram};
use tracecat::system::{self, SystemDiagram};
use tracecat::{sample, verify, BasicHom, EventId, Shape, SystemMorphism, TraceMonoid, WeakAsyncSystem};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let m = five_events();
    let (a, b) = (m.parse_word("adecc").unwrap(), m.parse_word("accde").unwrap());
    ensure(m.equivalent(&a, &b).unwrap(), || "adecc and accde not equivalent".into())?;

    let all = words(m.len(), 8);
    let mut class_of: HashMap<Vec<EventId>, usize> = HashMap::with_capacity(all.len());
    let mut normal_forms: Vec<Vec<EventId>> = Vec::new();
    let mut representatives: Vec<Vec<EventId>> = Vec::new();
    for w in &all {
        if class_of.contains_key(w) {
            continue;
        }
        let id = representatives.len();
        for v in transposition_class(&m, w) {
            class_of.insert(v, id);
        }
        representatives.push(w.clone());
        normal_forms.push(m.normal_form(w));
    }
    for w in &all {
        let c = class_of[w];
        ensure(m.equivalent(w, &representatives[c]).unwrap(), || format!("{w:?} split from its class"))?;
        ensure(m.normal_form(w) == normal_forms[c], || format!("{w:?}: normal form differs in class"))?;
    }
    // distinct classes must be inequivalent: normal forms separate them
    let mut seen: HashMap<&Vec<EventId>, usize> = HashMap::new();
    for (c, nf) in normal_forms.iter().enumerate() {
        if let Some(d) = seen.insert(nf, c) {
            return Err(format!("classes {d} and {c} share a normal form"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cross = 0;
    while cross < 200_000 {
        let (x, y) = (rng.gen_range(0..all.len()), rng.gen_range(0..all.len()));
        let expected = class_of[&all[x]] == class_of[&all[y]];
        ensure(m.equivalent(&all[x], &all[y]).unwrap() == expected, || {
            format!("equiv({:?}, {:?}) disagrees with the oracle", all[x], all[y])
        })?;
        cross += 1;
    }
    Ok(format!(
        "{} words in {} classes, all pairs decided by class; {cross} random pairs rechecked",
        all.len(),
        representatives.len()
    ))
}

fn criterion_2() -> Outcome {
    let e1 = TraceMonoid::free(&["e1"]).unwrap();
    let e2 = TraceMonoid::free(&["e2"]).unwrap();
    let p = fpcm::product(&[e1, e2], CategoryFlag::Fpcm).unwrap();
    let free3 = TraceMonoid::free_commutative(&["x", "y", "z"]).unwrap();
    ensure(p.apex.len() == 3 && p.apex.independent_pairs().len() == 3, || format!("{:?}", p.apex))?;
    let iso = space::monoid_isomorphism(&p.apex, &free3).ok_or("no event bijection")?;
    Ok(format!("product {:?} ≅ free commutative on 3 via {iso:?}", p.apex))
}

fn criterion_3() -> Outcome {
    let src = TraceMonoid::free_commutative(&["a", "b"]).unwrap();
    let tgt = TraceMonoid::new(&["c", "d", "e"], &[("c", "d"), ("d", "e")]).unwrap();
    let f = BasicHom::from_names(&src, &tgt, &[("a", Some("c")), ("b", Some("d"))]).unwrap();
    let g = BasicHom::from_names(&src, &tgt, &[("a", Some("d")), ("b", Some("e"))]).unwrap();
    let coarse = fpcm::coequalizer_fpcm(&f, &g).unwrap();
    ensure(coarse.apex.len() == 1 && coarse.apex.independent_pairs().is_empty(), || {
        format!("FPCM coequalizer {:?}", coarse.apex)
    })?;
    let fine = fpcm::coequalizer_ip(&f, &g).unwrap();
    ensure(fine.apex == TraceMonoid::trivial(), || format!("FPCM^‖ coequalizer {:?}", fine.apex))?;
    Ok(format!("FPCM: {:?}; FPCM^‖: {:?}", coarse.apex, fine.apex))
}

fn criterion_4() -> Outcome {
    let mut cones = 0;
    let mut instances = 0;
    for (seed, flag) in [(4, CategoryFlag::Fpcm), (5, CategoryFlag::FpcmPar)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..110 {
            cones += monoid_instance(&mut rng, flag).map_err(|e| format!("{} instance {i}: {e}", flag.as_str()))?;
            instances += 1;
        }
    }
    Ok(format!("{instances} instances, {cones} test (co)cones, each with exactly one mediator"))
}

fn sources_up_to_two() -> Vec<TraceMonoid> {
    vec![
        TraceMonoid::trivial(),
        TraceMonoid::free(&["x"]).unwrap(),
        TraceMonoid::free(&["x", "y"]).unwrap(),
        TraceMonoid::free_commutative(&["x", "y"]).unwrap(),
    ]
}

fn assignments(gens: usize, carrier: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..gens {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..carrier).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn criterion_5() -> Outcome {
    let z2 = right_adjoint(&FiniteMonoid::cyclic(2).unwrap());
    ensure(z2.monoid.len() == 1 && z2.monoid.independent_pairs().is_empty(), || {
        format!("R(Z2) = {:?}", z2.monoid)
    })?;
    let z3 = right_adjoint(&FiniteMonoid::cyclic(3).unwrap());
    ensure(
        z3.monoid.len() == 2 && z3.monoid.independent_pairs().len() == 1,
        || format!("R(Z3) = {:?}", z3.monoid),
    )?;
    // a non-commutative carrier too: maps of {0,1} to itself under composition
    let maps = FiniteMonoid::new(
        &["id", "swap", "c0", "c1"],
        &[
            vec!["id", "swap", "c0", "c1"],
            vec!["swap", "id", "c0", "c1"],
            vec!["c0", "c1", "c0", "c1"],
            vec!["c1", "c0", "c0", "c1"],
        ],
    )
    .unwrap();
    let mut checked = 0;
    for ra in [z2, z3, right_adjoint(&maps)] {
        let carrier = &ra.carrier;
        let counit_of = |h: &BasicHom, e: EventId| h.at(e).map_or(carrier.identity(), |g| ra.counit[g.0]);
        for src in sources_up_to_two() {
            let homs = verify::homs(&src, &ra.monoid, CategoryFlag::Fpcm);
            for images in assignments(src.len(), carrier.len()) {
                let matches: Vec<&BasicHom> = homs
                    .iter()
                    .filter(|h| src.events().all(|e| counit_of(h, e) == images[e.0]))
                    .collect();
                if carrier.is_hom_assignment(&src, &images) {
                    ensure(matches.len() == 1, || format!("{} factorizations of {images:?}", matches.len()))?;
                    let lift = ra.lift(&src, &images).map_err(|e| e.to_string())?;
                    ensure(&lift == matches[0], || "lift is not the enumerated factorization".into())?;
                    for w in words(src.len(), 3) {
                        let t = src.normalize(&w).unwrap();
                        let via = ra.counit_on(&lift.apply(&t).unwrap());
                        ensure(via == carrier.evaluate(&images, &t), || format!("ε∘f̄ ≠ f on {w:?}"))?;
                    }
                } else {
                    ensure(matches.is_empty(), || format!("{images:?} is not a hom but factors"))?;
                    ensure(ra.lift(&src, &images).is_err(), || "lift accepted a non-hom".into())?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("R(Z2), R(Z3) as expected; {checked} homs from ≤ 2 generators factor uniquely"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..600 {
        let a = sample::system(&mut rng, 6, 4);
        let (s, init) = a.to_state_space();
        let back = WeakAsyncSystem::from_state_space(&s, init).map_err(|e| e.to_string())?;
        ensure(back == a, || format!("system {i} changed"))?;
        let rebuilt = WeakAsyncSystem::new(a.monoid().clone(), a.states().to_vec(), a.initial(), &a.transitions())
            .map_err(|e| e.to_string())?;
        ensure(rebuilt == a, || format!("system {i} not recovered from its transitions"))?;
    }
    Ok("600 systems (≤ 6 states, ≤ 4 events) round-trip".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut yes, mut no) = (0, 0);
    for i in 0..300 {
        let a = sample::system(&mut rng, 5, 3);
        let f = sample::morphism_from(&mut rng, &a, 4, 3);
        let r = f.polygonal_report().map_err(|e| e.to_string())?;
        let tables = equivariant_by_tables(&f) && f.hom().unwrap().is_independence_preserving();
        ensure(r.criterion == r.equivariance && r.criterion == tables, || {
            format!("morphism {i}: criterion {}, equivariance {}, tables {tables}", r.criterion, r.equivariance)
        })?;
        if r.criterion {
            yes += 1;
        } else {
            no += 1;
        }
    }
    let m = TraceMonoid::free(&["a"]).unwrap();
    let a = WeakAsyncSystem::from_names::<&str>(&m, &["s0"], "s0", &[]).unwrap();
    let b = WeakAsyncSystem::from_names(&m, &["t0", "t1"], "t0", &[("t0", "a", "t1")]).unwrap();
    let w = SystemMorphism::from_names(&a, &b, &[("a", Some("a"))], &[("s0", Some("t0"))]).unwrap();
    ensure(w.is_morphism(), || "witness rejected as a morphism".into())?;
    ensure(!w.is_polygonal().unwrap(), || "witness accepted as polygonal".into())?;
    Ok(format!("300 morphisms agree ({yes} polygonal, {no} not); witness is a morphism, not polygonal"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..150 {
        check_identity_colimit(&identity_diagram(&mut rng)).map_err(|e| format!("diagram {i}: {e}"))?;
    }
    for i in 0..60 {
        let a = sample::system(&mut rng, 3, 2);
        let b = sample::system(&mut rng, 3, 2);
        let d = SystemDiagram::new(Shape::discrete(2), vec![a.clone(), b.clone()], vec![]);
        let c = system::colimit(&d, 3).map_err(|e| e.to_string())?;
        let names = &d.shape.objects;
        match (a.initial(), b.initial()) {
            (Some(x), Some(y)) => {
                let cx = c.class_of(&names[0], &a.states()[x.0]);
                let cy = c.class_of(&names[1], &b.states()[y.0]);
                ensure(cx == cy && cx == Some(c.initial), || format!("coproduct {i}: initials not glued"))?;
            }
            _ => ensure(c.initial.is_none(), || format!("coproduct {i}: star initial lost"))?,
        }
    }
    for i in 0..200 {
        check_monotone(&random_presentation(&mut rng), 4).map_err(|e| format!("presentation {i}: {e}"))?;
    }
    Ok("150 identity-part colimits match congruence closure; 60 coproducts glue; 200 presentations monotone".into())
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut outputs = 0;
    for i in 0..100 {
        let flag = if i % 2 == 0 { CategoryFlag::Fpcm } else { CategoryFlag::FpcmPar };
        let m1 = sample::monoid(&mut rng, "a", 2, 1);
        let m2 = sample::monoid(&mut rng, "b", 2, 1);
        let s1 = sample::space(&mut rng, &m1, 3);
        let s2 = sample::space(&mut rng, &m2, 3);
        let id = BasicHom::identity(&m1);
        let f = sample::space_morphism_from(&mut rng, &s1, &id, 3);
        let g = sample::space_morphism_between(&mut rng, &s1, f.target(), &id);
        let cospan_other = sample::space(&mut rng, &m1, 3);
        let h = sample::space_morphism_between(&mut rng, &cospan_other, f.target(), &id);
        let cones = [
            space::product(&[s1.clone(), s2], flag),
            space::equalizer(&f, &g, flag),
            space::limit(
                &SpaceDiagram::new(
                    Shape::cospan(),
                    vec![s1.clone(), cospan_other, f.target().clone()],
                    vec![f.clone(), h],
                ),
                flag,
            ),
        ];
        for cone in cones {
            let cone = cone.map_err(|e| format!("instance {i}: {e}"))?;
            ensure(cone.apex.validate().is_empty(), || format!("instance {i}: limit space invalid"))?;
            ensure(cone.legs.iter().all(|l| l.validate().is_empty()), || format!("instance {i}: leg not equivariant"))?;
            outputs += 1;
        }
        check_identity_colimit(&identity_diagram(&mut rng)).map_err(|e| format!("instance {i}: {e}"))?;
        outputs += 1;

        let a = sample::system(&mut rng, 3, 2);
        let b = sample::system(&mut rng, 3, 2);
        let p = system::product(&[a.clone(), b]).map_err(|e| e.to_string())?;
        let r = a.reachable();
        let endos: Vec<SystemMorphism> = verify::space_morphisms(a.space(), a.space(), CategoryFlag::FpcmPar)
            .into_iter()
            .filter(|m| m.hom().is_identity())
            .filter_map(|m| SystemMorphism::from_space_morphism(&m, &a, &a).ok())
            .filter(|f| f.is_morphism())
            .collect();
        let (e1, e2) = (&endos[rng.gen_range(0..endos.len())], &endos[rng.gen_range(0..endos.len())]);
        let pair = SystemDiagram::new(Shape::parallel_pair(), vec![a.clone(), a.clone()], vec![e1.clone(), e2.clone()]);
        let l = system::limit(&pair).map_err(|e| e.to_string())?;
        let c = system::colimit(&pair, 8).map_err(|e| e.to_string())?;
        let apex = c.apex.as_ref().ok_or_else(|| format!("instance {i}: finite coequalizer TRUNCATED"))?;
        for (out, legs) in [(&p.apex, &p.legs), (&l.apex, &l.legs), (apex, c.legs.as_ref().unwrap())] {
            ensure(system_is_valid(out), || format!("instance {i}: system output invalid"))?;
            ensure(legs.iter().all(|x| x.is_polygonal().unwrap_or(false)), || {
                format!("instance {i}: leg not polygonal")
            })?;
            outputs += 1;
        }
        ensure(system_is_valid(&r), || format!("instance {i}: reachable part invalid"))?;
        outputs += 1;
    }
    Ok(format!("{outputs} limit/colimit/product/reachable outputs validate"))
}

fn criterion_10() -> Outcome {
    for (golden, input, args) in common::CASES {
        let first = common::run_case(input, args);
        let second = common::run_case(input, args);
        ensure(first.code == 0, || format!("{golden}: exit {} {}", first.code, first.stderr))?;
        ensure(first.stdout == second.stdout, || format!("{golden}: runs differ"))?;
        let expected = std::fs::read_to_string(common::fixtures().join("golden").join(golden))
            .map_err(|e| format!("{golden}: {e}"))?;
        ensure(first.stdout == expected, || format!("{golden}: differs from golden file"))?;
    }
    Ok(format!("{} fixtures byte-identical across two runs and to golden files", common::CASES.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 10] = [
        ("word equivalence vs transposition oracle", criterion_1, Some(Duration::from_secs(10))),
        ("product of two free monoids", criterion_2, Some(Duration::from_secs(1))),
        ("coequalizer in both categories", criterion_3, Some(Duration::from_secs(1))),
        ("universal properties", criterion_4, Some(Duration::from_secs(60))),
        ("right adjoint", criterion_5, Some(Duration::from_secs(5))),
        ("system / state-space round trip", criterion_6, Some(Duration::from_secs(10))),
        ("polygonal criterion", criterion_7, Some(Duration::from_secs(10))),
        ("colimit soundness", criterion_8, Some(Duration::from_secs(30))),
        ("structural validity", criterion_9, None),
        ("CLI determinism", criterion_10, None),
    ];
    let mut failed = Vec::new();
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        let budget = limit.map_or(String::new(), |l| format!(" < {l:?}"));
        match &outcome {
            Ok(detail) => println!("[PASS] criterion {:>2}: {name} ({took:.2?}{budget}): {detail}", i + 1),
            Err(why) => {
                println!("[FAIL] criterion {:>2}: {name} ({took:.2?}{budget}): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
