//! Seeded random instances for property tests and the acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fpcm::CategoryFlag;
use crate::hom::BasicHom;
use crate::space::{Point, SpaceMorphism, StateId, StateSpace};
use crate::system::{SystemMorphism, WeakAsyncSystem};
use crate::trace::{EventId, TraceMonoid};

/// At most `max_events` events named `{prefix}0, {prefix}1, …` and at most
/// `max_pairs` independent pairs.
pub fn monoid<R: Rng>(rng: &mut R, prefix: &str, max_events: usize, max_pairs: usize) -> TraceMonoid {
    let n = rng.gen_range(0..=max_events);
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let mut all = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            all.push((EventId(a), EventId(b)));
        }
    }
    all.shuffle(rng);
    let k = rng.gen_range(0..=max_pairs.min(all.len()));
    all.truncate(k);
    TraceMonoid::from_ids(names, all).expect("generated names are distinct")
}

/// A random hom admitted by `flag`, falling back to the trivial hom.
pub fn hom<R: Rng>(rng: &mut R, source: &TraceMonoid, target: &TraceMonoid, flag: CategoryFlag) -> BasicHom {
    for _ in 0..64 {
        let image = source
            .events()
            .map(|_| {
                let k = rng.gen_range(0..=target.len());
                (k > 0).then(|| EventId(k - 1))
            })
            .collect();
        if let Ok(h) = BasicHom::new(source.clone(), target.clone(), image) {
            if flag.admits(&h) {
                return h;
            }
        }
    }
    BasicHom::trivial(source, target)
}

/// Sets offending entries to `*` until every diamond holds. Terminates since
/// entries only ever become `*`.
pub fn repair_diamonds(monoid: &TraceMonoid, table: &mut [Vec<Point>]) {
    let pairs = monoid.independent_pairs();
    let act = |t: &[Vec<Point>], x: Point, e: EventId| x.and_then(|x| t[x.0][e.0]);
    loop {
        let mut changed = false;
        for x in 0..table.len() {
            for &(a, b) in &pairs {
                let xa = act(table, Some(StateId(x)), a);
                let xb = act(table, Some(StateId(x)), b);
                if act(table, xa, b) != act(table, xb, a) {
                    if let Some(y) = xa {
                        if table[y.0][b.0].is_some() {
                            table[y.0][b.0] = None;
                            changed = true;
                        }
                    }
                    if let Some(y) = xb {
                        if table[y.0][a.0].is_some() {
                            table[y.0][a.0] = None;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// A valid space over `monoid` with at most `max_states` states.
pub fn space<R: Rng>(rng: &mut R, monoid: &TraceMonoid, max_states: usize) -> StateSpace {
    let n = rng.gen_range(0..=max_states);
    let density: f64 = rng.gen_range(0.2..0.9);
    let mut table: Vec<Vec<Point>> = (0..n)
        .map(|_| {
            monoid
                .events()
                .map(|_| rng.gen_bool(density).then(|| StateId(rng.gen_range(0..n))))
                .collect()
        })
        .collect();
    repair_diamonds(monoid, &mut table);
    let names = (0..n).map(|i| format!("s{i}")).collect();
    StateSpace::new(monoid.clone(), names, table).expect("generated table is well-shaped")
}

pub fn system<R: Rng>(rng: &mut R, max_states: usize, max_events: usize) -> WeakAsyncSystem {
    let m = monoid(rng, "e", max_events, max_events * max_events);
    let s = space(rng, &m, max_states);
    let initial = if s.is_empty() || rng.gen_bool(0.1) {
        None
    } else {
        Some(StateId(rng.gen_range(0..s.len())))
    };
    WeakAsyncSystem::from_state_space(&s, initial).expect("repaired space is valid")
}

/// A random equivariant morphism out of `source` over `hom`, into a target
/// built around it with at most `max_states` states.
pub fn space_morphism_from<R: Rng>(rng: &mut R, source: &StateSpace, hom: &BasicHom, max_states: usize) -> SpaceMorphism {
    let tm = hom.target();
    loop {
        let n = rng.gen_range(1..=max_states.max(1));
        let states: Vec<Point> = source
            .ids()
            .map(|_| (!rng.gen_bool(0.1)).then(|| StateId(rng.gen_range(0..n))))
            .collect();
        let sigma = |p: Point| p.and_then(|s| states[s.0]);
        let mut table: Vec<Vec<Point>> = (0..n)
            .map(|_| tm.events().map(|_| rng.gen_bool(0.3).then(|| StateId(rng.gen_range(0..n)))).collect())
            .collect();
        let mut ok = true;
        let mut forced = vec![vec![false; tm.len()]; n];
        for x in source.ids() {
            for e in source.monoid().events() {
                let want = sigma(source.act(Some(x), e));
                match (sigma(Some(x)), hom.at(e)) {
                    (Some(t), Some(fe)) => {
                        if forced[t.0][fe.0] && table[t.0][fe.0] != want {
                            ok = false;
                        }
                        forced[t.0][fe.0] = true;
                        table[t.0][fe.0] = want;
                    }
                    (t, None) => ok &= t == want,
                    (None, Some(_)) => ok &= want.is_none(),
                }
            }
        }
        if !ok {
            continue;
        }
        repair_diamonds(tm, &mut table);
        let names = (0..n).map(|i| format!("t{i}")).collect();
        let target = StateSpace::new(tm.clone(), names, table).expect("well-shaped");
        if let Ok(m) = SpaceMorphism::new(source.clone(), target, hom.clone(), states) {
            return m;
        }
    }
}

/// A uniformly chosen equivariant morphism between fixed spaces over `hom`;
/// the all-`*` map always exists.
pub fn space_morphism_between<R: Rng>(rng: &mut R, source: &StateSpace, target: &StateSpace, hom: &BasicHom) -> SpaceMorphism {
    let all = crate::verify::space_morphisms(source, target, CategoryFlag::Fpcm);
    let fitting: Vec<SpaceMorphism> = all.into_iter().filter(|m| m.hom() == hom).collect();
    fitting.choose(rng).expect("the all-* map is equivariant").clone()
}

/// A random morphism of systems out of `source`, with a target built around
/// it. Roughly half of the results are polygonal.
pub fn morphism_from<R: Rng>(rng: &mut R, source: &WeakAsyncSystem, max_states: usize, max_events: usize) -> SystemMorphism {
    loop {
        if let Some(f) = try_morphism(rng, source, max_states, max_events) {
            return f;
        }
    }
}

fn try_morphism<R: Rng>(
    rng: &mut R,
    source: &WeakAsyncSystem,
    max_states: usize,
    max_events: usize,
) -> Option<SystemMorphism> {
    let tm = monoid(rng, "f", max_events.max(1), max_events * max_events);
    let events = hom(rng, source.monoid(), &tm, CategoryFlag::FpcmPar);
    let n = rng.gen_range(1..=max_states.max(1));
    let states: Vec<Point> = source
        .states()
        .iter()
        .map(|_| (!rng.gen_bool(0.15)).then(|| StateId(rng.gen_range(0..n))))
        .collect();
    let sigma = |p: Point| p.and_then(|s| states[s.0]);
    let tight = rng.gen_bool(0.5);
    let mut table: Vec<Vec<Point>> = (0..n)
        .map(|_| {
            tm.events()
                .map(|_| (!tight && rng.gen_bool(0.4)).then(|| StateId(rng.gen_range(0..n))))
                .collect()
        })
        .collect();
    let mut forced: Vec<Vec<bool>> = vec![vec![false; tm.len()]; n];
    for (s1, e, s2) in source.transitions() {
        let (t1, t2) = (sigma(Some(s1)), sigma(Some(s2)));
        match (events.at(e), t1) {
            (Some(fe), Some(t1)) => {
                if forced[t1.0][fe.0] && table[t1.0][fe.0] != t2 {
                    return None;
                }
                forced[t1.0][fe.0] = true;
                table[t1.0][fe.0] = t2;
            }
            (Some(_), None) if t2.is_some() => return None,
            (None, _) if t1 != t2 => return None,
            _ => {}
        }
    }
    repair_diamonds(&tm, &mut table);
    let names = (0..n).map(|i| format!("t{i}")).collect();
    let space = StateSpace::new(tm, names, table).ok()?;
    let target = WeakAsyncSystem::from_state_space(&space, sigma(source.initial())).ok()?;
    let f = SystemMorphism::new(source.clone(), target, events.image().to_vec(), states).ok()?;
    f.is_morphism().then_some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let a = system(&mut rng, 5, 3);
            assert!(a.space().validate().is_empty());
            let f = morphism_from(&mut rng, &a, 4, 3);
            assert!(f.is_morphism());
        }
    }
}
