//! Bounded enumeration for checking universal properties on small instances:
//! hom sets, test (co)cones over a diagram, and mediating morphisms.

use crate::diagram::Shape;
use crate::fpcm::{CategoryFlag, MonoidCocone, MonoidCone, MonoidDiagram};
use crate::hom::BasicHom;
use crate::space::{Point, SpaceCone, SpaceDiagram, SpaceMorphism, StateId, StateSpace};
use crate::trace::{EventId, TraceMonoid};
use crate::util::odometer;

fn option_from_index(k: usize) -> Option<EventId> {
    if k == 0 {
        None
    } else {
        Some(EventId(k - 1))
    }
}

fn point_from_index(k: usize) -> Point {
    if k == 0 {
        None
    } else {
        Some(StateId(k - 1))
    }
}

/// Every basic hom `source -> target` admitted by `flag`.
pub fn homs(source: &TraceMonoid, target: &TraceMonoid, flag: CategoryFlag) -> Vec<BasicHom> {
    let radices = vec![target.len() + 1; source.len()];
    odometer(&radices)
        .filter_map(|c| {
            let image = c.into_iter().map(option_from_index).collect();
            BasicHom::new(source.clone(), target.clone(), image).ok()
        })
        .filter(|h| flag.admits(h))
        .collect()
}

/// Every basic hom admitted by `flag` whose generator `i` lands in
/// `candidates[i]`.
fn homs_from_candidates(
    source: &TraceMonoid,
    target: &TraceMonoid,
    candidates: &[Vec<Option<EventId>>],
    flag: CategoryFlag,
) -> Vec<BasicHom> {
    let radices: Vec<usize> = candidates.iter().map(Vec::len).collect();
    odometer(&radices)
        .filter_map(|c| {
            let image = c.iter().zip(candidates).map(|(&k, cs)| cs[k]).collect();
            BasicHom::new(source.clone(), target.clone(), image).ok()
        })
        .filter(|h| flag.admits(h))
        .collect()
}

fn all_targets(m: &TraceMonoid) -> Vec<Option<EventId>> {
    std::iter::once(None).chain(m.events().map(Some)).collect()
}

/// Object visiting order: for cones, arrow sources before targets so target
/// legs are forced by composition; for cocones the reverse.
fn visit_order(shape: &Shape, sources_first: bool) -> Vec<usize> {
    let n = shape.objects.len();
    let edges: Vec<(usize, usize)> = (0..shape.arrows.len())
        .map(|a| {
            let (s, t) = shape.endpoints(a);
            if sources_first {
                (s, t)
            } else {
                (t, s)
            }
        })
        .collect();
    let mut indegree = vec![0usize; n];
    for &(_, t) in &edges {
        indegree[t] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .find(|&i| !done[i] && indegree[i] == 0)
            .or_else(|| (0..n).find(|&i| !done[i]))
            .expect("some object remains");
        done[next] = true;
        order.push(next);
        for &(s, t) in &edges {
            if s == next && indegree[t] > 0 {
                indegree[t] -= 1;
            }
        }
    }
    order
}

/// Arrows of a diagram as composable maps, for cone enumeration.
trait Composable: Clone + PartialEq {
    fn after(&self, inner: &Self) -> Option<Self>;
}

impl Composable for BasicHom {
    fn after(&self, inner: &Self) -> Option<Self> {
        self.compose(inner).ok()
    }
}

impl Composable for SpaceMorphism {
    fn after(&self, inner: &Self) -> Option<Self> {
        self.compose(inner).ok()
    }
}

/// Families of legs, one per object, commuting with every arrow. `all(i)`
/// lists the candidate legs at object `i`; a leg already forced by an arrow
/// from (cones) or to (cocones) a chosen object is computed instead.
fn families<T: Composable>(shape: &Shape, arrows: &[T], cone: bool, all: impl Fn(usize) -> Vec<T>) -> Vec<Vec<T>> {
    let order = visit_order(shape, cone);
    let ends: Vec<(usize, usize)> = (0..arrows.len()).map(|a| shape.endpoints(a)).collect();
    let commutes = |a: usize, chosen: &[Option<T>]| {
        let (s, t) = ends[a];
        match (&chosen[s], &chosen[t]) {
            (Some(hs), Some(ht)) => {
                if cone {
                    arrows[a].after(hs).is_some_and(|c| c == *ht)
                } else {
                    ht.after(&arrows[a]).is_some_and(|c| c == *hs)
                }
            }
            _ => true,
        }
    };
    let options = |i: usize, chosen: &[Option<T>]| -> Vec<T> {
        for (a, &(s, t)) in ends.iter().enumerate() {
            if cone && t == i {
                if let Some(hs) = &chosen[s] {
                    return arrows[a].after(hs).into_iter().collect();
                }
            }
            if !cone && s == i {
                if let Some(ht) = &chosen[t] {
                    return ht.after(&arrows[a]).into_iter().collect();
                }
            }
        }
        all(i)
    };

    #[allow(clippy::too_many_arguments)]
    fn go<T: Composable>(
        k: usize,
        order: &[usize],
        chosen: &mut Vec<Option<T>>,
        options: &dyn Fn(usize, &[Option<T>]) -> Vec<T>,
        commutes: &dyn Fn(usize, &[Option<T>]) -> bool,
        arrows: usize,
        out: &mut Vec<Vec<T>>,
    ) {
        if k == order.len() {
            out.push(chosen.iter().map(|c| c.clone().expect("all chosen")).collect());
            return;
        }
        let i = order[k];
        for leg in options(i, chosen) {
            chosen[i] = Some(leg);
            if (0..arrows).all(|a| commutes(a, chosen)) {
                go(k + 1, order, chosen, options, commutes, arrows, out);
            }
        }
        chosen[i] = None;
    }
    let mut out = Vec::new();
    let mut chosen = vec![None; shape.objects.len()];
    go(0, &order, &mut chosen, &options, &commutes, arrows.len(), &mut out);
    out
}

/// Every family of homs `test -> D(i)` commuting with the diagram's arrows.
pub fn monoid_cones(d: &MonoidDiagram, test: &TraceMonoid, flag: CategoryFlag) -> Vec<Vec<BasicHom>> {
    families(&d.shape, &d.arrows, true, |i| homs(test, &d.objects[i], flag))
}

/// Every family of homs `D(i) -> test` commuting with the diagram's arrows.
pub fn monoid_cocones(d: &MonoidDiagram, test: &TraceMonoid, flag: CategoryFlag) -> Vec<Vec<BasicHom>> {
    families(&d.shape, &d.arrows, false, |i| homs(&d.objects[i], test, flag))
}

/// All `u: test -> apex` admitted by `flag` with `legᵢ ∘ u = test_legᵢ`.
pub fn cone_mediators(cone: &MonoidCone, test: &TraceMonoid, legs: &[BasicHom], flag: CategoryFlag) -> Vec<BasicHom> {
    let candidates: Vec<Vec<Option<EventId>>> = test
        .events()
        .map(|t| {
            all_targets(&cone.apex)
                .into_iter()
                .filter(|&x| {
                    cone.legs
                        .iter()
                        .zip(legs)
                        .all(|(mine, theirs)| x.and_then(|x| mine.at(x)) == theirs.at(t))
                })
                .collect()
        })
        .collect();
    homs_from_candidates(test, &cone.apex, &candidates, flag)
}

/// All `u: apex -> test` admitted by `flag` with `u ∘ legᵢ = test_legᵢ`.
pub fn cocone_mediators(
    cocone: &MonoidCocone,
    test: &TraceMonoid,
    legs: &[BasicHom],
    flag: CategoryFlag,
) -> Vec<BasicHom> {
    let mut candidates: Vec<Vec<Option<EventId>>> = vec![all_targets(test); cocone.apex.len()];
    for (mine, theirs) in cocone.legs.iter().zip(legs) {
        for s in mine.source().events() {
            match mine.at(s) {
                Some(g) => candidates[g.0].retain(|&y| y == theirs.at(s)),
                None if theirs.at(s).is_some() => return Vec::new(),
                None => {}
            }
        }
    }
    homs_from_candidates(&cocone.apex, test, &candidates, flag)
}

/// Every state map making `(hom, σ)` an equivariant morphism.
fn state_maps(source: &StateSpace, target: &StateSpace, hom: &BasicHom, candidates: &[Vec<Point>]) -> Vec<Vec<Point>> {
    let radices: Vec<usize> = candidates.iter().map(Vec::len).collect();
    odometer(&radices)
        .map(|c| c.iter().zip(candidates).map(|(&k, cs)| cs[k]).collect::<Vec<Point>>())
        .filter(|states| {
            source.ids().all(|x| {
                source.monoid().events().all(|e| {
                    let left = source.act(Some(x), e).and_then(|y| states[y.0]);
                    left == target.act_opt(states[x.0], hom.at(e))
                })
            })
        })
        .collect()
}

fn all_points(s: &StateSpace) -> Vec<Point> {
    (0..=s.len()).map(point_from_index).collect()
}

/// Every space morphism `source -> target` admitted by `flag`.
pub fn space_morphisms(source: &StateSpace, target: &StateSpace, flag: CategoryFlag) -> Vec<SpaceMorphism> {
    let candidates = vec![all_points(target); source.len()];
    homs(source.monoid(), target.monoid(), flag)
        .into_iter()
        .flat_map(|h| {
            state_maps(source, target, &h, &candidates)
                .into_iter()
                .map(move |st| SpaceMorphism::unchecked(source.clone(), target.clone(), h.clone(), st))
        })
        .collect::<crate::Result<Vec<_>>>()
        .expect("enumerated morphisms are well-shaped")
}

pub fn space_cones(d: &SpaceDiagram, test: &StateSpace, flag: CategoryFlag) -> Vec<Vec<SpaceMorphism>> {
    families(&d.shape, &d.arrows, true, |i| space_morphisms(test, &d.objects[i], flag))
}

pub fn space_cocones(d: &SpaceDiagram, test: &StateSpace, flag: CategoryFlag) -> Vec<Vec<SpaceMorphism>> {
    families(&d.shape, &d.arrows, false, |i| space_morphisms(&d.objects[i], test, flag))
}

pub fn space_cone_mediators(
    cone: &SpaceCone,
    test: &StateSpace,
    legs: &[SpaceMorphism],
    flag: CategoryFlag,
) -> Vec<SpaceMorphism> {
    let monoid_cone = MonoidCone {
        apex: cone.apex.monoid().clone(),
        legs: cone.legs.iter().map(|l| l.hom().clone()).collect(),
    };
    let homs: Vec<BasicHom> = legs.iter().map(|l| l.hom().clone()).collect();
    let candidates: Vec<Vec<Point>> = test
        .ids()
        .map(|x| {
            all_points(&cone.apex)
                .into_iter()
                .filter(|&p| cone.legs.iter().zip(legs).all(|(m, t)| m.map(p) == t.map(Some(x))))
                .collect()
        })
        .collect();
    mediators_with(test, &cone.apex, cone_mediators(&monoid_cone, test.monoid(), &homs, flag), &candidates)
}

/// Mediators out of a colimit apex whose legs are given.
pub fn space_cocone_mediators(
    apex: &StateSpace,
    apex_legs: &[SpaceMorphism],
    monoid: &MonoidCocone,
    test: &StateSpace,
    legs: &[SpaceMorphism],
    flag: CategoryFlag,
) -> Vec<SpaceMorphism> {
    let homs: Vec<BasicHom> = legs.iter().map(|l| l.hom().clone()).collect();
    let mut candidates = vec![all_points(test); apex.len()];
    for (mine, theirs) in apex_legs.iter().zip(legs) {
        for x in mine.source().ids() {
            match mine.map(Some(x)) {
                Some(c) => candidates[c.0].retain(|&y| y == theirs.map(Some(x))),
                None if theirs.map(Some(x)).is_some() => return Vec::new(),
                None => {}
            }
        }
    }
    mediators_with(apex, test, cocone_mediators(monoid, test.monoid(), &homs, flag), &candidates)
}

fn mediators_with(
    source: &StateSpace,
    target: &StateSpace,
    homs: Vec<BasicHom>,
    candidates: &[Vec<Point>],
) -> Vec<SpaceMorphism> {
    let mut out = Vec::new();
    for h in homs {
        for st in state_maps(source, target, &h, candidates) {
            out.push(
                SpaceMorphism::unchecked(source.clone(), target.clone(), h.clone(), st)
                    .expect("candidates are in range"),
            );
        }
    }
    out
}
