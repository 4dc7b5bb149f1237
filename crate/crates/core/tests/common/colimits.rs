//! Brute-force references for colimits of state spaces.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tracecat::fpcm::CategoryFlag;
use tracecat::space::{colimit, saturate, PresentedAction, Resolved, SpaceDiagram, Term};
use tracecat::{sample, BasicHom, EventId, Shape, StateId};

use super::{congruence_closure, same_partition, words};

/// Diagrams over one monoid whose arrows have identity monoid parts.
pub fn identity_diagram(rng: &mut ChaCha8Rng) -> SpaceDiagram {
    let m = sample::monoid(rng, "e", 2, 1);
    let id = BasicHom::identity(&m);
    if rng.gen_bool(0.5) {
        let src = sample::space(rng, &m, 3);
        let f = sample::space_morphism_from(rng, &src, &id, 4);
        let g = sample::space_morphism_between(rng, &src, f.target(), &id);
        SpaceDiagram::new(Shape::parallel_pair(), vec![src, f.target().clone()], vec![f, g])
    } else {
        let apex = sample::space(rng, &m, 3);
        let l = sample::space_morphism_from(rng, &apex, &id, 3);
        let r = sample::space_morphism_from(rng, &apex, &id, 3);
        SpaceDiagram::new(
            Shape::span(),
            vec![apex, l.target().clone(), r.target().clone()],
            vec![l, r],
        )
    }
}

/// Colimit of an identity-part diagram by brute force: disjoint union of all
/// states modulo the congruence generated by the arrows.
pub fn brute_force_colimit(d: &SpaceDiagram) -> Vec<Option<usize>> {
    let mut offsets = Vec::new();
    let mut owner = Vec::new();
    for (i, s) in d.objects.iter().enumerate() {
        offsets.push(owner.len());
        owner.extend((0..s.len()).map(|x| (i, x)));
    }
    let events = d.objects[0].monoid().len();
    let step = |g: usize, e: usize| {
        let (i, x) = owner[g];
        d.objects[i].act(Some(StateId(x)), EventId(e)).map(|y| offsets[i] + y.0)
    };
    let mut pairs = Vec::new();
    for (a, m) in d.arrows.iter().enumerate() {
        let (s, t) = d.shape.endpoints(a);
        for x in d.objects[s].ids() {
            pairs.push((Some(offsets[s] + x.0), m.map(Some(x)).map(|y| offsets[t] + y.0)));
        }
    }
    congruence_closure(owner.len(), events, step, &pairs)
}

/// The EXACT colimit of an identity-part diagram is the brute-force quotient,
/// and its object and legs validate.
pub fn check_identity_colimit(d: &SpaceDiagram) -> Result<(), String> {
    let c = colimit(d, CategoryFlag::FpcmPar, 8).map_err(|e| e.to_string())?;
    if !c.saturation.is_exact() {
        return Err("finite quotient reported TRUNCATED".into());
    }
    let oracle = brute_force_colimit(d);
    if !same_partition(&c.saturation.class_map, &oracle) {
        return Err(format!("{:?} vs {oracle:?}", c.saturation.class_map));
    }
    let classes: BTreeSet<usize> = oracle.iter().flatten().copied().collect();
    if c.saturation.space.len() != classes.len() {
        return Err("extra states beyond the generator classes".into());
    }
    if !c.saturation.space.validate().is_empty() {
        return Err("colimit space fails validation".into());
    }
    let legs = c.legs.as_ref().ok_or("EXACT result without legs")?;
    if !legs.iter().all(|l| l.validate().is_empty()) {
        return Err("colimit leg is not equivariant".into());
    }
    Ok(())
}

pub fn random_presentation(rng: &mut ChaCha8Rng) -> PresentedAction {
    let m = sample::monoid(rng, "e", 2, 1);
    let n = rng.gen_range(1..=3);
    let mut p = PresentedAction::new(m.clone(), (0..n).map(|i| format!("g{i}")).collect());
    for g in 0..n {
        for e in m.events() {
            if rng.gen_bool(0.4) {
                let t = rng.gen_bool(0.8).then(|| rng.gen_range(0..n));
                p.rule(g, e, t);
            }
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let term = |rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.1) || m.is_empty() {
                Term::Star
            } else {
                let len = rng.gen_range(0..=2);
                Term::At(rng.gen_range(0..n), (0..len).map(|_| EventId(rng.gen_range(0..m.len()))).collect())
            }
        };
        let (a, b) = (term(rng), term(rng));
        p.identify(a, b);
    }
    p
}

/// Runs saturation at every bound up to `max` and checks that settled terms
/// stay settled, classes never split, and EXACT results are stable.
pub fn check_monotone(p: &PresentedAction, max: usize) -> Result<(), String> {
    let results: Vec<_> = (0..=max).map(|b| saturate(p, b)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    for b in 0..max {
        let (lo, hi) = (&results[b], &results[b + 1]);
        let terms: Vec<(usize, Vec<EventId>)> = (0..p.generators.len())
            .flat_map(|g| words(p.monoid.len(), b).into_iter().map(move |w| (g, w)))
            .filter(|(g, w)| lo.resolve(*g, w) != Resolved::Unknown)
            .collect();
        for (g, w) in &terms {
            if hi.resolve(*g, w) == Resolved::Unknown {
                return Err(format!("bound {b}: settled term lost"));
            }
            if lo.resolve(*g, w) == Resolved::Star && hi.resolve(*g, w) != Resolved::Star {
                return Err(format!("bound {b}: star term revived"));
            }
            for (h, v) in &terms {
                if lo.resolve(*g, w) == lo.resolve(*h, v) && hi.resolve(*g, w) != hi.resolve(*h, v) {
                    return Err(format!("bound {b}: classes split"));
                }
            }
        }
        if lo.is_exact() && (!hi.is_exact() || lo.space != hi.space) {
            return Err(format!("bound {b}: EXACT result changed"));
        }
    }
    for r in results.iter().filter(|r| r.is_exact()) {
        if !r.space.validate().is_empty() {
            return Err("EXACT saturation fails validation".into());
        }
    }
    Ok(())
}
