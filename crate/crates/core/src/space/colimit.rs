use super::saturate::{saturate, PresentedAction, SaturationResult, Term};
use super::{check_space_diagram, SpaceDiagram, SpaceMorphism};
use crate::error::Result;
use crate::fpcm::{self, CategoryFlag, MonoidCocone, MonoidDiagram};

#[derive(Debug, Clone)]
pub struct SpaceColimit {
    pub monoid: MonoidCocone,
    pub presentation: PresentedAction,
    pub saturation: SaturationResult,
    /// Cocone legs into the saturated space, present only when EXACT.
    pub legs: Option<Vec<SpaceMorphism>>,
}

/// Colimit by free extension: the monoid colimit under `flag`, acting on the
/// quotient presented by every transition of every object (pushed along the
/// monoid legs) and by every arrow's state map.
///
/// Generators are named `object:state`.
pub fn colimit(d: &SpaceDiagram, flag: CategoryFlag, bound: usize) -> Result<SpaceColimit> {
    check_space_diagram(d, flag)?;
    let md = MonoidDiagram::new(
        d.shape.clone(),
        d.objects.iter().map(|s| s.monoid().clone()).collect(),
        d.arrows.iter().map(|m| m.hom().clone()).collect(),
    );
    let cocone = fpcm::colimit(&md, flag)?;
    let mut offsets = Vec::with_capacity(d.objects.len());
    let mut names = Vec::new();
    for (i, s) in d.objects.iter().enumerate() {
        offsets.push(names.len());
        names.extend(s.states().iter().map(|x| format!("{}:{}", d.shape.objects[i], x)));
    }
    let mut p = PresentedAction::new(cocone.apex.clone(), names);
    let term = |off: usize, x: super::Point| x.map_or(Term::Star, |x| Term::generator(off + x.0));
    for (i, s) in d.objects.iter().enumerate() {
        let q = &cocone.legs[i];
        for x in s.ids() {
            for e in s.monoid().events() {
                let y = s.act(Some(x), e);
                match q.at(e) {
                    Some(qe) => p.rule(offsets[i] + x.0, qe, y.map(|y| offsets[i] + y.0)),
                    None => p.identify(Term::generator(offsets[i] + x.0), term(offsets[i], y)),
                }
            }
        }
    }
    for (a, m) in d.arrows.iter().enumerate() {
        let (s, t) = d.shape.endpoints(a);
        for x in d.objects[s].ids() {
            p.identify(Term::generator(offsets[s] + x.0), term(offsets[t], m.map(Some(x))));
        }
    }
    let saturation = saturate(&p, bound)?;
    let legs = if saturation.is_exact() {
        let legs = d
            .objects
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let states = s.ids().map(|x| saturation.class_map[offsets[i] + x.0]).collect();
                SpaceMorphism::new(
                    s.clone(),
                    saturation.space.clone(),
                    cocone.legs[i].clone(),
                    states,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Some(legs)
    } else {
        None
    };
    Ok(SpaceColimit {
        monoid: cocone,
        presentation: p,
        saturation,
        legs,
    })
}
