//! Existence and uniqueness of mediating morphisms against every test
//! (co)cone, found by exhaustive enumeration.

use rand::Rng;
use tracecat::fpcm::{self, CategoryFlag, MonoidCocone, MonoidCone, MonoidDiagram};
use tracecat::sample;
use tracecat::verify;
use tracecat::{Shape, TraceMonoid};

/// Checks that `cone` commutes and that every test cone from `test` factors
/// through it exactly once. Returns the number of test cones.
pub fn check_limit(d: &MonoidDiagram, cone: &MonoidCone, test: &TraceMonoid, flag: CategoryFlag) -> Result<usize, String> {
    for (a, arrow) in d.arrows.iter().enumerate() {
        let (s, t) = d.shape.endpoints(a);
        if arrow.compose(&cone.legs[s]).map_err(|e| e.to_string())? != cone.legs[t] {
            return Err(format!("limit cone does not commute at arrow {a}"));
        }
    }
    if !cone.legs.iter().all(|l| flag.admits(l)) {
        return Err("limit leg outside the category".into());
    }
    let cones = verify::monoid_cones(d, test, flag);
    for legs in &cones {
        let n = verify::cone_mediators(cone, test, legs, flag).len();
        if n != 1 {
            return Err(format!("{n} mediators for test cone {legs:?} from {test:?} into {:?}", cone.apex));
        }
    }
    Ok(cones.len())
}

pub fn check_colimit(
    d: &MonoidDiagram,
    cocone: &MonoidCocone,
    test: &TraceMonoid,
    flag: CategoryFlag,
) -> Result<usize, String> {
    for (a, arrow) in d.arrows.iter().enumerate() {
        let (s, t) = d.shape.endpoints(a);
        if cocone.legs[t].compose(arrow).map_err(|e| e.to_string())? != cocone.legs[s] {
            return Err(format!("colimit cocone does not commute at arrow {a}"));
        }
    }
    if !cocone.legs.iter().all(|l| flag.admits(l)) {
        return Err("colimit leg outside the category".into());
    }
    let cocones = verify::monoid_cocones(d, test, flag);
    for legs in &cocones {
        let n = verify::cocone_mediators(cocone, test, legs, flag).len();
        if n != 1 {
            return Err(format!("{n} mediators for test cocone {legs:?} from {:?} into {test:?}", cocone.apex));
        }
    }
    Ok(cocones.len())
}

/// One randomized instance: products, coproducts, equalizers,
/// coequalizers, a pullback and a pushout over random monoids with at most
/// three generators, each checked against every test (co)cone from a random
/// test monoid. Returns the number of test (co)cones examined.
pub fn monoid_instance<R: Rng>(rng: &mut R, flag: CategoryFlag) -> Result<usize, String> {
    let m1 = sample::monoid(rng, "a", 3, 3);
    let m2 = sample::monoid(rng, "b", 3, 3);
    let m3 = sample::monoid(rng, "c", 3, 3);
    let test = sample::monoid(rng, "t", 3, 3);
    let err = |e: tracecat::Error| e.to_string();
    let mut checked = 0;

    let pair = MonoidDiagram::new(Shape::discrete(2), vec![m1.clone(), m2.clone()], vec![]);
    checked += check_limit(&pair, &fpcm::product(&[m1.clone(), m2.clone()], flag).map_err(err)?, &test, flag)?;
    checked += check_colimit(&pair, &fpcm::coproduct(&[m1.clone(), m2.clone()]).map_err(err)?, &test, flag)?;

    let f = sample::hom(rng, &m1, &m2, flag);
    let g = sample::hom(rng, &m1, &m2, flag);
    let parallel = MonoidDiagram::new(Shape::parallel_pair(), vec![m1.clone(), m2.clone()], vec![f.clone(), g.clone()]);
    let eq = fpcm::equalizer(&f, &g, flag).map_err(err)?;
    let eq_cone = MonoidCone {
        apex: eq.apex.clone(),
        legs: vec![eq.legs[0].clone(), f.compose(&eq.legs[0]).map_err(err)?],
    };
    checked += check_limit(&parallel, &eq_cone, &test, flag)?;
    let coeq = fpcm::coequalizer(&f, &g, flag).map_err(err)?;
    let coeq_cocone = MonoidCocone {
        apex: coeq.apex.clone(),
        legs: vec![coeq.legs[0].compose(&f).map_err(err)?, coeq.legs[0].clone()],
    };
    checked += check_colimit(&parallel, &coeq_cocone, &test, flag)?;
    checked += check_limit(&parallel, &fpcm::limit(&parallel, flag).map_err(err)?, &test, flag)?;
    checked += check_colimit(&parallel, &fpcm::colimit(&parallel, flag).map_err(err)?, &test, flag)?;

    let l = sample::hom(rng, &m1, &m3, flag);
    let r = sample::hom(rng, &m2, &m3, flag);
    let cospan = MonoidDiagram::new(Shape::cospan(), vec![m1.clone(), m2.clone(), m3.clone()], vec![l, r]);
    checked += check_limit(&cospan, &fpcm::limit(&cospan, flag).map_err(err)?, &test, flag)?;

    let l = sample::hom(rng, &m3, &m1, flag);
    let r = sample::hom(rng, &m3, &m2, flag);
    let span = MonoidDiagram::new(Shape::span(), vec![m3, m1, m2], vec![l, r]);
    checked += check_colimit(&span, &fpcm::colimit(&span, flag).map_err(err)?, &test, flag)?;
    Ok(checked)
}
