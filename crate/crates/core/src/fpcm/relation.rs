//! Pointed-set presentations of trace monoids.
//!
//! `ComRel` carries the commutativity relation `T = I ∪ (E×*) ∪ (*×E) ∪ Δ`
//! and is isomorphic to FPCM; `IndRel` carries `R = I ∪ (E*×*) ∪ (*×E*)`
//! and is isomorphic to FPCM^‖.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::trace::{EventId, TraceMonoid};

/// An element of `E_* = E ⊔ {*}`. The basepoint sorts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pointed {
    Star,
    Event(EventId),
}

impl Pointed {
    pub fn event(self) -> Option<EventId> {
        match self {
            Pointed::Star => None,
            Pointed::Event(e) => Some(e),
        }
    }
}

impl From<Option<EventId>> for Pointed {
    fn from(e: Option<EventId>) -> Self {
        e.map_or(Pointed::Star, Pointed::Event)
    }
}

pub type PointedRelation = BTreeSet<(Pointed, Pointed)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComRelView {
    pub events: Vec<String>,
    pub commutativity: PointedRelation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndRelView {
    pub events: Vec<String>,
    pub partial_independence: PointedRelation,
}

fn pointed_elements(n: usize) -> impl Iterator<Item = Pointed> {
    std::iter::once(Pointed::Star).chain((0..n).map(|i| Pointed::Event(EventId(i))))
}

fn star_pairs(n: usize) -> PointedRelation {
    let mut rel = PointedRelation::new();
    for p in pointed_elements(n) {
        rel.insert((p, Pointed::Star));
        rel.insert((Pointed::Star, p));
    }
    rel
}

fn independence_pairs(m: &TraceMonoid) -> impl Iterator<Item = (Pointed, Pointed)> + '_ {
    m.independent_pairs().into_iter().flat_map(|(a, b)| {
        [
            (Pointed::Event(a), Pointed::Event(b)),
            (Pointed::Event(b), Pointed::Event(a)),
        ]
    })
}

pub fn to_com_rel(m: &TraceMonoid) -> ComRelView {
    let mut rel = star_pairs(m.len());
    rel.extend(pointed_elements(m.len()).map(|p| (p, p)));
    rel.extend(independence_pairs(m));
    ComRelView {
        events: m.names().to_vec(),
        commutativity: rel,
    }
}

pub fn to_ind_rel(m: &TraceMonoid) -> IndRelView {
    let mut rel = star_pairs(m.len());
    rel.extend(independence_pairs(m));
    IndRelView {
        events: m.names().to_vec(),
        partial_independence: rel,
    }
}

fn check_common(events: &[String], rel: &PointedRelation) -> Result<()> {
    let n = events.len();
    for &(a, b) in rel {
        for p in [a, b] {
            if let Pointed::Event(e) = p {
                if e.0 >= n {
                    return Err(Error::MalformedRelation(format!(
                        "event index {} outside the alphabet",
                        e.0
                    )));
                }
            }
        }
        if !rel.contains(&(b, a)) {
            return Err(Error::MalformedRelation(format!("{a:?}~{b:?} is not symmetric")));
        }
    }
    for (a, b) in star_pairs(n) {
        if !rel.contains(&(a, b)) {
            return Err(Error::MalformedRelation(format!("missing basepoint pair {a:?}~{b:?}")));
        }
    }
    Ok(())
}

fn proper_pairs(rel: &PointedRelation) -> Vec<(EventId, EventId)> {
    rel.iter()
        .filter_map(|&(a, b)| match (a, b) {
            (Pointed::Event(x), Pointed::Event(y)) if x < y => Some((x, y)),
            _ => None,
        })
        .collect()
}

/// Recovers `M(E, I)` with `I = T \ (Δ ∪ star pairs)`.
pub fn from_com_rel(view: &ComRelView) -> Result<TraceMonoid> {
    check_common(&view.events, &view.commutativity)?;
    for p in pointed_elements(view.events.len()) {
        if !view.commutativity.contains(&(p, p)) {
            return Err(Error::MalformedRelation(format!("missing diagonal pair at {p:?}")));
        }
    }
    TraceMonoid::from_ids(view.events.clone(), proper_pairs(&view.commutativity))
}

pub fn from_ind_rel(view: &IndRelView) -> Result<TraceMonoid> {
    check_common(&view.events, &view.partial_independence)?;
    for &(a, b) in &view.partial_independence {
        if a == b && a != Pointed::Star {
            return Err(Error::MalformedRelation(format!(
                "reflexive pair at non-basepoint {a:?}"
            )));
        }
    }
    TraceMonoid::from_ids(view.events.clone(), proper_pairs(&view.partial_independence))
}
