//! State spaces: a trace monoid acting on a pointed set whose basepoint `*`
//! is an absorbing "undefined" state.
//!
//! Proper states are addressed by [`StateId`]; a [`Point`] is a proper state
//! or `None` for the basepoint.

mod colimit;
mod iso;
mod saturate;

use std::collections::HashMap;
use std::fmt;

pub use colimit::{colimit, SpaceColimit};
pub use iso::{is_isomorphic, monoid_isomorphism, Isomorphism, MAX_ISO_EVENTS, MAX_ISO_STATES};
pub use saturate::{
    saturate, FrontierItem, PresentedAction, Resolved, Rule, SaturationResult, SaturationStatus, Term,
};

use crate::diagnostics::{Diagnostic, DiagnosticKind};
use crate::diagram::{Diagram, DiagramArrow};
use crate::error::{Error, Result};
use crate::fpcm::{self, tuple_name, CategoryFlag};
use crate::hom::BasicHom;
use crate::trace::{check_name, EventId, Trace, TraceMonoid, STAR};
use crate::util::odometer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

/// A proper state, or `None` for the basepoint.
pub type Point = Option<StateId>;

/// Upper bound on materialised action tables (states × events).
pub const MAX_TABLE: usize = 4_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct StateSpace {
    monoid: TraceMonoid,
    states: Vec<String>,
    /// `action[x][e]` is `x · e`.
    action: Vec<Vec<Point>>,
}

fn check_state_names(states: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for s in states {
        check_name(s)?;
        if !seen.insert(s.as_str()) {
            return Err(Error::DuplicateEvent(s.clone()));
        }
    }
    Ok(())
}

impl StateSpace {
    /// Structural checks only (names, table shape); see [`StateSpace::validate`]
    /// for the diamond condition.
    pub fn new(monoid: TraceMonoid, states: Vec<String>, action: Vec<Vec<Point>>) -> Result<Self> {
        check_state_names(&states)?;
        if action.len() != states.len() || action.iter().any(|row| row.len() != monoid.len()) {
            return Err(Error::InvalidSpace(vec![Diagnostic::new(
                DiagnosticKind::TypeMismatch,
                format!("action table is not {}x{}", states.len(), monoid.len()),
            )]));
        }
        if let Some(bad) = action.iter().flatten().flatten().find(|s| s.0 >= states.len()) {
            return Err(Error::UnknownState(format!("#{}", bad.0)));
        }
        Ok(StateSpace {
            monoid,
            states,
            action,
        })
    }

    pub fn from_fn(
        monoid: TraceMonoid,
        states: Vec<String>,
        f: impl Fn(StateId, EventId) -> Point,
    ) -> Result<Self> {
        let action = (0..states.len())
            .map(|x| monoid.events().map(|e| f(StateId(x), e)).collect())
            .collect();
        Self::new(monoid, states, action)
    }

    /// Builds from `(state, event, state)` entries; unlisted pairs go to `*`.
    pub fn from_entries<S: AsRef<str>>(
        monoid: &TraceMonoid,
        states: &[S],
        entries: &[(S, S, S)],
    ) -> Result<Self> {
        let names: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        check_state_names(&names)?;
        let find = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .map(StateId)
                .ok_or_else(|| Error::UnknownState(s.to_string()))
        };
        let mut action = vec![vec![None; monoid.len()]; names.len()];
        for (x, e, y) in entries {
            let x = find(x.as_ref())?;
            let e = monoid.event_or_err(e.as_ref())?;
            let y = if y.as_ref() == STAR { None } else { Some(find(y.as_ref())?) };
            action[x.0][e.0] = y;
        }
        Self::new(monoid.clone(), names, action)
    }

    /// The one-point pointed set `{*}` over `M(∅, ∅)`: the terminal object.
    pub fn terminal() -> Self {
        StateSpace {
            monoid: TraceMonoid::trivial(),
            states: Vec::new(),
            action: Vec::new(),
        }
    }

    pub fn monoid(&self) -> &TraceMonoid {
        &self.monoid
    }

    /// Proper state names.
    pub fn states(&self) -> &[String] {
        &self.states
    }

    /// Number of proper states.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    /// Every point, basepoint first.
    pub fn points(&self) -> impl Iterator<Item = Point> {
        std::iter::once(None).chain(self.ids().map(Some))
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(StateId)
    }

    pub fn point(&self, name: &str) -> Result<Point> {
        if name == STAR {
            Ok(None)
        } else {
            self.state(name)
                .map(Some)
                .ok_or_else(|| Error::UnknownState(name.to_string()))
        }
    }

    pub fn name(&self, p: Point) -> &str {
        p.map_or(STAR, |s| self.states[s.0].as_str())
    }

    pub fn act(&self, x: Point, e: EventId) -> Point {
        x.and_then(|x| self.action[x.0][e.0])
    }

    /// Extends `act` along an optional event; the identity acts trivially.
    pub fn act_opt(&self, x: Point, e: Option<EventId>) -> Point {
        match e {
            Some(e) => self.act(x, e),
            None => x,
        }
    }

    pub fn act_word(&self, x: Point, word: &[EventId]) -> Point {
        word.iter().fold(x, |p, &e| self.act(p, e))
    }

    /// Left-to-right fold of the action along the trace's normal form.
    pub fn act_trace(&self, x: Point, t: &Trace) -> Result<Point> {
        if *t.monoid() != self.monoid {
            return Err(Error::MonoidMismatch);
        }
        if let Some(s) = x {
            if s.0 >= self.len() {
                return Err(Error::UnknownState(format!("#{}", s.0)));
            }
        }
        Ok(self.act_word(x, t.word()))
    }

    pub fn table(&self) -> &[Vec<Point>] {
        &self.action
    }

    /// Every `(x, a, b)` with `(a, b)` independent and `x·a·b ≠ x·b·a`.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let pairs = self.monoid.independent_pairs();
        for x in self.ids() {
            for &(a, b) in &pairs {
                let ab = self.act(self.act(Some(x), a), b);
                let ba = self.act(self.act(Some(x), b), a);
                if ab != ba {
                    out.push(Diagnostic::new(
                        DiagnosticKind::Diamond,
                        format!(
                            "{}·{}{} = {} but {}·{}{} = {}",
                            self.name(Some(x)),
                            self.monoid.name(a),
                            self.monoid.name(b),
                            self.name(ab),
                            self.name(Some(x)),
                            self.monoid.name(b),
                            self.monoid.name(a),
                            self.name(ba)
                        ),
                    ));
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let d = self.validate();
        if d.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpace(d))
        }
    }
}

impl fmt::Debug for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "space over {:?}", self.monoid)?;
        for x in self.ids() {
            let row: Vec<String> = self
                .monoid
                .events()
                .map(|e| format!("{}→{}", self.monoid.name(e), self.name(self.act(Some(x), e))))
                .collect();
            writeln!(f, "  {}: {}", self.name(Some(x)), row.join(" "))?;
        }
        Ok(())
    }
}

/// A pair `(η, σ)`: a basic homomorphism and a pointed state map.
#[derive(Clone, PartialEq, Eq)]
pub struct SpaceMorphism {
    source: StateSpace,
    target: StateSpace,
    hom: BasicHom,
    states: Vec<Point>,
}

impl SpaceMorphism {
    /// Checks shapes but not equivariance.
    pub fn unchecked(
        source: StateSpace,
        target: StateSpace,
        hom: BasicHom,
        states: Vec<Point>,
    ) -> Result<Self> {
        if *hom.source() != source.monoid || *hom.target() != target.monoid {
            return Err(Error::MonoidMismatch);
        }
        if states.len() != source.len() {
            return Err(Error::UnknownState(format!(
                "state map has {} entries for {} states",
                states.len(),
                source.len()
            )));
        }
        if let Some(bad) = states.iter().flatten().find(|s| s.0 >= target.len()) {
            return Err(Error::UnknownState(format!("#{}", bad.0)));
        }
        Ok(SpaceMorphism {
            source,
            target,
            hom,
            states,
        })
    }

    /// Like [`SpaceMorphism::unchecked`], then rejects equivariance failures.
    pub fn new(source: StateSpace, target: StateSpace, hom: BasicHom, states: Vec<Point>) -> Result<Self> {
        let m = Self::unchecked(source, target, hom, states)?;
        let d = m.validate();
        if d.is_empty() {
            Ok(m)
        } else {
            Err(Error::NotAMorphism(d))
        }
    }

    pub fn identity(s: &StateSpace) -> Self {
        SpaceMorphism {
            source: s.clone(),
            target: s.clone(),
            hom: BasicHom::identity(&s.monoid),
            states: s.ids().map(Some).collect(),
        }
    }

    pub fn source(&self) -> &StateSpace {
        &self.source
    }

    pub fn target(&self) -> &StateSpace {
        &self.target
    }

    pub fn hom(&self) -> &BasicHom {
        &self.hom
    }

    pub fn state_map(&self) -> &[Point] {
        &self.states
    }

    pub fn map(&self, p: Point) -> Point {
        p.and_then(|s| self.states[s.0])
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SpaceMorphism) -> Result<SpaceMorphism> {
        if inner.target != self.source {
            return Err(Error::MonoidMismatch);
        }
        Ok(SpaceMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            hom: self.hom.compose(&inner.hom)?,
            states: inner.states.iter().map(|&p| self.map(p)).collect(),
        })
    }

    /// Every `(x, e)` with `σ(x·e) ≠ σ(x)·η(e)`.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for x in self.source.ids() {
            for e in self.source.monoid.events() {
                let left = self.map(self.source.act(Some(x), e));
                let right = self.target.act_opt(self.map(Some(x)), self.hom.at(e));
                if left != right {
                    out.push(Diagnostic::new(
                        DiagnosticKind::Equivariance,
                        format!(
                            "σ({}·{}) = {} but σ({})·η({}) = {}",
                            self.source.name(Some(x)),
                            self.source.monoid.name(e),
                            self.target.name(left),
                            self.source.name(Some(x)),
                            self.source.monoid.name(e),
                            self.target.name(right)
                        ),
                    ));
                }
            }
        }
        out
    }

    pub fn is_independence_preserving(&self) -> bool {
        self.hom.is_independence_preserving()
    }
}

impl fmt::Debug for SpaceMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let states: Vec<String> = self
            .source
            .ids()
            .map(|x| format!("{}↦{}", self.source.name(Some(x)), self.target.name(self.map(Some(x)))))
            .collect();
        write!(f, "({:?}, {{{}}})", self.hom, states.join(", "))
    }
}

impl DiagramArrow for SpaceMorphism {
    type Object = StateSpace;

    fn dom(&self) -> &StateSpace {
        &self.source
    }

    fn cod(&self) -> &StateSpace {
        &self.target
    }

    fn independence_preserving(&self) -> bool {
        self.is_independence_preserving()
    }
}

pub type SpaceDiagram = Diagram<StateSpace, SpaceMorphism>;

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceCone {
    pub apex: StateSpace,
    pub legs: Vec<SpaceMorphism>,
}

impl SpaceCone {
    /// Mediating morphism for a test cone: every test event and state goes to
    /// the apex element that all legs send to the prescribed images.
    pub fn factor(&self, test: &StateSpace, legs: &[SpaceMorphism]) -> Result<SpaceMorphism> {
        let monoid_cone = fpcm::MonoidCone {
            apex: self.apex.monoid.clone(),
            legs: self.legs.iter().map(|l| l.hom.clone()).collect(),
        };
        let homs: Vec<BasicHom> = legs.iter().map(|l| l.hom.clone()).collect();
        let hom = monoid_cone.factor(&test.monoid, &homs)?;
        let mut states = Vec::with_capacity(test.len());
        for x in test.ids() {
            let hit = self.apex.points().find(|&p| {
                self.legs
                    .iter()
                    .zip(legs)
                    .all(|(mine, theirs)| mine.map(p) == theirs.map(Some(x)))
            });
            match hit {
                Some(p) => states.push(p),
                None => {
                    return Err(Error::NoFactorization(format!(
                        "no apex state over `{}`",
                        test.name(Some(x))
                    )))
                }
            }
        }
        SpaceMorphism::new(test.clone(), self.apex.clone(), hom, states)
    }
}

/// Product with tuple lookups, shared by products and limits.
struct SpaceProduct {
    cone: SpaceCone,
    monoid: fpcm::ProductTable,
    lookup: HashMap<Vec<Point>, StateId>,
}

impl SpaceProduct {
    fn state(&self, coords: &[Point]) -> Point {
        if coords.iter().all(Option::is_none) {
            None
        } else {
            Some(self.lookup[coords])
        }
    }
}

fn space_product(factors: &[StateSpace], flag: CategoryFlag) -> Result<SpaceProduct> {
    let monoids: Vec<TraceMonoid> = factors.iter().map(|s| s.monoid.clone()).collect();
    let table = fpcm::product_table(&monoids, flag)?;
    let apex_monoid = table.cone.apex.clone();
    let radices: Vec<usize> = factors.iter().map(|s| s.len() + 1).collect();
    let count = radices
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r))
        .unwrap_or(usize::MAX);
    if (count - 1).saturating_mul(apex_monoid.len().max(1)) > MAX_TABLE {
        return Err(Error::SizeLimit(format!("product would have {} states", count - 1)));
    }
    let tuples: Vec<Vec<Point>> = odometer(&radices)
        .filter(|c| c.iter().any(|&k| k != 0))
        .map(|c| {
            c.into_iter()
                .map(|k| if k == 0 { None } else { Some(StateId(k - 1)) })
                .collect()
        })
        .collect();
    let lookup: HashMap<Vec<Point>, StateId> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), StateId(i)))
        .collect();
    let names = tuples
        .iter()
        .map(|t| tuple_name(t.iter().zip(factors).map(|(&p, s)| p.map(|_| s.name(p)))))
        .collect();
    let action = tuples
        .iter()
        .map(|t| {
            apex_monoid
                .events()
                .map(|g| {
                    let coords = table.coords(g);
                    let next: Vec<Point> = t
                        .iter()
                        .zip(coords)
                        .zip(factors)
                        .map(|((&x, &e), s)| s.act_opt(x, e))
                        .collect();
                    if next.iter().all(Option::is_none) {
                        None
                    } else {
                        Some(lookup[&next])
                    }
                })
                .collect()
        })
        .collect();
    let apex = StateSpace::new(apex_monoid, names, action)?;
    let legs = factors
        .iter()
        .enumerate()
        .map(|(j, s)| {
            SpaceMorphism::unchecked(
                apex.clone(),
                s.clone(),
                table.cone.legs[j].clone(),
                tuples.iter().map(|t| t[j]).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpaceProduct {
        cone: SpaceCone { apex, legs },
        monoid: table,
        lookup,
    })
}

/// Product of state spaces: the monoid product under `flag` acting
/// coordinatewise on all tuples of points; only the all-`*` tuple is the
/// basepoint. A `*` coordinate of a product generator acts as the identity.
pub fn product(factors: &[StateSpace], flag: CategoryFlag) -> Result<SpaceCone> {
    for s in factors {
        s.ensure_valid()?;
    }
    Ok(space_product(factors, flag)?.cone)
}

fn ensure_morphism(m: &SpaceMorphism) -> Result<()> {
    let d = m.validate();
    if d.is_empty() {
        Ok(())
    } else {
        Err(Error::NotAMorphism(d))
    }
}

/// Equalizer: the monoid equalizer acting on `{x | σ₁(x) = σ₂(x)} ∪ {*}`.
pub fn equalizer(m1: &SpaceMorphism, m2: &SpaceMorphism, flag: CategoryFlag) -> Result<SpaceCone> {
    if m1.source != m2.source || m1.target != m2.target {
        return Err(Error::NotParallel);
    }
    ensure_morphism(m1)?;
    ensure_morphism(m2)?;
    let mon = fpcm::equalizer(&m1.hom, &m2.hom, flag)?;
    let incl = &mon.legs[0];
    let src = &m1.source;
    let kept: Vec<StateId> = src.ids().filter(|&x| m1.map(Some(x)) == m2.map(Some(x))).collect();
    let position: HashMap<StateId, StateId> = kept
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, StateId(i)))
        .collect();
    let names = kept.iter().map(|&x| src.name(Some(x)).to_string()).collect();
    let mut action = Vec::with_capacity(kept.len());
    for &x in &kept {
        let mut row = Vec::with_capacity(mon.apex.len());
        for e in mon.apex.events() {
            let y = src.act_opt(Some(x), incl.at(e));
            // closure under the equalizer monoid follows from equivariance
            row.push(y.map(|y| position[&y]));
        }
        action.push(row);
    }
    let apex = StateSpace::new(mon.apex.clone(), names, action)?;
    let inclusion = SpaceMorphism::new(apex.clone(), src.clone(), incl.clone(), kept.into_iter().map(Some).collect())?;
    Ok(SpaceCone {
        apex,
        legs: vec![inclusion],
    })
}

fn check_space_diagram(d: &SpaceDiagram, flag: CategoryFlag) -> Result<()> {
    d.check(flag)?;
    let mut diags = Vec::new();
    for (i, s) in d.objects.iter().enumerate() {
        for mut x in s.validate() {
            x.detail = format!("object `{}`: {}", d.shape.objects[i], x.detail);
            diags.push(x);
        }
    }
    for (a, m) in d.arrows.iter().enumerate() {
        for mut x in m.validate() {
            x.detail = format!("arrow `{}`: {}", d.shape.arrows[a].name, x.detail);
            diags.push(x);
        }
    }
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Error::MalformedDiagram(diags))
    }
}

/// Limit as the equalizer of the canonical pair from the product over objects
/// to the product over arrow codomains, computed pointwise.
pub fn limit(d: &SpaceDiagram, flag: CategoryFlag) -> Result<SpaceCone> {
    check_space_diagram(d, flag)?;
    let objects = space_product(&d.objects, flag)?;
    let codomains: Vec<StateSpace> = (0..d.arrows.len())
        .map(|a| d.objects[d.shape.endpoints(a).1].clone())
        .collect();
    let arrows = space_product(&codomains, flag)?;
    let p = &objects.cone.apex;
    let q = &arrows.cone.apex;

    let mut along_events = Vec::with_capacity(p.monoid.len());
    let mut direct_events = Vec::with_capacity(p.monoid.len());
    for x in p.monoid.events() {
        let coords = objects.monoid.coords(x);
        let (mut u, mut v) = (Vec::new(), Vec::new());
        for (a, m) in d.arrows.iter().enumerate() {
            let (s, t) = d.shape.endpoints(a);
            u.push(coords[s].and_then(|e| m.hom.at(e)));
            v.push(coords[t]);
        }
        along_events.push(arrows.monoid.generator(&u));
        direct_events.push(arrows.monoid.generator(&v));
    }
    let tuples: Vec<&Vec<Point>> = {
        let mut t: Vec<(&Vec<Point>, &StateId)> = objects.lookup.iter().collect();
        t.sort_by_key(|(_, id)| **id);
        t.into_iter().map(|(k, _)| k).collect()
    };
    let mut along_states = Vec::with_capacity(p.len());
    let mut direct_states = Vec::with_capacity(p.len());
    for coords in tuples {
        let (mut u, mut v) = (Vec::new(), Vec::new());
        for (a, m) in d.arrows.iter().enumerate() {
            let (s, t) = d.shape.endpoints(a);
            u.push(m.map(coords[s]));
            v.push(coords[t]);
        }
        along_states.push(arrows.state(&u));
        direct_states.push(arrows.state(&v));
    }
    let u = SpaceMorphism::new(
        p.clone(),
        q.clone(),
        BasicHom::new(p.monoid.clone(), q.monoid.clone(), along_events)?,
        along_states,
    )?;
    let v = SpaceMorphism::new(
        p.clone(),
        q.clone(),
        BasicHom::new(p.monoid.clone(), q.monoid.clone(), direct_events)?,
        direct_states,
    )?;
    let eq = equalizer(&u, &v, flag)?;
    let incl = &eq.legs[0];
    let legs = objects
        .cone
        .legs
        .iter()
        .map(|pi| pi.compose(incl))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpaceCone { apex: eq.apex, legs })
}
