//! Weak asynchronous systems `(S, s₀, E, I, Tran)` and their polygonal
//! morphisms.
//!
//! A system is stored as its state space: `Tran` is exactly the set of
//! non-`*` entries of the action table, so the two views cannot drift.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::diagnostics::{Diagnostic, DiagnosticKind};
use crate::diagram::{Diagram, DiagramArrow, Shape};
use crate::error::{Error, Result};
use crate::fpcm::CategoryFlag;
use crate::hom::BasicHom;
use crate::space::{self, Point, SpaceColimit, SpaceDiagram, SpaceMorphism, StateId, StateSpace};
use crate::trace::{EventId, Trace, TraceMonoid, STAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SystemClass {
    Weak,
    Bednarczyk,
    Ats,
}

impl SystemClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SystemClass::Weak => "WEAK",
            SystemClass::Bednarczyk => "BEDNARCZYK",
            SystemClass::Ats => "ATS",
        }
    }
}

impl fmt::Display for SystemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub type Transition = (StateId, EventId, StateId);

#[derive(Clone, PartialEq, Eq)]
pub struct WeakAsyncSystem {
    space: StateSpace,
    initial: Point,
}

impl WeakAsyncSystem {
    /// Every determinism and diamond violation of the given data.
    pub fn diagnose(monoid: &TraceMonoid, states: &[String], transitions: &[Transition]) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let name = |s: StateId| states.get(s.0).map_or("?", String::as_str);
        let mut table: Vec<Vec<Point>> = vec![vec![None; monoid.len()]; states.len()];
        for &(s, e, t) in transitions {
            if s.0 >= states.len() || t.0 >= states.len() || e.0 >= monoid.len() {
                out.push(Diagnostic::new(
                    DiagnosticKind::UnknownName,
                    format!("transition ({}, #{}, {})", name(s), e.0, name(t)),
                ));
                continue;
            }
            match table[s.0][e.0] {
                Some(old) if old != t => out.push(Diagnostic::new(
                    DiagnosticKind::Nondeterminism,
                    format!(
                        "{} has {}-transitions to {} and {}",
                        name(s),
                        monoid.name(e),
                        name(old),
                        name(t)
                    ),
                )),
                _ => table[s.0][e.0] = Some(t),
            }
        }
        if out.is_empty() {
            let space = StateSpace::new(monoid.clone(), states.to_vec(), table);
            match space {
                Ok(space) => out.extend(space.validate()),
                Err(e) => out.push(Diagnostic::new(DiagnosticKind::UnknownName, e.to_string())),
            }
        }
        out
    }

    pub fn new(monoid: TraceMonoid, states: Vec<String>, initial: Point, transitions: &[Transition]) -> Result<Self> {
        if let Some(s) = initial {
            if s.0 >= states.len() {
                return Err(Error::UnknownState(format!("#{}", s.0)));
            }
        }
        let diags = Self::diagnose(&monoid, &states, transitions);
        if !diags.is_empty() {
            return Err(Error::InvalidSystem(diags));
        }
        let mut table = vec![vec![None; monoid.len()]; states.len()];
        for &(s, e, t) in transitions {
            table[s.0][e.0] = Some(t);
        }
        Ok(WeakAsyncSystem {
            space: StateSpace::new(monoid, states, table)?,
            initial,
        })
    }

    /// `initial` may be `"*"`.
    pub fn from_names<S: AsRef<str>>(
        monoid: &TraceMonoid,
        states: &[S],
        initial: &str,
        transitions: &[(S, S, S)],
    ) -> Result<Self> {
        let names: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        let find = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .map(StateId)
                .ok_or_else(|| Error::UnknownState(s.to_string()))
        };
        let initial = if initial == STAR { None } else { Some(find(initial)?) };
        let tran = transitions
            .iter()
            .map(|(s, e, t)| Ok((find(s.as_ref())?, monoid.event_or_err(e.as_ref())?, find(t.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(monoid.clone(), names, initial, &tran)
    }

    /// The empty system `(∅, *, ∅, ∅, ∅)`.
    pub fn empty() -> Self {
        WeakAsyncSystem {
            space: StateSpace::terminal(),
            initial: None,
        }
    }

    pub fn monoid(&self) -> &TraceMonoid {
        self.space.monoid()
    }

    pub fn states(&self) -> &[String] {
        self.space.states()
    }

    pub fn initial(&self) -> Point {
        self.initial
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn step(&self, s: Point, e: EventId) -> Point {
        self.space.act(s, e)
    }

    /// Sorted by source, event, target.
    pub fn transitions(&self) -> Vec<Transition> {
        let mut out = Vec::new();
        for s in self.space.ids() {
            for e in self.monoid().events() {
                if let Some(t) = self.space.act(Some(s), e) {
                    out.push((s, e, t));
                }
            }
        }
        out
    }

    /// State space with distinguished point.
    pub fn to_state_space(&self) -> (StateSpace, Point) {
        (self.space.clone(), self.initial)
    }

    pub fn from_state_space(space: &StateSpace, initial: Point) -> Result<Self> {
        space.ensure_valid()?;
        if let Some(s) = initial {
            if s.0 >= space.len() {
                return Err(Error::UnknownState(format!("#{}", s.0)));
            }
        }
        Ok(WeakAsyncSystem {
            space: space.clone(),
            initial,
        })
    }

    pub fn classify(&self) -> SystemClass {
        if self.initial.is_none() || self.space.is_empty() {
            return SystemClass::Weak;
        }
        let mut used = vec![false; self.monoid().len()];
        for (_, e, _) in self.transitions() {
            used[e.0] = true;
        }
        if used.into_iter().all(|u| u) {
            SystemClass::Ats
        } else {
            SystemClass::Bednarczyk
        }
    }

    /// Restriction to the states reachable from `s₀`, in original order.
    pub fn reachable(&self) -> WeakAsyncSystem {
        let mut seen = vec![false; self.space.len()];
        let mut queue = VecDeque::new();
        if let Some(s) = self.initial {
            seen[s.0] = true;
            queue.push_back(s);
        }
        while let Some(s) = queue.pop_front() {
            for e in self.monoid().events() {
                if let Some(t) = self.step(Some(s), e) {
                    if !seen[t.0] {
                        seen[t.0] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        let kept: Vec<StateId> = self.space.ids().filter(|s| seen[s.0]).collect();
        let mut renumber = vec![None; self.space.len()];
        for (i, s) in kept.iter().enumerate() {
            renumber[s.0] = Some(StateId(i));
        }
        let names = kept.iter().map(|&s| self.space.name(Some(s)).to_string()).collect();
        let table = kept
            .iter()
            .map(|&s| {
                self.monoid()
                    .events()
                    .map(|e| self.step(Some(s), e).and_then(|t| renumber[t.0]))
                    .collect()
            })
            .collect();
        WeakAsyncSystem {
            space: StateSpace::new(self.monoid().clone(), names, table).expect("restriction of a valid table"),
            initial: self.initial.and_then(|s| renumber[s.0]),
        }
    }

    /// Canonical traces of length at most `depth` that run from `s₀` without
    /// reaching `*`, with their end states, ordered by length then word.
    pub fn unfold(&self, depth: usize) -> Vec<(Trace, StateId)> {
        let Some(s0) = self.initial else {
            return Vec::new();
        };
        let m = self.monoid();
        let mut out = vec![(Vec::new(), s0)];
        let mut level: BTreeSet<Vec<EventId>> = BTreeSet::from([Vec::new()]);
        for _ in 0..depth {
            let mut next = BTreeSet::new();
            for w in &level {
                let at = self.space.act_word(Some(s0), w);
                for e in m.events() {
                    if self.step(at, e).is_some() {
                        let mut v = w.clone();
                        v.push(e);
                        next.insert(m.normal_form(&v));
                    }
                }
            }
            for w in &next {
                let end = self.space.act_word(Some(s0), w).expect("defined run");
                out.push((w.clone(), end));
            }
            level = next;
        }
        out.into_iter()
            .map(|(w, s)| (m.normalize(&w).expect("events of this monoid"), s))
            .collect()
    }
}

impl fmt::Debug for WeakAsyncSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "initial {}; {:?}", self.space.name(self.initial), self.space)
    }
}

/// Partial maps `f: E ⇀ E'` and `σ: S ⇀ S'`, encoded with `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct SystemMorphism {
    source: WeakAsyncSystem,
    target: WeakAsyncSystem,
    events: Vec<Option<EventId>>,
    states: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonalReport {
    /// Verdict of the transition criterion.
    pub criterion: bool,
    /// Verdict of equivariance of the induced state-space morphism.
    pub equivariance: bool,
    pub violations: Vec<Diagnostic>,
}

impl SystemMorphism {
    /// Checks only that the maps have the right shape; see
    /// [`SystemMorphism::violations`].
    pub fn new(
        source: WeakAsyncSystem,
        target: WeakAsyncSystem,
        events: Vec<Option<EventId>>,
        states: Vec<Point>,
    ) -> Result<Self> {
        if events.len() != source.monoid().len() {
            return Err(Error::UnknownEvent(format!(
                "event map has {} entries for {} events",
                events.len(),
                source.monoid().len()
            )));
        }
        if let Some(e) = events.iter().flatten().find(|e| e.0 >= target.monoid().len()) {
            return Err(Error::UnknownEvent(format!("#{}", e.0)));
        }
        if states.len() != source.states().len() {
            return Err(Error::UnknownState(format!(
                "state map has {} entries for {} states",
                states.len(),
                source.states().len()
            )));
        }
        if let Some(s) = states.iter().flatten().find(|s| s.0 >= target.states().len()) {
            return Err(Error::UnknownState(format!("#{}", s.0)));
        }
        Ok(SystemMorphism {
            source,
            target,
            events,
            states,
        })
    }

    /// Maps given by name; unlisted events and states are undefined.
    pub fn from_names<S: AsRef<str>>(
        source: &WeakAsyncSystem,
        target: &WeakAsyncSystem,
        events: &[(S, Option<S>)],
        states: &[(S, Option<S>)],
    ) -> Result<Self> {
        let mut ev = vec![None; source.monoid().len()];
        for (e, f) in events {
            let e = source.monoid().event_or_err(e.as_ref())?;
            ev[e.0] = f.as_ref().map(|f| target.monoid().event_or_err(f.as_ref())).transpose()?;
        }
        let mut st = vec![None; source.states().len()];
        for (s, t) in states {
            let s = source.space.point(s.as_ref())?.ok_or_else(|| Error::UnknownState(STAR.into()))?;
            st[s.0] = match t {
                Some(t) => target.space.point(t.as_ref())?,
                None => None,
            };
        }
        Self::new(source.clone(), target.clone(), ev, st)
    }

    pub fn identity(a: &WeakAsyncSystem) -> Self {
        SystemMorphism {
            source: a.clone(),
            target: a.clone(),
            events: a.monoid().events().map(Some).collect(),
            states: a.space.ids().map(Some).collect(),
        }
    }

    pub fn source(&self) -> &WeakAsyncSystem {
        &self.source
    }

    pub fn target(&self) -> &WeakAsyncSystem {
        &self.target
    }

    pub fn event_map(&self) -> &[Option<EventId>] {
        &self.events
    }

    pub fn state_map(&self) -> &[Point] {
        &self.states
    }

    pub fn map_state(&self, p: Point) -> Point {
        p.and_then(|s| self.states[s.0])
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SystemMorphism) -> Result<SystemMorphism> {
        if inner.target != self.source {
            return Err(Error::MonoidMismatch);
        }
        Ok(SystemMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            events: inner.events.iter().map(|e| e.and_then(|e| self.events[e.0])).collect(),
            states: inner.states.iter().map(|&s| self.map_state(s)).collect(),
        })
    }

    /// Violations of the three morphism conditions. Condition 2 is read in
    /// the pointed set: `σ(s₁)·f(e) = σ(s₂)`, so an undefined `σ(s₁)` is
    /// allowed when `σ(s₂)` is undefined too.
    pub fn violations(&self) -> Vec<Diagnostic> {
        let (a, b) = (&self.source, &self.target);
        let (m, m2) = (a.monoid(), b.monoid());
        let mut out = Vec::new();
        if self.map_state(a.initial) != b.initial {
            out.push(Diagnostic::new(
                DiagnosticKind::InitialState,
                format!(
                    "σ({}) = {} but the target starts at {}",
                    a.space.name(a.initial),
                    b.space.name(self.map_state(a.initial)),
                    b.space.name(b.initial)
                ),
            ));
        }
        for (s1, e, s2) in a.transitions() {
            let (t1, t2) = (self.map_state(Some(s1)), self.map_state(Some(s2)));
            let ok = match self.events[e.0] {
                Some(fe) => b.step(t1, fe) == t2,
                None => t1 == t2,
            };
            if !ok {
                let image = self.events[e.0].map_or("1", |fe| m2.name(fe));
                out.push(Diagnostic::new(
                    DiagnosticKind::Transition,
                    format!(
                        "({}, {}, {}) goes to ({}, {}, {})",
                        a.space.name(Some(s1)),
                        m.name(e),
                        a.space.name(Some(s2)),
                        b.space.name(t1),
                        image,
                        b.space.name(t2)
                    ),
                ));
            }
        }
        for (x, y) in m.independent_pairs() {
            if let (Some(fx), Some(fy)) = (self.events[x.0], self.events[y.0]) {
                if !m2.independent(fx, fy) {
                    out.push(Diagnostic::new(
                        DiagnosticKind::Independence,
                        format!(
                            "({}, {}) goes to ({}, {})",
                            m.name(x),
                            m.name(y),
                            m2.name(fx),
                            m2.name(fy)
                        ),
                    ));
                }
            }
        }
        out
    }

    pub fn is_morphism(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn hom(&self) -> Result<BasicHom> {
        BasicHom::new(self.source.monoid().clone(), self.target.monoid().clone(), self.events.clone())
    }

    /// The induced pair on state spaces; equivariance is not checked.
    pub fn to_space_morphism(&self) -> Result<SpaceMorphism> {
        SpaceMorphism::unchecked(
            self.source.space.clone(),
            self.target.space.clone(),
            self.hom()?,
            self.states.clone(),
        )
    }

    pub fn from_space_morphism(m: &SpaceMorphism, source: &WeakAsyncSystem, target: &WeakAsyncSystem) -> Result<Self> {
        if m.source() != source.space() || m.target() != target.space() {
            return Err(Error::MonoidMismatch);
        }
        Self::new(source.clone(), target.clone(), m.hom().image().to_vec(), m.state_map().to_vec())
    }

    /// For every `s₁` with `σ(s₁)` defined and every `e`: if the target can
    /// move from `σ(s₁)` along `η(e)` then `s₁` has an `e`-transition. An
    /// undefined `η(e)` is the empty trace, which always moves.
    fn criterion_violations(&self) -> Vec<Diagnostic> {
        let (a, b) = (&self.source, &self.target);
        let mut out = Vec::new();
        for s1 in a.space.ids() {
            let Some(t1) = self.map_state(Some(s1)) else {
                continue;
            };
            for e in a.monoid().events() {
                let target_moves = match self.events[e.0] {
                    Some(fe) => b.step(Some(t1), fe).is_some(),
                    None => true,
                };
                if target_moves && a.step(Some(s1), e).is_none() {
                    let image = self.events[e.0].map_or("1", |fe| b.monoid().name(fe));
                    out.push(Diagnostic::new(
                        DiagnosticKind::Polygonal,
                        format!(
                            "{} moves along {} but {} has no {}-transition",
                            b.space.name(Some(t1)),
                            image,
                            a.space.name(Some(s1)),
                            a.monoid().name(e)
                        ),
                    ));
                }
            }
        }
        out
    }

    /// Evaluates polygonality both by the transition criterion and by
    /// equivariance of the induced state-space morphism.
    pub fn polygonal_report(&self) -> Result<PolygonalReport> {
        let v = self.violations();
        if !v.is_empty() {
            return Err(Error::NotAMorphism(v));
        }
        let violations = self.criterion_violations();
        let space = self.to_space_morphism()?;
        let equivariance = space.validate().is_empty() && space.is_independence_preserving();
        Ok(PolygonalReport {
            criterion: violations.is_empty(),
            equivariance,
            violations,
        })
    }

    pub fn is_polygonal(&self) -> Result<bool> {
        let r = self.polygonal_report()?;
        debug_assert_eq!(r.criterion, r.equivariance, "polygonality routes disagree on {self:?}");
        Ok(r.criterion)
    }
}

impl fmt::Debug for SystemMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (&self.source, &self.target);
        let ev: Vec<String> = a
            .monoid()
            .events()
            .map(|e| {
                format!(
                    "{}↦{}",
                    a.monoid().name(e),
                    self.events[e.0].map_or("1", |x| b.monoid().name(x))
                )
            })
            .collect();
        let st: Vec<String> = a
            .space
            .ids()
            .map(|s| format!("{}↦{}", a.space.name(Some(s)), b.space.name(self.map_state(Some(s)))))
            .collect();
        write!(f, "({{{}}}, {{{}}})", ev.join(", "), st.join(", "))
    }
}

impl DiagramArrow for SystemMorphism {
    type Object = WeakAsyncSystem;

    fn dom(&self) -> &WeakAsyncSystem {
        &self.source
    }

    fn cod(&self) -> &WeakAsyncSystem {
        &self.target
    }

    fn independence_preserving(&self) -> bool {
        self.hom().is_ok_and(|h| h.is_independence_preserving())
    }
}

pub type SystemDiagram = Diagram<WeakAsyncSystem, SystemMorphism>;

#[derive(Debug, Clone, PartialEq)]
pub struct SystemCone {
    pub apex: WeakAsyncSystem,
    pub legs: Vec<SystemMorphism>,
}

fn check_system_diagram(d: &SystemDiagram) -> Result<()> {
    d.check(CategoryFlag::FpcmPar)?;
    let mut diags = Vec::new();
    for (a, m) in d.arrows.iter().enumerate() {
        let name = &d.shape.arrows[a].name;
        match m.polygonal_report() {
            Ok(r) if r.criterion => {}
            Ok(r) => diags.extend(r.violations.into_iter().map(|mut x| {
                x.detail = format!("arrow `{name}`: {}", x.detail);
                x
            })),
            Err(Error::NotAMorphism(v)) => diags.extend(v.into_iter().map(|mut x| {
                x.detail = format!("arrow `{name}`: {}", x.detail);
                x
            })),
            Err(e) => return Err(e),
        }
    }
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Error::MalformedDiagram(diags))
    }
}

fn space_diagram(d: &SystemDiagram) -> Result<SpaceDiagram> {
    Ok(SpaceDiagram::new(
        d.shape.clone(),
        d.objects.iter().map(|a| a.space.clone()).collect(),
        d.arrows
            .iter()
            .map(SystemMorphism::to_space_morphism)
            .collect::<Result<Vec<_>>>()?,
    ))
}

/// Limit in the category of systems and polygonal morphisms, over FPCM^‖:
/// the state-space limit, started at the family of initial states.
pub fn limit(d: &SystemDiagram) -> Result<SystemCone> {
    check_system_diagram(d)?;
    let cone = space::limit(&space_diagram(d)?, CategoryFlag::FpcmPar)?;
    let initial = cone
        .apex
        .points()
        .find(|&p| cone.legs.iter().zip(&d.objects).all(|(l, a)| l.map(p) == a.initial))
        .ok_or_else(|| Error::NoFactorization("initial states are not compatible".into()))?;
    let apex = WeakAsyncSystem::from_state_space(&cone.apex, initial)?;
    let legs = cone
        .legs
        .iter()
        .zip(&d.objects)
        .map(|(l, a)| SystemMorphism::from_space_morphism(l, &apex, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(SystemCone { apex, legs })
}

pub fn product(systems: &[WeakAsyncSystem]) -> Result<SystemCone> {
    limit(&SystemDiagram::new(Shape::discrete(systems.len()), systems.to_vec(), Vec::new()))
}

#[derive(Debug, Clone)]
pub struct SystemColimit {
    /// The underlying state-space colimit, including the point object.
    pub space: SpaceColimit,
    /// Class of the glued initial states.
    pub initial: Point,
    /// Present only when the saturation is EXACT.
    pub apex: Option<WeakAsyncSystem>,
    pub legs: Option<Vec<SystemMorphism>>,
}

impl SystemColimit {
    /// Result class of a state of a diagram object; `None` if the names do
    /// not resolve.
    pub fn class_of(&self, object: &str, state: &str) -> Option<Point> {
        let g = self.space.presentation.generator(&format!("{object}:{state}"))?;
        Some(self.space.saturation.class_map[g])
    }
}

fn point_object_name(shape: &Shape) -> String {
    let mut name = String::from("pt");
    while shape.object_index(&name).is_some() {
        name.push('\'');
    }
    name
}

/// Colimit over FPCM^‖: the diagram is extended by the point system `{p}`
/// with an arrow to every object sending `p` to its initial state, so the
/// injected initial states are glued into one class.
pub fn colimit(d: &SystemDiagram, bound: usize) -> Result<SystemColimit> {
    check_system_diagram(d)?;
    let base = space_diagram(d)?;
    let pt_name = point_object_name(&d.shape);
    let pt = StateSpace::new(TraceMonoid::trivial(), vec!["p".into()], vec![vec![]])?;
    let mut shape = d.shape.clone();
    shape.objects.push(pt_name.clone());
    let mut objects = base.objects.clone();
    objects.push(pt.clone());
    let mut arrows = base.arrows.clone();
    for (i, a) in d.objects.iter().enumerate() {
        let mut name = format!("{pt_name}→{}", d.shape.objects[i]);
        while shape.arrow_index(&name).is_some() {
            name.push('\'');
        }
        shape
            .arrows
            .push(crate::diagram::ArrowSpec::new(&name, &pt_name, &d.shape.objects[i]));
        arrows.push(SpaceMorphism::new(
            pt.clone(),
            a.space.clone(),
            BasicHom::trivial(pt.monoid(), a.monoid()),
            vec![a.initial],
        )?);
    }
    let glued = SpaceDiagram::new(shape, objects, arrows);
    let sc = space::colimit(&glued, CategoryFlag::FpcmPar, bound)?;
    let pt_generator = sc
        .presentation
        .generator(&format!("{pt_name}:p"))
        .expect("point generator");
    let initial = sc.saturation.class_map[pt_generator];
    let (apex, legs) = match &sc.legs {
        Some(space_legs) => {
            let apex = WeakAsyncSystem::from_state_space(&sc.saturation.space, initial)?;
            let legs = d
                .objects
                .iter()
                .zip(space_legs)
                .map(|(a, l)| SystemMorphism::from_space_morphism(l, a, &apex))
                .collect::<Result<Vec<_>>>()?;
            (Some(apex), Some(legs))
        }
        None => (None, None),
    };
    Ok(SystemColimit {
        space: sc,
        initial,
        apex,
        legs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_transition(e: &str) -> WeakAsyncSystem {
        let m = TraceMonoid::free(&[e]).unwrap();
        WeakAsyncSystem::from_names(&m, &["s0", "s1"], "s0", &[("s0", e, "s1")]).unwrap()
    }

    #[test]
    fn empty_system() {
        let a = WeakAsyncSystem::empty();
        assert_eq!(a.classify(), SystemClass::Weak);
        let (s, i) = a.to_state_space();
        assert!(s.is_empty() && i.is_none());
        assert_eq!(WeakAsyncSystem::from_state_space(&s, i).unwrap(), a);
        assert_eq!(a.reachable(), a);
    }

    #[test]
    fn one_transition_table() {
        let a = one_transition("a");
        let (s, _) = a.to_state_space();
        assert_eq!(s.table().iter().flatten().flatten().count(), 1);
        assert_eq!(a.classify(), SystemClass::Ats);
    }

    #[test]
    fn classification() {
        let m = TraceMonoid::free(&["a"]).unwrap();
        let b = WeakAsyncSystem::from_names::<&str>(&m, &["s"], "s", &[]).unwrap();
        assert_eq!(b.classify(), SystemClass::Bednarczyk);
        let c = WeakAsyncSystem::from_names(&m, &["s"], "s", &[("s", "a", "s")]).unwrap();
        assert_eq!(c.classify(), SystemClass::Ats);
    }

    #[test]
    fn invalid_systems_report_everything() {
        let m = TraceMonoid::free_commutative(&["a", "b"]).unwrap();
        let err = WeakAsyncSystem::from_names(
            &m,
            &["s", "t", "u"],
            "s",
            &[("s", "a", "t"), ("s", "a", "u")],
        )
        .unwrap_err();
        let Error::InvalidSystem(d) = err else { panic!() };
        assert_eq!(d[0].kind, DiagnosticKind::Nondeterminism);
        let err = WeakAsyncSystem::from_names(&m, &["s", "t"], "s", &[("s", "a", "t"), ("t", "b", "t")])
            .unwrap_err();
        let Error::InvalidSystem(d) = err else { panic!() };
        assert!(d.iter().all(|x| x.kind == DiagnosticKind::Diamond));
    }

    #[test]
    fn morphism_conditions() {
        let a = one_transition("a");
        assert!(SystemMorphism::identity(&a).is_morphism());
        assert!(SystemMorphism::identity(&a).is_polygonal().unwrap());
        let bad = SystemMorphism::new(a.clone(), a.clone(), vec![Some(EventId(0))], vec![Some(StateId(1)), Some(StateId(1))])
            .unwrap();
        let kinds: Vec<_> = bad.violations().into_iter().map(|d| d.kind).collect();
        assert!(kinds.contains(&DiagnosticKind::InitialState));
        let collapse = SystemMorphism::new(a.clone(), a.clone(), vec![None], vec![Some(StateId(0)), Some(StateId(1))])
            .unwrap();
        let kinds: Vec<_> = collapse.violations().into_iter().map(|d| d.kind).collect();
        assert_eq!(kinds, vec![DiagnosticKind::Transition]);
    }

    #[test]
    fn morphism_that_is_not_polygonal() {
        let m = TraceMonoid::free(&["a"]).unwrap();
        let src = WeakAsyncSystem::from_names::<&str>(&m, &["s0"], "s0", &[]).unwrap();
        let tgt = one_transition("a");
        let f = SystemMorphism::from_names(&src, &tgt, &[("a", Some("a"))], &[("s0", Some("s0"))]).unwrap();
        assert!(f.is_morphism());
        let r = f.polygonal_report().unwrap();
        assert!(!r.criterion && !r.equivariance);
    }

    #[test]
    fn reachable_and_unfold() {
        let m = TraceMonoid::free_commutative(&["a", "b"]).unwrap();
        let a = WeakAsyncSystem::from_names(
            &m,
            &["s", "x", "y", "t", "junk"],
            "s",
            &[("s", "a", "x"), ("s", "b", "y"), ("x", "b", "t"), ("y", "a", "t")],
        )
        .unwrap();
        let r = a.reachable();
        assert_eq!(r.states(), ["s", "x", "y", "t"]);
        let u = a.unfold(2);
        let words: Vec<String> = u.iter().map(|(t, _)| t.to_string()).collect();
        assert_eq!(words, ["1", "a", "b", "ab"]);
        assert_eq!(a.unfold(0).len(), 1);
        let i = SystemMorphism::new(
            r.clone(),
            a.clone(),
            m.events().map(Some).collect(),
            (0..4).map(|i| Some(StateId(i))).collect(),
        )
        .unwrap();
        assert!(i.is_polygonal().unwrap());
    }

    #[test]
    fn product_with_point() {
        // the terminal system: its pointed state set {*} has one point
        let a = one_transition("a");
        let p = product(&[a.clone(), WeakAsyncSystem::empty()]).unwrap();
        assert!(space::is_isomorphic(p.apex.space(), a.space()).unwrap().is_some());
        assert!(p.legs.iter().all(|l| l.is_polygonal().unwrap()));
        assert_eq!(p.apex.initial(), Some(StateId(0)));
    }

    #[test]
    fn product_of_two_transitions() {
        let p = product(&[one_transition("a"), one_transition("b")]).unwrap();
        let m = p.apex.monoid();
        assert_eq!(m.names(), ["(*,b)", "(a,*)", "(a,b)"]);
        assert_eq!(m.independent_names(), vec![("(*,b)", "(a,*)")]);
        assert_eq!(p.apex.states().len(), 8);
        let start = p.apex.initial();
        assert_eq!(p.apex.space().name(start), "(s0,s0)");
        let step = |x, e: &str| p.apex.step(x, m.event(e).unwrap());
        // interleaving diamond and the synchronised step meet at (s1,s1)
        let ab = step(step(start, "(a,*)"), "(*,b)");
        assert_eq!(ab, step(step(start, "(*,b)"), "(a,*)"));
        assert_eq!(ab, step(start, "(a,b)"));
        assert_eq!(p.apex.space().name(ab), "(s1,s1)");
        assert!(p.legs.iter().all(|l| l.is_polygonal().unwrap()));
    }

    #[test]
    fn coproduct_glues_initial_states() {
        let d = SystemDiagram::new(Shape::discrete(2), vec![one_transition("a"), one_transition("b")], vec![]);
        let c = colimit(&d, 3).unwrap();
        // each summand's events act freely on the other's states
        assert!(!c.space.saturation.is_exact());
        let i0 = c.class_of("0", "s0").unwrap();
        assert_eq!(i0, c.class_of("1", "s0").unwrap());
        assert_eq!(i0, c.initial);
        assert!(i0.is_some());
    }

    #[test]
    fn one_object_colimit() {
        let a = one_transition("a");
        let d = SystemDiagram::new(Shape::discrete(1), vec![a.clone()], vec![]);
        let c = colimit(&d, 4).unwrap();
        assert!(c.space.saturation.is_exact());
        let apex = c.apex.unwrap();
        assert!(space::is_isomorphic(apex.space(), a.space()).unwrap().is_some());
        let leg = &c.legs.unwrap()[0];
        assert!(leg.is_polygonal().unwrap());
        assert_eq!(leg.map_state(a.initial()), apex.initial());
    }
}
