use std::collections::BTreeMap;

use serde_json::{json, Value};
use tracecat::{
    BasicHom, Diagnostic, SpaceMorphism, StateSpace, SystemMorphism, TraceMonoid, WeakAsyncSystem,
};

use crate::document::{
    Bundle, Document, HomDoc, MonoidDoc, SpaceDoc, SpaceMorphismDoc, SystemDoc, SystemMorphismDoc,
};

pub fn diagnostics_json(d: &[Diagnostic]) -> Value {
    d.iter()
        .map(|x| json!({"kind": x.kind.as_str(), "detail": x.detail}))
        .collect()
}

pub fn monoid_doc(m: &TraceMonoid) -> MonoidDoc {
    MonoidDoc {
        events: m.names().to_vec(),
        independence: m
            .independent_names()
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    }
}

pub fn hom_doc(h: &BasicHom, source: &str, target: &str) -> HomDoc {
    HomDoc {
        source: source.to_string(),
        target: target.to_string(),
        map: h
            .source()
            .events()
            .map(|e| {
                let image = h.at(e).map(|f| h.target().name(f).to_string());
                (h.source().name(e).to_string(), image)
            })
            .collect(),
    }
}

pub fn space_doc(s: &StateSpace, monoid: &str) -> SpaceDoc {
    let m = s.monoid();
    let mut action = Vec::new();
    for x in s.ids() {
        for e in m.events() {
            if let Some(y) = s.act(Some(x), e) {
                action.push((s.name(Some(x)).to_string(), m.name(e).to_string(), s.name(Some(y)).to_string()));
            }
        }
    }
    SpaceDoc {
        monoid: monoid.to_string(),
        states: s.states().to_vec(),
        action,
    }
}

pub fn system_doc(a: &WeakAsyncSystem, monoid: &str) -> SystemDoc {
    let s = a.space();
    SystemDoc {
        monoid: monoid.to_string(),
        states: a.states().to_vec(),
        initial: a.initial().map(|x| s.name(Some(x)).to_string()),
        transitions: a
            .transitions()
            .into_iter()
            .map(|(x, e, y)| {
                (
                    s.name(Some(x)).to_string(),
                    a.monoid().name(e).to_string(),
                    s.name(Some(y)).to_string(),
                )
            })
            .collect(),
    }
}

/// Collects result documents, reusing the names of input documents (and of
/// earlier results) for structurally equal objects.
pub struct Emitter<'a> {
    bundle: &'a Bundle,
    pub out: BTreeMap<String, Document>,
    monoids: Vec<(TraceMonoid, String)>,
    spaces: Vec<(StateSpace, String)>,
    systems: Vec<(WeakAsyncSystem, String)>,
}

impl<'a> Emitter<'a> {
    pub fn new(bundle: &'a Bundle) -> Self {
        Emitter {
            bundle,
            out: BTreeMap::new(),
            monoids: Vec::new(),
            spaces: Vec::new(),
            systems: Vec::new(),
        }
    }

    /// Copies an input document and everything it refers to.
    pub fn input(&mut self, name: &str) -> String {
        if self.out.contains_key(name) {
            return name.to_string();
        }
        if let Some(doc) = self.bundle.documents.get(name) {
            self.out.insert(name.to_string(), doc.clone());
            for r in doc.references() {
                self.input(r);
            }
            match doc {
                Document::Monoid(_) => {
                    if let Ok(m) = self.bundle.monoid(name) {
                        self.monoids.push((m, name.to_string()));
                    }
                }
                Document::Space(_) => {
                    if let Ok(s) = self.bundle.space(name) {
                        self.spaces.push((s, name.to_string()));
                    }
                }
                Document::System(_) => {
                    if let Ok(a) = self.bundle.system(name) {
                        self.systems.push((a, name.to_string()));
                    }
                }
                _ => {}
            }
        }
        name.to_string()
    }

    fn fresh(&self, name: &str) -> String {
        if !self.out.contains_key(name) && !self.bundle.documents.contains_key(name) {
            return name.to_string();
        }
        (2..)
            .map(|i| format!("{name}~{i}"))
            .find(|n| !self.out.contains_key(n) && !self.bundle.documents.contains_key(n))
            .expect("some suffix is free")
    }

    fn put(&mut self, name: &str, doc: Document) -> String {
        let name = self.fresh(name);
        self.out.insert(name.clone(), doc);
        name
    }

    /// Name of an already emitted equal monoid, or a new document.
    pub fn monoid(&mut self, m: &TraceMonoid, name: &str) -> String {
        if let Some((_, n)) = self.monoids.iter().find(|(x, _)| x == m) {
            return n.clone();
        }
        let n = self.put(name, Document::Monoid(monoid_doc(m)));
        self.monoids.push((m.clone(), n.clone()));
        n
    }

    /// Always a new document, even if an equal monoid exists.
    pub fn new_monoid(&mut self, m: &TraceMonoid, name: &str) -> String {
        let n = self.put(name, Document::Monoid(monoid_doc(m)));
        self.monoids.push((m.clone(), n.clone()));
        n
    }

    pub fn hom(&mut self, h: &BasicHom, name: &str) -> String {
        let src = self.monoid(h.source(), &format!("{name}.source"));
        let tgt = self.monoid(h.target(), &format!("{name}.target"));
        self.put(name, Document::Hom(hom_doc(h, &src, &tgt)))
    }

    pub fn space(&mut self, s: &StateSpace, name: &str) -> String {
        if let Some((_, n)) = self.spaces.iter().find(|(x, _)| x == s) {
            return n.clone();
        }
        self.new_space(s, name)
    }

    pub fn new_space(&mut self, s: &StateSpace, name: &str) -> String {
        let name = self.fresh(name);
        let m = self.monoid(s.monoid(), &format!("{name}.monoid"));
        let n = self.put(&name, Document::Space(space_doc(s, &m)));
        self.spaces.push((s.clone(), n.clone()));
        n
    }

    pub fn space_morphism(&mut self, f: &SpaceMorphism, name: &str) -> String {
        let name = self.fresh(name);
        let src = self.space(f.source(), &format!("{name}.source"));
        let tgt = self.space(f.target(), &format!("{name}.target"));
        let hom = self.hom(f.hom(), &format!("{name}.hom"));
        let states = f
            .source()
            .ids()
            .map(|x| {
                let y = f.map(Some(x)).map(|y| f.target().name(Some(y)).to_string());
                (f.source().name(Some(x)).to_string(), y)
            })
            .collect();
        self.put(
            &name,
            Document::SpaceMorphism(SpaceMorphismDoc {
                source: src,
                target: tgt,
                hom,
                states,
            }),
        )
    }

    pub fn system(&mut self, a: &WeakAsyncSystem, name: &str) -> String {
        if let Some((_, n)) = self.systems.iter().find(|(x, _)| x == a) {
            return n.clone();
        }
        self.new_system(a, name)
    }

    pub fn new_system(&mut self, a: &WeakAsyncSystem, name: &str) -> String {
        let name = self.fresh(name);
        let m = self.monoid(a.monoid(), &format!("{name}.monoid"));
        let n = self.put(&name, Document::System(system_doc(a, &m)));
        self.systems.push((a.clone(), n.clone()));
        n
    }

    pub fn system_morphism(&mut self, f: &SystemMorphism, name: &str) -> String {
        let name = self.fresh(name);
        let src = self.system(f.source(), &format!("{name}.source"));
        let tgt = self.system(f.target(), &format!("{name}.target"));
        let (a, b) = (f.source(), f.target());
        let events = a
            .monoid()
            .events()
            .map(|e| {
                let image = f.event_map()[e.0].map(|x| b.monoid().name(x).to_string());
                (a.monoid().name(e).to_string(), image)
            })
            .collect();
        let states = a
            .space()
            .ids()
            .map(|x| {
                let y = f.map_state(Some(x)).map(|y| b.space().name(Some(y)).to_string());
                (a.space().name(Some(x)).to_string(), y)
            })
            .collect();
        self.put(
            &name,
            Document::SystemMorphism(SystemMorphismDoc {
                source: src,
                target: tgt,
                events,
                states,
            }),
        )
    }
}

pub fn render_monoid(m: &TraceMonoid) -> String {
    let pairs: Vec<String> = m
        .independent_names()
        .into_iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    format!("events {{{}}}, independence {{{}}}", m.names().join(", "), pairs.join(", "))
}

pub fn render_hom(h: &BasicHom) -> String {
    let parts: Vec<String> = h
        .source()
        .events()
        .map(|e| format!("{} ↦ {}", h.source().name(e), h.at(e).map_or("1", |f| h.target().name(f))))
        .collect();
    parts.join(", ")
}

pub fn render_space(s: &StateSpace) -> Vec<String> {
    let mut lines = vec![format!("monoid: {}", render_monoid(s.monoid()))];
    lines.push(format!("states: {}", s.states().join(", ")));
    for x in s.ids() {
        for e in s.monoid().events() {
            if let Some(y) = s.act(Some(x), e) {
                lines.push(format!("  {} -{}-> {}", s.name(Some(x)), s.monoid().name(e), s.name(Some(y))));
            }
        }
    }
    lines
}

pub fn render_system(a: &WeakAsyncSystem) -> Vec<String> {
    let s = a.space();
    let mut lines = vec![format!("monoid: {}", render_monoid(a.monoid()))];
    lines.push(format!("states: {}", a.states().join(", ")));
    lines.push(format!("initial: {}", s.name(a.initial())));
    for (x, e, y) in a.transitions() {
        lines.push(format!("  {} -{}-> {}", s.name(Some(x)), a.monoid().name(e), s.name(Some(y))));
    }
    lines
}
