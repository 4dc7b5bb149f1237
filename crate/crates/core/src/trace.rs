//! Trace monoids `M(E, I)` over finite, explicitly ordered alphabets.
//!
//! A trace is stored as the lexicographically least word of its class, with
//! letters compared by their position in the declared alphabet. Two traces
//! over the same monoid are equal exactly when their stored words are equal.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Position of an event in its monoid's alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(pub usize);

impl EventId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Name reserved for the basepoint of pointed sets.
pub const STAR: &str = "*";

pub(crate) fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name == STAR {
        Err(Error::ReservedName(name.to_string()))
    } else {
        Ok(())
    }
}

#[derive(Debug)]
struct MonoidData {
    names: Vec<String>,
    index: HashMap<String, EventId>,
    /// Row-major `n x n` adjacency of the independence relation.
    independent: Vec<bool>,
}

/// A finitely generated trace monoid. Cloning is cheap.
#[derive(Clone)]
pub struct TraceMonoid(Arc<MonoidData>);

impl TraceMonoid {
    /// Builds `M(E, I)`. Pairs are symmetrised; repeated pairs are harmless.
    pub fn new<S, T>(events: &[S], independence: &[(T, T)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let names: Vec<String> = events.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            check_name(name)?;
            if index.insert(name.clone(), EventId(i)).is_some() {
                return Err(Error::DuplicateEvent(name.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(independence.len());
        for (a, b) in independence {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| Error::UnknownEvent(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownEvent(b.to_string()))?;
            pairs.push((ia, ib));
        }
        Self::from_parts(names, index, pairs)
    }

    /// Builds a monoid from generator names and index pairs.
    pub fn from_ids(
        names: Vec<String>,
        independence: impl IntoIterator<Item = (EventId, EventId)>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            check_name(name)?;
            if index.insert(name.clone(), EventId(i)).is_some() {
                return Err(Error::DuplicateEvent(name.clone()));
            }
        }
        let n = names.len();
        let pairs: Vec<_> = independence.into_iter().collect();
        for &(a, b) in &pairs {
            for id in [a, b] {
                if id.0 >= n {
                    return Err(Error::UnknownEvent(format!("#{}", id.0)));
                }
            }
        }
        Self::from_parts(names, index, pairs)
    }

    fn from_parts(
        names: Vec<String>,
        index: HashMap<String, EventId>,
        pairs: Vec<(EventId, EventId)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut independent = vec![false; n * n];
        for (a, b) in pairs {
            if a == b {
                return Err(Error::ReflexivePair(names[a.0].clone()));
            }
            independent[a.0 * n + b.0] = true;
            independent[b.0 * n + a.0] = true;
        }
        Ok(TraceMonoid(Arc::new(MonoidData {
            names,
            index,
            independent,
        })))
    }

    /// `M(∅, ∅) = {1}`, both initial and terminal.
    pub fn trivial() -> Self {
        Self::from_ids(Vec::new(), []).expect("empty alphabet is valid")
    }

    pub fn free<S: AsRef<str>>(events: &[S]) -> Result<Self> {
        Self::new::<S, &str>(events, &[])
    }

    /// Every pair of distinct generators independent.
    pub fn free_commutative<S: AsRef<str>>(events: &[S]) -> Result<Self> {
        let names: Vec<String> = events.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        let pairs = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (EventId(a), EventId(b))));
        Self::from_ids(names, pairs)
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, e: EventId) -> &str {
        &self.0.names[e.0]
    }

    pub fn event(&self, name: &str) -> Option<EventId> {
        self.0.index.get(name).copied()
    }

    pub fn event_or_err(&self, name: &str) -> Result<EventId> {
        self.event(name)
            .ok_or_else(|| Error::UnknownEvent(name.to_string()))
    }

    pub fn events(&self) -> impl Iterator<Item = EventId> + '_ {
        (0..self.len()).map(EventId)
    }

    pub fn independent(&self, a: EventId, b: EventId) -> bool {
        self.0.independent[a.0 * self.len() + b.0]
    }

    /// Unordered independent pairs `(a, b)` with `a < b`, in alphabet order.
    pub fn independent_pairs(&self) -> Vec<(EventId, EventId)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.0.independent[a * n + b] {
                    out.push((EventId(a), EventId(b)));
                }
            }
        }
        out
    }

    pub fn independent_names(&self) -> Vec<(&str, &str)> {
        self.independent_pairs()
            .into_iter()
            .map(|(a, b)| (self.name(a), self.name(b)))
            .collect()
    }

    /// Resolves event names to ids.
    pub fn word<S: AsRef<str>>(&self, letters: &[S]) -> Result<Vec<EventId>> {
        letters.iter().map(|s| self.event_or_err(s.as_ref())).collect()
    }

    /// Parses a word written either as whitespace/comma separated names or,
    /// when every name is a single character, as a plain string like `adecc`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<EventId>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if text.contains(|c: char| c.is_whitespace() || c == ',') {
            return text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| self.event_or_err(s))
                .collect();
        }
        if let Some(e) = self.event(text) {
            return Ok(vec![e]);
        }
        let mut buf = [0u8; 4];
        text.chars()
            .map(|c| {
                self.event(c.encode_utf8(&mut buf))
                    .ok_or_else(|| Error::UnknownEvent(text.to_string()))
            })
            .collect()
    }

    /// Lexicographically least word equivalent to `word`.
    ///
    /// Repeatedly removes the least letter that can be commuted to the front:
    /// a letter occurrence qualifies when it is independent of every letter
    /// occurring before it.
    pub fn normal_form(&self, word: &[EventId]) -> Vec<EventId> {
        let n = self.len();
        let mut rest: Vec<EventId> = word.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        let mut blocked = vec![false; n];
        while !rest.is_empty() {
            blocked.iter_mut().for_each(|b| *b = false);
            let mut best: Option<(EventId, usize)> = None;
            for (pos, &c) in rest.iter().enumerate() {
                if !blocked[c.0] && best.map_or(true, |(b, _)| c < b) {
                    best = Some((c, pos));
                }
                let row = &self.0.independent[c.0 * n..(c.0 + 1) * n];
                for (x, &ind) in row.iter().enumerate() {
                    if !ind {
                        blocked[x] = true;
                    }
                }
                if blocked.iter().all(|&b| b) {
                    break;
                }
            }
            let (c, pos) = best.expect("the first letter is always available");
            out.push(c);
            rest.remove(pos);
        }
        out
    }

    pub fn normalize(&self, word: &[EventId]) -> Result<Trace> {
        self.check_word(word)?;
        Ok(Trace {
            monoid: self.clone(),
            word: self.normal_form(word),
        })
    }

    /// Parses and normalises in one step.
    pub fn trace(&self, text: &str) -> Result<Trace> {
        let w = self.parse_word(text)?;
        self.normalize(&w)
    }

    pub fn empty_trace(&self) -> Trace {
        Trace {
            monoid: self.clone(),
            word: Vec::new(),
        }
    }

    pub fn generator(&self, e: EventId) -> Trace {
        Trace {
            monoid: self.clone(),
            word: vec![e],
        }
    }

    pub fn equivalent(&self, w1: &[EventId], w2: &[EventId]) -> Result<bool> {
        self.check_word(w1)?;
        self.check_word(w2)?;
        Ok(w1.len() == w2.len() && self.normal_form(w1) == self.normal_form(w2))
    }

    fn check_word(&self, word: &[EventId]) -> Result<()> {
        match word.iter().find(|e| e.0 >= self.len()) {
            Some(e) => Err(Error::UnknownEvent(format!("#{}", e.0))),
            None => Ok(()),
        }
    }

    /// Renders a word; single-character alphabets are written without
    /// separators and the empty word is written `1`.
    pub fn format_word(&self, word: &[EventId]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let compact = self.0.names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&e| self.name(e)).collect();
        if compact {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    /// Same underlying object (cheap check before structural equality).
    pub fn ptr_eq(&self, other: &TraceMonoid) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

}

impl PartialEq for TraceMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other)
            || (self.0.names == other.0.names && self.0.independent == other.0.independent)
    }
}

impl Eq for TraceMonoid {}

impl Hash for TraceMonoid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.names.hash(state);
        self.0.independent.hash(state);
    }
}

impl fmt::Debug for TraceMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({{{}}}, {{", self.0.names.join(","))?;
        let pairs: Vec<String> = self
            .independent_names()
            .into_iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        write!(f, "{}}})", pairs.join(","))
    }
}

impl fmt::Display for TraceMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An element of a trace monoid, held in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct Trace {
    monoid: TraceMonoid,
    word: Vec<EventId>,
}

impl Trace {
    pub fn monoid(&self) -> &TraceMonoid {
        &self.monoid
    }

    /// The canonical (lexicographically least) representative.
    pub fn word(&self) -> &[EventId] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn concat(&self, other: &Trace) -> Result<Trace> {
        if self.monoid != other.monoid {
            return Err(Error::MonoidMismatch);
        }
        let mut w = self.word.clone();
        w.extend_from_slice(&other.word);
        Ok(Trace {
            word: self.monoid.normal_form(&w),
            monoid: self.monoid.clone(),
        })
    }

    /// `t · e`, kept in normal form.
    pub fn push(&self, e: EventId) -> Trace {
        let mut w = self.word.clone();
        w.push(e);
        Trace {
            word: self.monoid.normal_form(&w),
            monoid: self.monoid.clone(),
        }
    }

    pub fn names(&self) -> Vec<&str> {
        self.word.iter().map(|&e| self.monoid.name(e)).collect()
    }
}

impl Hash for Trace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.monoid.format_word(&self.word))
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
