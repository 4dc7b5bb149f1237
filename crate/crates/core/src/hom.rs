//! Basic homomorphisms: generators go to generators or to the identity.

use std::fmt;

use crate::error::{Error, Result};
use crate::trace::{EventId, Trace, TraceMonoid};

/// A basic homomorphism `M(E, I) -> M(E', I')`, stored generator-wise.
/// `None` in the image table means the generator is sent to the empty trace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasicHom {
    source: TraceMonoid,
    target: TraceMonoid,
    image: Vec<Option<EventId>>,
}

/// Checks that independent source pairs land on commuting images, reporting
/// the first offending pair.
fn first_invalid_pair(
    source: &TraceMonoid,
    target: &TraceMonoid,
    image: &[Option<EventId>],
) -> Option<(EventId, EventId)> {
    source.independent_pairs().into_iter().find(|&(a, b)| {
        match (image[a.0], image[b.0]) {
            (Some(x), Some(y)) => x != y && !target.independent(x, y),
            _ => false,
        }
    })
}

impl BasicHom {
    pub fn new(
        source: TraceMonoid,
        target: TraceMonoid,
        image: Vec<Option<EventId>>,
    ) -> Result<Self> {
        if image.len() != source.len() {
            return Err(Error::UnknownEvent(format!(
                "image table has {} entries for {} generators",
                image.len(),
                source.len()
            )));
        }
        if let Some(e) = image.iter().flatten().find(|e| e.0 >= target.len()) {
            return Err(Error::UnknownEvent(format!("#{}", e.0)));
        }
        if let Some((a, b)) = first_invalid_pair(&source, &target, &image) {
            return Err(Error::InvalidHom {
                a: source.name(a).to_string(),
                b: source.name(b).to_string(),
            });
        }
        Ok(BasicHom {
            source,
            target,
            image,
        })
    }

    /// Builds from `(source name, target name or None)` pairs; every source
    /// generator must be listed exactly once.
    pub fn from_names<S: AsRef<str>>(
        source: &TraceMonoid,
        target: &TraceMonoid,
        map: &[(S, Option<S>)],
    ) -> Result<Self> {
        let mut image: Vec<Option<Option<EventId>>> = vec![None; source.len()];
        for (from, to) in map {
            let a = source.event_or_err(from.as_ref())?;
            let b = match to {
                Some(t) => Some(target.event_or_err(t.as_ref())?),
                None => None,
            };
            if image[a.0].replace(b).is_some() {
                return Err(Error::DuplicateEvent(from.as_ref().to_string()));
            }
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::UnknownEvent(format!("no image for `{}`", source.names()[i]))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source.clone(), target.clone(), image)
    }

    pub fn identity(m: &TraceMonoid) -> Self {
        BasicHom {
            source: m.clone(),
            target: m.clone(),
            image: m.events().map(Some).collect(),
        }
    }

    /// Sends every generator to the empty trace.
    pub fn trivial(source: &TraceMonoid, target: &TraceMonoid) -> Self {
        BasicHom {
            source: source.clone(),
            target: target.clone(),
            image: vec![None; source.len()],
        }
    }

    pub fn source(&self) -> &TraceMonoid {
        &self.source
    }

    pub fn target(&self) -> &TraceMonoid {
        &self.target
    }

    pub fn image(&self) -> &[Option<EventId>] {
        &self.image
    }

    pub fn at(&self, e: EventId) -> Option<EventId> {
        self.image[e.0]
    }

    pub fn apply(&self, t: &Trace) -> Result<Trace> {
        if *t.monoid() != self.source {
            return Err(Error::MonoidMismatch);
        }
        let word: Vec<EventId> = t.word().iter().filter_map(|&e| self.image[e.0]).collect();
        self.target.normalize(&word)
    }

    /// Independent generators never collide on a non-empty image.
    pub fn is_independence_preserving(&self) -> bool {
        self.non_preserved_pair().is_none()
    }

    pub fn non_preserved_pair(&self) -> Option<(EventId, EventId)> {
        self.source
            .independent_pairs()
            .into_iter()
            .find(|&(a, b)| self.image[a.0].is_some() && self.image[a.0] == self.image[b.0])
    }

    pub fn ensure_independence_preserving(&self) -> Result<()> {
        match self.non_preserved_pair() {
            None => Ok(()),
            Some((a, b)) => Err(Error::NotIndependencePreserving {
                a: self.source.name(a).to_string(),
                b: self.source.name(b).to_string(),
            }),
        }
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &BasicHom) -> Result<BasicHom> {
        outer.compose(self)
    }

    /// `self ∘ inner`; the empty image absorbs.
    pub fn compose(&self, inner: &BasicHom) -> Result<BasicHom> {
        if inner.target != self.source {
            return Err(Error::MonoidMismatch);
        }
        Ok(BasicHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            image: inner
                .image
                .iter()
                .map(|i| i.and_then(|e| self.image[e.0]))
                .collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.image.iter().enumerate().all(|(i, e)| *e == Some(EventId(i)))
    }
}

impl fmt::Debug for BasicHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .source
            .events()
            .map(|e| {
                let to = self.image[e.0].map_or("1", |x| self.target.name(x));
                format!("{}↦{}", self.source.name(e), to)
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
