//! Finite diagram shapes and typed diagrams.
//!
//! A shape is a finite directed graph read as the free category it generates;
//! commuting conditions between paths cannot be expressed. Limit and colimit
//! constructions only quantify over the generating arrows.

use std::collections::HashSet;

use crate::diagnostics::{Diagnostic, DiagnosticKind};
use crate::error::{Error, Result};
use crate::fpcm::CategoryFlag;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

impl ArrowSpec {
    pub fn new(name: &str, source: &str, target: &str) -> Self {
        ArrowSpec {
            name: name.to_string(),
            source: source.to_string(),
            target: target.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Shape {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

impl Shape {
    pub fn new(objects: Vec<String>, arrows: Vec<ArrowSpec>) -> Self {
        Shape { objects, arrows }
    }

    /// `n` objects named `0..n`, no arrows.
    pub fn discrete(n: usize) -> Self {
        Shape::new((0..n).map(|i| i.to_string()).collect(), Vec::new())
    }

    /// `f, g: source -> target`.
    pub fn parallel_pair() -> Self {
        Shape::new(
            vec!["source".into(), "target".into()],
            vec![
                ArrowSpec::new("f", "source", "target"),
                ArrowSpec::new("g", "source", "target"),
            ],
        )
    }

    /// `left <-l- apex -r-> right`.
    pub fn span() -> Self {
        Shape::new(
            vec!["apex".into(), "left".into(), "right".into()],
            vec![
                ArrowSpec::new("l", "apex", "left"),
                ArrowSpec::new("r", "apex", "right"),
            ],
        )
    }

    /// `left -l-> apex <-r- right`.
    pub fn cospan() -> Self {
        Shape::new(
            vec!["left".into(), "right".into(), "apex".into()],
            vec![
                ArrowSpec::new("l", "left", "apex"),
                ArrowSpec::new("r", "right", "apex"),
            ],
        )
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Source and target object indices of an arrow. Only meaningful on a
    /// shape that passed [`Shape::validate`].
    pub fn endpoints(&self, arrow: usize) -> (usize, usize) {
        let a = &self.arrows[arrow];
        (
            self.object_index(&a.source).expect("validated shape"),
            self.object_index(&a.target).expect("validated shape"),
        )
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for o in &self.objects {
            if !seen.insert(o.as_str()) {
                out.push(Diagnostic::new(
                    DiagnosticKind::DuplicateName,
                    format!("object `{o}`"),
                ));
            }
        }
        let mut seen = HashSet::new();
        for a in &self.arrows {
            if !seen.insert(a.name.as_str()) {
                out.push(Diagnostic::new(
                    DiagnosticKind::DuplicateName,
                    format!("arrow `{}`", a.name),
                ));
            }
            for end in [&a.source, &a.target] {
                if self.object_index(end).is_none() {
                    out.push(Diagnostic::new(
                        DiagnosticKind::DanglingEndpoint,
                        format!("arrow `{}` mentions unknown object `{end}`", a.name),
                    ));
                }
            }
        }
        out
    }
}

/// What a diagram needs from its arrows.
pub trait DiagramArrow {
    type Object: PartialEq;
    fn dom(&self) -> &Self::Object;
    fn cod(&self) -> &Self::Object;
    fn independence_preserving(&self) -> bool;
}

/// A functor from the free category on `shape`; objects and arrows are
/// listed in shape order.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagram<O, A> {
    pub shape: Shape,
    pub objects: Vec<O>,
    pub arrows: Vec<A>,
}

impl<O, A> Diagram<O, A>
where
    A: DiagramArrow<Object = O>,
    O: PartialEq,
{
    pub fn new(shape: Shape, objects: Vec<O>, arrows: Vec<A>) -> Self {
        Diagram {
            shape,
            objects,
            arrows,
        }
    }

    pub fn validate(&self, flag: CategoryFlag) -> Vec<Diagnostic> {
        let mut out = self.shape.validate();
        if self.objects.len() != self.shape.objects.len() {
            out.push(Diagnostic::new(
                DiagnosticKind::TypeMismatch,
                format!(
                    "{} objects assigned for {} shape objects",
                    self.objects.len(),
                    self.shape.objects.len()
                ),
            ));
        }
        if self.arrows.len() != self.shape.arrows.len() {
            out.push(Diagnostic::new(
                DiagnosticKind::TypeMismatch,
                format!(
                    "{} arrows assigned for {} shape arrows",
                    self.arrows.len(),
                    self.shape.arrows.len()
                ),
            ));
        }
        if !out.is_empty() {
            return out;
        }
        for (i, (spec, arrow)) in self.shape.arrows.iter().zip(&self.arrows).enumerate() {
            let (s, t) = self.shape.endpoints(i);
            if *arrow.dom() != self.objects[s] {
                out.push(Diagnostic::new(
                    DiagnosticKind::TypeMismatch,
                    format!("arrow `{}` does not start at `{}`", spec.name, spec.source),
                ));
            }
            if *arrow.cod() != self.objects[t] {
                out.push(Diagnostic::new(
                    DiagnosticKind::TypeMismatch,
                    format!("arrow `{}` does not end at `{}`", spec.name, spec.target),
                ));
            }
            if flag == CategoryFlag::FpcmPar && !arrow.independence_preserving() {
                out.push(Diagnostic::new(
                    DiagnosticKind::NotIndependencePreserving,
                    format!("arrow `{}`", spec.name),
                ));
            }
        }
        out
    }

    pub fn check(&self, flag: CategoryFlag) -> Result<()> {
        let diags = self.validate(flag);
        if diags.is_empty() {
            Ok(())
        } else {
            Err(Error::MalformedDiagram(diags))
        }
    }
}
