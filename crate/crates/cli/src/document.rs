use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use tracecat::fpcm::{FiniteMonoid, MonoidDiagram};
use tracecat::space::{Point, SpaceDiagram};
use tracecat::system::{SystemDiagram, Transition};
use tracecat::{
    ArrowSpec, BasicHom, Diagram, Shape, SpaceMorphism, StateId, StateSpace, SystemMorphism, TraceMonoid,
    WeakAsyncSystem, STAR,
};

use crate::error::{CliError, SchemaIssue};

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Monoid(MonoidDoc),
    Hom(HomDoc),
    Space(SpaceDoc),
    SpaceMorphism(SpaceMorphismDoc),
    System(SystemDoc),
    SystemMorphism(SystemMorphismDoc),
    Shape(ShapeDoc),
    Diagram(DiagramDoc),
    MonoidTable(TableDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub events: Vec<String>,
    #[serde(default)]
    pub independence: Vec<(String, String)>,
}

/// Every source event must be listed; `null` sends it to the empty trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub source: String,
    pub target: String,
    pub map: BTreeMap<String, Option<String>>,
}

/// Unlisted `(state, event)` entries act as `*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub monoid: String,
    pub states: Vec<String>,
    #[serde(default)]
    pub action: Vec<(String, String, String)>,
}

/// Unlisted states go to `*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceMorphismDoc {
    pub source: String,
    pub target: String,
    pub hom: String,
    #[serde(default)]
    pub states: BTreeMap<String, Option<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub monoid: String,
    pub states: Vec<String>,
    pub initial: Option<String>,
    #[serde(default)]
    pub transitions: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemMorphismDoc {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub events: BTreeMap<String, Option<String>>,
    #[serde(default)]
    pub states: BTreeMap<String, Option<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeDoc {
    pub objects: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
}

/// Objects and arrows of the shape, each bound to a document name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub shape: String,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Monoid(_) => "monoid",
            Document::Hom(_) => "hom",
            Document::Space(_) => "space",
            Document::SpaceMorphism(_) => "space_morphism",
            Document::System(_) => "system",
            Document::SystemMorphism(_) => "system_morphism",
            Document::Shape(_) => "shape",
            Document::Diagram(_) => "diagram",
            Document::MonoidTable(_) => "monoid_table",
        }
    }

    /// Names of the documents this one refers to.
    pub fn references(&self) -> Vec<&str> {
        match self {
            Document::Monoid(_) | Document::Shape(_) | Document::MonoidTable(_) => vec![],
            Document::Hom(d) => vec![&d.source, &d.target],
            Document::Space(d) => vec![&d.monoid],
            Document::SpaceMorphism(d) => vec![&d.source, &d.target, &d.hom],
            Document::System(d) => vec![&d.monoid],
            Document::SystemMorphism(d) => vec![&d.source, &d.target],
            Document::Diagram(d) => {
                let mut v = vec![d.shape.as_str()];
                v.extend(d.objects.values().map(String::as_str));
                v.extend(d.arrows.values().map(String::as_str));
                v
            }
        }
    }
}

/// A resolved diagram; the kind follows from the bound documents.
#[derive(Debug, Clone)]
pub enum AnyDiagram {
    Monoid(MonoidDiagram),
    Space(SpaceDiagram),
    System(SystemDiagram),
}

/// A system read by name only, before determinism and diamond checks.
pub struct RawSystem {
    pub monoid: TraceMonoid,
    pub states: Vec<String>,
    pub initial: Point,
    pub transitions: Vec<Transition>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    version: u32,
    documents: BTreeMap<String, Document>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    command: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    summary: Option<serde_json::Value>,
}

/// Named documents, as read from one file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bundle {
    pub documents: BTreeMap<String, Document>,
    locations: BTreeMap<String, (usize, usize)>,
}

pub fn parse(text: &str) -> Result<Bundle, CliError> {
    let raw: RawBundle = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => CliError::Schema(vec![SchemaIssue {
                path: String::new(),
                line: Some(e.line()),
                column: Some(e.column()),
                message: strip_position(&e.to_string()),
            }]),
            _ => CliError::Parse {
                line: e.line(),
                column: e.column(),
                message: strip_position(&e.to_string()),
            },
        }
    })?;
    if raw.version != VERSION {
        return Err(CliError::Schema(vec![SchemaIssue::at_path(
            "version",
            format!("unsupported version {}, expected {VERSION}", raw.version),
        )]));
    }
    let locations = raw
        .documents
        .keys()
        .filter_map(|k| locate_key(text, k).map(|pos| (k.clone(), pos)))
        .collect();
    let bundle = Bundle {
        documents: raw.documents,
        locations,
    };
    bundle.check()?;
    Ok(bundle)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Line and column (1-based) of the first `"key":` occurrence.
fn locate_key(text: &str, key: &str) -> Option<(usize, usize)> {
    let needle = serde_json::to_string(key).ok()?;
    let mut from = 0;
    while let Some(i) = text[from..].find(&needle) {
        let at = from + i;
        let rest = text[at + needle.len()..].trim_start();
        if rest.starts_with(':') {
            let line = text[..at].matches('\n').count() + 1;
            let column = at - text[..at].rfind('\n').map_or(0, |n| n + 1) + 1;
            return Some((line, column));
        }
        from = at + needle.len();
    }
    None
}

fn serialize(raw: &RawBundle) -> String {
    let value = serde_json::to_value(raw).expect("documents serialize");
    let mut s = String::new();
    write_value(&value, 0, &mut s);
    s.push('\n');
    s
}

fn write_inline(v: &serde_json::Value, out: &mut String) {
    match v {
        serde_json::Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_inline(x, out);
            }
            out.push(']');
        }
        v => out.push_str(&serde_json::to_string(v).expect("value serializes")),
    }
}

/// Pretty printing with sorted keys, keeping arrays of scalars (and arrays of
/// such arrays, like transition triples) on one line.
pub fn write_value(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let flat = |v: &Value| !matches!(v, Value::Array(_) | Value::Object(_));
    let inline = |v: &Value| match v {
        Value::Array(items) => items.iter().all(|x| match x {
            Value::Array(inner) => inner.iter().all(flat),
            x => flat(x),
        }),
        Value::Object(m) => m.is_empty(),
        _ => true,
    };
    if inline(v) {
        write_inline(v, out);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("key serializes"));
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!(),
    }
}

impl Bundle {
    pub fn new(documents: BTreeMap<String, Document>) -> Self {
        Bundle {
            documents,
            locations: BTreeMap::new(),
        }
    }

    /// Canonical text: sorted keys, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        self.to_json_with(None, None)
    }

    pub fn to_json_with(&self, command: Option<&str>, summary: Option<serde_json::Value>) -> String {
        serialize(&RawBundle {
            version: VERSION,
            documents: self.documents.clone(),
            command: command.map(str::to_string),
            summary,
        })
    }

    /// Resolves every document, collecting structural problems. Semantic
    /// ones (diamond violations, non-morphisms) are left to the commands.
    fn check(&self) -> Result<(), CliError> {
        let mut issues = Vec::new();
        for (name, doc) in &self.documents {
            for r in doc.references() {
                if !self.documents.contains_key(r) {
                    return Err(CliError::DanglingReference {
                        from: name.clone(),
                        name: r.to_string(),
                    });
                }
            }
            let outcome = match doc {
                Document::Monoid(_) => self.monoid(name).map(drop),
                Document::Hom(_) => self.hom(name).map(drop),
                Document::Space(_) => self.space(name).map(drop),
                Document::SpaceMorphism(_) => self.space_morphism(name).map(drop),
                Document::System(_) => self.raw_system(name).map(drop),
                Document::SystemMorphism(_) => self.raw_system_morphism(name).map(drop),
                Document::Shape(_) => self.shape(name).map(drop),
                Document::Diagram(_) => self.diagram(name).map(drop),
                Document::MonoidTable(_) => self.table(name).map(drop),
            };
            match outcome {
                Ok(()) | Err(CliError::Domain(_)) => {}
                Err(CliError::Schema(v)) => issues.extend(v),
                Err(e) => return Err(e),
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            issues.dedup();
            Err(CliError::Schema(issues))
        }
    }

    fn issue(&self, name: &str, message: impl Into<String>) -> CliError {
        let (line, column) = self.locations.get(name).copied().unzip();
        CliError::Schema(vec![SchemaIssue {
            path: format!("documents.{name}"),
            line,
            column,
            message: message.into(),
        }])
    }

    /// Name-resolution errors are schema problems of `doc`; everything else
    /// is a domain error.
    fn lift(&self, doc: &str, e: tracecat::Error) -> CliError {
        use tracecat::Error as E;
        match e {
            E::UnknownEvent(_)
            | E::UnknownState(_)
            | E::DuplicateEvent(_)
            | E::ReservedName(_)
            | E::ReflexivePair(_)
            | E::MonoidMismatch
            | E::MalformedRelation(_) => self.issue(doc, e.to_string()),
            e => CliError::Domain(e),
        }
    }

    pub fn get(&self, name: &str) -> Result<&Document, CliError> {
        self.documents.get(name).ok_or_else(|| CliError::DanglingReference {
            from: "command line".into(),
            name: name.to_string(),
        })
    }

    fn expect_kind(&self, name: &str, kind: &str) -> Result<&Document, CliError> {
        let doc = self.get(name)?;
        if doc.kind() == kind {
            Ok(doc)
        } else {
            Err(self.issue(name, format!("expected a {kind} document, found {}", doc.kind())))
        }
    }

    pub fn monoid(&self, name: &str) -> Result<TraceMonoid, CliError> {
        let Document::Monoid(d) = self.expect_kind(name, "monoid")? else {
            unreachable!()
        };
        TraceMonoid::new(&d.events, &d.independence).map_err(|e| self.lift(name, e))
    }

    pub fn hom(&self, name: &str) -> Result<BasicHom, CliError> {
        let Document::Hom(d) = self.expect_kind(name, "hom")? else {
            unreachable!()
        };
        let (src, tgt) = (self.monoid(&d.source)?, self.monoid(&d.target)?);
        let map: Vec<(&str, Option<&str>)> = d.map.iter().map(|(k, v)| (k.as_str(), v.as_deref())).collect();
        BasicHom::from_names(&src, &tgt, &map).map_err(|e| self.lift(name, e))
    }

    pub fn space(&self, name: &str) -> Result<StateSpace, CliError> {
        let Document::Space(d) = self.expect_kind(name, "space")? else {
            unreachable!()
        };
        let m = self.monoid(&d.monoid)?;
        let mut table: Vec<Vec<Option<StateId>>> = vec![vec![None; m.len()]; d.states.len()];
        let mut seen = vec![vec![false; m.len()]; d.states.len()];
        let find = |s: &str| d.states.iter().position(|x| x == s);
        for (x, e, y) in &d.action {
            let xi = find(x).ok_or_else(|| self.issue(name, format!("unknown state `{x}`")))?;
            let ei = m.event(e).ok_or_else(|| self.issue(name, format!("unknown event `{e}`")))?;
            let yi = if y == STAR {
                None
            } else {
                Some(StateId(find(y).ok_or_else(|| self.issue(name, format!("unknown state `{y}`")))?))
            };
            if seen[xi][ei.0] && table[xi][ei.0] != yi {
                return Err(self.issue(name, format!("two results for {x}·{e}")));
            }
            seen[xi][ei.0] = true;
            table[xi][ei.0] = yi;
        }
        StateSpace::new(m, d.states.clone(), table).map_err(|e| self.lift(name, e))
    }

    /// Shape-checked only; equivariance is left to the caller.
    pub fn space_morphism(&self, name: &str) -> Result<SpaceMorphism, CliError> {
        let Document::SpaceMorphism(d) = self.expect_kind(name, "space_morphism")? else {
            unreachable!()
        };
        let (src, tgt, hom) = (self.space(&d.source)?, self.space(&d.target)?, self.hom(&d.hom)?);
        let states = self.state_map(name, &src, &tgt, &d.states)?;
        SpaceMorphism::unchecked(src, tgt, hom, states).map_err(|e| self.lift(name, e))
    }

    fn state_map(
        &self,
        name: &str,
        src: &StateSpace,
        tgt: &StateSpace,
        map: &BTreeMap<String, Option<String>>,
    ) -> Result<Vec<Point>, CliError> {
        let mut states = vec![None; src.len()];
        for (x, y) in map {
            let xi = src
                .state(x)
                .ok_or_else(|| self.issue(name, format!("unknown source state `{x}`")))?;
            states[xi.0] = match y {
                Some(y) => Some(
                    tgt.state(y)
                        .ok_or_else(|| self.issue(name, format!("unknown target state `{y}`")))?,
                ),
                None => None,
            };
        }
        Ok(states)
    }

    pub fn raw_system(&self, name: &str) -> Result<RawSystem, CliError> {
        let Document::System(d) = self.expect_kind(name, "system")? else {
            unreachable!()
        };
        let monoid = self.monoid(&d.monoid)?;
        let mut seen = std::collections::HashSet::new();
        for s in &d.states {
            if s.is_empty() || s == STAR || !seen.insert(s) {
                return Err(self.issue(name, format!("bad or repeated state name `{s}`")));
            }
        }
        let find = |s: &str| {
            d.states
                .iter()
                .position(|x| x == s)
                .map(StateId)
                .ok_or_else(|| self.issue(name, format!("unknown state `{s}`")))
        };
        let initial = match d.initial.as_deref() {
            None | Some(STAR) => None,
            Some(s) => Some(find(s)?),
        };
        let transitions = d
            .transitions
            .iter()
            .map(|(s, e, t)| {
                let e = monoid
                    .event(e)
                    .ok_or_else(|| self.issue(name, format!("unknown event `{e}`")))?;
                Ok((find(s)?, e, find(t)?))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(RawSystem {
            monoid,
            states: d.states.clone(),
            initial,
            transitions,
        })
    }

    /// Fails with a domain error on nondeterminism or diamond violations.
    pub fn system(&self, name: &str) -> Result<WeakAsyncSystem, CliError> {
        let r = self.raw_system(name)?;
        WeakAsyncSystem::new(r.monoid, r.states, r.initial, &r.transitions).map_err(CliError::Domain)
    }

    fn raw_system_morphism(&self, name: &str) -> Result<(), CliError> {
        let Document::SystemMorphism(d) = self.expect_kind(name, "system_morphism")? else {
            unreachable!()
        };
        let (a, b) = (self.raw_system(&d.source)?, self.raw_system(&d.target)?);
        for (e, f) in &d.events {
            a.monoid
                .event(e)
                .ok_or_else(|| self.issue(name, format!("unknown source event `{e}`")))?;
            if let Some(f) = f {
                b.monoid
                    .event(f)
                    .ok_or_else(|| self.issue(name, format!("unknown target event `{f}`")))?;
            }
        }
        for (s, t) in &d.states {
            if !a.states.contains(s) {
                return Err(self.issue(name, format!("unknown source state `{s}`")));
            }
            if let Some(t) = t {
                if !b.states.contains(t) {
                    return Err(self.issue(name, format!("unknown target state `{t}`")));
                }
            }
        }
        Ok(())
    }

    /// Shape-checked only; the morphism conditions are left to the caller.
    pub fn system_morphism(&self, name: &str) -> Result<SystemMorphism, CliError> {
        self.raw_system_morphism(name)?;
        let Document::SystemMorphism(d) = self.expect_kind(name, "system_morphism")? else {
            unreachable!()
        };
        let (a, b) = (self.system(&d.source)?, self.system(&d.target)?);
        let events: Vec<(&str, Option<&str>)> = d.events.iter().map(|(k, v)| (k.as_str(), v.as_deref())).collect();
        let states: Vec<(&str, Option<&str>)> = d.states.iter().map(|(k, v)| (k.as_str(), v.as_deref())).collect();
        SystemMorphism::from_names(&a, &b, &events, &states).map_err(|e| self.lift(name, e))
    }

    pub fn shape(&self, name: &str) -> Result<Shape, CliError> {
        let Document::Shape(d) = self.expect_kind(name, "shape")? else {
            unreachable!()
        };
        let shape = Shape::new(
            d.objects.clone(),
            d.arrows
                .iter()
                .map(|a| ArrowSpec::new(&a.name, &a.source, &a.target))
                .collect(),
        );
        let diags = shape.validate();
        if diags.is_empty() {
            Ok(shape)
        } else {
            let msg: Vec<String> = diags.iter().map(ToString::to_string).collect();
            Err(self.issue(name, msg.join("; ")))
        }
    }

    pub fn diagram(&self, name: &str) -> Result<AnyDiagram, CliError> {
        let Document::Diagram(d) = self.expect_kind(name, "diagram")? else {
            unreachable!()
        };
        let shape = self.shape(&d.shape)?;
        let mut objects = Vec::new();
        for o in &shape.objects {
            objects.push(
                d.objects
                    .get(o)
                    .ok_or_else(|| self.issue(name, format!("object `{o}` is not bound")))?
                    .as_str(),
            );
        }
        let mut arrows = Vec::new();
        for a in &shape.arrows {
            arrows.push(
                d.arrows
                    .get(&a.name)
                    .ok_or_else(|| self.issue(name, format!("arrow `{}` is not bound", a.name)))?
                    .as_str(),
            );
        }
        for k in d.objects.keys() {
            if shape.object_index(k).is_none() {
                return Err(self.issue(name, format!("`{k}` is not an object of the shape")));
            }
        }
        for k in d.arrows.keys() {
            if shape.arrow_index(k).is_none() {
                return Err(self.issue(name, format!("`{k}` is not an arrow of the shape")));
            }
        }
        let kind = match objects.first() {
            Some(o) => self.get(o)?.kind(),
            None => "monoid",
        };
        let (arrow_kind, any) = match kind {
            "monoid" => ("hom", 0),
            "space" => ("space_morphism", 1),
            "system" => ("system", 2),
            other => return Err(self.issue(name, format!("diagrams of {other} documents are not supported"))),
        };
        let arrow_kind = if any == 2 { "system_morphism" } else { arrow_kind };
        for o in &objects {
            if self.get(o)?.kind() != kind {
                return Err(self.issue(name, format!("object `{o}` is not a {kind}")));
            }
        }
        for a in &arrows {
            if self.get(a)?.kind() != arrow_kind {
                return Err(self.issue(name, format!("arrow `{a}` is not a {arrow_kind}")));
            }
        }
        Ok(match any {
            0 => AnyDiagram::Monoid(Diagram::new(
                shape,
                objects.iter().map(|o| self.monoid(o)).collect::<Result<_, _>>()?,
                arrows.iter().map(|a| self.hom(a)).collect::<Result<_, _>>()?,
            )),
            1 => AnyDiagram::Space(Diagram::new(
                shape,
                objects.iter().map(|o| self.space(o)).collect::<Result<_, _>>()?,
                arrows.iter().map(|a| self.space_morphism(a)).collect::<Result<_, _>>()?,
            )),
            _ => AnyDiagram::System(Diagram::new(
                shape,
                objects.iter().map(|o| self.system(o)).collect::<Result<_, _>>()?,
                arrows.iter().map(|a| self.system_morphism(a)).collect::<Result<_, _>>()?,
            )),
        })
    }

    pub fn table(&self, name: &str) -> Result<FiniteMonoid, CliError> {
        let Document::MonoidTable(d) = self.expect_kind(name, "monoid_table")? else {
            unreachable!()
        };
        FiniteMonoid::new(&d.elements, &d.table).map_err(|e| match e {
            tracecat::Error::NotAMonoid(m) if m.starts_with("unknown element") || m.starts_with("table is not") => {
                self.issue(name, m)
            }
            e => self.lift(name, e),
        })
    }
}
