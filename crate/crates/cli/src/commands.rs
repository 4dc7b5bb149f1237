use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use tracecat::fpcm::{self, CategoryFlag, MonoidCocone, MonoidCone};
use tracecat::space::{self, SpaceColimit, SpaceCone};
use tracecat::system::{self, SystemCone};
use tracecat::{Error as DomainError, WeakAsyncSystem};

use crate::args::{AsysCommand, Cli, Command, MonoidCommand, SpaceCommand};
use crate::document::{AnyDiagram, Bundle, Document};
use crate::emit::{diagnostics_json, render_hom, render_monoid, render_space, render_system, Emitter};
use crate::error::CliError;

/// Outcome of one command: a summary, result documents, and text lines.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub summary: Map<String, Value>,
    pub documents: BTreeMap<String, Document>,
    pub lines: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            summary: Map::new(),
            documents: BTreeMap::new(),
            lines: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        Bundle::new(self.documents.clone()).to_json_with(Some(&self.command), Some(Value::Object(self.summary.clone())))
    }

    pub fn to_text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

struct Ctx<'a> {
    bundle: &'a Bundle,
    flag: CategoryFlag,
    bound: usize,
    name: &'a str,
}

pub fn command_name(c: &Command) -> String {
    match c {
        Command::Normalize { .. } => "normalize".into(),
        Command::Equiv { .. } => "equiv".into(),
        Command::HomCheck { .. } => "hom-check".into(),
        Command::Radjoint { .. } => "radjoint".into(),
        Command::IsoCheck { .. } => "iso-check".into(),
        Command::Monoid(m) => format!(
            "monoid {}",
            match m {
                MonoidCommand::Product { .. } => "product",
                MonoidCommand::Coproduct { .. } => "coproduct",
                MonoidCommand::Equalize { .. } => "equalize",
                MonoidCommand::Coequalize { .. } => "coequalize",
                MonoidCommand::Limit { .. } => "limit",
                MonoidCommand::Colimit { .. } => "colimit",
            }
        ),
        Command::Space(s) => format!(
            "space {}",
            match s {
                SpaceCommand::Product { .. } => "product",
                SpaceCommand::Equalize { .. } => "equalize",
                SpaceCommand::Limit { .. } => "limit",
                SpaceCommand::Colimit { .. } => "colimit",
            }
        ),
        Command::Asys(a) => format!(
            "asys {}",
            match a {
                AsysCommand::Validate { .. } => "validate",
                AsysCommand::Classify { .. } => "classify",
                AsysCommand::MorphismCheck { .. } => "morphism-check",
                AsysCommand::PolygonalCheck { .. } => "polygonal-check",
                AsysCommand::Product { .. } => "product",
                AsysCommand::Limit { .. } => "limit",
                AsysCommand::Colimit { .. } => "colimit",
                AsysCommand::Reach { .. } => "reach",
                AsysCommand::Unfold { .. } => "unfold",
            }
        ),
    }
}

pub fn run(cli: &Cli, bundle: &Bundle) -> Result<Report, CliError> {
    let ctx = Ctx {
        bundle,
        flag: cli.category.into(),
        bound: cli.bound,
        name: &cli.name,
    };
    let mut r = Report::new(&command_name(&cli.command));
    let mut em = Emitter::new(bundle);
    match &cli.command {
        Command::Normalize { monoid, words } => normalize(&ctx, &mut r, monoid, words)?,
        Command::Equiv { monoid, left, right } => equiv(&ctx, &mut r, monoid, left, right)?,
        Command::HomCheck { hom } => hom_check(&ctx, &mut r, hom)?,
        Command::Radjoint { table } => radjoint(&ctx, &mut r, &mut em, table)?,
        Command::IsoCheck { left, right } => iso_check(&ctx, &mut r, left, right)?,
        Command::Monoid(m) => monoid_command(&ctx, &mut r, &mut em, m)?,
        Command::Space(s) => space_command(&ctx, &mut r, &mut em, s)?,
        Command::Asys(a) => asys_command(&ctx, &mut r, &mut em, a)?,
    }
    r.documents = em.out;
    Ok(r)
}

fn normalize(ctx: &Ctx, r: &mut Report, monoid: &str, words: &[String]) -> Result<(), CliError> {
    let m = ctx.bundle.monoid(monoid)?;
    let mut forms = Vec::new();
    for w in words {
        let t = m.normalize(&m.parse_word(w)?)?;
        let nf = m.format_word(t.word());
        r.lines.push(format!("{w} -> {nf}"));
        forms.push(json!({"word": w, "normal_form": nf}));
    }
    r.set("monoid", monoid);
    r.set("normal_forms", forms);
    Ok(())
}

fn equiv(ctx: &Ctx, r: &mut Report, monoid: &str, left: &str, right: &str) -> Result<(), CliError> {
    let m = ctx.bundle.monoid(monoid)?;
    let (a, b) = (m.parse_word(left)?, m.parse_word(right)?);
    let eq = m.equivalent(&a, &b)?;
    r.set("monoid", monoid);
    r.set("equivalent", eq);
    r.set(
        "normal_forms",
        vec![m.format_word(&m.normal_form(&a)), m.format_word(&m.normal_form(&b))],
    );
    r.lines.push(eq.to_string());
    Ok(())
}

fn hom_check(ctx: &Ctx, r: &mut Report, name: &str) -> Result<(), CliError> {
    r.set("hom", name);
    r.set("category", ctx.flag.as_str());
    match ctx.bundle.hom(name) {
        Ok(h) => {
            let pair = h.non_preserved_pair();
            r.set("homomorphism", true);
            r.set("independence_preserving", pair.is_none());
            r.set("admitted", ctx.flag.admits(&h));
            r.lines.push(format!("homomorphism: true ({})", render_hom(&h)));
            r.lines.push(format!("independence preserving: {}", pair.is_none()));
            if let Some((a, b)) = pair {
                let names = [h.source().name(a), h.source().name(b)];
                r.set("collapsed_pair", names.to_vec());
                r.lines.push(format!("collapsed pair: ({}, {})", names[0], names[1]));
            }
            r.lines.push(format!("in {}: {}", ctx.flag.as_str(), ctx.flag.admits(&h)));
        }
        Err(CliError::Domain(DomainError::InvalidHom { a, b })) => {
            r.set("homomorphism", false);
            r.set("independence_preserving", false);
            r.set("admitted", false);
            r.set("broken_pair", vec![a.clone(), b.clone()]);
            r.lines.push(format!("homomorphism: false (independent pair ({a}, {b}) maps to a dependent pair)"));
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn radjoint(ctx: &Ctx, r: &mut Report, em: &mut Emitter, table: &str) -> Result<(), CliError> {
    let carrier = ctx.bundle.table(table)?;
    let ra = fpcm::right_adjoint(&carrier);
    let name = em.new_monoid(&ra.monoid, ctx.name);
    let counit: Map<String, Value> = ra
        .monoid
        .events()
        .map(|e| (ra.monoid.name(e).to_string(), Value::from(carrier.elements()[ra.counit[e.0]].clone())))
        .collect();
    r.set("result", name.clone());
    r.set("generators", ra.monoid.len());
    r.set("independent_pairs", ra.monoid.independent_pairs().len());
    r.set("counit", counit);
    r.lines.push(format!("{name}: {}", render_monoid(&ra.monoid)));
    Ok(())
}

fn iso_check(ctx: &Ctx, r: &mut Report, left: &str, right: &str) -> Result<(), CliError> {
    let kinds = (ctx.bundle.get(left)?.kind(), ctx.bundle.get(right)?.kind());
    match kinds {
        ("monoid", "monoid") => {
            let (m1, m2) = (ctx.bundle.monoid(left)?, ctx.bundle.monoid(right)?);
            let iso = space::monoid_isomorphism(&m1, &m2);
            r.set("isomorphic", iso.is_some());
            r.lines.push(iso.is_some().to_string());
            if let Some(map) = iso {
                let events: Map<String, Value> = m1
                    .events()
                    .map(|e| (m1.name(e).to_string(), Value::from(m2.name(map[e.0]))))
                    .collect();
                r.set("events", events);
            }
        }
        ("space", "space") => {
            let (s1, s2) = (ctx.bundle.space(left)?, ctx.bundle.space(right)?);
            let iso = space::is_isomorphic(&s1, &s2)?;
            r.set("isomorphic", iso.is_some());
            r.lines.push(iso.is_some().to_string());
            if let Some(iso) = iso {
                let (m1, m2) = (s1.monoid(), s2.monoid());
                let events: Map<String, Value> = m1
                    .events()
                    .map(|e| (m1.name(e).to_string(), Value::from(m2.name(iso.events[e.0]))))
                    .collect();
                let states: Map<String, Value> = s1
                    .ids()
                    .map(|x| (s1.name(Some(x)).to_string(), Value::from(s2.name(Some(iso.states[x.0])))))
                    .collect();
                r.set("events", events);
                r.set("states", states);
            }
        }
        (a, b) => {
            return Err(CliError::Usage(format!(
                "iso-check compares two monoids or two spaces, got {a} and {b}"
            )))
        }
    }
    r.set("left", left);
    r.set("right", right);
    Ok(())
}

fn distinct(names: &[String]) -> bool {
    let mut v: Vec<&String> = names.iter().collect();
    v.sort();
    v.dedup();
    v.len() == names.len()
}

/// Leg labels: operand names when distinct, positions otherwise.
fn labels(names: &[String]) -> Vec<String> {
    if distinct(names) {
        names.to_vec()
    } else {
        (0..names.len()).map(|i| i.to_string()).collect()
    }
}

fn emit_monoid_cone(ctx: &Ctx, r: &mut Report, em: &mut Emitter, cone: &MonoidCone, labels: &[String]) {
    let name = em.new_monoid(&cone.apex, ctx.name);
    let legs: Vec<String> = cone
        .legs
        .iter()
        .zip(labels)
        .map(|(h, l)| em.hom(h, &format!("{name}.{l}")))
        .collect();
    monoid_summary(r, &name, &cone.apex, legs);
    r.set("category", ctx.flag.as_str());
    for h in &cone.legs {
        r.lines.push(format!("  {}", render_hom(h)));
    }
}

fn emit_monoid_cocone(ctx: &Ctx, r: &mut Report, em: &mut Emitter, cocone: &MonoidCocone, labels: &[String]) {
    let name = em.new_monoid(&cocone.apex, ctx.name);
    let legs: Vec<String> = cocone
        .legs
        .iter()
        .zip(labels)
        .map(|(h, l)| em.hom(h, &format!("{name}.{l}")))
        .collect();
    monoid_summary(r, &name, &cocone.apex, legs);
    r.set("category", ctx.flag.as_str());
    for h in &cocone.legs {
        r.lines.push(format!("  {}", render_hom(h)));
    }
}

fn monoid_summary(r: &mut Report, name: &str, m: &tracecat::TraceMonoid, legs: Vec<String>) {
    r.set("result", name);
    r.set("events", m.names().to_vec());
    let pairs: Vec<Vec<&str>> = m.independent_names().into_iter().map(|(a, b)| vec![a, b]).collect();
    r.set("independence", json!(pairs));
    r.set("legs", legs);
    r.lines.push(format!("{name}: {}", render_monoid(m)));
}

fn monoid_command(ctx: &Ctx, r: &mut Report, em: &mut Emitter, c: &MonoidCommand) -> Result<(), CliError> {
    let b = ctx.bundle;
    match c {
        MonoidCommand::Product { monoids } => {
            let ms = monoids.iter().map(|m| b.monoid(m)).collect::<Result<Vec<_>, _>>()?;
            monoids.iter().for_each(|m| drop(em.input(m)));
            let cone = fpcm::product(&ms, ctx.flag)?;
            emit_monoid_cone(ctx, r, em, &cone, &labels(monoids));
        }
        MonoidCommand::Coproduct { monoids } => {
            let ms = monoids.iter().map(|m| b.monoid(m)).collect::<Result<Vec<_>, _>>()?;
            monoids.iter().for_each(|m| drop(em.input(m)));
            let cocone = if distinct(monoids) {
                fpcm::coproduct_tagged(&monoids.iter().cloned().zip(ms).collect::<Vec<_>>())?
            } else {
                fpcm::coproduct(&ms)?
            };
            emit_monoid_cocone(ctx, r, em, &cocone, &labels(monoids));
        }
        MonoidCommand::Equalize { f, g } => {
            let (hf, hg) = (b.hom(f)?, b.hom(g)?);
            em.input(f);
            em.input(g);
            let cone = fpcm::equalizer(&hf, &hg, ctx.flag)?;
            emit_monoid_cone(ctx, r, em, &cone, &["incl".to_string()]);
        }
        MonoidCommand::Coequalize { f, g } => {
            let (hf, hg) = (b.hom(f)?, b.hom(g)?);
            em.input(f);
            em.input(g);
            let cocone = fpcm::coequalizer(&hf, &hg, ctx.flag)?;
            emit_monoid_cocone(ctx, r, em, &cocone, &["quot".to_string()]);
        }
        MonoidCommand::Limit { diagram } | MonoidCommand::Colimit { diagram } => {
            let AnyDiagram::Monoid(d) = b.diagram(diagram)? else {
                return Err(CliError::Usage(format!("`{diagram}` is not a diagram of monoids")));
            };
            em.input(diagram);
            let labels = d.shape.objects.clone();
            if matches!(c, MonoidCommand::Limit { .. }) {
                let cone = fpcm::limit(&d, ctx.flag)?;
                emit_monoid_cone(ctx, r, em, &cone, &labels);
            } else {
                let cocone = fpcm::colimit(&d, ctx.flag)?;
                emit_monoid_cocone(ctx, r, em, &cocone, &labels);
            }
        }
    }
    Ok(())
}

fn emit_space_cone(ctx: &Ctx, r: &mut Report, em: &mut Emitter, cone: &SpaceCone, labels: &[String]) {
    let name = em.new_space(&cone.apex, ctx.name);
    let legs: Vec<String> = cone
        .legs
        .iter()
        .zip(labels)
        .map(|(m, l)| em.space_morphism(m, &format!("{name}.{l}")))
        .collect();
    r.set("result", name.clone());
    r.set("category", ctx.flag.as_str());
    r.set("states", cone.apex.len());
    r.set("events", cone.apex.monoid().len());
    r.set("legs", legs);
    r.lines.push(format!("{name}:"));
    r.lines.extend(render_space(&cone.apex).into_iter().map(|l| format!("  {l}")));
}

fn colimit_summary(r: &mut Report, c: &SpaceColimit, bound: usize) {
    let sat = &c.saturation;
    let p = &c.presentation;
    r.set("status", sat.status.as_str());
    r.set("bound", bound);
    r.set("states", sat.space.len());
    let classes: Map<String, Value> = p
        .generators
        .iter()
        .zip(&sat.class_map)
        .map(|(g, x)| (g.clone(), Value::from(sat.space.name(*x))))
        .collect();
    r.set("classes", classes);
    let frontier: Vec<Value> = sat
        .frontier
        .iter()
        .map(|f| {
            json!({
                "state": sat.space.name(Some(f.state)),
                "event": sat.space.monoid().name(f.event),
                "term": f.term,
            })
        })
        .collect();
    r.lines.push(format!("status: {} (bound {bound})", sat.status.as_str()));
    for f in &sat.frontier {
        r.lines.push(format!("  frontier: {}", f.term));
    }
    r.set("frontier", frontier);
}

fn space_command(ctx: &Ctx, r: &mut Report, em: &mut Emitter, c: &SpaceCommand) -> Result<(), CliError> {
    let b = ctx.bundle;
    match c {
        SpaceCommand::Product { spaces } => {
            let ss = spaces.iter().map(|s| b.space(s)).collect::<Result<Vec<_>, _>>()?;
            spaces.iter().for_each(|s| drop(em.input(s)));
            let cone = space::product(&ss, ctx.flag)?;
            emit_space_cone(ctx, r, em, &cone, &labels(spaces));
        }
        SpaceCommand::Equalize { f, g } => {
            let (mf, mg) = (b.space_morphism(f)?, b.space_morphism(g)?);
            em.input(f);
            em.input(g);
            let cone = space::equalizer(&mf, &mg, ctx.flag)?;
            emit_space_cone(ctx, r, em, &cone, &["incl".to_string()]);
        }
        SpaceCommand::Limit { diagram } => {
            let AnyDiagram::Space(d) = b.diagram(diagram)? else {
                return Err(CliError::Usage(format!("`{diagram}` is not a diagram of spaces")));
            };
            em.input(diagram);
            let cone = space::limit(&d, ctx.flag)?;
            emit_space_cone(ctx, r, em, &cone, &d.shape.objects);
        }
        SpaceCommand::Colimit { diagram } => {
            let AnyDiagram::Space(d) = b.diagram(diagram)? else {
                return Err(CliError::Usage(format!("`{diagram}` is not a diagram of spaces")));
            };
            em.input(diagram);
            let c = space::colimit(&d, ctx.flag, ctx.bound)?;
            let name = em.new_space(&c.saturation.space, ctx.name);
            r.set("result", name.clone());
            r.set("category", ctx.flag.as_str());
            colimit_summary(r, &c, ctx.bound);
            r.lines.push(format!("{name}:"));
            r.lines
                .extend(render_space(&c.saturation.space).into_iter().map(|l| format!("  {l}")));
            let legs: Vec<String> = match &c.legs {
                Some(legs) => legs
                    .iter()
                    .zip(&d.shape.objects)
                    .map(|(m, l)| em.space_morphism(m, &format!("{name}.{l}")))
                    .collect(),
                None => Vec::new(),
            };
            r.set("legs", legs);
        }
    }
    Ok(())
}

fn emit_system_cone(ctx: &Ctx, r: &mut Report, em: &mut Emitter, cone: &SystemCone, labels: &[String]) {
    let name = em.new_system(&cone.apex, ctx.name);
    let legs: Vec<String> = cone
        .legs
        .iter()
        .zip(labels)
        .map(|(m, l)| em.system_morphism(m, &format!("{name}.{l}")))
        .collect();
    system_summary(r, &name, &cone.apex);
    r.set("legs", legs);
}

fn system_summary(r: &mut Report, name: &str, a: &WeakAsyncSystem) {
    r.set("result", name);
    r.set("states", a.states().len());
    r.set("transitions", a.transitions().len());
    r.set("initial", a.space().name(a.initial()));
    r.lines.push(format!("{name}:"));
    r.lines.extend(render_system(a).into_iter().map(|l| format!("  {l}")));
}

fn asys_command(ctx: &Ctx, r: &mut Report, em: &mut Emitter, c: &AsysCommand) -> Result<(), CliError> {
    let b = ctx.bundle;
    match c {
        AsysCommand::Validate { system } => {
            let raw = b.raw_system(system)?;
            let diags = WeakAsyncSystem::diagnose(&raw.monoid, &raw.states, &raw.transitions);
            r.set("system", system.as_str());
            r.set("valid", diags.is_empty());
            r.set("diagnostics", diagnostics_json(&diags));
            r.lines.push(format!("valid: {}", diags.is_empty()));
            r.lines.extend(diags.iter().map(|d| format!("  {d}")));
        }
        AsysCommand::Classify { system } => {
            let a = b.system(system)?;
            let class = a.classify().as_str();
            r.set("system", system.as_str());
            r.set("class", class);
            r.lines.push(class.to_string());
        }
        AsysCommand::MorphismCheck { morphism } => {
            let f = b.system_morphism(morphism)?;
            let v = f.violations();
            r.set("morphism", morphism.as_str());
            r.set("is_morphism", v.is_empty());
            r.set("violations", diagnostics_json(&v));
            r.lines.push(format!("morphism: {}", v.is_empty()));
            r.lines.extend(v.iter().map(|d| format!("  {d}")));
        }
        AsysCommand::PolygonalCheck { morphism } => {
            let f = b.system_morphism(morphism)?;
            let rep = f.polygonal_report()?;
            r.set("morphism", morphism.as_str());
            r.set("polygonal", rep.criterion);
            r.set("criterion", rep.criterion);
            r.set("equivariance", rep.equivariance);
            r.set("violations", diagnostics_json(&rep.violations));
            r.lines.push(format!("polygonal: {}", rep.criterion));
            r.lines.push(format!("  criterion: {}, equivariance: {}", rep.criterion, rep.equivariance));
            r.lines.extend(rep.violations.iter().map(|d| format!("  {d}")));
        }
        AsysCommand::Product { systems } => {
            let ss = systems.iter().map(|s| b.system(s)).collect::<Result<Vec<_>, _>>()?;
            systems.iter().for_each(|s| drop(em.input(s)));
            let cone = system::product(&ss)?;
            emit_system_cone(ctx, r, em, &cone, &labels(systems));
        }
        AsysCommand::Limit { diagram } => {
            let AnyDiagram::System(d) = b.diagram(diagram)? else {
                return Err(CliError::Usage(format!("`{diagram}` is not a diagram of systems")));
            };
            em.input(diagram);
            let cone = system::limit(&d)?;
            emit_system_cone(ctx, r, em, &cone, &d.shape.objects);
        }
        AsysCommand::Colimit { diagram } => {
            let AnyDiagram::System(d) = b.diagram(diagram)? else {
                return Err(CliError::Usage(format!("`{diagram}` is not a diagram of systems")));
            };
            em.input(diagram);
            let c = system::colimit(&d, ctx.bound)?;
            colimit_summary(r, &c.space, ctx.bound);
            let sat = &c.space.saturation;
            r.set("initial", sat.space.name(c.initial));
            match (&c.apex, &c.legs) {
                (Some(apex), Some(legs)) => {
                    let name = em.new_system(apex, ctx.name);
                    let legs: Vec<String> = legs
                        .iter()
                        .zip(&d.shape.objects)
                        .map(|(m, l)| em.system_morphism(m, &format!("{name}.{l}")))
                        .collect();
                    system_summary(r, &name, apex);
                    r.set("legs", legs);
                }
                _ => {
                    let approx = WeakAsyncSystem::from_state_space(&sat.space, c.initial)?;
                    let name = em.new_system(&approx, ctx.name);
                    system_summary(r, &name, &approx);
                    r.set("legs", Vec::<String>::new());
                }
            }
        }
        AsysCommand::Reach { system } => {
            let a = b.system(system)?;
            em.input(system);
            let reach = a.reachable();
            let name = em.new_system(&reach, ctx.name);
            system_summary(r, &name, &reach);
        }
        AsysCommand::Unfold { system, depth } => {
            let a = b.system(system)?;
            let runs = a.unfold(*depth);
            let items: Vec<Value> = runs
                .iter()
                .map(|(t, s)| json!({"trace": a.monoid().format_word(t.word()), "state": a.space().name(Some(*s))}))
                .collect();
            r.set("system", system.as_str());
            r.set("depth", *depth);
            r.set("runs", items);
            for (t, s) in &runs {
                let w = a.monoid().format_word(t.word());
                r.lines.push(format!("{} -> {}", if w.is_empty() { "1" } else { &w }, a.space().name(Some(*s))));
            }
        }
    }
    Ok(())
}
