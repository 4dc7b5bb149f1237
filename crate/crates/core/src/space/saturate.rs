//! Presented actions and their bounded saturation.
//!
//! Saturation is a coset enumeration: classes of terms `(generator, trace)`
//! are kept in a union-find with one successor table per class, `*` is an
//! absorbing class, and merging two classes merges their successors. Terms
//! are expanded breadth-first up to the bound, and the diamond of every
//! independent pair is enforced by deduction after each level.

use std::collections::HashMap;
use std::fmt;

use super::{Point, StateId, StateSpace};
use crate::error::{Error, Result};
use crate::trace::{EventId, TraceMonoid};

/// Safety valve on the number of term nodes; hitting it leaves the result
/// TRUNCATED.
pub const MAX_NODES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Star,
    /// A generator acted on by a word (normalized on use).
    At(usize, Vec<EventId>),
}

impl Term {
    pub fn generator(g: usize) -> Self {
        Term::At(g, Vec::new())
    }
}

/// `x · e ≐ target`, with `None` standing for `*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub generator: usize,
    pub event: EventId,
    pub target: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedAction {
    pub monoid: TraceMonoid,
    pub generators: Vec<String>,
    pub rules: Vec<Rule>,
    pub identifications: Vec<(Term, Term)>,
}

impl PresentedAction {
    pub fn new(monoid: TraceMonoid, generators: Vec<String>) -> Self {
        PresentedAction {
            monoid,
            generators,
            rules: Vec::new(),
            identifications: Vec::new(),
        }
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn rule(&mut self, generator: usize, event: EventId, target: Option<usize>) {
        self.rules.push(Rule {
            generator,
            event,
            target,
        });
    }

    pub fn identify(&mut self, a: Term, b: Term) {
        self.identifications.push((a, b));
    }

    fn check(&self) -> Result<()> {
        let n = self.generators.len();
        let gen_ok = |g: usize| {
            if g < n {
                Ok(())
            } else {
                Err(Error::UnknownState(format!("generator #{g}")))
            }
        };
        let ev_ok = |e: EventId| {
            if e.0 < self.monoid.len() {
                Ok(())
            } else {
                Err(Error::UnknownEvent(format!("#{}", e.0)))
            }
        };
        for r in &self.rules {
            gen_ok(r.generator)?;
            ev_ok(r.event)?;
            if let Some(t) = r.target {
                gen_ok(t)?;
            }
        }
        for t in self.identifications.iter().flat_map(|(a, b)| [a, b]) {
            if let Term::At(g, w) = t {
                gen_ok(*g)?;
                w.iter().try_for_each(|&e| ev_ok(e))?;
            }
        }
        Ok(())
    }

    pub fn format_term(&self, g: usize, word: &[EventId]) -> String {
        let mut s = self.generators[g].clone();
        for &e in word {
            s.push('·');
            s.push_str(self.monoid.name(e));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaturationStatus {
    Exact,
    Truncated,
}

impl SaturationStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SaturationStatus::Exact => "EXACT",
            SaturationStatus::Truncated => "TRUNCATED",
        }
    }
}

impl fmt::Display for SaturationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A successor left unexplored at the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontierItem {
    pub state: StateId,
    pub event: EventId,
    pub term: String,
}

/// Outcome of evaluating a term in a saturation result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolved {
    State(StateId),
    Star,
    /// The walk crossed an unexplored successor.
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SaturationResult {
    pub status: SaturationStatus,
    /// Missing successors are materialised as `*` when TRUNCATED.
    pub space: StateSpace,
    pub class_map: Vec<Point>,
    /// Sorted by generator name, then canonical trace.
    pub frontier: Vec<FrontierItem>,
    /// Least term of each state's class.
    pub representatives: Vec<(usize, Vec<EventId>)>,
    open: Vec<Vec<bool>>,
}

impl SaturationResult {
    pub fn is_exact(&self) -> bool {
        self.status == SaturationStatus::Exact
    }

    pub fn resolve(&self, generator: usize, word: &[EventId]) -> Resolved {
        let mut at = self.class_map[generator];
        for &e in word {
            match at {
                None => return Resolved::Star,
                Some(s) if self.open[s.0][e.0] => return Resolved::Unknown,
                Some(s) => at = self.space.act(Some(s), e),
            }
        }
        at.map_or(Resolved::Star, Resolved::State)
    }
}

const STAR_NODE: usize = 0;

struct Saturator<'a> {
    p: &'a PresentedAction,
    rank: Vec<usize>,
    pairs: Vec<(EventId, EventId)>,
    parent: Vec<usize>,
    /// `(generator, canonical word)`; unused for the star node.
    term: Vec<(usize, Vec<EventId>)>,
    succ: Vec<Vec<Option<usize>>>,
    nodes: HashMap<(usize, Vec<EventId>), usize>,
    pending: Vec<(usize, usize)>,
}

impl<'a> Saturator<'a> {
    fn new(p: &'a PresentedAction) -> Self {
        let mut order: Vec<usize> = (0..p.generators.len()).collect();
        order.sort_by(|&a, &b| p.generators[a].cmp(&p.generators[b]).then(a.cmp(&b)));
        let mut rank = vec![0; order.len()];
        for (r, &g) in order.iter().enumerate() {
            rank[g] = r;
        }
        Saturator {
            p,
            rank,
            pairs: p.monoid.independent_pairs(),
            parent: vec![STAR_NODE],
            term: vec![(usize::MAX, Vec::new())],
            succ: vec![vec![Some(STAR_NODE); p.monoid.len()]],
            nodes: HashMap::new(),
            pending: Vec::new(),
        }
    }

    fn key(&self, x: usize) -> (usize, usize, &[EventId]) {
        let (g, w) = &self.term[x];
        (w.len(), self.rank[*g], w)
    }

    fn before(&self, a: usize, b: usize) -> bool {
        a == STAR_NODE || (b != STAR_NODE && self.key(a) < self.key(b))
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn node(&mut self, g: usize, word: Vec<EventId>) -> usize {
        if let Some(&n) = self.nodes.get(&(g, word.clone())) {
            return n;
        }
        let n = self.parent.len();
        self.parent.push(n);
        self.term.push((g, word.clone()));
        self.succ.push(vec![None; self.p.monoid.len()]);
        self.nodes.insert((g, word), n);
        n
    }

    fn set_succ(&mut self, x: usize, e: EventId, t: usize) {
        let r = self.find(x);
        match self.succ[r][e.0] {
            None => self.succ[r][e.0] = Some(t),
            Some(old) => self.pending.push((old, t)),
        }
    }

    fn process(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            let (root, loser) = if self.before(ra, rb) { (ra, rb) } else { (rb, ra) };
            self.parent[loser] = root;
            let moved = std::mem::take(&mut self.succ[loser]);
            for (e, y) in moved.into_iter().enumerate() {
                match (self.succ[root][e], y) {
                    (None, Some(y)) => self.succ[root][e] = Some(y),
                    (Some(x), Some(y)) => self.pending.push((x, y)),
                    _ => {}
                }
            }
        }
    }

    /// Extends `r`'s least term by `e`.
    fn define(&mut self, r: usize, e: EventId) {
        let (g, mut w) = self.term[r].clone();
        w.push(e);
        let w = self.p.monoid.normal_form(&w);
        let n = self.node(g, w);
        self.set_succ(r, e, n);
        self.process();
    }

    fn materialize(&mut self, t: &Term) -> usize {
        let (g, word) = match t {
            Term::Star => return STAR_NODE,
            Term::At(g, w) => (*g, self.p.monoid.normal_form(w)),
        };
        let mut at = self.node(g, Vec::new());
        for e in word {
            let r = self.find(at);
            at = match self.succ[r][e.0] {
                Some(next) => next,
                None => {
                    self.define(r, e);
                    let r = self.find(r);
                    self.succ[r][e.0].expect("just defined")
                }
            };
        }
        at
    }

    fn roots(&mut self) -> Vec<usize> {
        (1..self.parent.len()).filter(|&x| self.parent[x] == x).collect()
    }

    fn deduce(&mut self) {
        loop {
            let mut changed = false;
            for r in self.roots() {
                for i in 0..self.pairs.len() {
                    let (a, b) = self.pairs[i];
                    let r = self.find(r);
                    let (Some(ka), Some(kb)) = (self.succ[r][a.0], self.succ[r][b.0]) else {
                        continue;
                    };
                    let (ka, kb) = (self.find(ka), self.find(kb));
                    match (self.succ[ka][b.0], self.succ[kb][a.0]) {
                        (Some(x), Some(y)) => {
                            if self.find(x) != self.find(y) {
                                self.pending.push((x, y));
                                changed = true;
                            }
                        }
                        (Some(x), None) => {
                            self.succ[kb][a.0] = Some(x);
                            changed = true;
                        }
                        (None, Some(y)) => {
                            self.succ[ka][b.0] = Some(y);
                            changed = true;
                        }
                        (None, None) => {}
                    }
                    self.process();
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn run(mut self, bound: usize) -> Result<SaturationResult> {
        let p = self.p;
        let gens: Vec<usize> = (0..p.generators.len()).map(|g| self.node(g, Vec::new())).collect();
        for r in &p.rules {
            let t = r.target.map_or(STAR_NODE, |t| gens[t]);
            self.set_succ(gens[r.generator], r.event, t);
            self.process();
        }
        for (a, b) in &p.identifications {
            let x = self.materialize(a);
            let y = self.materialize(b);
            self.pending.push((x, y));
            self.process();
        }
        self.deduce();
        'levels: for depth in 0..bound {
            let mut level: Vec<usize> = self
                .roots()
                .into_iter()
                .filter(|&x| self.term[x].1.len() == depth)
                .collect();
            level.sort_by(|&a, &b| self.key(a).cmp(&self.key(b)));
            for k in level {
                for e in p.monoid.events() {
                    if self.find(k) != k {
                        break;
                    }
                    if self.succ[k][e.0].is_none() {
                        if self.parent.len() >= MAX_NODES {
                            break 'levels;
                        }
                        self.define(k, e);
                    }
                }
            }
            self.deduce();
        }
        self.deduce();
        self.finish()
    }

    fn finish(mut self) -> Result<SaturationResult> {
        let p = self.p;
        let mut roots = self.roots();
        roots.sort_by(|&a, &b| self.key(a).cmp(&self.key(b)));
        let id: HashMap<usize, StateId> = roots
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, StateId(i)))
            .collect();
        let names: Vec<String> = roots
            .iter()
            .map(|&r| p.format_term(self.term[r].0, &self.term[r].1))
            .collect();
        let mut action = Vec::with_capacity(roots.len());
        let mut open = Vec::with_capacity(roots.len());
        let mut frontier = Vec::new();
        for &r in &roots {
            let mut row = Vec::with_capacity(p.monoid.len());
            let mut gaps = Vec::with_capacity(p.monoid.len());
            for e in p.monoid.events() {
                match self.succ[r][e.0] {
                    Some(t) => {
                        let t = self.find(t);
                        row.push(id.get(&t).copied());
                        gaps.push(false);
                    }
                    None => {
                        let (g, w) = &self.term[r];
                        let mut w = w.clone();
                        w.push(e);
                        frontier.push((
                            (p.generators[*g].clone(), p.monoid.normal_form(&w)),
                            FrontierItem {
                                state: id[&r],
                                event: e,
                                term: p.format_term(*g, &p.monoid.normal_form(&w)),
                            },
                        ));
                        row.push(None);
                        gaps.push(true);
                    }
                }
            }
            action.push(row);
            open.push(gaps);
        }
        frontier.sort_by(|a, b| a.0.cmp(&b.0));
        let class_map = (0..p.generators.len())
            .map(|g| {
                let n = self.nodes[&(g, Vec::new())];
                let r = self.find(n);
                id.get(&r).copied()
            })
            .collect();
        let representatives = roots.iter().map(|&r| self.term[r].clone()).collect();
        let status = if frontier.is_empty() {
            SaturationStatus::Exact
        } else {
            SaturationStatus::Truncated
        };
        Ok(SaturationResult {
            status,
            space: StateSpace::new(p.monoid.clone(), names, action)?,
            class_map,
            frontier: frontier.into_iter().map(|(_, f)| f).collect(),
            representatives,
            open,
        })
    }
}

/// Materialises the action presented by `p`, exploring terms whose canonical
/// trace has length at most `bound`. The result is EXACT when every class has
/// every successor, in which case it is the presented action itself.
pub fn saturate(p: &PresentedAction, bound: usize) -> Result<SaturationResult> {
    p.check()?;
    Saturator::new(p).run(bound)
}
