//! Limits and colimits in FPCM (trace monoids with basic homomorphisms) and
//! in its subcategory FPCM^‖ of independence-preserving homomorphisms.
//!
//! Generated names are deterministic: product generators are tuples such as
//! `(a,*,b)`, coproduct generators are tagged `tag:e`, and a quotient class
//! with several members is written `{a,b}` (a singleton keeps its name).

mod adjoint;
mod relation;

use std::collections::HashMap;
use std::fmt;

pub use adjoint::{right_adjoint, FiniteMonoid, RightAdjoint};
pub use relation::{
    from_com_rel, from_ind_rel, to_com_rel, to_ind_rel, ComRelView, IndRelView, Pointed,
    PointedRelation,
};

use crate::diagram::{Diagram, DiagramArrow};
use crate::error::{Error, Result};
use crate::hom::BasicHom;
use crate::trace::{EventId, TraceMonoid};
use crate::util::{odometer, UnionFind};

/// Upper bound on generated alphabets (the independence table is quadratic).
pub const MAX_GENERATORS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CategoryFlag {
    /// All basic homomorphisms.
    Fpcm,
    /// Independence-preserving basic homomorphisms only.
    #[default]
    FpcmPar,
}

impl CategoryFlag {
    pub fn admits(self, h: &BasicHom) -> bool {
        match self {
            CategoryFlag::Fpcm => true,
            CategoryFlag::FpcmPar => h.is_independence_preserving(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CategoryFlag::Fpcm => "fpcm",
            CategoryFlag::FpcmPar => "fpcm-par",
        }
    }

    fn require(self, h: &BasicHom) -> Result<()> {
        match self {
            CategoryFlag::Fpcm => Ok(()),
            CategoryFlag::FpcmPar => h.ensure_independence_preserving(),
        }
    }
}

impl fmt::Display for CategoryFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl DiagramArrow for BasicHom {
    type Object = TraceMonoid;

    fn dom(&self) -> &TraceMonoid {
        self.source()
    }

    fn cod(&self) -> &TraceMonoid {
        self.target()
    }

    fn independence_preserving(&self) -> bool {
        self.is_independence_preserving()
    }
}

pub type MonoidDiagram = Diagram<TraceMonoid, BasicHom>;

/// Apex with legs out of it.
#[derive(Debug, Clone, PartialEq)]
pub struct MonoidCone {
    pub apex: TraceMonoid,
    pub legs: Vec<BasicHom>,
}

/// Apex with legs into it.
#[derive(Debug, Clone, PartialEq)]
pub struct MonoidCocone {
    pub apex: TraceMonoid,
    pub legs: Vec<BasicHom>,
}

impl MonoidCone {
    /// The mediating morphism `test -> apex` for a cone with the given legs.
    /// Each test generator goes to the apex generator (or the identity) that
    /// every leg sends to the prescribed image.
    pub fn factor(&self, test: &TraceMonoid, legs: &[BasicHom]) -> Result<BasicHom> {
        if legs.len() != self.legs.len() {
            return Err(Error::NoFactorization("leg count differs".into()));
        }
        for (mine, theirs) in self.legs.iter().zip(legs) {
            if theirs.source() != test || theirs.target() != mine.target() {
                return Err(Error::MonoidMismatch);
            }
        }
        let candidates: Vec<Option<EventId>> = std::iter::once(None)
            .chain(self.apex.events().map(Some))
            .collect();
        let mut image = Vec::with_capacity(test.len());
        for e in test.events() {
            let hit = candidates.iter().copied().find(|&x| {
                self.legs
                    .iter()
                    .zip(legs)
                    .all(|(mine, theirs)| x.and_then(|x| mine.at(x)) == theirs.at(e))
            });
            match hit {
                Some(x) => image.push(x),
                None => {
                    return Err(Error::NoFactorization(format!(
                        "no apex generator over `{}`",
                        test.name(e)
                    )))
                }
            }
        }
        BasicHom::new(test.clone(), self.apex.clone(), image)
    }
}

impl MonoidCocone {
    /// The mediating morphism `apex -> test` for a cocone with the given legs.
    pub fn factor(&self, test: &TraceMonoid, legs: &[BasicHom]) -> Result<BasicHom> {
        if legs.len() != self.legs.len() {
            return Err(Error::NoFactorization("leg count differs".into()));
        }
        let mut image: Vec<Option<Option<EventId>>> = vec![None; self.apex.len()];
        for (mine, theirs) in self.legs.iter().zip(legs) {
            if theirs.source() != mine.source() || theirs.target() != test {
                return Err(Error::MonoidMismatch);
            }
            for e in mine.source().events() {
                match mine.at(e) {
                    None if theirs.at(e).is_some() => {
                        return Err(Error::NoFactorization(format!(
                            "`{}` is erased by the colimit but not by the test cocone",
                            mine.source().name(e)
                        )))
                    }
                    None => {}
                    Some(k) => {
                        let want = theirs.at(e);
                        match image[k.0] {
                            None => image[k.0] = Some(want),
                            Some(have) if have != want => {
                                return Err(Error::NoFactorization(format!(
                                    "class `{}` has conflicting images",
                                    self.apex.name(k)
                                )))
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                v.ok_or_else(|| {
                    Error::NoFactorization(format!(
                        "class `{}` is not reached by any leg",
                        self.apex.name(EventId(k))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        BasicHom::new(self.apex.clone(), test.clone(), image)
    }
}

/// A product together with the coordinates of each generated tuple.
#[derive(Debug, Clone)]
pub(crate) struct ProductTable {
    pub cone: MonoidCone,
    tuples: Vec<Vec<Option<EventId>>>,
    lookup: HashMap<Vec<Option<EventId>>, EventId>,
}

impl ProductTable {
    /// Generator of the apex with these coordinates (`None` for the all-star tuple).
    pub fn generator(&self, coords: &[Option<EventId>]) -> Option<EventId> {
        if coords.iter().all(Option::is_none) {
            None
        } else {
            Some(self.lookup[coords])
        }
    }

    pub fn coords(&self, e: EventId) -> &[Option<EventId>] {
        &self.tuples[e.0]
    }
}

pub(crate) fn tuple_name<'a>(parts: impl Iterator<Item = Option<&'a str>>) -> String {
    let inner: Vec<&str> = parts.map(|p| p.unwrap_or("*")).collect();
    format!("({})", inner.join(","))
}

pub(crate) fn product_table(factors: &[TraceMonoid], flag: CategoryFlag) -> Result<ProductTable> {
    let radices: Vec<usize> = factors.iter().map(|m| m.len() + 1).collect();
    let count = radices
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r))
        .unwrap_or(usize::MAX);
    if count - 1 > MAX_GENERATORS {
        return Err(Error::SizeLimit(format!(
            "product would have {} generators",
            count - 1
        )));
    }
    // coordinate 0 is the basepoint, k is event k-1
    let tuples: Vec<Vec<Option<EventId>>> = odometer(&radices)
        .filter(|c| c.iter().any(|&k| k != 0))
        .map(|c| {
            c.into_iter()
                .map(|k| if k == 0 { None } else { Some(EventId(k - 1)) })
                .collect()
        })
        .collect();
    let names: Vec<String> = tuples
        .iter()
        .map(|t| tuple_name(t.iter().zip(factors).map(|(c, m)| c.map(|e| m.name(e)))))
        .collect();
    let related = |x: &[Option<EventId>], y: &[Option<EventId>]| {
        x.iter().zip(y).zip(factors).all(|((&a, &b), m)| match (a, b) {
            (Some(a), Some(b)) => match flag {
                CategoryFlag::Fpcm => a == b || m.independent(a, b),
                CategoryFlag::FpcmPar => m.independent(a, b),
            },
            _ => true,
        })
    };
    let mut pairs = Vec::new();
    for i in 0..tuples.len() {
        for j in (i + 1)..tuples.len() {
            if related(&tuples[i], &tuples[j]) {
                pairs.push((EventId(i), EventId(j)));
            }
        }
    }
    let apex = TraceMonoid::from_ids(names, pairs)?;
    let legs = factors
        .iter()
        .enumerate()
        .map(|(j, m)| BasicHom::new(apex.clone(), m.clone(), tuples.iter().map(|t| t[j]).collect()))
        .collect::<Result<Vec<_>>>()?;
    let lookup = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), EventId(i)))
        .collect();
    Ok(ProductTable {
        cone: MonoidCone { apex, legs },
        tuples,
        lookup,
    })
}

/// Product with its projections. In FPCM the generators are the non-basepoint
/// tuples of `∏ E_j*` related by the product of the commutativity relations;
/// in FPCM^‖ the product of the partial independence relations is used.
pub fn product(factors: &[TraceMonoid], flag: CategoryFlag) -> Result<MonoidCone> {
    Ok(product_table(factors, flag)?.cone)
}

fn check_parallel(f: &BasicHom, g: &BasicHom) -> Result<()> {
    if f.source() != g.source() || f.target() != g.target() {
        Err(Error::NotParallel)
    } else {
        Ok(())
    }
}

/// Submonoid generated by `{e | f(e) = g(e)}`, with its inclusion. The same
/// object serves both categories.
pub fn equalizer(f: &BasicHom, g: &BasicHom, flag: CategoryFlag) -> Result<MonoidCone> {
    check_parallel(f, g)?;
    flag.require(f)?;
    flag.require(g)?;
    let src = f.source();
    let kept: Vec<EventId> = src.events().filter(|&e| f.at(e) == g.at(e)).collect();
    let position: HashMap<EventId, EventId> = kept
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, EventId(i)))
        .collect();
    let names = kept.iter().map(|&e| src.name(e).to_string()).collect();
    let pairs = src.independent_pairs().into_iter().filter_map(|(a, b)| {
        Some((*position.get(&a)?, *position.get(&b)?))
    });
    let apex = TraceMonoid::from_ids(names, pairs)?;
    let inclusion = BasicHom::new(apex.clone(), src.clone(), kept.into_iter().map(Some).collect())?;
    Ok(MonoidCone {
        apex,
        legs: vec![inclusion],
    })
}

/// Coproduct with summands tagged by the given labels (`tag:e`).
pub fn coproduct_tagged(summands: &[(String, TraceMonoid)]) -> Result<MonoidCocone> {
    let mut names = Vec::new();
    let mut pairs = Vec::new();
    let mut offsets = Vec::with_capacity(summands.len());
    for (tag, m) in summands {
        let off = names.len();
        offsets.push(off);
        names.extend(m.names().iter().map(|n| format!("{tag}:{n}")));
        pairs.extend(
            m.independent_pairs()
                .into_iter()
                .map(|(a, b)| (EventId(a.0 + off), EventId(b.0 + off))),
        );
    }
    let apex = TraceMonoid::from_ids(names, pairs)?;
    let legs = summands
        .iter()
        .zip(offsets)
        .map(|((_, m), off)| {
            BasicHom::new(m.clone(), apex.clone(), m.events().map(|e| Some(EventId(e.0 + off))).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonoidCocone { apex, legs })
}

/// Coproduct tagged by position (`0:e`, `1:e`, ...). It is the coproduct in
/// both FPCM and FPCM^‖: injections are independence preserving.
pub fn coproduct(summands: &[TraceMonoid]) -> Result<MonoidCocone> {
    let tagged: Vec<(String, TraceMonoid)> = summands
        .iter()
        .enumerate()
        .map(|(i, m)| (i.to_string(), m.clone()))
        .collect();
    coproduct_tagged(&tagged)
}

/// Builds the quotient of `target` whose generators are the given classes
/// (`class_of[e] = None` erases `e`). Distinct classes are independent when
/// some pair of representatives is.
fn quotient(target: &TraceMonoid, class_of: &[Option<usize>], names: Vec<String>) -> Result<MonoidCocone> {
    let k = names.len();
    let mut ind = vec![false; k * k];
    for (a, b) in target.independent_pairs() {
        if let (Some(x), Some(y)) = (class_of[a.0], class_of[b.0]) {
            if x != y {
                ind[x * k + y] = true;
                ind[y * k + x] = true;
            }
        }
    }
    let pairs = (0..k).flat_map(|x| ((x + 1)..k).map(move |y| (x, y)));
    let pairs: Vec<_> = pairs
        .filter(|&(x, y)| ind[x * k + y])
        .map(|(x, y)| (EventId(x), EventId(y)))
        .collect();
    let apex = TraceMonoid::from_ids(names, pairs)?;
    let leg = BasicHom::new(
        target.clone(),
        apex.clone(),
        class_of.iter().map(|c| c.map(EventId)).collect(),
    )?;
    Ok(MonoidCocone {
        apex,
        legs: vec![leg],
    })
}

fn class_name(m: &TraceMonoid, members: &[EventId]) -> String {
    if let [only] = members {
        m.name(*only).to_string()
    } else {
        let parts: Vec<&str> = members.iter().map(|&e| m.name(e)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Coequalizer in FPCM: target generators modulo `f(e) ~ g(e)`, where the
/// identity is a class of its own and everything equated with it is erased.
pub fn coequalizer_fpcm(f: &BasicHom, g: &BasicHom) -> Result<MonoidCocone> {
    check_parallel(f, g)?;
    let tgt = f.target();
    let unit = tgt.len();
    let mut uf = UnionFind::new(unit + 1);
    for e in f.source().events() {
        let x = f.at(e).map_or(unit, |x| x.0);
        let y = g.at(e).map_or(unit, |y| y.0);
        uf.union(x, y);
    }
    let unit_root = uf.find(unit);
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut members: Vec<Vec<EventId>> = Vec::new();
    let mut class_of = vec![None; tgt.len()];
    for e in tgt.events() {
        let r = uf.find(e.0);
        if r == unit_root {
            continue;
        }
        let c = *root_class.entry(r).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[c].push(e);
        class_of[e.0] = Some(c);
    }
    let names = members.iter().map(|ms| class_name(tgt, ms)).collect();
    quotient(tgt, &class_of, names)
}

/// Coequalizer in FPCM^‖: the FPCM coequalizer, further erasing every class
/// that receives two independent generators.
pub fn coequalizer_ip(f: &BasicHom, g: &BasicHom) -> Result<MonoidCocone> {
    check_parallel(f, g)?;
    f.ensure_independence_preserving()?;
    g.ensure_independence_preserving()?;
    let base = coequalizer_fpcm(f, g)?;
    kill_collapsed(&base)
}

/// Applies the `≡_h` fixpoint to a single-leg FPCM coequalizer.
pub(crate) fn kill_collapsed(base: &MonoidCocone) -> Result<MonoidCocone> {
    let h = &base.legs[0];
    let tgt = h.source();
    let mut image: Vec<Option<EventId>> = h.image().to_vec();
    loop {
        let dead: Vec<EventId> = tgt
            .independent_pairs()
            .into_iter()
            .filter_map(|(a, b)| match (image[a.0], image[b.0]) {
                (Some(x), Some(y)) if x == y => Some(x),
                _ => None,
            })
            .collect();
        if dead.is_empty() {
            break;
        }
        for slot in image.iter_mut() {
            if slot.is_some_and(|c| dead.contains(&c)) {
                *slot = None;
            }
        }
    }
    let survivors: Vec<EventId> = base
        .apex
        .events()
        .filter(|c| image.contains(&Some(*c)))
        .collect();
    let renumber: HashMap<EventId, usize> = survivors.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let class_of: Vec<Option<usize>> = image.iter().map(|c| c.map(|c| renumber[&c])).collect();
    let names = survivors.iter().map(|&c| base.apex.name(c).to_string()).collect();
    quotient(tgt, &class_of, names)
}

pub fn coequalizer(f: &BasicHom, g: &BasicHom, flag: CategoryFlag) -> Result<MonoidCocone> {
    match flag {
        CategoryFlag::Fpcm => coequalizer_fpcm(f, g),
        CategoryFlag::FpcmPar => coequalizer_ip(f, g),
    }
}

/// Limit as the equalizer of the two canonical maps from the product over
/// objects to the product over arrow codomains.
pub fn limit(d: &MonoidDiagram, flag: CategoryFlag) -> Result<MonoidCone> {
    d.check(flag)?;
    let objects = product_table(&d.objects, flag)?;
    let codomains: Vec<TraceMonoid> = (0..d.arrows.len())
        .map(|a| d.objects[d.shape.endpoints(a).1].clone())
        .collect();
    let arrows = product_table(&codomains, flag)?;
    let p = &objects.cone;
    let mut along = Vec::with_capacity(p.apex.len());
    let mut direct = Vec::with_capacity(p.apex.len());
    for x in p.apex.events() {
        let coords = objects.coords(x);
        let mut u = Vec::with_capacity(d.arrows.len());
        let mut v = Vec::with_capacity(d.arrows.len());
        for (a, hom) in d.arrows.iter().enumerate() {
            let (s, t) = d.shape.endpoints(a);
            u.push(coords[s].and_then(|e| hom.at(e)));
            v.push(coords[t]);
        }
        along.push(arrows.generator(&u));
        direct.push(arrows.generator(&v));
    }
    let q = &arrows.cone.apex;
    let u = BasicHom::new(p.apex.clone(), q.clone(), along)?;
    let v = BasicHom::new(p.apex.clone(), q.clone(), direct)?;
    let eq = equalizer(&u, &v, flag)?;
    let incl = &eq.legs[0];
    let legs = p
        .legs
        .iter()
        .map(|pi| pi.compose(incl))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonoidCone { apex: eq.apex, legs })
}

/// Colimit as the coequalizer of the two canonical maps from the coproduct
/// over arrow domains to the coproduct over objects.
pub fn colimit(d: &MonoidDiagram, flag: CategoryFlag) -> Result<MonoidCocone> {
    d.check(flag)?;
    let objects = coproduct_tagged(
        &d.shape
            .objects
            .iter()
            .cloned()
            .zip(d.objects.iter().cloned())
            .collect::<Vec<_>>(),
    )?;
    let domains: Vec<(String, TraceMonoid)> = d
        .shape
        .arrows
        .iter()
        .enumerate()
        .map(|(a, spec)| (spec.name.clone(), d.objects[d.shape.endpoints(a).0].clone()))
        .collect();
    let arrows = coproduct_tagged(&domains)?;
    let mut along = Vec::with_capacity(arrows.apex.len());
    let mut direct = Vec::with_capacity(arrows.apex.len());
    for (a, hom) in d.arrows.iter().enumerate() {
        let (s, t) = d.shape.endpoints(a);
        for e in hom.source().events() {
            along.push(hom.at(e).and_then(|x| objects.legs[t].at(x)));
            direct.push(objects.legs[s].at(e));
        }
    }
    let c = &objects.apex;
    let f = BasicHom::new(arrows.apex.clone(), c.clone(), along)?;
    let g = BasicHom::new(arrows.apex.clone(), c.clone(), direct)?;
    let coeq = coequalizer(&f, &g, flag)?;
    let q = &coeq.legs[0];
    let legs = objects
        .legs
        .iter()
        .map(|inj| q.compose(inj))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonoidCocone { apex: coeq.apex, legs })
}
