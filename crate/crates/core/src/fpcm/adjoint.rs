//! The right adjoint `R: Mon -> FPCM` to the inclusion, on finite monoids.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hom::BasicHom;
use crate::trace::{EventId, Trace, TraceMonoid};

/// Largest carrier accepted by [`FiniteMonoid::new`].
pub const MAX_CARRIER: usize = 64;

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteMonoid {
    /// `table[i][j]` names the product `elements[i] * elements[j]`.
    pub fn new<S: AsRef<str>>(elements: &[S], table: &[Vec<S>]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let n = elements.len();
        if n == 0 {
            return Err(Error::NotAMonoid("empty carrier".into()));
        }
        if n > MAX_CARRIER {
            return Err(Error::SizeLimit(format!("carrier of size {n} exceeds {MAX_CARRIER}")));
        }
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(Error::DuplicateEvent(e.clone()));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::NotAMonoid(format!("table is not {n}x{n}")));
        }
        let table = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        index
                            .get(s.as_ref())
                            .copied()
                            .ok_or_else(|| Error::NotAMonoid(format!("unknown element `{}`", s.as_ref())))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(elements, table)
    }

    pub fn from_indices(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::NotAMonoid(format!(
                            "({}{}){} != {}({}{})",
                            elements[i], elements[j], elements[k], elements[i], elements[j], elements[k]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&u| (0..n).all(|x| table[u][x] == x && table[x][u] == x))
            .ok_or_else(|| Error::NotAMonoid("no two-sided identity".into()))?;
        Ok(FiniteMonoid {
            elements,
            table,
            identity,
        })
    }

    /// `Z/n` written additively with elements `0..n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_indices(elements, table)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// Evaluates the monoid homomorphism `M(E, I) -> self` determined by
    /// generator images on a trace.
    pub fn evaluate(&self, images: &[usize], t: &Trace) -> usize {
        t.word()
            .iter()
            .fold(self.identity, |acc, e| self.mul(acc, images[e.0]))
    }

    /// Generator images define a homomorphism iff images of independent
    /// generators commute.
    pub fn is_hom_assignment(&self, source: &TraceMonoid, images: &[usize]) -> bool {
        images.len() == source.len()
            && source.independent_pairs().into_iter().all(|(a, b)| {
                let (x, y) = (images[a.0], images[b.0]);
                self.mul(x, y) == self.mul(y, x)
            })
    }
}

/// `R(M) = M(M \ {1}, I_M)` with the counit `ε(μ) = μ` on generators.
#[derive(Debug, Clone)]
pub struct RightAdjoint {
    pub monoid: TraceMonoid,
    /// Carrier element assigned to each generator of `monoid`.
    pub counit: Vec<usize>,
    pub carrier: FiniteMonoid,
}

pub fn right_adjoint(carrier: &FiniteMonoid) -> RightAdjoint {
    let counit: Vec<usize> = (0..carrier.len()).filter(|&x| x != carrier.identity()).collect();
    let names = counit.iter().map(|&x| carrier.elements()[x].clone()).collect();
    let mut pairs = Vec::new();
    for (i, &x) in counit.iter().enumerate() {
        for (j, &y) in counit.iter().enumerate().skip(i + 1) {
            if carrier.mul(x, y) == carrier.mul(y, x) {
                pairs.push((EventId(i), EventId(j)));
            }
        }
    }
    let monoid = TraceMonoid::from_ids(names, pairs).expect("carrier names are distinct");
    RightAdjoint {
        monoid,
        counit,
        carrier: carrier.clone(),
    }
}

impl RightAdjoint {
    pub fn counit_on(&self, t: &Trace) -> usize {
        self.carrier.evaluate(&self.counit, t)
    }

    /// The unique basic homomorphism `f̄` with `ε ∘ f̄ = f`, where `f` is
    /// given by generator images.
    pub fn lift(&self, source: &TraceMonoid, images: &[usize]) -> Result<BasicHom> {
        if !self.carrier.is_hom_assignment(source, images) {
            return Err(Error::NoFactorization(
                "images of independent generators do not commute".into(),
            ));
        }
        let image = images
            .iter()
            .map(|&x| {
                if x == self.carrier.identity() {
                    None
                } else {
                    self.counit.iter().position(|&c| c == x).map(EventId)
                }
            })
            .collect();
        BasicHom::new(source.clone(), self.monoid.clone(), image)
    }
}
