//! Isomorphism search by backtracking over event bijections, then state
//! bijections propagated along the action.

use super::{StateId, StateSpace};
use crate::error::{Error, Result};
use crate::trace::{EventId, TraceMonoid};

pub const MAX_ISO_EVENTS: usize = 8;
pub const MAX_ISO_STATES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub events: Vec<EventId>,
    pub states: Vec<StateId>,
}

fn degree(m: &TraceMonoid, e: EventId) -> usize {
    m.events().filter(|&f| m.independent(e, f)).count()
}

/// Calls `visit` on each event bijection preserving independence both ways
/// until it returns true.
fn event_bijections(
    m1: &TraceMonoid,
    m2: &TraceMonoid,
    visit: &mut dyn FnMut(&[EventId]) -> bool,
) -> bool {
    if m1.len() != m2.len() {
        return false;
    }
    let d1: Vec<usize> = m1.events().map(|e| degree(m1, e)).collect();
    let d2: Vec<usize> = m2.events().map(|e| degree(m2, e)).collect();
    let mut image = Vec::with_capacity(m1.len());
    let mut used = vec![false; m2.len()];

    fn go(
        m1: &TraceMonoid,
        m2: &TraceMonoid,
        d1: &[usize],
        d2: &[usize],
        image: &mut Vec<EventId>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[EventId]) -> bool,
    ) -> bool {
        let i = image.len();
        if i == m1.len() {
            return visit(image);
        }
        for j in 0..m2.len() {
            if used[j] || d1[i] != d2[j] {
                continue;
            }
            let consistent = image
                .iter()
                .enumerate()
                .all(|(k, &im)| m1.independent(EventId(k), EventId(i)) == m2.independent(im, EventId(j)));
            if !consistent {
                continue;
            }
            used[j] = true;
            image.push(EventId(j));
            if go(m1, m2, d1, d2, image, used, visit) {
                return true;
            }
            image.pop();
            used[j] = false;
        }
        false
    }
    go(m1, m2, &d1, &d2, &mut image, &mut used, visit)
}

/// An event bijection carrying the independence relation onto the other one.
pub fn monoid_isomorphism(m1: &TraceMonoid, m2: &TraceMonoid) -> Option<Vec<EventId>> {
    let mut found = None;
    event_bijections(m1, m2, &mut |pi| {
        found = Some(pi.to_vec());
        true
    });
    found
}

fn extend_states(
    s1: &StateSpace,
    s2: &StateSpace,
    pi: &[EventId],
    map: &mut Vec<Option<StateId>>,
    inv: &mut Vec<Option<StateId>>,
) -> bool {
    let Some(x) = (0..s1.len()).find(|&x| map[x].is_none()) else {
        return true;
    };
    for y in 0..s2.len() {
        if inv[y].is_some() {
            continue;
        }
        let (saved_map, saved_inv) = (map.clone(), inv.clone());
        if propagate(s1, s2, pi, map, inv, StateId(x), StateId(y))
            && extend_states(s1, s2, pi, map, inv)
        {
            return true;
        }
        *map = saved_map;
        *inv = saved_inv;
    }
    false
}

fn propagate(
    s1: &StateSpace,
    s2: &StateSpace,
    pi: &[EventId],
    map: &mut [Option<StateId>],
    inv: &mut [Option<StateId>],
    x: StateId,
    y: StateId,
) -> bool {
    let mut queue = vec![(x, y)];
    map[x.0] = Some(y);
    inv[y.0] = Some(x);
    while let Some((x, y)) = queue.pop() {
        for e in s1.monoid().events() {
            match (s1.act(Some(x), e), s2.act(Some(y), pi[e.0])) {
                (None, None) => {}
                (Some(x2), Some(y2)) => match (map[x2.0], inv[y2.0]) {
                    (Some(m), _) if m != y2 => return false,
                    (None, Some(_)) => return false,
                    (None, None) => {
                        map[x2.0] = Some(y2);
                        inv[y2.0] = Some(x2);
                        queue.push((x2, y2));
                    }
                    _ => {}
                },
                _ => return false,
            }
        }
    }
    true
}

/// Searches for an isomorphism of state spaces: an event bijection preserving
/// independence and a state bijection commuting with the action. Bounded to
/// small instances.
pub fn is_isomorphic(s1: &StateSpace, s2: &StateSpace) -> Result<Option<Isomorphism>> {
    for s in [s1, s2] {
        if s.monoid().len() > MAX_ISO_EVENTS || s.len() > MAX_ISO_STATES {
            return Err(Error::SizeLimit(format!(
                "isomorphism search is limited to {MAX_ISO_EVENTS} events and {MAX_ISO_STATES} states"
            )));
        }
    }
    if s1.len() != s2.len() {
        return Ok(None);
    }
    let mut found = None;
    event_bijections(s1.monoid(), s2.monoid(), &mut |pi| {
        let mut map = vec![None; s1.len()];
        let mut inv = vec![None; s2.len()];
        if extend_states(s1, s2, pi, &mut map, &mut inv) {
            found = Some(Isomorphism {
                events: pi.to_vec(),
                states: map.into_iter().map(|s| s.expect("total")).collect(),
            });
            true
        } else {
            false
        }
    });
    Ok(found)
}
