//! References for weak asynchronous systems read straight off their tables.

use tracecat::{EventId, StateId, SystemMorphism, WeakAsyncSystem};

/// σ(x·e) = σ(x)·η(e) for every pointed state and event, read off the tables.
pub fn equivariant_by_tables(f: &SystemMorphism) -> bool {
    let (a, b) = (f.source(), f.target());
    let sigma = |p: Option<StateId>| p.and_then(|s| f.state_map()[s.0]);
    let mut points = vec![None];
    points.extend((0..a.states().len()).map(|i| Some(StateId(i))));
    for &x in &points {
        for e in 0..a.monoid().len() {
            let left = sigma(a.step(x, EventId(e)));
            let right = match f.event_map()[e] {
                Some(fe) => b.step(sigma(x), fe),
                None => sigma(x),
            };
            if left != right {
                return false;
            }
        }
    }
    true
}

pub fn system_is_valid(a: &WeakAsyncSystem) -> bool {
    WeakAsyncSystem::diagnose(a.monoid(), a.states(), &a.transitions()).is_empty() && a.space().validate().is_empty()
}

