//! Reference implementations that share no code with the library's
//! algorithms: only plain data access on monoids and tables.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use tracecat::{EventId, TraceMonoid};

pub mod colimits;
pub mod systems;
pub mod universal;

/// Every word reachable from `w` by swapping adjacent independent letters.
pub fn transposition_class(m: &TraceMonoid, w: &[EventId]) -> BTreeSet<Vec<EventId>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for i in 1..v.len() {
            if m.independent(v[i - 1], v[i]) {
                let mut u = v.clone();
                u.swap(i - 1, i);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
    }
    seen
}

/// All words of length at most `max_len`, shortest first.
pub fn words(alphabet: usize, max_len: usize) -> Vec<Vec<EventId>> {
    let mut out = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * alphabet);
        for w in &level {
            for e in 0..alphabet {
                let mut v: Vec<EventId> = w.clone();
                v.push(EventId(e));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Congruence on a pointed set `{*} ∪ 0..n` generated by `pairs` under the
/// partial maps `step(x, e)` (None is `*`, which is absorbing). Computed as a
/// relation matrix closed under symmetry, transitivity and steps until
/// nothing changes.
///
/// Returns, per element, the least element of its class, or None when the
/// class contains `*`.
pub fn congruence_closure(
    n: usize,
    events: usize,
    step: impl Fn(usize, usize) -> Option<usize>,
    pairs: &[(Option<usize>, Option<usize>)],
) -> Vec<Option<usize>> {
    // index 0 is *, element x is x + 1
    let idx = |p: Option<usize>| p.map_or(0, |x| x + 1);
    let size = n + 1;
    let mut rel = vec![vec![false; size]; size];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        rel[idx(a)][idx(b)] = true;
        rel[idx(b)][idx(a)] = true;
    }
    loop {
        let mut changed = false;
        for k in 0..size {
            for i in 0..size {
                if !rel[i][k] {
                    continue;
                }
                for j in 0..size {
                    if rel[k][j] && !rel[i][j] {
                        rel[i][j] = true;
                        changed = true;
                    }
                }
            }
        }
        for i in 0..size {
            for j in 0..size {
                if !rel[i][j] {
                    continue;
                }
                for e in 0..events {
                    let si = if i == 0 { 0 } else { idx(step(i - 1, e)) };
                    let sj = if j == 0 { 0 } else { idx(step(j - 1, e)) };
                    if !rel[si][sj] {
                        rel[si][sj] = true;
                        rel[sj][si] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..n)
        .map(|x| {
            if rel[x + 1][0] {
                None
            } else {
                (0..n).find(|&y| rel[x + 1][y + 1])
            }
        })
        .collect()
}

/// Two labelings describe the same partition (None compared as a class).
pub fn same_partition<A: PartialEq + Copy, B: PartialEq + Copy>(x: &[Option<A>], y: &[Option<B>]) -> bool {
    x.len() == y.len()
        && (0..x.len()).all(|i| {
            (x[i].is_none() == y[i].is_none())
                && (0..x.len()).all(|j| (x[i].is_some() && x[i] == x[j]) == (y[i].is_some() && y[i] == y[j]))
        })
}

/// Five events with independence e–a, e–d, e–c, c–b, c–d.
pub fn five_events() -> TraceMonoid {
    TraceMonoid::new(
        &["a", "b", "c", "d", "e"],
        &[("e", "a"), ("e", "d"), ("e", "c"), ("c", "b"), ("c", "d")],
    )
    .unwrap()
}
