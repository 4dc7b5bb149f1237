/// Union-find with path halving. Roots are always the smallest index of
/// their class so that representatives are deterministic.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Odometer over `radices`, last coordinate fastest.
pub(crate) fn odometer(radices: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = radices.iter().product();
    let mut cur = vec![0usize; radices.len()];
    let mut first = true;
    let mut emitted = 0usize;
    std::iter::from_fn(move || {
        if emitted >= total {
            return None;
        }
        if !first {
            for i in (0..radices.len()).rev() {
                cur[i] += 1;
                if cur[i] < radices[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        first = false;
        emitted += 1;
        Some(cur.clone())
    })
}
