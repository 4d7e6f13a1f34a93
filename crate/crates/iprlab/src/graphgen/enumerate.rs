//! Exhaustive, isomorphism-free enumeration of connected z-regular graphs by orderly
//! generation.
//!
//! The canonical labeling of a graph is the one maximizing the upper-triangle adjacency
//! bit-string read column by column. The search introduces vertices one at a time, each new
//! vertex choosing its back-neighbors in increasing order, so after column v the decided
//! entries form literally the prefix of that string. A prefix with a strictly larger
//! relabeling over its own vertices cannot extend to a canonical graph (pad the relabeling
//! with the identity: the first difference stays inside the prefix), so such branches are
//! cut immediately, and by the same argument every prefix of a canonical labeling survives.
//! The test at the final column is the full canonicity test, hence each isomorphism class
//! yields exactly one accepted leaf. Degree-feasibility bounds and rejection of fully
//! saturated proper components (which no completion can reconnect) prune the rest.

use super::RegularGraph;
use crate::error::{Error, Result};

/// All connected z-regular graphs on n vertices, one canonical representative per
/// isomorphism class.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub n: usize,
    pub z: usize,
    pub graphs: Vec<RegularGraph>,
    pub count: usize,
}

fn budget_max_n(z: usize) -> usize {
    // caps keep the worst cell under a few seconds; sparse degrees saturate earlier because
    // their prefix blocks are path unions with factorially many automorphisms, which the
    // relabeling search walks in full
    match z {
        1 | 2 => 20,
        3 => 16,
        4 => 11,
        _ => 10,
    }
}

pub fn enumerate_connected_regular(n: usize, z: usize) -> Result<EnumerationResult> {
    if n == 0 || z == 0 || z >= n {
        return Err(Error::InvalidSpec(format!(
            "enumeration needs 1 <= z < n, got n={} z={}",
            n, z
        )));
    }
    if !(n * z).is_multiple_of(2) {
        return Err(Error::InvalidSpec(format!(
            "n*z = {}*{} is odd; no regular graph exists",
            n, z
        )));
    }
    let cap = budget_max_n(z);
    if n > cap {
        return Err(Error::Budget(format!(
            "enumeration budget allows n <= {} for z = {}, got n = {}",
            cap, z, n
        )));
    }
    let mut search = Search {
        n,
        z: z as u8,
        masks: vec![0; n],
        deg: vec![0; n],
        placed_adj: vec![0; n],
        used: 0,
        found: Vec::new(),
    };
    search.extend(1);
    let mut graphs = Vec::with_capacity(search.found.len());
    for masks in &search.found {
        let neighbors: Vec<Vec<u32>> = masks
            .iter()
            .map(|&m| (0..n as u32).filter(|&w| m >> w & 1 == 1).collect())
            .collect();
        graphs.push(RegularGraph::from_neighbors(n, z, neighbors)?);
    }
    let count = graphs.len();
    Ok(EnumerationResult { n, z, graphs, count })
}

struct Search {
    n: usize,
    z: u8,
    masks: Vec<u64>,
    deg: Vec<u8>,
    /// Scratch for the relabeling DFS: placed_adj[u] has bit i set when the vertex placed at
    /// position i is adjacent to u, so a candidate's column pattern is read off in O(1).
    placed_adj: Vec<u64>,
    used: u64,
    found: Vec<Vec<u64>>,
}

impl Search {
    /// Decide the back-neighbors of vertex v, all columns below v being fixed.
    fn extend(&mut self, v: usize) {
        if v == self.n {
            debug_assert!(self.deg.iter().all(|&d| d == self.z));
            if self.is_connected() {
                self.found.push(self.masks.clone());
            }
            return;
        }
        self.choose_back(v, 0);
    }

    /// Extend the back-neighbor set of v with vertices >= from, or close the column.
    fn choose_back(&mut self, v: usize, from: usize) {
        if self.column_viable(v) {
            self.extend(v + 1);
        }
        if self.deg[v] < self.z {
            for w in from..v {
                if self.deg[w] >= self.z {
                    continue;
                }
                self.masks[v] |= 1 << w;
                self.masks[w] |= 1 << v;
                self.deg[v] += 1;
                self.deg[w] += 1;
                self.choose_back(v, w + 1);
                self.masks[v] &= !(1 << w);
                self.masks[w] &= !(1 << v);
                self.deg[v] -= 1;
                self.deg[w] -= 1;
            }
        }
    }

    /// Can the block on vertices 0..=v, taken as final, extend to a canonical connected
    /// z-regular completion?
    fn column_viable(&mut self, v: usize) -> bool {
        let tail = self.n - 1 - v;
        let mut stubs = 0usize;
        for u in 0..=v {
            let miss = (self.z - self.deg[u]) as usize;
            // each future vertex can host at most one edge to u
            if miss > tail {
                return false;
            }
            stubs += miss;
        }
        // the tail's capacity must cover the open stubs, with matching parity for the
        // edges the tail keeps to itself
        let capacity = tail * self.z as usize;
        if stubs > capacity || !(capacity - stubs).is_multiple_of(2) {
            return false;
        }
        if self.deg[v] == self.z && self.sealed_component(v) {
            return false;
        }
        v == 0 || !self.larger_relabeling_exists(v + 1)
    }

    /// True when the component of `v` is complete (every member saturated) but proper.
    fn sealed_component(&self, v: usize) -> bool {
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.masks[u] & !comp;
            }
            comp |= next;
            frontier = next;
        }
        if comp.count_ones() as usize == self.n {
            return false;
        }
        let mut c = comp;
        while c != 0 {
            let u = c.trailing_zeros() as usize;
            c &= c - 1;
            if self.deg[u] < self.z {
                return false;
            }
        }
        true
    }

    fn is_connected(&self) -> bool {
        let mut comp = 1u64;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.masks[u] & !comp;
            }
            comp |= next;
            frontier = next;
        }
        comp.count_ones() as usize == self.n
    }

    /// Does some permutation of the first `head` vertices make the decided prefix of the
    /// adjacency string strictly larger?
    ///
    /// A branch survives only while its columns match the original exactly, so a candidate
    /// is vetted by one XOR of its placed-adjacency mask against the original column; the
    /// lowest differing bit decides larger/smaller. Reaching full depth means the
    /// permutation is an automorphism of the block, not an improvement.
    fn larger_relabeling_exists(&mut self, head: usize) -> bool {
        debug_assert!(self.used == 0);
        self.assign(head, 0)
    }

    fn assign(&mut self, head: usize, depth: usize) -> bool {
        if depth == head {
            return false;
        }
        let pattern = self.masks[depth] & low_bits(depth);
        for cand in 0..head {
            if self.used >> cand & 1 == 1 {
                continue;
            }
            let diff = self.placed_adj[cand] ^ pattern;
            if diff != 0 {
                if self.placed_adj[cand] >> diff.trailing_zeros() & 1 == 1 {
                    return true;
                }
                continue;
            }
            self.used |= 1 << cand;
            let mut m = self.masks[cand];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                self.placed_adj[w] |= 1 << depth;
            }
            let deeper = self.assign(head, depth + 1);
            let mut m = self.masks[cand];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                self.placed_adj[w] &= !(1 << depth);
            }
            self.used &= !(1 << cand);
            if deeper {
                return true;
            }
        }
        false
    }
}

fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}
