//! Random z-regular graphs via the pairing (configuration) model with suitable-pair
//! selection, plus exhaustive isomorph-free enumeration of small connected regular graphs.
//!
//! Sampling follows the stub-matching scheme: each vertex contributes z points, random point
//! pairs are matched when *suitable* (distinct vertices, not already adjacent), and the phase
//! restarts from scratch when no suitable pair remains. Samples are redrawn until connected,
//! since one zero Laplacian eigenvalue is assumed everywhere downstream.

mod enumerate;

pub use enumerate::{enumerate_connected_regular, EnumerationResult};

use crate::error::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

/// Name of the stream generator, recorded in run metadata for reproducibility.
pub const RNG_ALGORITHM: &str = "chacha8";

const MAX_PAIRING_RESTARTS: u32 = 100;
const MAX_CONNECTIVITY_RETRIES: u32 = 1000;

/// Parameters of one random-graph draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphSpec {
    pub n: usize,
    pub z: usize,
    pub seed: u64,
}

impl GraphSpec {
    pub fn new(n: usize, z: usize, seed: u64) -> Self {
        GraphSpec { n, z, seed }
    }

    /// Handshake parity and degree bounds.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.z == 0 {
            return Err(Error::InvalidSpec(format!(
                "n and z must be positive, got n={} z={}",
                self.n, self.z
            )));
        }
        if self.z >= self.n {
            return Err(Error::InvalidSpec(format!(
                "degree z={} must be smaller than vertex count n={}",
                self.z, self.n
            )));
        }
        if !(self.n * self.z).is_multiple_of(2) {
            return Err(Error::InvalidSpec(format!(
                "n*z = {}*{} is odd; no regular graph exists",
                self.n, self.z
            )));
        }
        Ok(())
    }
}

/// Simple undirected z-regular graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularGraph {
    n: usize,
    z: usize,
    neighbors: Vec<Vec<u32>>,
}

impl RegularGraph {
    /// Builds a graph from adjacency lists, checking every structural invariant.
    pub fn from_neighbors(n: usize, z: usize, neighbors: Vec<Vec<u32>>) -> Result<Self> {
        if neighbors.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {} adjacency lists, got {}",
                n,
                neighbors.len()
            )));
        }
        for (v, list) in neighbors.iter().enumerate() {
            if list.len() != z {
                return Err(Error::InvalidArgument(format!(
                    "vertex {} has degree {}, expected {}",
                    v,
                    list.len(),
                    z
                )));
            }
            for pair in list.windows(2) {
                if pair[0] >= pair[1] {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {} has an unsorted or repeated neighbor list",
                        v
                    )));
                }
            }
            for &w in list {
                if w as usize >= n {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {} lists out-of-range neighbor {}",
                        v, w
                    )));
                }
                if w as usize == v {
                    return Err(Error::InvalidArgument(format!("vertex {} has a self-loop", v)));
                }
                if !neighbors[w as usize].binary_search(&(v as u32)).is_ok() {
                    return Err(Error::InvalidArgument(format!(
                        "adjacency is asymmetric between {} and {}",
                        v, w
                    )));
                }
            }
        }
        Ok(RegularGraph { n, z, neighbors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&(v as u32)).is_ok()
    }
}

/// Bookkeeping from one generator call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenerationStats {
    /// Stalled pairing phases that were restarted from scratch.
    pub pairing_restarts: u32,
    /// Connected-but-rejected draws (disconnected samples redrawn from the advanced stream).
    pub connectivity_retries: u32,
}

/// Draws a connected z-regular graph; deterministic in the spec's seed.
pub fn generate_regular(spec: &GraphSpec) -> Result<RegularGraph> {
    generate_regular_with_stats(spec).map(|(g, _)| g)
}

/// As [`generate_regular`], also reporting restart/retry counts.
pub fn generate_regular_with_stats(spec: &GraphSpec) -> Result<(RegularGraph, GenerationStats)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut stats = GenerationStats::default();
    loop {
        let mut restarts = 0u32;
        let neighbors = loop {
            match pairing_attempt(spec.n, spec.z, &mut rng) {
                Some(adj) => break adj,
                None => {
                    restarts += 1;
                    stats.pairing_restarts += 1;
                    if restarts > MAX_PAIRING_RESTARTS {
                        return Err(Error::Budget(format!(
                            "pairing phase stalled {} times for n={} z={} (cap {})",
                            restarts, spec.n, spec.z, MAX_PAIRING_RESTARTS
                        )));
                    }
                }
            }
        };
        let graph = RegularGraph {
            n: spec.n,
            z: spec.z,
            neighbors,
        };
        if connected_components(&graph) == 1 {
            return Ok((graph, stats));
        }
        stats.connectivity_retries += 1;
        if stats.connectivity_retries > MAX_CONNECTIVITY_RETRIES {
            return Err(Error::Disconnected(format!(
                "no connected sample for n={} z={} after {} redraws",
                spec.n, spec.z, MAX_CONNECTIVITY_RETRIES
            )));
        }
    }
}

/// One pairing phase. Returns `None` on a stall (no suitable pair left).
fn pairing_attempt(n: usize, z: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<u32>>> {
    let mut adj: Vec<Vec<u32>> = vec![Vec::with_capacity(z); n];
    let mut pts: Vec<u32> = Vec::with_capacity(n * z);
    for v in 0..n as u32 {
        pts.extend(std::iter::repeat_n(v, z));
    }
    let mut fails = 0usize;
    while !pts.is_empty() {
        let r = pts.len();
        let i = rng.gen_range(0..r);
        let j = rng.gen_range(0..r);
        if i == j {
            continue;
        }
        let (u, v) = (pts[i], pts[j]);
        if u == v || adj[u as usize].contains(&v) {
            fails += 1;
            // Rejections pile up only near the end; an exact scan then decides stall vs. luck.
            if fails > 64 + r * r {
                if !suitable_pair_exists(&pts, &adj) {
                    return None;
                }
                fails = 0;
            }
            continue;
        }
        adj[u as usize].push(v);
        adj[v as usize].push(u);
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        pts.swap_remove(hi);
        pts.swap_remove(lo);
        fails = 0;
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
    }
    Some(adj)
}

fn suitable_pair_exists(pts: &[u32], adj: &[Vec<u32>]) -> bool {
    let mut distinct: Vec<u32> = pts.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for (a_pos, &a) in distinct.iter().enumerate() {
        for &b in &distinct[a_pos + 1..] {
            if !adj[a as usize].contains(&b) {
                return true;
            }
        }
    }
    false
}

/// Number of connected components, by traversal.
pub fn connected_components(g: &RegularGraph) -> usize {
    let mut seen = vec![false; g.n];
    let mut stack = Vec::new();
    let mut components = 0;
    for start in 0..g.n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w as usize);
                }
            }
        }
    }
    components
}

/// Serializes a graph as a `n z seed` header plus one sorted neighbor line per vertex.
pub fn graph_to_string(g: &RegularGraph, seed: u64) -> String {
    let mut out = String::with_capacity(16 + g.n * g.z * 6);
    out.push_str(&format!("{} {} {}\n", g.n, g.z, seed));
    for v in 0..g.n {
        let line: Vec<String> = g.neighbors(v).iter().map(|w| w.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the [`graph_to_string`] format, validating all graph invariants.
pub fn parse_graph(text: &str) -> Result<(RegularGraph, u64)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty graph text".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::InvalidArgument(format!(
            "graph header must be `n z seed`, got {:?}",
            header
        )));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad vertex count {:?}", fields[0])))?;
    let z: usize = fields[1]
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad degree {:?}", fields[1])))?;
    let seed: u64 = fields[2]
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad seed {:?}", fields[2])))?;
    let mut neighbors = Vec::with_capacity(n);
    for v in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::InvalidArgument(format!("missing neighbor line for vertex {}", v)))?;
        let mut list = Vec::with_capacity(z);
        for tok in line.split_whitespace() {
            let w: u32 = tok
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad neighbor index {:?}", tok)))?;
            list.push(w);
        }
        neighbors.push(list);
    }
    let g = RegularGraph::from_neighbors(n, z, neighbors)?;
    Ok((g, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_violation_rejected() {
        let err = generate_regular(&GraphSpec::new(5, 3, 1)).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
    }

    #[test]
    fn degree_bound_rejected() {
        assert!(matches!(
            generate_regular(&GraphSpec::new(4, 4, 1)),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            generate_regular(&GraphSpec::new(4, 5, 1)),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn k4_is_the_only_cubic_graph_on_four_vertices() {
        for seed in [0u64, 1, 99] {
            let g = generate_regular(&GraphSpec::new(4, 3, seed)).unwrap();
            for v in 0..4 {
                let expect: Vec<u32> = (0..4u32).filter(|&w| w as usize != v).collect();
                assert_eq!(g.neighbors(v), expect.as_slice());
            }
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let spec = GraphSpec::new(64, 3, 0xDEADBEEF);
        let a = generate_regular(&spec).unwrap();
        let b = generate_regular(&spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn generated_graph_is_regular_and_connected() {
        let g = generate_regular(&GraphSpec::new(1000, 3, 42)).unwrap();
        for v in 0..1000 {
            assert_eq!(g.neighbors(v).len(), 3);
            assert!(!g.neighbors(v).contains(&(v as u32)));
        }
        assert_eq!(connected_components(&g), 1);
    }

    #[test]
    fn two_k4_copies_have_two_components() {
        let mut neighbors = Vec::new();
        for v in 0..8u32 {
            let base = if v < 4 { 0 } else { 4 };
            neighbors.push((base..base + 4).filter(|&w| w != v).collect::<Vec<u32>>());
        }
        let g = RegularGraph::from_neighbors(8, 3, neighbors).unwrap();
        assert_eq!(connected_components(&g), 2);
    }

    #[test]
    fn impossible_connectivity_is_reported() {
        // 1-regular graphs on more than two vertices are perfect matchings, never connected.
        let err = generate_regular(&GraphSpec::new(6, 1, 3)).unwrap_err();
        assert!(matches!(err, Error::Disconnected(_)));
    }

    #[test]
    fn serialization_round_trips_with_validation() {
        let spec = GraphSpec::new(50, 4, 7);
        let g = generate_regular(&spec).unwrap();
        let text = graph_to_string(&g, spec.seed);
        let (parsed, seed) = parse_graph(&text).unwrap();
        assert_eq!(seed, 7);
        assert_eq!(parsed, g);
    }

    #[test]
    fn malformed_graph_text_is_rejected() {
        assert!(parse_graph("").is_err());
        assert!(parse_graph("4 3\n").is_err());
        // asymmetric adjacency
        let bad = "2 1 0\n1\n0 1\n";
        assert!(parse_graph(bad).is_err());
    }
}
