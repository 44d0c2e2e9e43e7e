use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;

/// A simple undirected graph with all degrees odd (so majority updates never
/// tie). Self-loops are rejected.
#[derive(Debug, Clone)]
pub struct OpinionGraph {
    adjacency: Vec<Vec<u32>>,
}

impl OpinionGraph {
    pub fn from_edges(vertices: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if vertices == 0 || vertices > 1_000_000 {
            return Err(Error::ParameterDomain(format!(
                "vertex count {vertices} outside 1..=10^6"
            )));
        }
        let mut adjacency = vec![Vec::new(); vertices];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Malformed(format!("self-loop at {u}")));
            }
            if u as usize >= vertices || v as usize >= vertices {
                return Err(Error::Malformed(format!("edge ({u},{v}) out of range")));
            }
            if adjacency[u as usize].contains(&v) {
                return Err(Error::Malformed(format!("duplicate edge ({u},{v})")));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        let graph = Self { adjacency };
        graph.check_odd_degrees()?;
        Ok(graph)
    }

    fn check_odd_degrees(&self) -> Result<()> {
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            if nbrs.len() % 2 == 0 {
                return Err(Error::ParameterDomain(format!(
                    "vertex {v} has even degree {}",
                    nbrs.len()
                )));
            }
        }
        Ok(())
    }

    /// Parses an edge-list text: one `u v` pair per line, `#` comments.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max_v = 0u32;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Malformed(format!("bad edge line `{line}`")))?;
            let v: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Malformed(format!("bad edge line `{line}`")))?;
            max_v = max_v.max(u).max(v);
            edges.push((u, v));
        }
        Self::from_edges(max_v as usize + 1, &edges)
    }

    /// Named generators: `complete:n=4`, `complete_bipartite:m=3`,
    /// `random_regular:d=3,n=100,seed=7`, `torus_diag:w=5,h=5`.
    pub fn generate(spec: &str) -> Result<Self> {
        let (family, params) = spec.split_once(':').unwrap_or((spec, ""));
        let mut kv = std::collections::BTreeMap::new();
        for part in params.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::UnknownFamily(format!("bad parameter `{part}`")))?;
            let value: u64 = v
                .parse()
                .map_err(|_| Error::UnknownFamily(format!("non-numeric `{part}`")))?;
            kv.insert(k.trim().to_string(), value);
        }
        let take = |key: &str| -> Result<u64> {
            kv.get(key)
                .copied()
                .ok_or_else(|| Error::UnknownFamily(format!("`{spec}` needs {key}=...")))
        };
        match family.trim() {
            // K_n has degree n-1: needs even n
            "complete" => {
                let n = take("n")? as usize;
                let edges: Vec<(u32, u32)> = (0..n as u32)
                    .flat_map(|u| ((u + 1)..n as u32).map(move |v| (u, v)))
                    .collect();
                Self::from_edges(n, &edges)
            }
            "complete_bipartite" => {
                let m = take("m")? as u32;
                let edges: Vec<(u32, u32)> = (0..m)
                    .flat_map(|u| (m..2 * m).map(move |v| (u, v)))
                    .collect();
                Self::from_edges(2 * m as usize, &edges)
            }
            "random_regular" => {
                let d = take("d")? as usize;
                let n = take("n")? as usize;
                let seed = take("seed")?;
                Self::random_regular(d, n, seed)
            }
            // w×h torus (degree 4) plus a diagonal perfect matching between
            // row pairs (2j, 2j+1): degree 5. Needs h even and w, h ≥ 3.
            "torus_diag" => {
                let w = take("w")? as u32;
                let h = take("h")? as u32;
                if !h.is_multiple_of(2) || w < 3 || h < 3 {
                    return Err(Error::ParameterDomain(
                        "torus_diag needs even h and w, h ≥ 3 (odd degree is \
                         impossible on an odd number of vertices)"
                            .into(),
                    ));
                }
                let at = |x: u32, y: u32| (y % h) * w + (x % w);
                let mut edges = Vec::new();
                for y in 0..h {
                    for x in 0..w {
                        edges.push((at(x, y), at(x + 1, y)));
                        edges.push((at(x, y), at(x, y + 1)));
                        if y % 2 == 0 {
                            edges.push((at(x, y), at(x + 1, y + 1)));
                        }
                    }
                }
                Self::from_edges((w * h) as usize, &edges)
            }
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    /// Random `d`-regular simple graph via the pairing model with retries.
    pub fn random_regular(d: usize, n: usize, seed: u64) -> Result<Self> {
        if d.is_multiple_of(2) {
            return Err(Error::ParameterDomain("degree must be odd".into()));
        }
        if !(n * d).is_multiple_of(2) {
            return Err(Error::ParameterDomain("n·d must be even".into()));
        }
        let mut rng = crate::rng::stream(seed, 0);
        'attempt: for _ in 0..1000 {
            let mut stubs: Vec<u32> = (0..n as u32)
                .flat_map(|v| std::iter::repeat_n(v, d))
                .collect();
            stubs.shuffle(&mut rng);
            let mut adjacency = vec![Vec::new(); n];
            for pair in stubs.chunks(2) {
                let (u, v) = (pair[0], pair[1]);
                if u == v || adjacency[u as usize].contains(&v) {
                    continue 'attempt;
                }
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
            }
            return Ok(Self { adjacency });
        }
        Err(Error::ParameterDomain(format!(
            "could not realize a simple {d}-regular graph on {n} vertices"
        )))
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    /// I.i.d. ±1 opinions, each +1 with probability `p`.
    pub fn random_state(&self, p: f64, rng: &mut impl Rng) -> Vec<i8> {
        (0..self.vertex_count())
            .map(|_| if rng.gen::<f64>() < p { 1 } else { -1 })
            .collect()
    }
}
