//! Random covers of the octa-tree orbifold at the level of their dual graphs.

mod eigen;
mod lift;
mod replacement;

pub use eigen::{
    dense_spectrum, lanczos_top, spectrum, top_eigenvalue, SparseSym, DENSE_LIMIT, KRYLOV_TOL,
};
pub use lift::{
    cover_graph, cover_lambda1, signed_adjacency, simple_switching, switching_walk,
    two_cover_spectra, Signing, SwitchingWalk, TwoCoverSpectra,
};
pub use replacement::{
    dirichlet_rho, replacement_ball, replacement_rho_limit, ReplacementBall, MAX_REPLACEMENT_RADIUS,
};

use std::collections::VecDeque;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// A fixed-point-free involution on `0..2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Matching {
    perm: Vec<usize>,
}

impl Matching {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        for (k, &p) in perm.iter().enumerate() {
            if p >= n || p == k || perm[p] != k {
                return Err(Error::Invariant(format!(
                    "not a fixed-point-free involution at {k}"
                )));
            }
        }
        Ok(Matching { perm })
    }

    /// Uniform perfect matching: shuffle, then pair consecutive entries.
    pub fn sample(points: usize, rng: &mut impl rand::Rng) -> Result<Self> {
        if !points.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "{points} points admit no perfect matching"
            )));
        }
        let mut order: Vec<usize> = (0..points).collect();
        order.shuffle(rng);
        let mut perm = vec![0; points];
        for pair in order.chunks(2) {
            perm[pair[0]] = pair[1];
            perm[pair[1]] = pair[0];
        }
        Ok(Matching { perm })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn image(&self, k: usize) -> usize {
        self.perm[k]
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }
}

/// Four perfect matchings on `2n` sheets, one per generator of the free product.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverPresentation {
    pub n: usize,
    pub sigma: [Matching; 4],
    pub seed: u64,
}

pub fn sample_cover(n: usize, seed: u64) -> Result<CoverPresentation> {
    if n == 0 {
        return Err(Error::Domain("cover size n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || Matching::sample(2 * n, &mut rng);
    let sigma = [draw()?, draw()?, draw()?, draw()?];
    Ok(CoverPresentation { n, sigma, seed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Color `1..=4`, or 0 for edges not coming from a matching.
    pub color: u8,
}

/// A multigraph given by an edge list; parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualGraph {
    pub vertices: usize,
    pub edges: Vec<Edge>,
}

impl DualGraph {
    pub fn from_edges(vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        if let Some(e) = edges.iter().find(|e| e.u >= vertices || e.v >= vertices) {
            return Err(Error::Domain(format!(
                "edge ({}, {}) leaves the vertex set",
                e.u, e.v
            )));
        }
        Ok(DualGraph { vertices, edges })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    pub fn neighbors(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            if e.u != e.v {
                adj[e.v].push((e.u, id));
            }
        }
        adj
    }

    pub fn adjacency(&self) -> SparseSym {
        let mut a = SparseSym::new(self.vertices);
        for e in &self.edges {
            a.add_edge(e.u, e.v, 1.0);
        }
        a
    }

    /// Removes an edge by index.
    pub fn without_edge(&self, id: usize) -> Result<DualGraph> {
        if id >= self.edges.len() {
            return Err(Error::UnknownEdge(id));
        }
        let mut edges = self.edges.clone();
        edges.remove(id);
        Ok(DualGraph {
            vertices: self.vertices,
            edges,
        })
    }

    /// CSV with header `u,v,color,sign`.
    pub fn write_csv(&self, signing: Option<&Signing>, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "u,v,color,sign")?;
        for (id, e) in self.edges.iter().enumerate() {
            let sign = signing.map_or(1, |s| s.sign(id).unwrap_or(1));
            writeln!(out, "{},{},{},{}", e.u, e.v, e.color, sign)?;
        }
        Ok(())
    }
}

/// One vertex per sheet, one edge of color `k` per pair `{j, σ_k(j)}`.
pub fn dual_graph(c: &CoverPresentation) -> DualGraph {
    let mut edges = Vec::with_capacity(4 * c.n);
    for (k, m) in c.sigma.iter().enumerate() {
        for j in 0..m.len() {
            let p = m.image(j);
            if j < p {
                edges.push(Edge {
                    u: j,
                    v: p,
                    color: k as u8 + 1,
                });
            }
        }
    }
    DualGraph {
        vertices: 2 * c.n,
        edges,
    }
}

pub fn components(g: &DualGraph) -> Vec<usize> {
    let adj = g.neighbors();
    let mut comp = vec![usize::MAX; g.vertices];
    let mut next = 0;
    for s in 0..g.vertices {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    comp
}

pub fn is_connected(g: &DualGraph) -> bool {
    g.vertices == 0 || components(g).iter().all(|&c| c == 0)
}

/// Radius returned when no ball ever holds two independent cycles.
pub const TANGLE_DEPTH_LIMIT: usize = 64;

/// Largest `T` such that every radius-`T` ball has cycle rank at most one.
/// Balls are induced subgraphs; the cycle rank of a connected ball is `E - V + 1`.
pub fn tangle_free_radius(g: &DualGraph) -> usize {
    let adj = g.neighbors();
    let mut best = TANGLE_DEPTH_LIMIT;
    let mut dist = vec![usize::MAX; g.vertices];
    for root in 0..g.vertices {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        let mut order = vec![root];
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            if dist[u] >= best {
                continue;
            }
            for &(v, _) in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    order.push(v);
                }
            }
        }
        // vertices and edges first present at each depth
        let mut new_vertices = vec![0i64; best + 2];
        let mut new_edges = vec![0i64; best + 2];
        for &v in &order {
            new_vertices[dist[v]] += 1;
        }
        for e in &g.edges {
            let (du, dv) = (dist[e.u], dist[e.v]);
            if du != usize::MAX && dv != usize::MAX {
                let d = du.max(dv);
                if d <= best {
                    new_edges[d] += 1;
                }
            }
        }
        let (mut nv, mut ne) = (0i64, 0i64);
        for t in 0..=best {
            nv += new_vertices[t];
            ne += new_edges[t];
            if ne - nv + 1 > 1 {
                best = t.saturating_sub(1);
                break;
            }
        }
    }
    best
}

/// `4 - μ2`, with `μ2` the second largest adjacency eigenvalue counted with multiplicity.
pub fn graph_lambda1(g: &DualGraph) -> Result<f64> {
    if g.vertices < 2 {
        return Err(Error::Domain(
            "spectral gap needs at least two vertices".into(),
        ));
    }
    let a = g.adjacency();
    if g.vertices < DENSE_LIMIT {
        return Ok((4.0 - spectrum(&a)[1]).max(0.0));
    }
    if !is_connected(g) {
        return Ok(0.0);
    }
    let c = 1.0 / (g.vertices as f64).sqrt();
    let mu2 = lanczos_top(&a, &[vec![c; g.vertices]], 0x5eed)?;
    Ok((4.0 - mu2).max(0.0))
}
