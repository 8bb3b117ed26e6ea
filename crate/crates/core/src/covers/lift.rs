//! Signed 2-lifts of dual graphs and random walks by simple switchings.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::eigen::{spectrum, top_eigenvalue, SparseSym};
use super::{graph_lambda1, is_connected, DualGraph, Edge};
use crate::error::{Error, Result};

/// A sign `±1` on every edge of a [`DualGraph`], indexed like its edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signing(Vec<i8>);

impl Signing {
    pub fn all_plus(g: &DualGraph) -> Self {
        Signing(vec![1; g.edges.len()])
    }

    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Domain("signs must be +1 or -1".into()));
        }
        Ok(Signing(signs))
    }

    pub fn random(g: &DualGraph, rng: &mut impl Rng) -> Self {
        Signing(
            (0..g.edges.len())
                .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn sign(&self, edge: usize) -> Result<i8> {
        self.0.get(edge).copied().ok_or(Error::UnknownEdge(edge))
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 64-bit FNV-1a hash of the sign vector.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &s in &self.0 {
            h ^= u64::from(s as u8);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h
    }

    fn check(&self, g: &DualGraph) -> Result<()> {
        if self.0.len() != g.edges.len() {
            return Err(Error::Domain(format!(
                "signing has {} entries for {} edges",
                self.0.len(),
                g.edges.len()
            )));
        }
        Ok(())
    }
}

/// Adjacency with each edge weighted by its sign.
pub fn signed_adjacency(g: &DualGraph, s: &Signing) -> Result<SparseSym> {
    s.check(g)?;
    let mut a = SparseSym::new(g.vertices);
    for (e, &sign) in g.edges.iter().zip(s.signs()) {
        a.add_edge(e.u, e.v, f64::from(sign));
    }
    Ok(a)
}

/// The double cover: vertex `(v, i)` is `2v + i`; a `+1` edge joins equal sheets,
/// a `-1` edge swaps them.
pub fn cover_graph(g: &DualGraph, s: &Signing) -> Result<DualGraph> {
    s.check(g)?;
    let mut edges = Vec::with_capacity(2 * g.edges.len());
    for (e, &sign) in g.edges.iter().zip(s.signs()) {
        for i in 0..2 {
            let j = if sign > 0 { i } else { 1 - i };
            edges.push(Edge {
                u: 2 * e.u + i,
                v: 2 * e.v + j,
                color: e.color,
            });
        }
    }
    DualGraph::from_edges(2 * g.vertices, edges)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoCoverSpectra {
    /// Spectrum of the base graph, decreasing.
    pub old: Vec<f64>,
    /// Spectrum of the signed adjacency, decreasing.
    pub new: Vec<f64>,
}

impl TwoCoverSpectra {
    /// `old ⊔ new`, decreasing.
    pub fn union(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.old.iter().chain(&self.new).copied().collect();
        all.sort_by(|a, b| b.total_cmp(a));
        all
    }

    /// `4 - μ2` of the cover.
    pub fn cover_lambda1(&self) -> f64 {
        let all = self.union();
        (4.0 - all.get(1).copied().unwrap_or(4.0)).max(0.0)
    }
}

pub fn two_cover_spectra(g: &DualGraph, s: &Signing) -> Result<TwoCoverSpectra> {
    Ok(TwoCoverSpectra {
        old: spectrum(&g.adjacency()),
        new: spectrum(&signed_adjacency(g, s)?),
    })
}

/// Spectral gap of the double cover from the base and signed spectra; exactly 0
/// when the cover is disconnected.
pub fn cover_lambda1(g: &DualGraph, s: &Signing) -> Result<f64> {
    if !is_connected(&cover_graph(g, s)?) {
        return Ok(0.0);
    }
    Ok(two_cover_spectra(g, s)?.cover_lambda1())
}

/// Flips the sign of one edge.
pub fn simple_switching(s: &Signing, edge: usize) -> Result<Signing> {
    let mut out = s.clone();
    let slot = out.0.get_mut(edge).ok_or(Error::UnknownEdge(edge))?;
    *slot = -*slot;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwitchingWalk {
    pub n: usize,
    pub seed: u64,
    pub steps: usize,
    /// Switched edge at each step.
    pub edges: Vec<usize>,
    pub fingerprints: Vec<u64>,
    /// Cover gap before the first step and after each step.
    pub lambda1_series: Vec<f64>,
    /// `(bin start, count)` for nonempty bins of width `bin_width`.
    pub histogram: Vec<(f64, usize)>,
    pub bin_width: f64,
}

impl SwitchingWalk {
    /// Number of distinct gap values, up to `1e-9`.
    pub fn distinct_values(&self) -> usize {
        let mut v = self.lambda1_series.clone();
        v.sort_by(f64::total_cmp);
        v.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        v.len()
    }
}

/// Random walk on signings: each step switches a uniformly chosen edge and
/// records the gap of the resulting double cover.
pub fn switching_walk(
    g: &DualGraph,
    start: &Signing,
    steps: usize,
    seed: u64,
    bin_width: f64,
) -> Result<SwitchingWalk> {
    if steps == 0 {
        return Err(Error::Domain(
            "a switching walk needs at least one step".into(),
        ));
    }
    if g.edges.is_empty() {
        return Err(Error::Domain("graph has no edges to switch".into()));
    }
    if !(bin_width > 0.0) {
        return Err(Error::Domain(format!(
            "bin width {bin_width} must be positive"
        )));
    }
    start.check(g)?;
    let base_mu2 = 4.0 - graph_lambda1(g)?;
    let gap = |s: &Signing| -> Result<f64> {
        if !is_connected(&cover_graph(g, s)?) {
            return Ok(0.0);
        }
        let top_new = top_eigenvalue(&signed_adjacency(g, s)?)?;
        Ok((4.0 - base_mu2.max(top_new)).max(0.0))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = start.clone();
    let mut series = vec![gap(&current)?];
    let mut fingerprints = vec![current.fingerprint()];
    let mut edges = Vec::with_capacity(steps);
    for _ in 0..steps {
        let e = rng.gen_range(0..g.edges.len());
        current = simple_switching(&current, e)?;
        edges.push(e);
        fingerprints.push(current.fingerprint());
        series.push(gap(&current)?);
    }
    let mut bins: BTreeMap<i64, usize> = BTreeMap::new();
    for v in &series {
        *bins.entry((v / bin_width).floor() as i64).or_default() += 1;
    }
    let histogram = bins
        .into_iter()
        .map(|(k, c)| (k as f64 * bin_width, c))
        .collect();
    Ok(SwitchingWalk {
        n: g.vertices / 2,
        seed,
        steps,
        edges,
        fingerprints,
        lambda1_series: series,
        histogram,
        bin_width,
    })
}
