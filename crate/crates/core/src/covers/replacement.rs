//! Balls in the Cayley graph of `Z/4 * Z/2` with generators `a, a^2, a^3, b`.

use std::collections::HashMap;

use super::eigen::{top_eigenvalue, SparseSym};
use crate::error::{Error, Result};

pub const MAX_REPLACEMENT_RADIUS: usize = 14;

/// Syllable `k` in `1..=3` is `a^k`, syllable 4 is `b`.
type NormalForm = Vec<u8>;

const B: u8 = 4;

fn multiply(w: &[u8], g: u8) -> NormalForm {
    let mut out = w.to_vec();
    match (out.last().copied(), g) {
        (Some(B), B) => {
            out.pop();
        }
        (Some(k), j) if k != B && j != B => {
            let r = (k + j) % 4;
            out.pop();
            if r != 0 {
                out.push(r);
            }
        }
        _ => out.push(g),
    }
    out
}

#[derive(Clone, Debug)]
pub struct ReplacementBall {
    pub radius: usize,
    /// Normal forms in BFS order; index 0 is the identity.
    pub elements: Vec<NormalForm>,
    /// Word length of each element.
    pub depth: Vec<usize>,
    pub adjacency: SparseSym,
}

impl ReplacementBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.radius + 1];
        for &d in &self.depth {
            s[d] += 1;
        }
        s
    }
}

/// Induced subgraph on all elements of word length at most `radius`.
pub fn replacement_ball(radius: usize) -> Result<ReplacementBall> {
    if radius > MAX_REPLACEMENT_RADIUS {
        return Err(Error::SizeGuard(format!(
            "radius {radius} exceeds the limit {MAX_REPLACEMENT_RADIUS}"
        )));
    }
    let mut index: HashMap<NormalForm, usize> = HashMap::new();
    let mut elements = vec![Vec::new()];
    let mut depth = vec![0];
    index.insert(Vec::new(), 0);
    let mut edges = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let w = elements[head].clone();
        for g in 1..=B {
            let v = multiply(&w, g);
            let id = match index.get(&v) {
                Some(&id) => Some(id),
                None if depth[head] < radius => {
                    let id = elements.len();
                    index.insert(v.clone(), id);
                    elements.push(v);
                    depth.push(depth[head] + 1);
                    Some(id)
                }
                None => None,
            };
            // each undirected edge is seen from both ends; keep one
            if let Some(id) = id {
                if head < id {
                    edges.push((head, id));
                }
            }
        }
        head += 1;
    }
    let mut adjacency = SparseSym::new(elements.len());
    for (u, v) in edges {
        adjacency.add_edge(u, v, 1.0);
    }
    Ok(ReplacementBall {
        radius,
        elements,
        depth,
        adjacency,
    })
}

/// Largest Dirichlet eigenvalue of the ball, i.e. the top eigenvalue of its adjacency.
pub fn dirichlet_rho(radius: usize) -> Result<f64> {
    top_eigenvalue(&replacement_ball(radius)?.adjacency)
}

/// Spectral radius of the infinite Cayley graph.
pub fn replacement_rho_limit() -> f64 {
    1.0 + (5.0 + 2.0 * 3f64.sqrt()).sqrt()
}
