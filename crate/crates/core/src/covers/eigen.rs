//! Symmetric eigensolvers: dense for small graphs, Lanczos with full
//! reorthogonalization for large ones.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Graphs with at least this many vertices go to the Krylov solver.
pub const DENSE_LIMIT: usize = 2000;
/// Residual `|A x - θ x|` accepted by the Krylov solver.
pub const KRYLOV_TOL: f64 = 1e-9;

/// A symmetric matrix stored as weighted adjacency lists.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseSym {
    pub rows: Vec<Vec<(usize, f64)>>,
}

impl SparseSym {
    pub fn new(n: usize) -> Self {
        SparseSym {
            rows: vec![Vec::new(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `w` at `(u, v)` and `(v, u)`; a diagonal entry receives `2w`.
    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) {
        self.rows[u].push((v, w));
        self.rows[v].push((u, w));
    }

    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, row) in self.rows.iter().enumerate() {
            y[i] = row.iter().map(|&(j, w)| w * x[j]).sum();
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                m[(i, j)] += w;
            }
        }
        m
    }
}

/// All eigenvalues of a symmetric matrix, in decreasing order.
pub fn dense_spectrum(m: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

pub fn spectrum(a: &SparseSym) -> Vec<f64> {
    dense_spectrum(a.to_dense())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for q in basis {
            let c = dot(q, w);
            axpy(-c, q, w);
        }
    }
}

/// Largest eigenvalue of `a` restricted to the orthogonal complement of `deflate`
/// (which must be orthonormal), by Lanczos with full reorthogonalization.
pub fn lanczos_top(a: &SparseSym, deflate: &[Vec<f64>], seed: u64) -> Result<f64> {
    let n = a.dim();
    let max_dim = n.saturating_sub(deflate.len());
    if max_dim == 0 {
        return Err(Error::Domain("nothing left after deflation".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    orthogonalize(&mut q, deflate);
    let norm = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|x| *x /= norm);
    let mut basis: Vec<Vec<f64>> = vec![q];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let mut last_residual = f64::INFINITY;
    for j in 0..max_dim {
        a.apply(&basis[j], &mut w);
        let aj = dot(&basis[j], &w);
        alpha.push(aj);
        orthogonalize(&mut w, deflate);
        orthogonalize(&mut w, &basis);
        let bj = dot(&w, &w).sqrt();
        let k = j + 1;
        let check = bj < 1e-12 || k == max_dim || k % 5 == 0;
        if check {
            let mut t = DMatrix::zeros(k, k);
            for i in 0..k {
                t[(i, i)] = alpha[i];
                if i + 1 < k {
                    t[(i, i + 1)] = beta[i];
                    t[(i + 1, i)] = beta[i];
                }
            }
            let eig = t.symmetric_eigen();
            let (idx, theta) =
                eig.eigenvalues
                    .iter()
                    .enumerate()
                    .fold(
                        (0, f64::NEG_INFINITY),
                        |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
                    );
            let y: DVector<f64> = eig.eigenvectors.column(idx).into_owned();
            let residual = bj * y[k - 1].abs();
            last_residual = residual;
            if residual < KRYLOV_TOL || bj < 1e-12 || k == max_dim {
                return Ok(theta);
            }
        }
        beta.push(bj);
        basis.push(w.iter().map(|x| x / bj).collect());
    }
    Err(Error::NoConvergence {
        residual: last_residual,
    })
}

/// Largest eigenvalue; dense below [`DENSE_LIMIT`], Krylov above.
pub fn top_eigenvalue(a: &SparseSym) -> Result<f64> {
    if a.dim() == 0 {
        return Ok(0.0);
    }
    if a.dim() < DENSE_LIMIT {
        return Ok(spectrum(a)[0]);
    }
    lanczos_top(a, &[], 0x5eed)
}
