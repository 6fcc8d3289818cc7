//! Node-level centralities and adjacency-spectrum quantities.
//!
//! Betweenness and closeness are computed per connected component with
//! breadth-first search, so they are total on disconnected graphs:
//! unreachable pairs contribute nothing to betweenness, and closeness uses the
//! component-scaled form
//!
//! ```text
//! c(i) = ((r_i - 1) / (n - 1)) * ((r_i - 1) / D_i)
//! ```
//!
//! where `r_i` counts the nodes reachable from `i` (itself included) and
//! `D_i` is the sum of distances to them. On a connected graph this is the
//! usual `(n - 1) / D_i`.
//!
//! Eigen-quantities come from a dense symmetric eigendecomposition. When the
//! top eigenvalue is repeated (disconnected graphs whose components tie), the
//! principal vector is taken to be the normalized projection of the all-ones
//! vector onto the top eigenspace. That projection is nonnegative and commutes
//! with relabeling, so eigenvector-based values stay isomorphism invariant.


use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CentralityError;
use crate::graph::Graph;

/// Largest node count for which a dense eigendecomposition is attempted.
pub const DENSE_LIMIT: usize = 4096;
/// Largest graph for which the principal vector comes from a full dense
/// decomposition rather than power iteration.
pub const FULL_DECOMPOSITION_LIMIT: usize = 1024;

const POWER_TOLERANCE: f64 = 1e-12;
const POWER_MAX_ITERATIONS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CentralityKind {
    Degree,
    Betweenness,
    Closeness,
    Eigenvector,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralityVector {
    pub kind: CentralityKind,
    pub values: Vec<f64>,
}

impl CentralityVector {
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Adjacency eigenvalues, descending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn largest(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }
}

pub fn degree_sequence(g: &Graph) -> Vec<usize> {
    g.degrees()
}

pub fn degree_centrality(g: &Graph) -> CentralityVector {
    CentralityVector {
        kind: CentralityKind::Degree,
        values: g.degrees().into_iter().map(|d| d as f64).collect(),
    }
}

fn require_nodes(g: &Graph, what: &'static str, min: usize) -> Result<(), CentralityError> {
    if g.n() < min {
        return Err(CentralityError::TooFewNodes { what, n: g.n(), min });
    }
    Ok(())
}

/// Compressed adjacency for the all-pairs BFS loops.
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    fn new(g: &Graph) -> Self {
        let mut offsets = Vec::with_capacity(g.n() + 1);
        let mut targets = Vec::with_capacity(2 * g.m());
        offsets.push(0);
        for v in 0..g.n() {
            targets.extend(g.neighbors(v).iter().map(|&w| w as u32));
            offsets.push(targets.len());
        }
        Csr { offsets, targets }
    }

    #[inline]
    fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

const UNSEEN: u32 = u32::MAX;

/// Per-node results of one shortest-path pass from every source.
#[derive(Clone, Debug, PartialEq)]
pub struct PathStatistics {
    /// Betweenness, normalized as in [`betweenness_normalized`].
    pub betweenness: Vec<f64>,
    /// Reach (including the node itself) and distance sum, as in
    /// [`reach_and_distance_sums`].
    pub reach: Vec<(usize, usize)>,
}

/// Brandes betweenness over unweighted shortest paths, scaled by
/// `(n-1)(n-2)/2` so that the hub of a star scores exactly 1.
pub fn betweenness_normalized(g: &Graph) -> Result<CentralityVector, CentralityError> {
    Ok(CentralityVector {
        kind: CentralityKind::Betweenness,
        values: path_statistics(g)?.betweenness,
    })
}

/// Betweenness and closeness inputs from a single Brandes pass.
///
/// Sources are processed in fixed-size blocks whose partial sums are merged in
/// block order, so the result does not depend on the number of worker threads.
pub fn path_statistics(g: &Graph) -> Result<PathStatistics, CentralityError> {
    require_nodes(g, "betweenness", 3)?;
    let n = g.n();
    let csr = Csr::new(g);
    let block = 64.max(n.div_ceil(64));
    type Block = (Vec<f64>, Vec<(usize, usize)>);
    let partials: Vec<Block> = (0..n.div_ceil(block))
        .into_par_iter()
        .map(|b| {
            let mut acc = vec![0.0; n];
            let mut work = BrandesWork::new(n);
            let reach = (b * block..((b + 1) * block).min(n))
                .map(|s| work.accumulate(&csr, s, &mut acc))
                .collect();
            (acc, reach)
        })
        .collect();

    let mut raw = vec![0.0; n];
    let mut reach = Vec::with_capacity(n);
    for (part, r) in partials {
        for (x, p) in raw.iter_mut().zip(part) {
            *x += p;
        }
        reach.extend(r);
    }
    // Each unordered pair is visited from both ends.
    let scale = ((n - 1) * (n - 2)) as f64;
    Ok(PathStatistics {
        betweenness: raw.into_iter().map(|r| r / scale).collect(),
        reach,
    })
}

struct BrandesWork {
    /// BFS order; doubles as the queue.
    order: Vec<u32>,
    sigma: Vec<f64>,
    dist: Vec<u32>,
    delta: Vec<f64>,
}

impl BrandesWork {
    fn new(n: usize) -> Self {
        BrandesWork {
            order: Vec::with_capacity(n),
            sigma: vec![0.0; n],
            dist: vec![UNSEEN; n],
            delta: vec![0.0; n],
        }
    }

    /// Adds the dependencies of source `s` to `acc`; returns its reach and
    /// distance sum.
    fn accumulate(&mut self, csr: &Csr, s: usize, acc: &mut [f64]) -> (usize, usize) {
        for &v in &self.order {
            let v = v as usize;
            self.sigma[v] = 0.0;
            self.dist[v] = UNSEEN;
            self.delta[v] = 0.0;
        }
        self.order.clear();

        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.order.push(s as u32);
        let mut head = 0;
        let mut total = 0usize;
        while head < self.order.len() {
            let v = self.order[head] as usize;
            head += 1;
            let next = self.dist[v] + 1;
            total += self.dist[v] as usize;
            let sigma_v = self.sigma[v];
            for &w in csr.neighbors(v) {
                let w = w as usize;
                if self.dist[w] == UNSEEN {
                    self.dist[w] = next;
                    self.order.push(w as u32);
                }
                if self.dist[w] == next {
                    self.sigma[w] += sigma_v;
                }
            }
        }

        // Predecessors of w are the neighbours one step closer to s.
        for &w in self.order.iter().rev() {
            let w = w as usize;
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            let prev = self.dist[w].wrapping_sub(1);
            for &v in csr.neighbors(w) {
                let v = v as usize;
                if self.dist[v] == prev {
                    self.delta[v] += self.sigma[v] * coeff;
                }
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
        (self.order.len(), total)
    }
}

/// Reach count (including the source) and total distance from `s`.
fn bfs_reach(csr: &Csr, s: usize, dist: &mut [u32], order: &mut Vec<u32>) -> (usize, usize) {
    for &v in order.iter() {
        dist[v as usize] = UNSEEN;
    }
    order.clear();
    dist[s] = 0;
    order.push(s as u32);
    let mut head = 0;
    let mut total = 0usize;
    while head < order.len() {
        let v = order[head] as usize;
        head += 1;
        let next = dist[v] + 1;
        total += dist[v] as usize;
        for &w in csr.neighbors(v) {
            if dist[w as usize] == UNSEEN {
                dist[w as usize] = next;
                order.push(w);
            }
        }
    }
    (order.len(), total)
}

/// Reach counts and distance sums for every node.
pub fn reach_and_distance_sums(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let csr = Csr::new(g);
    (0..n)
        .into_par_iter()
        .map_init(
            || (vec![UNSEEN; n], Vec::with_capacity(n)),
            |(dist, order), s| bfs_reach(&csr, s, dist, order),
        )
        .collect()
}

/// Closeness with the component-scaled convention described in the module
/// docs; isolated nodes score 0.
pub fn closeness_normalized(g: &Graph) -> Result<CentralityVector, CentralityError> {
    require_nodes(g, "closeness", 3)?;
    let n = g.n();
    let values = reach_and_distance_sums(g)
        .into_iter()
        .map(|(r, d)| closeness_from_reach(n, r, d))
        .collect();
    Ok(CentralityVector {
        kind: CentralityKind::Closeness,
        values,
    })
}

pub(crate) fn closeness_from_reach(n: usize, reached: usize, total: usize) -> f64 {
    if reached <= 1 {
        0.0
    } else if reached == n {
        (n - 1) as f64 / total as f64
    } else {
        let others = (reached - 1) as f64;
        (others / (n - 1) as f64) * (others / total as f64)
    }
}

/// Full eigen-information needed by the spectral measures.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    pub spectrum: Spectrum,
    /// Unit-norm nonnegative principal eigenvector (all zeros when `m = 0`).
    pub principal: Vec<f64>,
}

fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut a = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// Spectrum plus principal vector. Up to [`FULL_DECOMPOSITION_LIMIT`] nodes one
/// dense decomposition yields both; above it the spectrum comes from the
/// eigenvalue-only routine and the vector from [`eigenvector_l2`].
pub fn eigen_system(g: &Graph) -> Result<EigenSystem, CentralityError> {
    let n = g.n();
    if n > DENSE_LIMIT {
        return Err(CentralityError::TooLarge { n, limit: DENSE_LIMIT });
    }
    if n > FULL_DECOMPOSITION_LIMIT {
        return Ok(EigenSystem {
            spectrum: adjacency_spectrum(g)?,
            principal: eigenvector_l2(g)?.values,
        });
    }
    Ok(dense_eigen_system(g))
}

fn dense_eigen_system(g: &Graph) -> EigenSystem {
    let n = g.n();
    if n == 0 {
        return EigenSystem {
            spectrum: Spectrum { eigenvalues: Vec::new() },
            principal: Vec::new(),
        };
    }
    let eig = SymmetricEigen::new(adjacency_matrix(g));
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let spectrum = Spectrum { eigenvalues };

    if let Some(principal) = trivial_principal(g) {
        return EigenSystem { spectrum, principal };
    }

    let top = spectrum.eigenvalues[0];
    let tie = 1e-8 * top.abs().max(1.0);
    let mut proj = vec![0.0; n];
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if top - lambda > tie {
            continue;
        }
        let col = eig.eigenvectors.column(k);
        let weight: f64 = col.iter().sum();
        for (p, &x) in proj.iter_mut().zip(col.iter()) {
            *p += weight * x;
        }
    }
    EigenSystem {
        spectrum,
        principal: normalize_nonnegative(proj),
    }
}

/// Cases with a closed form: no edges gives zeros; on a d-regular graph
/// A·1 = d·1 with d = λ1, so the projection of the ones vector is itself.
fn trivial_principal(g: &Graph) -> Option<Vec<f64>> {
    let n = g.n();
    if g.m() == 0 {
        return Some(vec![0.0; n]);
    }
    g.degrees()
        .windows(2)
        .all(|w| w[0] == w[1])
        .then(|| vec![1.0 / (n as f64).sqrt(); n])
}

fn normalize_nonnegative(mut v: Vec<f64>) -> Vec<f64> {
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    // eigensolver noise around zero entries
    v.iter_mut().for_each(|x| *x = x.max(0.0));
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}

/// Power iteration on `A + I` from the all-ones vector. The shift keeps the
/// dominant eigenvalue strictly largest in magnitude on bipartite graphs, and
/// starting from ones selects the same vector as the dense route on ties.
fn principal_by_power_iteration(g: &Graph) -> Option<Vec<f64>> {
    let n = g.n();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    for _ in 0..POWER_MAX_ITERATIONS {
        for v in 0..n {
            next[v] = x[v] + g.neighbors(v).iter().map(|&w| x[w]).sum::<f64>();
        }
        let norm = next.iter().map(|y| y * y).sum::<f64>().sqrt();
        next.iter_mut().for_each(|y| *y /= norm);
        let change = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut x, &mut next);
        if change < POWER_TOLERANCE {
            return Some(x);
        }
    }
    None
}

/// Nonnegative principal eigenvector with unit L2 norm; all zeros when `m = 0`.
///
/// Small graphs use the dense decomposition. Larger ones use power iteration,
/// falling back to the dense route when it stalls (near-tied top eigenvalues)
/// and the graph is within [`DENSE_LIMIT`].
pub fn eigenvector_l2(g: &Graph) -> Result<CentralityVector, CentralityError> {
    let n = g.n();
    let values = if let Some(v) = trivial_principal(g) {
        v
    } else if n <= FULL_DECOMPOSITION_LIMIT {
        dense_eigen_system(g).principal
    } else if let Some(v) = principal_by_power_iteration(g) {
        normalize_nonnegative(v)
    } else if n <= DENSE_LIMIT {
        dense_eigen_system(g).principal
    } else {
        return Err(CentralityError::TooLarge { n, limit: DENSE_LIMIT });
    };
    Ok(CentralityVector {
        kind: CentralityKind::Eigenvector,
        values,
    })
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum, CentralityError> {
    let n = g.n();
    if n > DENSE_LIMIT {
        return Err(CentralityError::TooLarge { n, limit: DENSE_LIMIT });
    }
    if n == 0 {
        return Ok(Spectrum { eigenvalues: Vec::new() });
    }
    let mut eigenvalues: Vec<f64> = adjacency_matrix(g).symmetric_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(Spectrum { eigenvalues })
}

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge. Returns +1 when the endpoint degrees have zero variance.
///
/// Evaluated from exact integer moments, so stars give exactly -1.
pub fn degree_assortativity(g: &Graph) -> Result<f64, CentralityError> {
    if g.m() == 0 {
        return Err(CentralityError::NoEdges);
    }
    let deg = g.degrees();
    let ends = 2 * g.m() as i128;
    // Both marginals are the same multiset: node v appears d_v times.
    let (mut s1, mut s2) = (0i128, 0i128);
    for &d in &deg {
        let d = d as i128;
        s1 += d * d;
        s2 += d * d * d;
    }
    let cross: i128 = g
        .edges()
        .iter()
        .map(|&(u, v)| 2 * deg[u] as i128 * deg[v] as i128)
        .sum();
    let var = ends * s2 - s1 * s1;
    if var == 0 {
        return Ok(1.0);
    }
    Ok((ends * cross - s1 * s1) as f64 / var as f64)
}
