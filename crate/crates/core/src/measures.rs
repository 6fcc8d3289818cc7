//! The eleven normalized centralization measures.
//!
//! Every measure is a total function from graphs to `[0, 1]`. Small or
//! edgeless graphs fall under fixed conventions (value 0, `degenerate` set).
//! Degree-based measures are evaluated from exact integer sums, so canonical
//! graphs hit their boundary values exactly rather than to within rounding.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub};
use serde::{Serialize, Serializer};

use crate::centrality::{self, CentralityVector, EigenSystem, PathStatistics};
use crate::error::MeasureError;
use crate::graph::Graph;

/// Slack allowed outside `[0, 1]` before a value counts as a formula error.
pub const RANGE_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureId {
    /// Assortativity-based hubness.
    Abh,
    /// Eigenvector centrality dispersion.
    Ecd,
    /// Normalized betweenness centralization.
    Nbc,
    /// Normalized closeness centralization.
    Ncc,
    /// Normalized degree (Freeman) centralization.
    Ndc,
    /// Normalized degree entropy.
    Nde,
    /// Normalized degree variance.
    Ndv,
    /// Normalized Gini coefficient of degrees.
    Ngc,
    /// Normalized hub dominance.
    Nhd,
    /// Normalized hub formation tendency.
    Nht,
    /// Normalized natural connectivity.
    Nnc,
}

impl MeasureId {
    pub const ALL: [MeasureId; 11] = [
        MeasureId::Abh,
        MeasureId::Ecd,
        MeasureId::Nbc,
        MeasureId::Ncc,
        MeasureId::Ndc,
        MeasureId::Nde,
        MeasureId::Ndv,
        MeasureId::Ngc,
        MeasureId::Nhd,
        MeasureId::Nht,
        MeasureId::Nnc,
    ];

    pub fn code(self) -> &'static str {
        match self {
            MeasureId::Abh => "ABH",
            MeasureId::Ecd => "ECD",
            MeasureId::Nbc => "NBC",
            MeasureId::Ncc => "NCC",
            MeasureId::Ndc => "NDC",
            MeasureId::Nde => "NDE",
            MeasureId::Ndv => "NDV",
            MeasureId::Ngc => "NGC",
            MeasureId::Nhd => "NHD",
            MeasureId::Nht => "NHT",
            MeasureId::Nnc => "NNC",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MeasureId::Abh => "Assortativity-Based Hubness",
            MeasureId::Ecd => "Eigenvector Centrality Dispersion",
            MeasureId::Nbc => "Normalized Betweenness Centralization",
            MeasureId::Ncc => "Normalized Closeness Centralization",
            MeasureId::Ndc => "Normalized Degree Centralization",
            MeasureId::Nde => "Normalized Degree Entropy",
            MeasureId::Ndv => "Normalized Degree Variance",
            MeasureId::Ngc => "Normalized Gini Coefficient",
            MeasureId::Nhd => "Normalized Hub Dominance",
            MeasureId::Nht => "Normalized Hub Formation Tendency",
            MeasureId::Nnc => "Normalized Natural Connectivity",
        }
    }

    /// Evaluates this measure on `g`.
    pub fn evaluate(self, g: &Graph) -> Result<MeasureResult, MeasureError> {
        Evaluator::new(g).evaluate(self)
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for MeasureId {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MeasureId::ALL
            .into_iter()
            .find(|m| m.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| MeasureError::Unknown(s.to_string()))
    }
}

impl Serialize for MeasureId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

/// Parses a comma-separated list such as `NBC,NCC,NDC` (or `all`).
pub fn parse_measure_list(s: &str) -> Result<Vec<MeasureId>, MeasureError> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(MeasureId::ALL.to_vec());
    }
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasureResult {
    pub measure: MeasureId,
    pub value: f64,
    /// Set when a small-graph or edgeless convention produced the value.
    pub degenerate: bool,
}

fn finish(measure: MeasureId, value: f64) -> Result<MeasureResult, MeasureError> {
    if !value.is_finite() || !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&value) {
        return Err(MeasureError::OutOfRange { measure, value });
    }
    Ok(MeasureResult {
        measure,
        // `+ 0.0` folds a negative zero into +0
        value: value.clamp(0.0, 1.0) + 0.0,
        degenerate: false,
    })
}

fn convention(measure: MeasureId) -> Result<MeasureResult, MeasureError> {
    Ok(MeasureResult {
        measure,
        value: 0.0,
        degenerate: true,
    })
}

/// Evaluates measures on one graph, sharing intermediate results (degree
/// sequence, eigendecomposition, centrality vectors) between them.
pub struct Evaluator<'g> {
    g: &'g Graph,
    degrees: Vec<usize>,
    eigen: OnceCell<Result<EigenSystem, MeasureError>>,
    paths: OnceCell<Result<PathStatistics, MeasureError>>,
}

impl<'g> Evaluator<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Evaluator {
            g,
            degrees: g.degrees(),
            eigen: OnceCell::new(),
            paths: OnceCell::new(),
        }
    }

    pub fn evaluate(&self, id: MeasureId) -> Result<MeasureResult, MeasureError> {
        match id {
            MeasureId::Abh => self.abh(),
            MeasureId::Ecd => self.ecd(),
            MeasureId::Nbc => self.nbc(),
            MeasureId::Ncc => self.ncc(),
            MeasureId::Ndc => self.ndc(),
            MeasureId::Nde => self.nde(),
            MeasureId::Ndv => self.ndv(),
            MeasureId::Ngc => self.ngc(),
            MeasureId::Nhd => self.nhd(),
            MeasureId::Nht => self.nht(),
            MeasureId::Nnc => self.nnc(),
        }
    }

    fn eigen(&self) -> Result<&EigenSystem, MeasureError> {
        self.eigen
            .get_or_init(|| centrality::eigen_system(self.g).map_err(MeasureError::from))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn paths(&self) -> Result<&PathStatistics, MeasureError> {
        self.paths
            .get_or_init(|| centrality::path_statistics(self.g).map_err(MeasureError::from))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn n(&self) -> usize {
        self.g.n()
    }

    fn m(&self) -> usize {
        self.g.m()
    }

    fn d_max(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    fn sum_sq_degrees(&self) -> u128 {
        self.degrees.iter().map(|&d| (d as u128) * (d as u128)).sum()
    }

    fn abh(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Abh;
        if self.n() < 2 || self.m() == 0 {
            return convention(id);
        }
        let r = centrality::degree_assortativity(self.g)?;
        finish(id, (1.0 - r) / 2.0)
    }

    fn ecd(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Ecd;
        let n = self.n();
        if n < 2 {
            return convention(id);
        }
        if self.m() == 0 {
            // the eigenvector convention gives all zeros, hence no dispersion
            return convention(id);
        }
        let v = if n <= centrality::FULL_DECOMPOSITION_LIMIT {
            self.eigen()?.principal.clone()
        } else {
            centrality::eigenvector_l2(self.g)?.values
        };
        finish(id, population_std(&v) / ((n - 1) as f64).sqrt() * n as f64)
    }

    fn nbc(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Nbc;
        if self.n() < 3 {
            return convention(id);
        }
        let b = CentralityVector {
            kind: centrality::CentralityKind::Betweenness,
            values: self.paths()?.betweenness.clone(),
        };
        finish(id, shortfall_sum(&b) / (self.n() - 1) as f64)
    }

    fn ncc(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Ncc;
        let n = self.n();
        if n < 3 {
            return convention(id);
        }
        // reuse the betweenness pass when NBC already ran; otherwise a plain BFS is cheaper
        let reach = match self.paths.get() {
            Some(Ok(p)) => p.reach.clone(),
            _ => centrality::reach_and_distance_sums(self.g),
        };
        if let Some(v) = ncc_rational(n, &reach) {
            return finish(id, v);
        }
        let c = CentralityVector {
            kind: centrality::CentralityKind::Closeness,
            values: reach.iter().map(|&(r, d)| centrality::closeness_from_reach(n, r, d)).collect(),
        };
        let scale = (2 * n - 3) as f64 / ((n - 1) * (n - 2)) as f64;
        finish(id, scale * shortfall_sum(&c))
    }

    fn ndc(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Ndc;
        let n = self.n();
        if n < 3 {
            return convention(id);
        }
        // sum of (d_max - d_i) = n d_max - 2m
        let shortfall = n * self.d_max() - 2 * self.m();
        finish(id, shortfall as f64 / ((n - 1) * (n - 2)) as f64)
    }

    fn nde(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Nde;
        let n = self.n();
        if n < 2 {
            return convention(id);
        }
        let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
        for &d in &self.degrees {
            *classes.entry(d).or_default() += 1;
        }
        let nf = n as f64;
        let entropy: f64 = classes
            .values()
            .map(|&count| {
                let p = count as f64 / nf;
                -p * p.ln()
            })
            .sum();
        finish(id, entropy / nf.ln())
    }

    fn ndv(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Ndv;
        let n = self.n();
        if n < 3 {
            return convention(id);
        }
        let ni = n as i128;
        // n^2 * variance
        let spread = ni * self.sum_sq_degrees() as i128 - (2 * self.m() as i128).pow(2);
        finish(id, spread as f64 / ndv_normalizer_scaled(n) as f64)
    }

    fn ngc(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Ngc;
        let n = self.n();
        if n < 3 || self.m() == 0 {
            return convention(id);
        }
        // sum_{i,j} |d_i - d_j| / (2 n^2 dbar) / ((n-2)/n) = S / (4 m (n-2))
        let abs_diffs = pairwise_abs_difference_sum(&self.degrees);
        finish(id, abs_diffs as f64 / (4 * self.m() * (n - 2)) as f64)
    }

    fn nhd(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Nhd;
        if self.n() < 2 || self.m() == 0 {
            return convention(id);
        }
        finish(id, self.d_max() as f64 / (self.n() - 1) as f64)
    }

    fn nht(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Nht;
        if self.n() < 2 || self.m() == 0 {
            return convention(id);
        }
        // (sum d^2 / sum d) / ((m + 1) / 2) with sum d = 2m
        let m = self.m() as u128;
        let num = 2 * self.sum_sq_degrees();
        let den = 2 * m * (m + 1);
        finish(id, num as f64 / den as f64)
    }

    fn nnc(&self) -> Result<MeasureResult, MeasureError> {
        let id = MeasureId::Nnc;
        if self.m() == 0 {
            return convention(id);
        }
        let n = self.n();
        if 2 * self.m() == n * (n - 1) {
            // K_n is the reference graph itself
            return finish(id, 0.0);
        }
        let observed = if n <= centrality::FULL_DECOMPOSITION_LIMIT {
            log_mean_exp(&self.eigen()?.spectrum.eigenvalues)
        } else {
            log_mean_exp(&centrality::adjacency_spectrum(self.g)?.eigenvalues)
        };
        let reference = natural_connectivity_max(n);
        finish(id, (reference - observed) / reference)
    }
}

/// NCC as an exact rational. Closeness is `(r-1)^2 / ((n-1) D)` for reach
/// `r` and distance sum `D`, so grouping nodes by `(r, D)` keeps the sum
/// small. `None` when an intermediate overflows i128.
fn ncc_rational(n: usize, reach: &[(usize, usize)]) -> Option<f64> {
    let mut groups: BTreeMap<(usize, usize), i128> = BTreeMap::new();
    for &key in reach {
        *groups.entry(key).or_default() += 1;
    }
    let n1 = (n - 1) as i128;
    let closeness: Vec<(Ratio<i128>, i128)> = groups
        .into_iter()
        .map(|((r, d), count)| {
            if r <= 1 {
                return Some((Ratio::from_integer(0), count));
            }
            let k = (r - 1) as i128;
            Some((Ratio::new(k.checked_mul(k)?, n1.checked_mul(d as i128)?), count))
        })
        .collect::<Option<_>>()?;
    let top = closeness.iter().map(|c| c.0).max()?;
    let mut gap = Ratio::from_integer(0);
    for (c, count) in closeness {
        let shortfall = top.checked_sub(&c)?.checked_mul(&Ratio::from_integer(count))?;
        gap = gap.checked_add(&shortfall)?;
    }
    let scale = Ratio::new((2 * n - 3) as i128, n1 * (n - 2) as i128);
    let v = gap.checked_mul(&scale)?;
    Some(*v.numer() as f64 / *v.denom() as f64)
}

/// `n^2 * DV_max`, the larger of the star and two-hub degree-variance bounds.
pub fn ndv_normalizer_scaled(n: usize) -> i128 {
    let (star, two_hub) = ndv_normalizer_terms(n);
    star.max(two_hub)
}

/// The star and two-hub terms of the degree-variance bound, both scaled by
/// `n^2`: `(n-1)(n-2)^2` and `(2n^3 - 6n) - (4n - 6)^2`.
pub fn ndv_normalizer_terms(n: usize) -> (i128, i128) {
    let n = n as i128;
    let star = (n - 1) * (n - 2) * (n - 2);
    let two_hub = (2 * n * n * n - 6 * n) - (4 * n - 6) * (4 * n - 6);
    (star, two_hub)
}

/// `ln((1/n) Σ e^{λ_i})`, evaluated with a max shift.
pub fn log_mean_exp(lambdas: &[f64]) -> f64 {
    let top = lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = lambdas.iter().map(|&l| (l - top).exp()).sum();
    top + sum.ln() - (lambdas.len() as f64).ln()
}

/// Natural connectivity of the complete graph on `n` nodes, whose spectrum is
/// `n-1` once and `-1` with multiplicity `n-1`.
pub fn natural_connectivity_max(n: usize) -> f64 {
    let nf = n as f64;
    let top = nf - 1.0;
    top + (1.0 + (nf - 1.0) * (-1.0 - top).exp()).ln() - nf.ln()
}

fn population_std(v: &[f64]) -> f64 {
    if v.windows(2).all(|w| w[0] == w[1]) {
        return 0.0;
    }
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    (v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n).sqrt()
}

/// Σ_i (max - c_i).
fn shortfall_sum(c: &CentralityVector) -> f64 {
    let top = c.max();
    c.values.iter().map(|&x| top - x).sum()
}

/// Σ_i Σ_j |d_i - d_j| over ordered pairs.
fn pairwise_abs_difference_sum(degrees: &[usize]) -> u128 {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as i128;
    let half: i128 = sorted
        .iter()
        .enumerate()
        .map(|(k, &d)| d as i128 * (2 * k as i128 - n + 1))
        .sum();
    2 * half as u128
}

pub fn abh(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Abh.evaluate(g)
}

pub fn ecd(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Ecd.evaluate(g)
}

pub fn nbc(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Nbc.evaluate(g)
}

pub fn ncc(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Ncc.evaluate(g)
}

pub fn ndc(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Ndc.evaluate(g)
}

pub fn nde(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Nde.evaluate(g)
}

pub fn ndv(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Ndv.evaluate(g)
}

pub fn ngc(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Ngc.evaluate(g)
}

pub fn nhd(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Nhd.evaluate(g)
}

pub fn nht(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Nht.evaluate(g)
}

pub fn nnc(g: &Graph) -> Result<MeasureResult, MeasureError> {
    MeasureId::Nnc.evaluate(g)
}

/// One result per requested id, in request order.
pub fn evaluate_all(g: &Graph, measures: &[MeasureId]) -> Result<Vec<MeasureResult>, MeasureError> {
    let ev = Evaluator::new(g);
    measures.iter().map(|&id| ev.evaluate(id)).collect()
}
