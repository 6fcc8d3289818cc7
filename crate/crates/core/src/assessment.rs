//! Numerical assessment: measure sweeps over the six canonical topologies,
//! a pinned pass/fail rule per series, and the weighted overall score.

use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::ComplianceTable;
use crate::error::AssessmentError;
use crate::graph::{generate, Topology};
use crate::measures::{Evaluator, MeasureId};

/// Measure values along increasing n for one topology.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSeries {
    pub measure: MeasureId,
    pub topology: Topology,
    pub points: Vec<(usize, f64)>,
}

/// `start, start+step, …` up to and including `stop`.
pub fn n_range(start: usize, stop: usize, step: usize) -> Vec<usize> {
    (start..=stop).step_by(step.max(1)).collect()
}

/// The default grid: n = 5, 10, …, 100.
pub fn default_n_values() -> Vec<usize> {
    n_range(5, 100, 5)
}

/// Evaluates every (measure, topology, n). Series come back in
/// topology-major, then measure order; points in the order of `n_values`.
pub fn sweep(
    measures: &[MeasureId],
    topologies: &[Topology],
    n_values: &[usize],
    seed: u64,
) -> Result<Vec<SweepSeries>, AssessmentError> {
    for &t in topologies {
        for &n in n_values {
            if n < t.min_nodes() {
                generate(t, n, seed)?;
            }
        }
    }
    // the grid is normalized to strictly ascending n
    let mut n_values = n_values.to_vec();
    n_values.sort_unstable();
    n_values.dedup();
    let n_values = &n_values[..];

    let grid: Vec<(Topology, usize)> = topologies
        .iter()
        .flat_map(|&t| n_values.iter().map(move |&n| (t, n)))
        .collect();
    let values: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&(t, n)| -> Result<Vec<f64>, AssessmentError> {
            let g = generate(t, n, seed)?;
            let ev = Evaluator::new(&g);
            measures
                .iter()
                .map(|&m| Ok(ev.evaluate(m)?.value))
                .collect()
        })
        .collect::<Result<_, _>>()?;

    let mut out = Vec::with_capacity(topologies.len() * measures.len());
    for (ti, &t) in topologies.iter().enumerate() {
        for (mi, &m) in measures.iter().enumerate() {
            let points = n_values
                .iter()
                .enumerate()
                .map(|(k, &n)| (n, values[ti * n_values.len() + k][mi]))
                .collect();
            out.push(SweepSeries { measure: m, topology: t, points });
        }
    }
    Ok(out)
}

/// Classifier knobs. Defaults reproduce the published pass matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RuleParams {
    /// Exact-boundary tolerance.
    pub tolerance: f64,
    /// Gap must be non-increasing from this n on.
    pub n_trend: usize,
    /// Required shrink of the gap from n_ref to n_max.
    pub shrink_factor: f64,
    /// Reference n is the first sampled n at or above this.
    pub n_ref_min: usize,
    /// A series whose gap never exceeds this is already at its limit.
    pub gap_floor_exempt: f64,
}

impl Default for RuleParams {
    fn default() -> Self {
        RuleParams {
            tolerance: 1e-9,
            n_trend: 10,
            shrink_factor: 0.5,
            n_ref_min: 10,
            gap_floor_exempt: 1e-3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    ExactBoundary,
    ConvergingLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapStats {
    /// Target value the series is judged against.
    pub limit: f64,
    pub max_gap: f64,
    /// Gap at the reference n (converging rule only).
    pub gap_ref: Option<f64>,
    pub gap_final: f64,
    /// Whether the gap never grows from n_trend on.
    pub non_increasing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BehaviorVerdict {
    pub measure: MeasureId,
    pub topology: Topology,
    pub passed: bool,
    pub rule_applied: Rule,
    pub details: GapStats,
}

/// The value each topology should produce (exactly, or in the limit).
pub fn expected_limit(t: Topology) -> f64 {
    match t {
        Topology::Star | Topology::StarPerturbed => 1.0,
        _ => 0.0,
    }
}

const MIN_POINTS: usize = 5;

pub fn classify_behavior(series: &SweepSeries, params: &RuleParams) -> Result<BehaviorVerdict, AssessmentError> {
    let pts = &series.points;
    if pts.len() < MIN_POINTS {
        return Err(AssessmentError::TooFewPoints { got: pts.len(), min: MIN_POINTS });
    }
    let (first, last) = (pts[0].0, pts[pts.len() - 1].0);
    if first > 10 || last < 100 {
        return Err(AssessmentError::NarrowSpan { low: 10, high: 100 });
    }

    let limit = expected_limit(series.topology);
    let gaps: Vec<(usize, f64)> = pts.iter().map(|&(n, v)| (n, (v - limit).abs())).collect();
    let max_gap = gaps.iter().map(|g| g.1).fold(0.0, f64::max);
    let gap_final = gaps[gaps.len() - 1].1;
    let trend: Vec<f64> = gaps.iter().filter(|g| g.0 >= params.n_trend).map(|g| g.1).collect();
    let non_increasing = trend.windows(2).all(|w| w[1] <= w[0] + params.tolerance);

    let (rule, passed, gap_ref) = if series.topology.is_perturbed() {
        let gap_ref = gaps
            .iter()
            .find(|g| g.0 >= params.n_ref_min)
            .map(|g| g.1)
            .unwrap_or(gaps[0].1);
        let at_limit = max_gap < params.gap_floor_exempt;
        let converging = non_increasing && gap_final <= params.shrink_factor * gap_ref;
        (Rule::ConvergingLimit, at_limit || converging, Some(gap_ref))
    } else {
        (Rule::ExactBoundary, max_gap <= params.tolerance, None)
    };

    Ok(BehaviorVerdict {
        measure: series.measure,
        topology: series.topology,
        passed,
        rule_applied: rule,
        details: GapStats {
            limit,
            max_gap,
            gap_ref,
            gap_final,
            non_increasing,
        },
    })
}

/// Measures × topologies pass matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericalTable {
    pub verdicts: Vec<BehaviorVerdict>,
}

impl NumericalTable {
    pub fn passed(&self, measure: MeasureId, topology: Topology) -> Option<bool> {
        self.verdicts
            .iter()
            .find(|v| v.measure == measure && v.topology == topology)
            .map(|v| v.passed)
    }

    /// Topologies passed (the numerical score).
    pub fn pass_count(&self, measure: MeasureId) -> usize {
        self.verdicts.iter().filter(|v| v.measure == measure && v.passed).count()
    }
}

/// Assembles the pass matrix; every measure present must have all six topologies.
pub fn numerical_table(verdicts: Vec<BehaviorVerdict>) -> Result<NumericalTable, AssessmentError> {
    let mut measures: Vec<MeasureId> = verdicts.iter().map(|v| v.measure).collect();
    measures.sort();
    measures.dedup();
    for m in measures {
        for t in Topology::ALL {
            if !verdicts.iter().any(|v| v.measure == m && v.topology == t) {
                return Err(AssessmentError::MissingVerdict(format!("{m} on {t}")));
            }
        }
    }
    Ok(NumericalTable { verdicts })
}

/// Default sweep and classification for the given measures.
pub fn assess(measures: &[MeasureId], params: &RuleParams, seed: u64) -> Result<NumericalTable, AssessmentError> {
    let series = sweep(measures, &Topology::ALL, &default_n_values(), seed)?;
    numerical_table(
        series
            .iter()
            .map(|s| classify_behavior(s, params))
            .collect::<Result<_, _>>()?,
    )
}

const WEIGHT_SLACK: f64 = 1e-12;

/// `w_A·S_A + w_N·S_N`.
pub fn total_score(s_a: usize, s_n: usize, w_a: f64, w_n: f64) -> Result<f64, AssessmentError> {
    if !(w_a >= 0.0 && w_n >= 0.0) || (w_a + w_n - 1.0).abs() > WEIGHT_SLACK {
        return Err(AssessmentError::Weights { w_a, w_n });
    }
    if s_a > 6 || s_n > 6 {
        return Err(AssessmentError::ScoreRange);
    }
    Ok(w_a * s_a as f64 + w_n * s_n as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScoreRow {
    pub measure: MeasureId,
    #[serde(rename = "S_A")]
    pub s_a: usize,
    #[serde(rename = "S_N")]
    pub s_n: usize,
    pub w_a: f64,
    pub w_n: f64,
    pub total: f64,
}

/// Joins the two tables into score rows, in the compliance table's measure order.
pub fn score_table(
    axioms: &ComplianceTable,
    numerical: &NumericalTable,
    w_a: f64,
    w_n: f64,
) -> Result<Vec<ScoreRow>, AssessmentError> {
    axioms
        .measures()
        .into_iter()
        .map(|m| {
            if numerical.passed(m, Topology::Star).is_none() {
                return Err(AssessmentError::MissingVerdict(m.to_string()));
            }
            let s_a = axioms.satisfied_count(m);
            let s_n = numerical.pass_count(m);
            Ok(ScoreRow {
                measure: m,
                s_a,
                s_n,
                w_a,
                w_n,
                total: total_score(s_a, s_n, w_a, w_n)?,
            })
        })
        .collect()
}
