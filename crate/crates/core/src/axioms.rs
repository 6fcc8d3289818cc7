//! Postulate checks for centralization measures.
//!
//! Calibration postulates (P1a–c, P2) are checked on the canonical graphs up
//! to the node bound. P3 compares each enumerated graph with seeded random
//! relabelings of it. P4–P6 walk every labeled graph up to the bound, in
//! ascending `(n, edge mask, node)` order; the first violation found becomes
//! the witness. A clean search is reported as satisfied *within scope*: it is
//! evidence, not a proof.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{AxiomError, MeasureError};
use crate::graph::{enumerate_graphs, generate, Graph, Topology};
use crate::measures::{Evaluator, MeasureId};

/// Tolerance for every postulate inequality.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    P1a,
    P1b,
    P1c,
    P2,
    P3,
    P4,
    P5,
    P6,
}

impl AxiomId {
    pub const ALL: [AxiomId; 8] = [
        AxiomId::P1a,
        AxiomId::P1b,
        AxiomId::P1c,
        AxiomId::P2,
        AxiomId::P3,
        AxiomId::P4,
        AxiomId::P5,
        AxiomId::P6,
    ];

    pub fn code(self) -> &'static str {
        match self {
            AxiomId::P1a => "P1a",
            AxiomId::P1b => "P1b",
            AxiomId::P1c => "P1c",
            AxiomId::P2 => "P2",
            AxiomId::P3 => "P3",
            AxiomId::P4 => "P4",
            AxiomId::P5 => "P5",
            AxiomId::P6 => "P6",
        }
    }

    /// The compliance-table column this axiom contributes to.
    pub fn column(self) -> Postulate {
        match self {
            AxiomId::P1a | AxiomId::P1b | AxiomId::P1c => Postulate::P1,
            AxiomId::P2 => Postulate::P2,
            AxiomId::P3 => Postulate::P3,
            AxiomId::P4 => Postulate::P4,
            AxiomId::P5 => Postulate::P5,
            AxiomId::P6 => Postulate::P6,
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for AxiomId {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.code().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| AxiomError::Unknown(s.to_string()))
    }
}

impl Serialize for AxiomId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

/// Compliance-table columns; `P1` is the conjunction of P1a, P1b and P1c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Postulate {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
}

impl Postulate {
    pub const ALL: [Postulate; 6] = [
        Postulate::P1,
        Postulate::P2,
        Postulate::P3,
        Postulate::P4,
        Postulate::P5,
        Postulate::P6,
    ];
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomStatus {
    SatisfiedInScope,
    Violated,
}

impl AxiomStatus {
    pub fn is_satisfied(self) -> bool {
        self == AxiomStatus::SatisfiedInScope
    }
}

impl fmt::Display for AxiomStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomStatus::SatisfiedInScope => "satisfied-in-scope",
            AxiomStatus::Violated => "violated",
        })
    }
}

/// A graph on which a postulate fails, with the values that show it.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub graph: Graph,
    /// The node whose saturation breaks P5/P6.
    pub saturated_node: Option<usize>,
    /// The relabeled copy whose value differs (P3).
    pub relabeled: Option<Graph>,
    pub value_before: f64,
    /// Value after saturation or relabeling, when the postulate compares two graphs.
    pub value_after: Option<f64>,
}

impl Witness {
    fn single(graph: Graph, value: f64) -> Self {
        Witness {
            graph,
            saturated_node: None,
            relabeled: None,
            value_before: value,
            value_after: None,
        }
    }

    /// The witness graph's edges as `u-v;u-v;…`.
    pub fn edge_string(&self) -> String {
        self.graph
            .edges()
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Witness", 6)?;
        st.serialize_field("n", &self.graph.n())?;
        st.serialize_field("edges", self.graph.edges())?;
        st.serialize_field("saturated_node", &self.saturated_node)?;
        st.serialize_field("relabeled_edges", &self.relabeled.as_ref().map(Graph::edges))?;
        st.serialize_field("value_before", &self.value_before)?;
        st.serialize_field("value_after", &self.value_after)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomVerdict {
    pub measure: MeasureId,
    pub axiom: AxiomId,
    pub status: AxiomStatus,
    pub witness: Option<Witness>,
    /// What was searched.
    pub scope: String,
}

impl AxiomVerdict {
    fn from_search(measure: MeasureId, axiom: AxiomId, witness: Option<Witness>, scope: String) -> Self {
        AxiomVerdict {
            measure,
            axiom,
            status: if witness.is_some() {
                AxiomStatus::Violated
            } else {
                AxiomStatus::SatisfiedInScope
            },
            witness,
            scope,
        }
    }
}

/// Search bounds for the postulate checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomConfig {
    /// Largest node count enumerated (3..=7).
    pub max_n: usize,
    /// Largest node count for the relabeling check.
    pub p3_max_n: usize,
    /// Largest n for the one-graph-per-n families (K_n, edgeless, S_n); never
    /// below `max_n`.
    pub calibration_max_n: usize,
    /// Random relabelings per graph for P3.
    pub perms: usize,
    pub seed: u64,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        AxiomConfig {
            max_n: 6,
            p3_max_n: 5,
            calibration_max_n: 100,
            perms: 20,
            seed: 42,
        }
    }
}

impl AxiomConfig {
    fn validate(&self) -> Result<(), AxiomError> {
        if !(3..=7).contains(&self.max_n) {
            return Err(AxiomError::Scope(self.max_n));
        }
        Ok(())
    }

    fn calibration_bound(&self) -> usize {
        self.calibration_max_n.max(self.max_n)
    }

    fn p3_bound(&self) -> usize {
        self.p3_max_n.min(self.max_n)
    }

    fn scope(&self, axiom: AxiomId) -> String {
        let n = self.calibration_bound();
        match axiom {
            AxiomId::P1a => "single-node graph".to_string(),
            AxiomId::P1b => format!("complete graphs K_3..K_{n}"),
            AxiomId::P1c => format!("edgeless graphs on 1..={n} nodes"),
            AxiomId::P2 => format!("stars S_3..S_{n}"),
            AxiomId::P3 => format!(
                "all labeled graphs on 1..={} nodes x {} seeded relabelings (seed {})",
                self.p3_bound(),
                self.perms,
                self.seed
            ),
            AxiomId::P4 => format!("all labeled graphs on 1..={} nodes without a saturated node", self.max_n),
            AxiomId::P5 => format!(
                "all labeled graphs on 1..={} nodes with saturated and non-saturated nodes, every non-saturated node",
                self.max_n
            ),
            AxiomId::P6 => format!("all labeled graphs on 1..={} nodes without a saturated node, every node", self.max_n),
        }
    }
}

fn value(ev: &Evaluator<'_>, m: MeasureId) -> Result<f64, MeasureError> {
    ev.evaluate(m).map(|r| r.value)
}

/// Checks one (measure, axiom) pair.
pub fn check_axiom(measure: MeasureId, axiom: AxiomId, config: &AxiomConfig) -> Result<AxiomVerdict, AxiomError> {
    config.validate()?;
    Ok(search(&[measure], axiom, config)?.pop().expect("one verdict per measure"))
}

/// Runs the search for `axiom` over several measures at once, sharing graph
/// enumeration and per-graph intermediate results.
pub fn search(measures: &[MeasureId], axiom: AxiomId, config: &AxiomConfig) -> Result<Vec<AxiomVerdict>, AxiomError> {
    config.validate()?;
    let witnesses = match axiom {
        AxiomId::P1a => calibration(measures, std::iter::once(Graph::empty(1)), 0.0)?,
        AxiomId::P1b => calibration(
            measures,
            (3..=config.calibration_bound()).map(|n| generate(Topology::Complete, n, 0).expect("n >= 1")),
            0.0,
        )?,
        AxiomId::P1c => calibration(measures, (1..=config.calibration_bound()).map(Graph::empty), 0.0)?,
        AxiomId::P2 => calibration(
            measures,
            (3..=config.calibration_bound()).map(|n| generate(Topology::Star, n, 0).expect("n >= 1")),
            1.0,
        )?,
        AxiomId::P3 => relabeling(measures, config)?,
        AxiomId::P4 | AxiomId::P5 | AxiomId::P6 => saturation_search(measures, axiom, config.max_n)?,
    };
    Ok(measures
        .iter()
        .zip(witnesses)
        .map(|(&m, w)| AxiomVerdict::from_search(m, axiom, w, config.scope(axiom)))
        .collect())
}

fn calibration<I>(measures: &[MeasureId], graphs: I, target: f64) -> Result<Vec<Option<Witness>>, AxiomError>
where
    I: IntoIterator<Item = Graph>,
{
    let mut found: Vec<Option<Witness>> = vec![None; measures.len()];
    for g in graphs {
        let ev = Evaluator::new(&g);
        for (slot, &m) in found.iter_mut().zip(measures) {
            if slot.is_none() {
                let v = value(&ev, m)?;
                if (v - target).abs() > TOLERANCE {
                    *slot = Some(Witness::single(g.clone(), v));
                }
            }
        }
    }
    Ok(found)
}

/// Seeded relabelings for the graph with edge mask `mask` on `n` nodes.
pub fn relabelings(n: usize, mask: u64, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 40) | mask);
    (0..count)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}

fn relabeling(measures: &[MeasureId], config: &AxiomConfig) -> Result<Vec<Option<Witness>>, AxiomError> {
    let mut found: Vec<Option<Witness>> = vec![None; measures.len()];
    for n in 1..=config.p3_bound() {
        let mut graphs = enumerate_graphs(n, false).expect("bound checked");
        while let Some((mask, g)) = graphs.next_with_mask() {
            let ev = Evaluator::new(&g);
            let base: Vec<f64> = measures.iter().map(|&m| value(&ev, m)).collect::<Result<_, _>>()?;
            for perm in relabelings(n, mask, config.perms, config.seed) {
                let pg = g.permute(&perm).expect("shuffled identity is a permutation");
                let pev = Evaluator::new(&pg);
                for (i, &m) in measures.iter().enumerate() {
                    if found[i].is_some() {
                        continue;
                    }
                    let after = value(&pev, m)?;
                    if (after - base[i]).abs() > TOLERANCE {
                        found[i] = Some(Witness {
                            graph: g.clone(),
                            saturated_node: None,
                            relabeled: Some(pg.clone()),
                            value_before: base[i],
                            value_after: Some(after),
                        });
                    }
                }
            }
            if found.iter().all(Option::is_some) {
                return Ok(found);
            }
        }
    }
    Ok(found)
}

/// Whether `g` falls in the precondition of P4/P6 (no saturated node) or P5
/// (some saturated and some non-saturated node).
fn in_domain(axiom: AxiomId, g: &Graph) -> bool {
    let saturated = (0..g.n()).filter(|&v| g.is_saturated(v)).count();
    match axiom {
        AxiomId::P4 | AxiomId::P6 => saturated == 0,
        AxiomId::P5 => saturated > 0 && saturated < g.n(),
        _ => false,
    }
}

/// Checks a single graph against P4, P5 or P6. For P5/P6, `node` pins the
/// saturated node; otherwise every eligible node is tried in ascending order.
/// Returns the first violation, or `None` if `g` is outside the postulate's
/// domain or satisfies it.
pub fn violation_on(
    measure: MeasureId,
    axiom: AxiomId,
    g: &Graph,
    node: Option<usize>,
) -> Result<Option<Witness>, AxiomError> {
    if !in_domain(axiom, g) {
        return Ok(None);
    }
    let ev = Evaluator::new(g);
    let mut out = violations_for_graph(&[measure], axiom, g, &ev, node)?;
    Ok(out.pop().flatten())
}

fn violations_for_graph(
    measures: &[MeasureId],
    axiom: AxiomId,
    g: &Graph,
    ev: &Evaluator<'_>,
    node: Option<usize>,
) -> Result<Vec<Option<Witness>>, AxiomError> {
    let mut found: Vec<Option<Witness>> = vec![None; measures.len()];
    let before: Vec<f64> = measures.iter().map(|&m| value(ev, m)).collect::<Result<_, _>>()?;
    if axiom == AxiomId::P4 {
        for (slot, (&v, _)) in found.iter_mut().zip(before.iter().zip(measures)) {
            if v >= 1.0 - TOLERANCE {
                *slot = Some(Witness::single(g.clone(), v));
            }
        }
        return Ok(found);
    }
    let nodes: Vec<usize> = match node {
        Some(v) => vec![v],
        None => (0..g.n()).collect(),
    };
    for v in nodes {
        if v >= g.n() || g.is_saturated(v) {
            continue;
        }
        let sat = g.saturate(v).expect("node is in range and not saturated");
        let sev = Evaluator::new(&sat);
        for (i, &m) in measures.iter().enumerate() {
            if found[i].is_some() {
                continue;
            }
            let after = value(&sev, m)?;
            let broken = match axiom {
                AxiomId::P5 => after > before[i] + TOLERANCE,
                _ => after < before[i] - TOLERANCE,
            };
            if broken {
                found[i] = Some(Witness {
                    graph: g.clone(),
                    saturated_node: Some(v),
                    relabeled: None,
                    value_before: before[i],
                    value_after: Some(after),
                });
            }
        }
        if found.iter().all(Option::is_some) {
            break;
        }
    }
    Ok(found)
}

const CHUNK_MASKS: u64 = 1 << 12;

/// Exhaustive P4/P5/P6 search. Mask ranges are scanned in parallel; the
/// earliest violation in enumeration order wins, independent of scheduling.
fn saturation_search(measures: &[MeasureId], axiom: AxiomId, max_n: usize) -> Result<Vec<Option<Witness>>, AxiomError> {
    let mut found: Vec<Option<Witness>> = vec![None; measures.len()];
    for n in 1..=max_n {
        let open: Vec<usize> = (0..measures.len()).filter(|&i| found[i].is_none()).collect();
        if open.is_empty() {
            break;
        }
        let sub: Vec<MeasureId> = open.iter().map(|&i| measures[i]).collect();
        let total = enumerate_graphs(n, false).expect("bound checked").mask_count();
        let chunks: Vec<Vec<Option<Witness>>> = (0..total.div_ceil(CHUNK_MASKS))
            .into_par_iter()
            .map(|c| -> Result<Vec<Option<Witness>>, AxiomError> {
                let range = c * CHUNK_MASKS..(c + 1) * CHUNK_MASKS;
                let mut local: Vec<Option<Witness>> = vec![None; sub.len()];
                let graphs = enumerate_graphs(n, false).expect("bound checked").with_mask_range(range);
                for g in graphs {
                    if !in_domain(axiom, &g) {
                        continue;
                    }
                    let pending: Vec<usize> = (0..sub.len()).filter(|&i| local[i].is_none()).collect();
                    if pending.is_empty() {
                        break;
                    }
                    let ms: Vec<MeasureId> = pending.iter().map(|&i| sub[i]).collect();
                    let ev = Evaluator::new(&g);
                    for (w, &i) in violations_for_graph(&ms, axiom, &g, &ev, None)?.into_iter().zip(&pending) {
                        if w.is_some() {
                            local[i] = w;
                        }
                    }
                }
                Ok(local)
            })
            .collect::<Result<_, _>>()?;
        for (k, &i) in open.iter().enumerate() {
            found[i] = chunks.iter().find_map(|c| c[k].clone());
        }
    }
    Ok(found)
}

/// Re-evaluates the measure on a violated verdict's witness and confirms the
/// same inequality still fails.
pub fn replay(verdict: &AxiomVerdict) -> Result<bool, AxiomError> {
    let Some(w) = &verdict.witness else {
        return Ok(false);
    };
    let m = verdict.measure;
    let before = m.evaluate(&w.graph)?.value;
    let target = match verdict.axiom {
        AxiomId::P1a | AxiomId::P1b | AxiomId::P1c => Some(0.0),
        AxiomId::P2 => Some(1.0),
        _ => None,
    };
    Ok(match verdict.axiom {
        AxiomId::P1a | AxiomId::P1b | AxiomId::P1c | AxiomId::P2 => {
            let ok_graph = match verdict.axiom {
                AxiomId::P1a => w.graph.n() == 1,
                AxiomId::P1b => w.graph.classify().is_complete,
                AxiomId::P1c => w.graph.m() == 0,
                _ => w.graph.classify().is_star,
            };
            ok_graph && (before - target.expect("calibration target")).abs() > TOLERANCE
        }
        AxiomId::P3 => match &w.relabeled {
            Some(r) => (m.evaluate(r)?.value - before).abs() > TOLERANCE,
            None => false,
        },
        AxiomId::P4 | AxiomId::P5 | AxiomId::P6 => {
            violation_on(m, verdict.axiom, &w.graph, w.saturated_node)?.is_some()
        }
    })
}

/// An explicit counterexample graph from the literature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiteratureCounterexample {
    pub measure: MeasureId,
    pub axiom: AxiomId,
    pub label: &'static str,
    #[serde(skip)]
    pub graph: Graph,
    /// Node to saturate, when the source names one.
    pub node: Option<usize>,
}

fn cx(measure: MeasureId, axiom: AxiomId, label: &'static str, n: usize, edges: &[(usize, usize)], node: Option<usize>) -> LiteratureCounterexample {
    LiteratureCounterexample {
        measure,
        axiom,
        label,
        graph: Graph::from_edges(n, edges.iter().copied()).expect("fixture edges are valid"),
        node,
    }
}

/// First 5-node graph (mask order) with degree multiset {3,3,3,3,4} that
/// violates P5 for NGC, or the first such graph if none does.
fn ngc_p5_witness() -> Graph {
    let candidates: Vec<Graph> = enumerate_graphs(5, false)
        .expect("n = 5 is in scope")
        .filter(|g| {
            let mut d = g.degrees();
            d.sort_unstable();
            d == [3, 3, 3, 3, 4]
        })
        .collect();
    candidates
        .iter()
        .find(|g| matches!(violation_on(MeasureId::Ngc, AxiomId::P5, g, None), Ok(Some(_))))
        .unwrap_or(&candidates[0])
        .clone()
}

/// The counterexamples described for each reported violation.
pub fn literature_counterexamples() -> Vec<LiteratureCounterexample> {
    use AxiomId::*;
    use MeasureId::*;
    let star7_plus_edge: Vec<(usize, usize)> = (1..7).map(|v| (0, v)).chain([(1, 2)]).collect();
    let ngc = ngc_p5_witness();
    vec![
        cx(Abh, P4, "4 nodes, two edges sharing a node", 4, &[(0, 1), (0, 2)], None),
        cx(Abh, P5, "[(0,1),(0,2),(0,3),(0,4),(2,3),(3,4)]", 5, &[(0, 1), (0, 2), (0, 3), (0, 4), (2, 3), (3, 4)], None),
        cx(Abh, P6, "5 nodes, two edges sharing a node", 5, &[(0, 1), (0, 2)], None),
        cx(
            Ecd,
            P5,
            "[(0,3),(0,4),(0,2),(1,3),(1,2),(1,4),(2,3),(3,4)]",
            5,
            &[(0, 3), (0, 4), (0, 2), (1, 3), (1, 2), (1, 4), (2, 3), (3, 4)],
            None,
        ),
        cx(Ecd, P6, "5 nodes, [(0,1),(1,2),(2,3)]", 5, &[(0, 1), (1, 2), (2, 3)], None),
        cx(Nbc, P6, "[(0,1),(0,3),(0,4),(0,5),(1,2)], saturate node 3", 6, &[(0, 1), (0, 3), (0, 4), (0, 5), (1, 2)], Some(3)),
        cx(Ncc, P6, "5 nodes, [(0,1),(0,2),(0,3)]", 5, &[(0, 1), (0, 2), (0, 3)], None),
        cx(Ndc, P6, "[(0,1),(0,3),(0,4),(0,5),(1,2)], saturate node 3", 6, &[(0, 1), (0, 3), (0, 4), (0, 5), (1, 2)], Some(3)),
        cx(Nde, P5, "[(0,3),(0,2),(1,3),(1,4),(2,3),(3,4)]", 5, &[(0, 3), (0, 2), (1, 3), (1, 4), (2, 3), (3, 4)], None),
        cx(Nde, P6, "5 nodes, one edge", 5, &[(0, 1)], None),
        cx(Ndv, P5, "7-node star plus one edge", 7, &star7_plus_edge, None),
        cx(Ndv, P6, "[(0,1),(0,2),(1,3),(1,4)]", 5, &[(0, 1), (0, 2), (1, 3), (1, 4)], None),
        LiteratureCounterexample {
            measure: Ngc,
            axiom: P5,
            label: "5 nodes, degree sequence {3,3,3,3,4}",
            graph: ngc,
            node: None,
        },
        cx(Ngc, P6, "5 nodes, one edge", 5, &[(0, 1)], None),
        cx(
            Nht,
            P5,
            "[(0,1),(0,3),(0,2),(1,2),(1,3),(1,4),(2,4),(3,4)]",
            5,
            &[(0, 1), (0, 3), (0, 2), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4)],
            None,
        ),
        cx(Nht, P6, "5 nodes, one edge", 5, &[(0, 1)], None),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleOutcome {
    pub case: LiteratureCounterexample,
    pub verdict: AxiomVerdict,
    /// False when the graph does not actually violate the postulate.
    pub confirmed: bool,
}

/// Evaluates every listed counterexample. Cases that fail to violate are
/// reported with `confirmed = false` rather than as errors.
pub fn verify_literature_counterexamples() -> Result<Vec<CounterexampleOutcome>, AxiomError> {
    literature_counterexamples()
        .into_iter()
        .map(|case| {
            let witness = violation_on(case.measure, case.axiom, &case.graph, case.node)?;
            let confirmed = witness.is_some();
            let verdict = AxiomVerdict::from_search(
                case.measure,
                case.axiom,
                witness,
                format!("counterexample: {}", case.label),
            );
            Ok(CounterexampleOutcome { case, verdict, confirmed })
        })
        .collect()
}

/// Measures × postulates, from enumeration plus the literature counterexamples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplianceTable {
    pub config: AxiomConfig,
    /// One verdict per (measure, axiom), for all eight axioms.
    pub verdicts: Vec<AxiomVerdict>,
}

impl ComplianceTable {
    pub fn verdict(&self, measure: MeasureId, axiom: AxiomId) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.measure == measure && v.axiom == axiom)
    }

    /// Status of a table column; P1 is violated if any of its parts is.
    pub fn cell(&self, measure: MeasureId, column: Postulate) -> AxiomStatus {
        let violated = self
            .verdicts
            .iter()
            .any(|v| v.measure == measure && v.axiom.column() == column && v.status == AxiomStatus::Violated);
        if violated {
            AxiomStatus::Violated
        } else {
            AxiomStatus::SatisfiedInScope
        }
    }

    /// Number of satisfied columns (the axiomatic score).
    pub fn satisfied_count(&self, measure: MeasureId) -> usize {
        Postulate::ALL
            .iter()
            .filter(|&&c| self.cell(measure, c).is_satisfied())
            .count()
    }

    pub fn measures(&self) -> Vec<MeasureId> {
        let mut ms: Vec<MeasureId> = self.verdicts.iter().map(|v| v.measure).collect();
        ms.dedup();
        ms
    }
}

/// Builds the compliance table for all eleven measures.
pub fn compliance_table(config: &AxiomConfig) -> Result<ComplianceTable, AxiomError> {
    compliance_table_for(&MeasureId::ALL, config)
}

pub fn compliance_table_for(measures: &[MeasureId], config: &AxiomConfig) -> Result<ComplianceTable, AxiomError> {
    config.validate()?;
    let mut by_axiom: Vec<Vec<AxiomVerdict>> = AxiomId::ALL
        .iter()
        .map(|&a| search(measures, a, config))
        .collect::<Result<_, _>>()?;

    for outcome in verify_literature_counterexamples()? {
        if !outcome.confirmed {
            continue;
        }
        let Some(row) = by_axiom.iter_mut().find(|r| r.first().map(|v| v.axiom) == Some(outcome.case.axiom)) else {
            continue;
        };
        if let Some(v) = row.iter_mut().find(|v| v.measure == outcome.case.measure) {
            if v.status.is_satisfied() {
                v.status = AxiomStatus::Violated;
                v.scope = format!("{}; {}", v.scope, outcome.verdict.scope);
                v.witness = outcome.verdict.witness;
            }
        }
    }

    let mut verdicts = Vec::with_capacity(measures.len() * AxiomId::ALL.len());
    for (mi, _) in measures.iter().enumerate() {
        for row in &by_axiom {
            verdicts.push(row[mi].clone());
        }
    }
    Ok(ComplianceTable { config: *config, verdicts })
}
