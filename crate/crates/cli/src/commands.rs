use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use centra_core::assessment::{self, classify_behavior, score_table, sweep, RuleParams};
use centra_core::axioms::{compliance_table_for, verify_literature_counterexamples, AxiomConfig, Postulate, Witness};
use centra_core::measures::parse_measure_list;
use centra_core::{generate, Graph, MeasureId, Topology};
use serde::Serialize;
use serde_json::json;

use crate::output::{sig6, write_csv, write_json, write_text};
use crate::{Cli, Command, Common, Format};

pub fn run(cli: &Cli) -> Result<()> {
    let c = &cli.common;
    match &cli.command {
        Command::Measure { input, nodes, measures, lcc } => measure(c, input, *nodes, measures, *lcc),
        Command::Sweep { measures, topology, n_range, table } => run_sweep(c, measures, topology, n_range, table.as_deref()),
        Command::Axioms { measures, max_n, perms, table, report } => {
            axioms(c, measures, *max_n, *perms, table.as_deref(), report.as_deref())
        }
        Command::Score { wa, wn, max_n, perms } => score(c, *wa, *wn, *max_n, *perms),
        Command::Generate { topology, n } => {
            let t: Topology = topology.parse()?;
            emit_graph(c, "generate", &generate(t, *n, c.seed)?)
        }
        Command::Lcc { input, nodes } => {
            let g = read_graph(input, *nodes)?;
            emit_graph(c, "lcc", &g.largest_component()?)
        }
    }
}

pub fn read_graph(path: &Path, nodes: Option<usize>) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Graph::from_edge_list(&text, nodes).with_context(|| format!("cannot parse {}", path.display()))
}

fn emit_graph(c: &Common, command: &str, g: &Graph) -> Result<()> {
    match c.format {
        Format::Csv => write_text(c.out.as_deref(), &g.to_edge_list()),
        Format::Json => write_json(
            c.out.as_deref(),
            command,
            c.seed,
            !c.no_timestamp,
            &json!({ "n": g.n(), "m": g.m(), "edges": g.edges() }),
        ),
    }
}

#[derive(Debug, Serialize)]
struct MeasureRecord {
    measure: MeasureId,
    value: f64,
    n: usize,
    m: usize,
    degenerate: bool,
    lcc_applied: bool,
}

fn measure(c: &Common, input: &Path, nodes: Option<usize>, measures: &str, lcc: bool) -> Result<()> {
    let selected = parse_measure_list(measures)?;
    let mut g = read_graph(input, nodes)?;
    let path_based = selected.iter().any(|m| matches!(m, MeasureId::Nbc | MeasureId::Ncc));
    let auto = !lcc && path_based && !g.is_connected();
    if auto {
        eprintln!(
            "warning: {} has {} components; evaluating on the largest connected component",
            input.display(),
            g.components().len()
        );
    }
    let lcc_applied = lcc || auto;
    if lcc_applied {
        g = g.largest_component()?;
    }
    let records: Vec<MeasureRecord> = centra_core::evaluate_all(&g, &selected)?
        .into_iter()
        .map(|r| MeasureRecord {
            measure: r.measure,
            value: r.value,
            n: g.n(),
            m: g.m(),
            degenerate: r.degenerate,
            lcc_applied,
        })
        .collect();
    match c.format {
        Format::Csv => write_csv(
            c.out.as_deref(),
            &["measure", "value", "n", "m", "degenerate", "lcc_applied"],
            &records
                .iter()
                .map(|r| {
                    vec![
                        r.measure.to_string(),
                        sig6(r.value),
                        r.n.to_string(),
                        r.m.to_string(),
                        r.degenerate.to_string(),
                        r.lcc_applied.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => write_json(c.out.as_deref(), "measure", c.seed, !c.no_timestamp, &records),
    }
}

/// Parses `start:stop:step` (inclusive).
pub fn parse_n_range(s: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = s.split(':').collect();
    ensure!(parts.len() == 3, "n-range must be start:stop:step, got {s:?}");
    let num = |p: &str| p.trim().parse::<usize>().with_context(|| format!("bad number {p:?} in n-range {s:?}"));
    let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
    ensure!(step > 0, "n-range step must be positive");
    ensure!(start <= stop, "n-range start {start} exceeds stop {stop}");
    Ok(assessment::n_range(start, stop, step))
}

fn parse_topologies(s: &str) -> Result<Vec<Topology>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Topology::ALL.to_vec());
    }
    Ok(s.split(',').map(str::parse).collect::<Result<_, _>>()?)
}

fn run_sweep(c: &Common, measures: &str, topology: &str, n_range: &str, table: Option<&Path>) -> Result<()> {
    let selected = parse_measure_list(measures)?;
    let topologies = parse_topologies(topology)?;
    let n_values = parse_n_range(n_range)?;
    if selected.iter().any(|m| matches!(m, MeasureId::Nbc | MeasureId::Ncc)) {
        ensure!(n_values[0] >= 3, "path-based measures need n-range start >= 3");
    }
    let series = sweep(&selected, &topologies, &n_values, c.seed)?;

    if let Some(path) = table {
        let params = RuleParams::default();
        let verdicts = series
            .iter()
            .map(|s| classify_behavior(s, &params))
            .collect::<Result<Vec<_>, _>>()?;
        let mut header = vec!["measure"];
        header.extend(topologies.iter().map(|t| t.name()));
        header.push("passed");
        let rows: Vec<Vec<String>> = selected
            .iter()
            .map(|&m| {
                let mine: Vec<_> = verdicts.iter().filter(|v| v.measure == m).collect();
                let mut row = vec![m.to_string()];
                row.extend(mine.iter().map(|v| pass_word(v.passed).to_string()));
                row.push(mine.iter().filter(|v| v.passed).count().to_string());
                row
            })
            .collect();
        match c.format {
            Format::Csv => write_csv(Some(path), &header, &rows)?,
            Format::Json => write_json(Some(path), "sweep-table", c.seed, !c.no_timestamp, &json!({
                "params": params,
                "verdicts": verdicts,
            }))?,
        }
    }

    match c.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = series
                .iter()
                .flat_map(|s| {
                    s.points.iter().map(move |&(n, v)| {
                        vec![s.measure.to_string(), s.topology.to_string(), n.to_string(), sig6(v)]
                    })
                })
                .collect();
            write_csv(c.out.as_deref(), &["measure", "topology", "n", "value"], &rows)
        }
        Format::Json => write_json(c.out.as_deref(), "sweep", c.seed, !c.no_timestamp, &series),
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Compact witness description for the CSV log.
fn witness_text(w: &Witness) -> String {
    let mut s = format!("n={} [{}]", w.graph.n(), w.edge_string());
    if let Some(v) = w.saturated_node {
        s.push_str(&format!(" saturate={v}"));
    }
    if let Some(r) = &w.relabeled {
        let edges: Vec<String> = r.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        s.push_str(&format!(" relabeled=[{}]", edges.join(";")));
    }
    s.push_str(&format!(" value={}", sig6(w.value_before)));
    if let Some(a) = w.value_after {
        s.push_str(&format!(" after={}", sig6(a)));
    }
    s
}

fn axiom_config(c: &Common, max_n: usize, perms: usize) -> AxiomConfig {
    AxiomConfig {
        max_n,
        perms,
        seed: c.seed,
        ..AxiomConfig::default()
    }
}

fn axioms(c: &Common, measures: &str, max_n: usize, perms: usize, table: Option<&Path>, report: Option<&Path>) -> Result<()> {
    let selected = parse_measure_list(measures)?;
    let config = axiom_config(c, max_n, perms);
    let t = compliance_table_for(&selected, &config)?;

    if let Some(path) = table {
        let mut header = vec!["measure".to_string()];
        header.extend(Postulate::ALL.iter().map(|p| p.to_string()));
        header.push("satisfied".to_string());
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows: Vec<Vec<String>> = selected
            .iter()
            .map(|&m| {
                let mut row = vec![m.to_string()];
                row.extend(Postulate::ALL.iter().map(|&p| t.cell(m, p).to_string()));
                row.push(t.satisfied_count(m).to_string());
                row
            })
            .collect();
        match c.format {
            Format::Csv => write_csv(Some(path), &header, &rows)?,
            Format::Json => {
                let cells: Vec<_> = selected
                    .iter()
                    .map(|&m| {
                        json!({
                            "measure": m,
                            "cells": Postulate::ALL.iter().map(|&p| (p.to_string(), t.cell(m, p))).collect::<std::collections::BTreeMap<_, _>>(),
                            "satisfied": t.satisfied_count(m),
                        })
                    })
                    .collect();
                write_json(Some(path), "axioms-table", c.seed, !c.no_timestamp, &cells)?
            }
        }
    }

    if let Some(path) = report {
        let outcomes = verify_literature_counterexamples()?;
        for o in outcomes.iter().filter(|o| !o.confirmed) {
            eprintln!("warning: counterexample {} {} ({}) does not violate", o.case.measure, o.case.axiom, o.case.label);
        }
        match c.format {
            Format::Csv => {
                let rows: Vec<Vec<String>> = outcomes
                    .iter()
                    .map(|o| {
                        vec![
                            o.case.measure.to_string(),
                            o.case.axiom.to_string(),
                            o.case.label.to_string(),
                            o.confirmed.to_string(),
                            o.verdict.witness.as_ref().map(witness_text).unwrap_or_default(),
                        ]
                    })
                    .collect();
                write_csv(Some(path), &["measure", "axiom", "case", "confirmed", "witness"], &rows)?
            }
            Format::Json => write_json(Some(path), "axioms-report", c.seed, !c.no_timestamp, &outcomes)?,
        }
    }

    match c.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = t
                .verdicts
                .iter()
                .map(|v| {
                    vec![
                        v.measure.to_string(),
                        v.axiom.to_string(),
                        v.status.to_string(),
                        v.scope.clone(),
                        v.witness.as_ref().map(witness_text).unwrap_or_default(),
                    ]
                })
                .collect();
            write_csv(c.out.as_deref(), &["measure", "axiom", "status", "scope", "witness_edges"], &rows)
        }
        Format::Json => write_json(c.out.as_deref(), "axioms", c.seed, !c.no_timestamp, &t),
    }
}

fn score(c: &Common, wa: f64, wn: f64, max_n: usize, perms: usize) -> Result<()> {
    if !(wa >= 0.0 && wn >= 0.0) || (wa + wn - 1.0).abs() > 1e-12 {
        bail!("weights must be nonnegative and sum to 1, got --wa {wa} --wn {wn}");
    }
    let axioms = compliance_table_for(&MeasureId::ALL, &axiom_config(c, max_n, perms))?;
    let numerical = assessment::assess(&MeasureId::ALL, &RuleParams::default(), c.seed)?;
    let rows = score_table(&axioms, &numerical, wa, wn)?;
    match c.format {
        Format::Csv => write_csv(
            c.out.as_deref(),
            &["measure", "S_A", "S_N", "w_A", "w_N", "total"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.measure.to_string(),
                        r.s_a.to_string(),
                        r.s_n.to_string(),
                        sig6(r.w_a),
                        sig6(r.w_n),
                        sig6(r.total),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => write_json(c.out.as_deref(), "score", c.seed, !c.no_timestamp, &rows),
    }
}
