//! Normalized network centralization measures, with an axiomatic checker
//! and a numerical assessment over canonical topologies.

pub mod assessment;
pub mod axioms;
pub mod centrality;
pub mod error;
pub mod graph;
pub mod measures;

pub use assessment::{classify_behavior, sweep, total_score, BehaviorVerdict, RuleParams, ScoreRow, SweepSeries};
pub use axioms::{check_axiom, compliance_table, AxiomConfig, AxiomId, AxiomStatus, AxiomVerdict, ComplianceTable, Postulate};
pub use error::{AssessmentError, AxiomError, CentralityError, GraphError, MeasureError};
pub use graph::{enumerate_graphs, generate, Graph, StructuralFacts, Topology};
pub use measures::{evaluate_all, MeasureId, MeasureResult};
