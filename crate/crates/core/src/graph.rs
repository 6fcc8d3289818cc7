//! Simple undirected graphs on nodes `0..n`.
//!
//! A [`Graph`] is an immutable value: every operation that "changes" a graph
//! (saturation, relabeling, component extraction) returns a new one. Edges are
//! stored once as `(u, v)` with `u < v`, sorted, alongside sorted adjacency
//! lists.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest node count accepted by [`enumerate_graphs`].
pub const MAX_ENUMERATION_NODES: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from unordered pairs. Duplicates (in either orientation)
    /// collapse; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u == v {
                return Err(GraphError::SelfLoop { line: None, node: u });
            }
            let hi = u.max(v);
            if hi >= n {
                return Err(GraphError::NodeOutOfRange { line: None, node: hi, n });
            }
            edges.push((u.min(v), hi));
        }
        Ok(Self::from_normalized(n, edges))
    }

    /// `edges` must already hold only `u < v < n` pairs.
    fn from_normalized(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Graph whose edge set is the subset of the lexicographic pair list
    /// `(0,1), (0,2), …, (n-2,n-1)` selected by the bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let edges = all_pairs(n)
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .collect();
        Self::from_normalized(n, edges)
    }

    /// Parses the edge-list text format: one `u v` pair per line, `#` comment
    /// lines and blank lines ignored.
    ///
    /// Without `explicit_n` the node count is one more than the largest id seen
    /// (zero for an edgeless input).
    pub fn from_edge_list(text: &str, explicit_n: Option<usize>) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut max_id: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_ascii_whitespace();
            let mut next_id = || -> Result<usize, GraphError> {
                let token = tokens.next().ok_or_else(|| GraphError::Malformed {
                    line,
                    token: trimmed.to_string(),
                })?;
                token.parse::<usize>().map_err(|_| GraphError::Malformed {
                    line,
                    token: token.to_string(),
                })
            };
            let u = next_id()?;
            let v = next_id()?;
            if let Some(extra) = tokens.next() {
                return Err(GraphError::Malformed {
                    line,
                    token: extra.to_string(),
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line: Some(line), node: u });
            }
            let hi = u.max(v);
            if let Some(n) = explicit_n {
                if hi >= n {
                    return Err(GraphError::NodeOutOfRange { line: Some(line), node: hi, n });
                }
            }
            max_id = Some(max_id.map_or(hi, |m| m.max(hi)));
            edges.push((u.min(v), hi));
        }
        let n = explicit_n.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
        Ok(Self::from_normalized(n, edges))
    }

    /// Serializes to the edge-list text format accepted by
    /// [`Graph::from_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# n={} m={}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_saturated(&self, v: usize) -> bool {
        self.n > 0 && self.degree(v) == self.n - 1
    }

    /// Adds every missing edge at `v`, making it adjacent to all other nodes.
    pub fn saturate(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::NodeOutOfRange { line: None, node: v, n: self.n });
        }
        if self.is_saturated(v) {
            return Err(GraphError::AlreadySaturated(v));
        }
        let mut edges = self.edges.clone();
        edges.extend(
            (0..self.n)
                .filter(|&u| u != v && !self.has_edge(v, u))
                .map(|u| (u.min(v), u.max(v))),
        );
        Ok(Self::from_normalized(self.n, edges))
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::NotPermutation);
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::NotPermutation);
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        Ok(Self::from_normalized(self.n, edges))
    }

    /// Connected components, each sorted ascending, listed in order of their
    /// smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Induced subgraph on the largest component, relabeled `0..k` in
    /// original order. Ties go to the component holding the smallest id.
    pub fn largest_component(&self) -> Result<Graph, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let comps = self.components();
        let mut best = &comps[0];
        for c in &comps[1..] {
            if c.len() > best.len() {
                best = c;
            }
        }
        Ok(self.induced(best))
    }

    /// Induced subgraph on `nodes` (sorted ascending), relabeled by position.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in nodes.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u].min(index[v]), index[u].max(index[v])))
            .collect();
        Self::from_normalized(nodes.len(), edges)
    }

    pub fn classify(&self) -> StructuralFacts {
        StructuralFacts::of(self)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}{}{v}", if self.n > 10 { "-" } else { "" })?;
        }
        f.write_str("}")
    }
}

/// Lexicographic list of all unordered pairs on `n` nodes.
pub fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Degree-level facts used by the postulate predicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralFacts {
    pub is_complete: bool,
    pub is_star: bool,
    pub is_regular: bool,
    pub saturated_nodes: Vec<usize>,
    pub component_count: usize,
    pub degree_sequence: Vec<usize>,
}

impl StructuralFacts {
    fn of(g: &Graph) -> Self {
        let n = g.n();
        let degrees = g.degrees();
        let saturated_nodes: Vec<usize> = (0..n).filter(|&v| g.is_saturated(v)).collect();
        let is_complete = n >= 1 && saturated_nodes.len() == n;
        let is_star = n >= 3
            && g.m() == n - 1
            && saturated_nodes.len() == 1
            && degrees.iter().filter(|&&d| d == 1).count() == n - 1;
        let is_regular = degrees.windows(2).all(|w| w[0] == w[1]);
        StructuralFacts {
            is_complete,
            is_star,
            is_regular,
            saturated_nodes,
            component_count: g.components().len(),
            degree_sequence: degrees,
        }
    }
}

/// Canonical test topologies and their single-edge perturbations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Topology {
    Star,
    Ring,
    Complete,
    StarPerturbed,
    RingPerturbed,
    CompletePerturbed,
}

impl Topology {
    pub const ALL: [Topology; 6] = [
        Topology::Star,
        Topology::Ring,
        Topology::Complete,
        Topology::StarPerturbed,
        Topology::RingPerturbed,
        Topology::CompletePerturbed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Topology::Star => "star",
            Topology::Ring => "ring",
            Topology::Complete => "complete",
            Topology::StarPerturbed => "star-perturbed",
            Topology::RingPerturbed => "ring-perturbed",
            Topology::CompletePerturbed => "complete-perturbed",
        }
    }

    pub fn min_nodes(self) -> usize {
        match self {
            Topology::Star | Topology::Complete => 1,
            _ => 3,
        }
    }

    pub fn is_perturbed(self) -> bool {
        matches!(
            self,
            Topology::StarPerturbed | Topology::RingPerturbed | Topology::CompletePerturbed
        )
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Topology {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Topology::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| GraphError::UnknownTopology(s.to_string()))
    }
}

/// Builds the canonical graph of the given kind on `n` nodes.
///
/// Perturbations are fixed rules: the star moves leaf `n-1` from the hub to
/// leaf 1, the ring moves edge `{n-1,0}` onto node 1 (leaving node 0 as a
/// pendant of node 1; at `n = 3` this just drops the edge), and the complete
/// graph loses edge `{0,1}`.
/// `_seed` is accepted for interface stability; every kind is deterministic.
pub fn generate(topology: Topology, n: usize, _seed: u64) -> Result<Graph, GraphError> {
    let min = topology.min_nodes();
    if n < min {
        return Err(GraphError::TooFewNodes { kind: topology.name(), n, min });
    }
    let star = || (1..n).map(|v| (0, v)).collect::<Vec<_>>();
    let ring = || {
        let mut e: Vec<_> = (0..n - 1).map(|v| (v, v + 1)).collect();
        e.push((0, n - 1));
        e
    };
    let edges: Vec<(usize, usize)> = match topology {
        Topology::Star => star(),
        Topology::Ring => ring(),
        Topology::Complete => all_pairs(n).collect(),
        Topology::StarPerturbed => {
            let mut e = star();
            e.retain(|&p| p != (0, n - 1));
            e.push((1, n - 1));
            e
        }
        Topology::RingPerturbed => {
            let mut e = ring();
            e.retain(|&p| p != (0, n - 1));
            e.push((1, n - 1));
            e
        }
        Topology::CompletePerturbed => all_pairs(n).filter(|&p| p != (0, 1)).collect(),
    };
    Graph::from_edges(n, edges)
}

/// Every labeled simple graph on `n` nodes, in ascending edge-mask order.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<GraphEnumerator, GraphError> {
    if n == 0 || n > MAX_ENUMERATION_NODES {
        return Err(GraphError::EnumerationOutOfScope(n));
    }
    Ok(GraphEnumerator {
        n,
        next_mask: 0,
        end_mask: 1u64 << (n * (n - 1) / 2),
        connected_only,
    })
}

/// Streaming iterator over edge masks; see [`enumerate_graphs`].
#[derive(Clone, Debug)]
pub struct GraphEnumerator {
    n: usize,
    next_mask: u64,
    end_mask: u64,
    connected_only: bool,
}

impl GraphEnumerator {
    /// Total number of masks this enumerator walks (before any filtering).
    pub fn mask_count(&self) -> u64 {
        self.end_mask
    }

    /// Restricts the walk to masks in `range`, for partitioned consumption.
    pub fn with_mask_range(mut self, range: std::ops::Range<u64>) -> Self {
        self.next_mask = range.start.min(self.end_mask);
        self.end_mask = range.end.min(self.end_mask);
        self
    }

    /// Like `next`, but also yields the edge mask of each graph.
    pub fn next_with_mask(&mut self) -> Option<(u64, Graph)> {
        while self.next_mask < self.end_mask {
            let mask = self.next_mask;
            self.next_mask += 1;
            let g = Graph::from_mask(self.n, mask);
            if !self.connected_only || g.is_connected() {
                return Some((mask, g));
            }
        }
        None
    }
}

impl Iterator for GraphEnumerator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        self.next_with_mask().map(|(_, g)| g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn parse_star_infers_n() {
        let s = Graph::from_edge_list("0 1\n0 2\n0 3", None).unwrap();
        assert_eq!((s.n(), s.m()), (4, 3));
        assert!(s.classify().is_star);
    }

    #[test]
    fn parse_empty_with_explicit_n() {
        let e = Graph::from_edge_list("", Some(5)).unwrap();
        assert_eq!((e.n(), e.m()), (5, 0));
        assert_eq!(Graph::from_edge_list("# nothing\n\n", None).unwrap().n(), 0);
    }

    #[test]
    fn parse_collapses_duplicates() {
        let d = Graph::from_edge_list("0 1\n1 0\n0 1", None).unwrap();
        assert_eq!((d.n(), d.m()), (2, 1));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Graph::from_edge_list("0 1\n# c\n2 2\n", None) {
            Err(GraphError::SelfLoop { line: Some(3), node: 2 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match Graph::from_edge_list("0 1\n1 5\n", Some(4)) {
            Err(GraphError::NodeOutOfRange { line: Some(2), node: 5, n: 4 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Graph::from_edge_list("0 x\n", None),
            Err(GraphError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("0 1 2\n", None),
            Err(GraphError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("\n3\n", None),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("-1 2\n", None),
            Err(GraphError::Malformed { line: 1, .. })
        ));
    }

    #[test]
    fn generators() {
        let s5 = generate(Topology::Star, 5, 0).unwrap();
        assert_eq!(s5.edges(), &[(0, 1), (0, 2), (0, 3), (0, 4)]);

        let kp = generate(Topology::CompletePerturbed, 4, 0).unwrap();
        assert_eq!(kp.m(), 5);
        assert!(!kp.has_edge(0, 1));

        let rp = generate(Topology::RingPerturbed, 6, 0).unwrap();
        assert_eq!(rp.edges(), &[(0, 1), (1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]);
        let mut degs = rp.degrees();
        assert_eq!(degs, vec![1, 3, 2, 2, 2, 2]);
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 2, 2, 2, 2, 3]);

        let sp = generate(Topology::StarPerturbed, 5, 0).unwrap();
        assert_eq!(sp.edges(), &[(0, 1), (0, 2), (0, 3), (1, 4)]);

        assert!(matches!(
            generate(Topology::Ring, 2, 0),
            Err(GraphError::TooFewNodes { min: 3, .. })
        ));
        assert!(generate(Topology::StarPerturbed, 2, 0).is_err());
        assert_eq!(generate(Topology::Complete, 1, 0).unwrap().m(), 0);
    }

    #[test]
    fn generated_topologies_classify_as_their_kind() {
        for n in 3..30 {
            assert!(generate(Topology::Star, n, 0).unwrap().classify().is_star);
            assert!(generate(Topology::Complete, n, 0).unwrap().classify().is_complete);
            let ring = generate(Topology::Ring, n, 0).unwrap().classify();
            assert!(ring.is_regular && ring.degree_sequence.iter().all(|&d| d == 2));
            assert_eq!(generate(Topology::StarPerturbed, n, 0).unwrap().m(), n - 1);
            // at n = 3 the moved edge lands on an existing one
            let rp = generate(Topology::RingPerturbed, n, 0).unwrap();
            assert_eq!(rp.m(), if n == 3 { 2 } else { n });
            assert!(rp.is_connected());
            assert_eq!(
                generate(Topology::CompletePerturbed, n, 0).unwrap().m(),
                n * (n - 1) / 2 - 1
            );
        }
    }

    #[test]
    fn saturate_examples() {
        let path = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let s = path.saturate(0).unwrap();
        assert_eq!(s.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(path.m(), 3);

        let cx = g(6, &[(0, 1), (0, 3), (0, 4), (0, 5), (1, 2)]);
        let s = cx.saturate(3).unwrap();
        let added: Vec<_> = s.edges().iter().filter(|e| !cx.edges().contains(e)).copied().collect();
        assert_eq!(added, vec![(1, 3), (2, 3), (3, 4), (3, 5)]);

        let s3 = Graph::empty(3).saturate(0).unwrap();
        assert!(s3.classify().is_star);

        assert!(matches!(s3.saturate(0), Err(GraphError::AlreadySaturated(0))));
        assert!(s3.saturate(9).is_err());
    }

    #[test]
    fn classify_examples() {
        let s5 = generate(Topology::Star, 5, 0).unwrap().classify();
        assert!(s5.is_star);
        assert_eq!(s5.saturated_nodes, vec![0]);
        assert_eq!(s5.component_count, 1);

        let k4 = generate(Topology::Complete, 4, 0).unwrap().classify();
        assert!(k4.is_complete && k4.is_regular);
        assert_eq!(k4.saturated_nodes, vec![0, 1, 2, 3]);

        let one = g(5, &[(0, 1)]).classify();
        assert_eq!(one.component_count, 4);
        assert!(!one.is_regular);

        assert_eq!(Graph::empty(0).classify().component_count, 0);
        // K2 is complete but not a star (stars need n >= 3)
        assert!(!g(2, &[(0, 1)]).classify().is_star);
    }

    #[test]
    fn largest_component_examples() {
        let tri2 = g(7, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let l = tri2.largest_component().unwrap();
        assert_eq!(l, g(3, &[(0, 1), (1, 2), (0, 2)]));

        let p = g(5, &[(0, 1), (1, 2), (3, 4)]);
        assert_eq!(p.largest_component().unwrap(), g(3, &[(0, 1), (1, 2)]));

        let later = g(6, &[(0, 1), (2, 3), (3, 5), (4, 5)]);
        assert_eq!(
            later.largest_component().unwrap(),
            g(4, &[(0, 1), (1, 3), (2, 3)])
        );

        let c = generate(Topology::Ring, 5, 0).unwrap();
        assert_eq!(c.largest_component().unwrap(), c);
        assert!(matches!(Graph::empty(0).largest_component(), Err(GraphError::EmptyGraph)));
    }

    #[test]
    fn permute_examples() {
        let s4 = generate(Topology::Star, 4, 0).unwrap();
        let p = s4.permute(&[3, 1, 2, 0]).unwrap();
        assert_eq!(p.edges(), &[(0, 3), (1, 3), (2, 3)]);
        assert_eq!(s4.permute(&[0, 1, 2, 3]).unwrap(), s4);

        let r5 = generate(Topology::Ring, 5, 0).unwrap();
        for k in 0..5 {
            let rot: Vec<usize> = (0..5).map(|i| (i + k) % 5).collect();
            assert_eq!(r5.permute(&rot).unwrap(), r5);
        }
        assert!(matches!(s4.permute(&[0, 0, 1, 2]), Err(GraphError::NotPermutation)));
        assert!(matches!(s4.permute(&[0, 1, 2]), Err(GraphError::NotPermutation)));
        assert!(matches!(s4.permute(&[0, 1, 2, 4]), Err(GraphError::NotPermutation)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(3, false).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(4, false).unwrap().count(), 64);
        assert_eq!(enumerate_graphs(1, false).unwrap().count(), 1);
        assert!(matches!(enumerate_graphs(8, false), Err(GraphError::EnumerationOutOfScope(8))));
        assert!(enumerate_graphs(0, false).is_err());
    }

    #[test]
    fn connected_enumeration_matches_brute_force_count() {
        // Independent count: a 3-node graph is connected iff it has >= 2 edges.
        let brute = (0u32..8).filter(|m| m.count_ones() >= 2).count();
        assert_eq!(brute, 4);
        assert_eq!(enumerate_graphs(3, true).unwrap().count(), brute);
        // Known labeled connected counts for n = 4, 5.
        assert_eq!(enumerate_graphs(4, true).unwrap().count(), 38);
        assert_eq!(enumerate_graphs(5, true).unwrap().count(), 728);
    }

    #[test]
    fn mask_ranges_partition_the_walk() {
        let full: Vec<Graph> = enumerate_graphs(4, false).unwrap().collect();
        let mut parts = Vec::new();
        for r in [0..10, 10..40, 40..64] {
            parts.extend(enumerate_graphs(4, false).unwrap().with_mask_range(r));
        }
        assert_eq!(full, parts);
    }
}
