//! Simple directed graphs with string-labeled nodes, degree views, and the
//! application/library node split.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on node {0}")]
    SelfLoop(String),
    #[error("node index {0} out of range")]
    UnknownNode(usize),
    #[error("density is undefined for graphs with fewer than 2 nodes (got {0})")]
    UndefinedDensity(usize),
    #[error("degree distribution is empty")]
    EmptyDistribution,
}

/// Index of a node inside a [`DependencyGraph`], assigned in insertion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone)]
enum Labels {
    /// Node `i` is labeled by the decimal string of `i`.
    Sequential,
    Named {
        names: Vec<String>,
        lookup: HashMap<String, NodeId>,
    },
}

/// A simple directed graph: no self-loops, no parallel edges.
///
/// Nodes are kept in insertion order. Generated graphs use integer labels
/// (`0..n`) without storing them; imported graphs carry arbitrary string
/// identifiers. Successor lists are kept sorted, so edge iteration order is
/// deterministic.
#[derive(Debug, Clone)]
pub struct DependencyGraph {
    labels: Labels,
    successors: Vec<Vec<NodeId>>,
    in_degrees: Vec<usize>,
    edge_count: usize,
}

impl Default for DependencyGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl DependencyGraph {
    /// An empty graph with integer node labels.
    pub fn new() -> Self {
        DependencyGraph {
            labels: Labels::Sequential,
            successors: Vec::new(),
            in_degrees: Vec::new(),
            edge_count: 0,
        }
    }

    /// A graph with `n` isolated nodes labeled `0..n`.
    pub fn with_nodes(n: usize) -> Self {
        DependencyGraph {
            labels: Labels::Sequential,
            successors: vec![Vec::new(); n],
            in_degrees: vec![0; n],
            edge_count: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.successors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.successors.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId)
    }

    /// Appends a node. On an integer-labeled graph its label is its index;
    /// on a named graph it receives the first unused decimal label.
    pub fn add_node(&mut self) -> NodeId {
        let id = NodeId(self.node_count());
        if let Labels::Named { names, lookup } = &mut self.labels {
            let mut label = id.0.to_string();
            while lookup.contains_key(&label) {
                label.push('\'');
            }
            lookup.insert(label.clone(), id);
            names.push(label);
        }
        self.successors.push(Vec::new());
        self.in_degrees.push(0);
        id
    }

    /// Returns the node labeled `name`, creating it if needed.
    pub fn intern(&mut self, name: &str) -> NodeId {
        if let Some(id) = self.node_by_label(name) {
            return id;
        }
        self.make_named();
        let id = NodeId(self.node_count());
        if let Labels::Named { names, lookup } = &mut self.labels {
            names.push(name.to_owned());
            lookup.insert(name.to_owned(), id);
        }
        self.successors.push(Vec::new());
        self.in_degrees.push(0);
        id
    }

    fn make_named(&mut self) {
        if let Labels::Sequential = self.labels {
            let names: Vec<String> = (0..self.node_count()).map(|i| i.to_string()).collect();
            let lookup = names
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), NodeId(i)))
                .collect();
            self.labels = Labels::Named { names, lookup };
        }
    }

    pub fn node_by_label(&self, name: &str) -> Option<NodeId> {
        match &self.labels {
            Labels::Sequential => name
                .parse::<usize>()
                .ok()
                .filter(|&i| i < self.node_count() && i.to_string() == name)
                .map(NodeId),
            Labels::Named { lookup, .. } => lookup.get(name).copied(),
        }
    }

    pub fn label(&self, id: NodeId) -> Cow<'_, str> {
        match &self.labels {
            Labels::Sequential => Cow::Owned(id.0.to_string()),
            Labels::Named { names, .. } => Cow::Borrowed(&names[id.0]),
        }
    }

    fn check(&self, id: NodeId) -> Result<(), GraphError> {
        if id.0 < self.node_count() {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(id.0))
        }
    }

    /// Inserts `(source, target)`. Returns `Ok(false)` if the edge was
    /// already present.
    pub fn add_edge(&mut self, source: NodeId, target: NodeId) -> Result<bool, GraphError> {
        self.check(source)?;
        self.check(target)?;
        if source == target {
            return Err(GraphError::SelfLoop(self.label(source).into_owned()));
        }
        let succ = &mut self.successors[source.0];
        match succ.binary_search(&target) {
            Ok(_) => Ok(false),
            Err(pos) => {
                succ.insert(pos, target);
                self.in_degrees[target.0] += 1;
                self.edge_count += 1;
                Ok(true)
            }
        }
    }

    /// Removes `(source, target)` if present.
    pub fn remove_edge(&mut self, source: NodeId, target: NodeId) -> bool {
        let Some(succ) = self.successors.get_mut(source.0) else {
            return false;
        };
        match succ.binary_search(&target) {
            Ok(pos) => {
                succ.remove(pos);
                self.in_degrees[target.0] -= 1;
                self.edge_count -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn contains_edge(&self, source: NodeId, target: NodeId) -> bool {
        self.successors
            .get(source.0)
            .is_some_and(|s| s.binary_search(&target).is_ok())
    }

    /// Sorted successors of `id`.
    pub fn successors(&self, id: NodeId) -> &[NodeId] {
        &self.successors[id.0]
    }

    pub fn out_degree(&self, id: NodeId) -> usize {
        self.successors[id.0].len()
    }

    pub fn in_degree(&self, id: NodeId) -> usize {
        self.in_degrees[id.0]
    }

    pub fn degree(&self, id: NodeId, direction: Direction) -> usize {
        match direction {
            Direction::In => self.in_degree(id),
            Direction::Out => self.out_degree(id),
        }
    }

    /// Per-node degree sequence in node order.
    pub fn degrees(&self, direction: Direction) -> Vec<usize> {
        match direction {
            Direction::In => self.in_degrees.clone(),
            Direction::Out => self.successors.iter().map(Vec::len).collect(),
        }
    }

    /// All edges, ordered by source index then target index.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(s, succ)| succ.iter().map(move |&t| (NodeId(s), t)))
    }

    /// `|E| / (|N| (|N| - 1))`.
    pub fn density(&self) -> Result<f64, GraphError> {
        density_of(self.node_count(), self.edge_count())
    }

    pub fn degree_view(&self, direction: Direction) -> DegreeView {
        DegreeView::from_degrees(direction, self.degrees(direction))
    }

    /// Keeps the application nodes and the edges between them.
    pub fn filter_endo(&self, classifier: &NodeClassifier) -> DependencyGraph {
        let mut out = DependencyGraph::new();
        let mut remap = vec![None; self.node_count()];
        for id in self.nodes() {
            let label = self.label(id);
            if classifier.classify(&label) == NodeKind::App {
                remap[id.0] = Some(out.intern(&label));
            }
        }
        for (s, t) in self.edges() {
            if let (Some(a), Some(b)) = (remap[s.0], remap[t.0]) {
                out.add_edge(a, b).expect("source graph is simple");
            }
        }
        out
    }
}

/// Density for a simple digraph with the given node and edge counts.
pub fn density_of(nodes: usize, edges: usize) -> Result<f64, GraphError> {
    if nodes < 2 {
        return Err(GraphError::UndefinedDensity(nodes));
    }
    Ok(edges as f64 / (nodes as f64 * (nodes as f64 - 1.0)))
}

/// Graphs are equal when they have the same labels in the same order and the
/// same edges, regardless of how labels are stored.
impl PartialEq for DependencyGraph {
    fn eq(&self, other: &Self) -> bool {
        if self.node_count() != other.node_count() || self.edge_count != other.edge_count {
            return false;
        }
        let same_labels = match (&self.labels, &other.labels) {
            (Labels::Sequential, Labels::Sequential) => true,
            _ => self.nodes().all(|id| self.label(id) == other.label(id)),
        };
        same_labels && self.successors == other.successors
    }
}

impl Eq for DependencyGraph {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::In => "in",
            Direction::Out => "out",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sparse degree histogram of one direction of a graph.
///
/// Cumulative forms are defined over observed degrees only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeView {
    direction: Direction,
    counts: BTreeMap<usize, usize>,
    total_nodes: usize,
}

impl DegreeView {
    pub fn from_degrees<I: IntoIterator<Item = usize>>(direction: Direction, degrees: I) -> Self {
        let mut counts = BTreeMap::new();
        let mut total_nodes = 0;
        for d in degrees {
            *counts.entry(d).or_insert(0) += 1;
            total_nodes += 1;
        }
        DegreeView {
            direction,
            counts,
            total_nodes,
        }
    }

    /// Builds a view from `(degree, count)` pairs; zero counts are dropped.
    pub fn from_counts<I: IntoIterator<Item = (usize, usize)>>(direction: Direction, counts: I) -> Self {
        let mut map = BTreeMap::new();
        for (d, c) in counts {
            if c > 0 {
                *map.entry(d).or_insert(0) += c;
            }
        }
        let total_nodes = map.values().sum();
        DegreeView {
            direction,
            counts: map,
            total_nodes,
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_nodes(&self) -> usize {
        self.total_nodes
    }

    pub fn is_empty(&self) -> bool {
        self.total_nodes == 0
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }

    /// Number of nodes with degree `<= d`.
    pub fn count_at_most(&self, degree: usize) -> usize {
        self.counts.range(..=degree).map(|(_, c)| c).sum()
    }

    /// Proportion of nodes with degree `<= d`, for any `d`.
    pub fn cdf_at(&self, degree: usize) -> f64 {
        self.count_at_most(degree) as f64 / self.total_nodes as f64
    }

    /// `(degree, count of nodes with degree <= d)` at each observed degree.
    pub fn cdf_counts(&self) -> Result<Vec<(usize, usize)>, GraphError> {
        self.non_empty()?;
        let mut acc = 0;
        Ok(self
            .counts
            .iter()
            .map(|(&d, &c)| {
                acc += c;
                (d, acc)
            })
            .collect())
    }

    /// `(degree, count of nodes with degree >= d)` at each observed degree.
    pub fn icd_counts(&self) -> Result<Vec<(usize, usize)>, GraphError> {
        self.non_empty()?;
        let mut remaining = self.total_nodes;
        Ok(self
            .counts
            .iter()
            .map(|(&d, &c)| {
                let at_least = remaining;
                remaining -= c;
                (d, at_least)
            })
            .collect())
    }

    pub fn to_cdf(&self) -> Result<Vec<(usize, f64)>, GraphError> {
        let n = self.total_nodes as f64;
        Ok(self.cdf_counts()?.into_iter().map(|(d, c)| (d, c as f64 / n)).collect())
    }

    pub fn to_icd(&self) -> Result<Vec<(usize, f64)>, GraphError> {
        let n = self.total_nodes as f64;
        Ok(self.icd_counts()?.into_iter().map(|(d, c)| (d, c as f64 / n)).collect())
    }

    fn non_empty(&self) -> Result<(), GraphError> {
        if self.is_empty() {
            Err(GraphError::EmptyDistribution)
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    App,
    Lib,
}

/// Splits nodes into application and library nodes by identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeClassifier {
    /// A node is an application node if its label starts with any prefix.
    Prefixes(Vec<String>),
    /// A node is an application node if its label is in the set.
    Explicit(std::collections::HashSet<String>),
}

impl NodeClassifier {
    pub fn from_prefixes<I, S>(prefixes: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        NodeClassifier::Prefixes(prefixes.into_iter().map(Into::into).collect())
    }

    pub fn from_ids<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        NodeClassifier::Explicit(ids.into_iter().map(Into::into).collect())
    }

    pub fn classify(&self, label: &str) -> NodeKind {
        let app = match self {
            NodeClassifier::Prefixes(ps) => ps.iter().any(|p| label.starts_with(p.as_str())),
            NodeClassifier::Explicit(ids) => ids.contains(label),
        };
        if app {
            NodeKind::App
        } else {
            NodeKind::Lib
        }
    }
}
