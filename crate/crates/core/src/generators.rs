//! Seeded generative models: GNC attachment, GD-GNC, Erdős–Rényi and a
//! Baxter–Frean style baseline.
//!
//! Every generator owns a private [`GraphRng`], so identical parameters and
//! seed always give identical graphs.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{DependencyGraph, NodeId};
use crate::rng::{replicate_seed, GraphRng};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("{name} must be a probability in [0, 1], got {value}")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("{0} must be at least 1")]
    NonPositive(&'static str),
    #[error("no node other than {0} to attach to")]
    AttachImpossible(NodeId),
    #[error("node {0} is not in the graph")]
    UnknownNode(NodeId),
    #[error("create_prob must be positive to reach a target node count")]
    NoNodeCreation,
}

fn check_probability(name: &'static str, value: f64) -> Result<(), GenerateError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(GenerateError::InvalidProbability { name, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GdGncParams {
    pub n_nodes: usize,
    /// Probability of growing the new node by GNC attachment.
    pub p: f64,
    /// Probability of a second GNC attachment after the first one.
    pub q: f64,
    pub seed: u64,
}

impl GdGncParams {
    pub fn validate(&self) -> Result<(), GenerateError> {
        if self.n_nodes == 0 {
            return Err(GenerateError::NonPositive("n_nodes"));
        }
        check_probability("p", self.p)?;
        check_probability("q", self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErParams {
    pub n_nodes: usize,
    pub edge_prob: f64,
    pub seed: u64,
}

impl ErParams {
    pub fn validate(&self) -> Result<(), GenerateError> {
        if self.n_nodes == 0 {
            return Err(GenerateError::NonPositive("n_nodes"));
        }
        check_probability("edge_prob", self.edge_prob)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BfParams {
    pub n_iterations: usize,
    pub create_prob: f64,
    pub transfer_prob: f64,
    pub seed: u64,
}

impl BfParams {
    pub fn validate(&self) -> Result<(), GenerateError> {
        check_probability("create_prob", self.create_prob)?;
        check_probability("transfer_prob", self.transfer_prob)
    }
}

/// Outcome of one GNC attachment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attachment {
    /// The uniformly chosen node.
    pub target: NodeId,
    /// Successors of `target` before the attachment.
    pub snapshot: Vec<NodeId>,
    /// Edges actually inserted (already present edges are skipped).
    pub added: Vec<(NodeId, NodeId)>,
}

/// Picks a node other than `new_node` uniformly at random.
fn pick_other(g: &DependencyGraph, new_node: NodeId, rng: &mut GraphRng) -> Result<NodeId, GenerateError> {
    let n = g.node_count();
    if new_node.index() >= n {
        return Err(GenerateError::UnknownNode(new_node));
    }
    if n < 2 {
        return Err(GenerateError::AttachImpossible(new_node));
    }
    let r = rng.below(n - 1);
    Ok(NodeId(if r >= new_node.index() { r + 1 } else { r }))
}

/// Links `new_node` to `target` and to every successor `target` had before
/// the call.
pub fn gnc_attach_to(g: &mut DependencyGraph, new_node: NodeId, target: NodeId) -> Attachment {
    let snapshot = g.successors(target).to_vec();
    let mut added = Vec::with_capacity(snapshot.len() + 1);
    for t in std::iter::once(target).chain(snapshot.iter().copied()) {
        // Only reachable on hand-built graphs where `target` already points at `new_node`.
        if t == new_node {
            continue;
        }
        if g.add_edge(new_node, t).expect("endpoints are valid") {
            added.push((new_node, t));
        }
    }
    Attachment { target, snapshot, added }
}

/// GNC-Attach: chooses a node `j != new_node` uniformly at random and adds
/// edges from `new_node` to `j` and to all successors of `j`.
pub fn gnc_attach(g: &mut DependencyGraph, new_node: NodeId, rng: &mut GraphRng) -> Result<Attachment, GenerateError> {
    let target = pick_other(g, new_node, rng)?;
    Ok(gnc_attach_to(g, new_node, target))
}

/// What happened to one node during GD-GNC growth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthStep {
    /// The first node, added without edges.
    Seed,
    /// GNC branch. `second` is `None` when no second attachment was drawn,
    /// `Some(Err(j))` when it drew the same node `j` again and aborted.
    Attach {
        first: Attachment,
        second: Option<Result<Attachment, NodeId>>,
    },
    /// Reverse branch: an existing node `source` gained an edge to the new node.
    Reverse { source: NodeId },
}

/// Generalized double GNC.
pub fn generate_gdgnc(params: &GdGncParams) -> Result<DependencyGraph, GenerateError> {
    grow_gdgnc(params, |_, _| {})
}

/// Like [`generate_gdgnc`], also returning the step taken for each node.
pub fn generate_gdgnc_traced(params: &GdGncParams) -> Result<(DependencyGraph, Vec<GrowthStep>), GenerateError> {
    let mut trace = Vec::with_capacity(params.n_nodes);
    let g = grow_gdgnc(params, |_, step| trace.push(step))?;
    Ok((g, trace))
}

fn grow_gdgnc<F>(params: &GdGncParams, mut observe: F) -> Result<DependencyGraph, GenerateError>
where
    F: FnMut(NodeId, GrowthStep),
{
    params.validate()?;
    let mut rng = GraphRng::new(params.seed);
    let mut g = DependencyGraph::new();
    for i in 0..params.n_nodes {
        let node = g.add_node();
        if i == 0 {
            observe(node, GrowthStep::Seed);
            continue;
        }
        if rng.chance(params.p) {
            let first = gnc_attach(&mut g, node, &mut rng)?;
            let second = if rng.chance(params.q) {
                let j = pick_other(&g, node, &mut rng)?;
                Some(if j == first.target {
                    Err(j)
                } else {
                    Ok(gnc_attach_to(&mut g, node, j))
                })
            } else {
                None
            };
            observe(node, GrowthStep::Attach { first, second });
        } else {
            let source = pick_other(&g, node, &mut rng)?;
            g.add_edge(source, node).expect("fresh node has no in-edges");
            observe(node, GrowthStep::Reverse { source });
        }
    }
    Ok(g)
}

/// Directed G(n, p): each ordered pair `(a, b)`, `a != b`, is an edge with
/// probability `edge_prob`. Pairs are drawn in row-major order.
pub fn generate_er(params: &ErParams) -> Result<DependencyGraph, GenerateError> {
    params.validate()?;
    let mut rng = GraphRng::new(params.seed);
    let n = params.n_nodes;
    let mut g = DependencyGraph::with_nodes(n);
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.chance(params.edge_prob) {
                g.add_edge(NodeId(a), NodeId(b)).expect("distinct endpoints");
            }
        }
    }
    Ok(g)
}

/// Node chosen with probability proportional to `out_degree + 1`.
fn pick_by_out_degree(g: &DependencyGraph, rng: &mut GraphRng) -> NodeId {
    let total = g.edge_count() + g.node_count();
    let mut ticket = rng.below(total);
    for id in g.nodes() {
        let w = g.out_degree(id) + 1;
        if ticket < w {
            return id;
        }
        ticket -= w;
    }
    unreachable!("weights sum to total")
}

/// Baxter–Frean style growth with out-degree preferential attachment.
///
/// Each iteration:
/// 1. with probability `create_prob`, add a node;
/// 2. try to create one edge from a uniformly chosen source to a target
///    chosen with weight `out_degree + 1`;
/// 3. with probability `transfer_prob`, pick a uniform existing edge and
///    move its target to a node chosen with the same weighting.
///
/// Steps that would create a self-loop or a parallel edge are skipped. This
/// is an approximation of the original model, whose exact rules are not
/// reproduced here.
pub fn generate_bf(params: &BfParams) -> Result<DependencyGraph, GenerateError> {
    params.validate()?;
    let mut rng = GraphRng::new(params.seed);
    let mut g = DependencyGraph::new();
    run_bf(&mut g, &mut rng, params.create_prob, params.transfer_prob, |_, _| true, params.n_iterations);
    Ok(g)
}

/// Runs Baxter–Frean iterations until the graph holds `n_nodes` nodes.
pub fn generate_bf_nodes(n_nodes: usize, create_prob: f64, transfer_prob: f64, seed: u64) -> Result<DependencyGraph, GenerateError> {
    BfParams { n_iterations: 0, create_prob, transfer_prob, seed }.validate()?;
    if n_nodes == 0 {
        return Err(GenerateError::NonPositive("n_nodes"));
    }
    if create_prob <= 0.0 {
        return Err(GenerateError::NoNodeCreation);
    }
    let mut rng = GraphRng::new(seed);
    let mut g = DependencyGraph::new();
    run_bf(&mut g, &mut rng, create_prob, transfer_prob, |g, _| g.node_count() < n_nodes, usize::MAX);
    Ok(g)
}

fn run_bf<F>(g: &mut DependencyGraph, rng: &mut GraphRng, create_prob: f64, transfer_prob: f64, mut keep_going: F, max_iterations: usize)
where
    F: FnMut(&DependencyGraph, usize) -> bool,
{
    let mut it = 0;
    while it < max_iterations && keep_going(g, it) {
        it += 1;
        if rng.chance(create_prob) {
            g.add_node();
        }
        if g.node_count() >= 2 {
            let source = NodeId(rng.below(g.node_count()));
            let target = pick_by_out_degree(g, rng);
            if source != target {
                g.add_edge(source, target).expect("valid endpoints");
            }
        }
        if rng.chance(transfer_prob) && g.edge_count() > 0 {
            let k = rng.below(g.edge_count());
            let (s, t) = g.edges().nth(k).expect("k < edge count");
            let new_target = pick_by_out_degree(g, rng);
            if new_target != s && !g.contains_edge(s, new_target) {
                g.remove_edge(s, t);
                g.add_edge(s, new_target).expect("valid endpoints");
            }
        }
    }
}

/// A generator family with its parameters, minus size and seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelSpec {
    Gdgnc { p: f64, q: f64 },
    ErdosRenyi { edge_prob: f64 },
    /// Runs until the graph reaches the requested node count.
    BaxterFrean { create_prob: f64, transfer_prob: f64 },
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Gdgnc { .. } => "gdgnc",
            ModelSpec::ErdosRenyi { .. } => "er",
            ModelSpec::BaxterFrean { .. } => "bf",
        }
    }
}

/// Anything that can produce a graph of a given size from a seed.
pub trait GraphModel: Sync {
    fn generate(&self, n_nodes: usize, seed: u64) -> Result<DependencyGraph, GenerateError>;
}

impl GraphModel for ModelSpec {
    fn generate(&self, n_nodes: usize, seed: u64) -> Result<DependencyGraph, GenerateError> {
        match *self {
            ModelSpec::Gdgnc { p, q } => generate_gdgnc(&GdGncParams { n_nodes, p, q, seed }),
            ModelSpec::ErdosRenyi { edge_prob } => generate_er(&ErParams { n_nodes, edge_prob, seed }),
            ModelSpec::BaxterFrean { create_prob, transfer_prob } => {
                generate_bf_nodes(n_nodes, create_prob, transfer_prob, seed)
            }
        }
    }
}

/// Generates `replicates` graphs; replicate `k` uses
/// [`replicate_seed`]`(base_seed, k)`. Output is in replicate order.
pub fn generate_batch<M: GraphModel + ?Sized>(
    model: &M,
    n_nodes: usize,
    replicates: usize,
    base_seed: u64,
) -> Result<Vec<DependencyGraph>, GenerateError> {
    if replicates == 0 {
        return Err(GenerateError::NonPositive("replicates"));
    }
    (0..replicates)
        .into_par_iter()
        .map(|k| model.generate(n_nodes, replicate_seed(base_seed, k as u64)))
        .collect()
}
