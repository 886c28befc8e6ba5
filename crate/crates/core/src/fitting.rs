//! Grid-search calibration of generator parameters against a reference graph.
//!
//! Every cell is scored over the same replicate seeds
//! (`replicate_seed(base_seed, k)` for `k = 0..replicates`), so neighbouring
//! cells differ only by their parameters.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::generators::{GenerateError, GraphModel, ModelSpec};
use crate::graph::DependencyGraph;
use crate::rng::replicate_seed;
use crate::stats::{mann_whitney_u, DeltaResult, MwuResult, ReferenceDistributions, StatsError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("reference graph has no nodes")]
    EmptyReference,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("replicates must be at least 1")]
    NoReplicates,
    #[error("generation failed at p={p}, q={q}: {source}")]
    Generation {
        p: f64,
        q: f64,
        #[source]
        source: GenerateError,
    },
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// Inclusive parameter range `lo, lo + step, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

/// Grid values are rounded to this many decimals so that `0.1 + 0.05` and
/// `0.15` name the same cell.
const GRID_DECIMALS: i32 = 10;

fn snap(x: f64) -> f64 {
    let scale = 10f64.powi(GRID_DECIMALS);
    (x * scale).round() / scale
}

impl ParamRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Self {
        ParamRange { lo, hi, step }
    }

    /// A range holding the single value `v`.
    pub fn fixed(v: f64) -> Self {
        ParamRange { lo: v, hi: v, step: 1.0 }
    }

    pub fn unit(step: f64) -> Self {
        ParamRange { lo: 0.0, hi: 1.0, step }
    }

    pub fn validate(&self, name: &str) -> Result<(), FitError> {
        let ok = self.lo.is_finite()
            && self.hi.is_finite()
            && self.step.is_finite()
            && 0.0 <= self.lo
            && self.lo <= self.hi
            && self.hi <= 1.0
            && self.step > 0.0;
        if ok {
            Ok(())
        } else {
            Err(FitError::InvalidGrid(format!(
                "{name} range [{}, {}] step {} must satisfy 0 <= lo <= hi <= 1 and step > 0",
                self.lo, self.hi, self.step
            )))
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| snap(self.lo + i as f64 * self.step)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregate {
    Median,
    Min,
}

/// Which distance a cell is scored on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    /// `max(k_in, k_out)`.
    Delta,
    In,
    Out,
}

impl Distance {
    pub fn pick(self, d: &DeltaResult) -> f64 {
        match self {
            Distance::Delta => d.delta,
            Distance::In => d.k_in,
            Distance::Out => d.k_out,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Objective {
    pub aggregate: Aggregate,
    pub distance: Distance,
}

impl Default for Objective {
    fn default() -> Self {
        Objective { aggregate: Aggregate::Median, distance: Distance::Delta }
    }
}

/// Model families that can be grid-fitted; the two grid axes map onto the
/// family's two probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    /// Axes are `(p, q)`.
    Gdgnc,
    /// Axes are `(create_prob, transfer_prob)`.
    BaxterFrean,
}

impl FitModel {
    pub fn spec(self, p: f64, q: f64) -> ModelSpec {
        match self {
            FitModel::Gdgnc => ModelSpec::Gdgnc { p, q },
            FitModel::BaxterFrean => ModelSpec::BaxterFrean { create_prob: p, transfer_prob: q },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub p_range: ParamRange,
    pub q_range: ParamRange,
    pub replicates: usize,
    /// Step of the optional second pass, run over `best ± coarse step`.
    pub refine_step: Option<f64>,
}

impl GridSpec {
    /// Step 0.05 on both axes, 30 replicates, then a 0.01 pass around the
    /// best cell.
    pub fn default_for(model: FitModel) -> Self {
        let p_range = match model {
            FitModel::Gdgnc => ParamRange::unit(0.05),
            // A Baxter–Frean run never reaches its node count without creation.
            FitModel::BaxterFrean => ParamRange::new(0.05, 1.0, 0.05),
        };
        GridSpec { p_range, q_range: ParamRange::unit(0.05), replicates: 30, refine_step: Some(0.01) }
    }

    pub fn validate(&self) -> Result<(), FitError> {
        self.p_range.validate("p")?;
        self.q_range.validate("q")?;
        if self.replicates == 0 {
            return Err(FitError::NoReplicates);
        }
        if let Some(s) = self.refine_step {
            if !(s.is_finite() && s > 0.0) {
                return Err(FitError::InvalidGrid(format!("refine step must be positive, got {s}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellRecord {
    pub p: f64,
    pub q: f64,
    /// 1 for the coarse pass, 2 for the refinement pass.
    pub stage: u8,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

impl CellRecord {
    fn score(&self, aggregate: Aggregate) -> f64 {
        match aggregate {
            Aggregate::Median => self.median,
            Aggregate::Min => self.min,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub model: FitModel,
    pub best_p: f64,
    pub best_q: f64,
    pub objective: f64,
    pub criterion: Objective,
    pub replicates: usize,
    pub node_count_used: usize,
    pub base_seed: u64,
    /// Cells in evaluation order: coarse pass by `(p, q)`, then the refinement pass.
    pub cells: Vec<CellRecord>,
}

/// Distances of a model's replicates to a reference graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub min: f64,
    pub median: f64,
    pub max: f64,
    pub deltas: Vec<DeltaResult>,
}

impl Evaluation {
    pub fn values(&self, distance: Distance) -> Vec<f64> {
        self.deltas.iter().map(|d| distance.pick(d)).collect()
    }
}

/// `(min, median, max)`; the median of an even count averages the two middle values.
pub fn summarize(values: &[f64]) -> (f64, f64, f64) {
    assert!(!values.is_empty(), "summary of an empty sample");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    (sorted[0], median, sorted[n - 1])
}

fn run_replicates<M: GraphModel + ?Sized>(
    reference: &ReferenceDistributions,
    model: &M,
    n_nodes: usize,
    replicates: usize,
    base_seed: u64,
) -> Result<Vec<DeltaResult>, FitError> {
    if replicates == 0 {
        return Err(FitError::NoReplicates);
    }
    (0..replicates)
        .into_par_iter()
        .map(|k| {
            let g = model.generate(n_nodes, replicate_seed(base_seed, k as u64))?;
            Ok(reference.delta(&g)?)
        })
        .collect()
}

/// Scores `replicates` graphs of `model`, each sized like `real`, by δ.
pub fn evaluate<M: GraphModel + ?Sized>(
    real: &DependencyGraph,
    model: &M,
    replicates: usize,
    base_seed: u64,
) -> Result<Evaluation, FitError> {
    if real.is_empty() {
        return Err(FitError::EmptyReference);
    }
    let reference = ReferenceDistributions::new(real);
    let deltas = run_replicates(&reference, model, real.node_count(), replicates, base_seed)?;
    let values: Vec<f64> = deltas.iter().map(|d| d.delta).collect();
    let (min, median, max) = summarize(&values);
    Ok(Evaluation { min, median, max, deltas })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelComparison {
    pub first: Evaluation,
    pub second: Evaluation,
    pub test: MwuResult,
}

/// Evaluates two models with the same seeds and tests whether their δ
/// samples come from the same population.
pub fn compare_models<A, B>(
    real: &DependencyGraph,
    first: &A,
    second: &B,
    replicates: usize,
    alpha: f64,
    base_seed: u64,
) -> Result<ModelComparison, FitError>
where
    A: GraphModel + ?Sized,
    B: GraphModel + ?Sized,
{
    let first = evaluate(real, first, replicates, base_seed)?;
    let second = evaluate(real, second, replicates, base_seed)?;
    let test = mann_whitney_u(&first.values(Distance::Delta), &second.values(Distance::Delta), alpha)?;
    Ok(ModelComparison { first, second, test })
}

/// Grid search with the default objective (median δ).
pub fn fit(real: &DependencyGraph, model: FitModel, grid: &GridSpec, base_seed: u64) -> Result<FitReport, FitError> {
    fit_with(real, model, grid, base_seed, Objective::default())
}

pub fn fit_with(
    real: &DependencyGraph,
    model: FitModel,
    grid: &GridSpec,
    base_seed: u64,
    objective: Objective,
) -> Result<FitReport, FitError> {
    if real.is_empty() {
        return Err(FitError::EmptyReference);
    }
    grid.validate()?;
    let reference = ReferenceDistributions::new(real);
    let n_nodes = real.node_count();

    let coarse = cells_of(&grid.p_range, &grid.q_range);
    let mut cells = score_cells(&reference, model, &coarse, n_nodes, grid.replicates, base_seed, objective, 1)?;

    if let Some(step) = grid.refine_step {
        let best = best_cell(&cells, objective.aggregate);
        let around = |c: f64, r: &ParamRange| {
            ParamRange::new(snap((c - r.step).max(r.lo)), snap((c + r.step).min(r.hi)), step)
        };
        let fine: Vec<(f64, f64)> = cells_of(&around(best.p, &grid.p_range), &around(best.q, &grid.q_range))
            .into_iter()
            .filter(|&(p, q)| !coarse.contains(&(p, q)))
            .collect();
        cells.extend(score_cells(&reference, model, &fine, n_nodes, grid.replicates, base_seed, objective, 2)?);
    }

    let best = best_cell(&cells, objective.aggregate);
    Ok(FitReport {
        model,
        best_p: best.p,
        best_q: best.q,
        objective: best.score(objective.aggregate),
        criterion: objective,
        replicates: grid.replicates,
        node_count_used: n_nodes,
        base_seed,
        cells,
    })
}

fn cells_of(p: &ParamRange, q: &ParamRange) -> Vec<(f64, f64)> {
    let qs = q.values();
    p.values().into_iter().flat_map(|p| qs.iter().map(move |&q| (p, q))).collect()
}

#[allow(clippy::too_many_arguments)]
fn score_cells(
    reference: &ReferenceDistributions,
    model: FitModel,
    cells: &[(f64, f64)],
    n_nodes: usize,
    replicates: usize,
    base_seed: u64,
    objective: Objective,
    stage: u8,
) -> Result<Vec<CellRecord>, FitError> {
    cells
        .par_iter()
        .map(|&(p, q)| {
            let deltas = run_replicates(reference, &model.spec(p, q), n_nodes, replicates, base_seed).map_err(|e| match e {
                FitError::Generate(source) => FitError::Generation { p, q, source },
                other => other,
            })?;
            let values: Vec<f64> = deltas.iter().map(|d| objective.distance.pick(d)).collect();
            let (min, median, max) = summarize(&values);
            Ok(CellRecord { p, q, stage, min, median, max })
        })
        .collect()
}

/// Lowest score; ties go to the lexicographically smallest `(p, q)`.
fn best_cell(cells: &[CellRecord], aggregate: Aggregate) -> &CellRecord {
    cells
        .iter()
        .min_by(|a, b| {
            a.score(aggregate)
                .total_cmp(&b.score(aggregate))
                .then(a.p.total_cmp(&b.p))
                .then(a.q.total_cmp(&b.q))
        })
        .expect("grid has at least one cell")
}
