//! Distances between degree distributions and the hypothesis tests built on
//! them.

use serde::Serialize;
use statrs::function::erf::erfc;
use thiserror::Error;

use crate::graph::{DegreeView, DependencyGraph, Direction};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("sample is empty")]
    EmptySample,
    #[error("cannot compare a {0} view with a {1} view")]
    DirectionMismatch(Direction, Direction),
    #[error("significance level must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("sample contains a non-finite value")]
    NonFinite,
}

fn check_alpha(alpha: f64) -> Result<(), StatsError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(StatsError::InvalidAlpha(alpha))
    }
}

/// Largest absolute gap between the two empirical CDFs.
///
/// Both CDFs are step functions that only change at observed degrees, so the
/// supremum is evaluated exactly over the union of the two supports.
pub fn ks_statistic(a: &DegreeView, b: &DegreeView) -> Result<f64, StatsError> {
    if a.direction() != b.direction() {
        return Err(StatsError::DirectionMismatch(a.direction(), b.direction()));
    }
    ks_unchecked(a, b)
}

fn ks_unchecked(a: &DegreeView, b: &DegreeView) -> Result<f64, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let (na, nb) = (a.total_nodes() as f64, b.total_nodes() as f64);
    let mut ia = a.counts().iter().peekable();
    let mut ib = b.counts().iter().peekable();
    let (mut ca, mut cb) = (0usize, 0usize);
    let mut sup = 0.0f64;
    loop {
        let next = match (ia.peek(), ib.peek()) {
            (None, None) => break,
            (Some((&da, _)), None) => da,
            (None, Some((&db, _))) => db,
            (Some((&da, _)), Some((&db, _))) => da.min(db),
        };
        if let Some((_, &c)) = ia.next_if(|(&d, _)| d == next) {
            ca += c;
        }
        if let Some((_, &c)) = ib.next_if(|(&d, _)| d == next) {
            cb += c;
        }
        sup = sup.max((ca as f64 / na - cb as f64 / nb).abs());
    }
    Ok(sup)
}

/// `c(alpha) = sqrt(-ln(alpha / 2) / 2)`, the asymptotic Kolmogorov quantile
/// (1.628 at 0.01, 1.358 at 0.05).
pub fn ks_coefficient(alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub n1: usize,
    pub n2: usize,
    pub alpha: f64,
    pub critical_value: f64,
    pub reject_h0: bool,
}

/// Two-sample KS test with the asymptotic critical value
/// `c(alpha) * sqrt((n1 + n2) / (n1 * n2))`. Each node contributes its
/// degree once. Ties make the test conservative on discrete data.
pub fn ks_two_sample_test(a: &DegreeView, b: &DegreeView, alpha: f64) -> Result<KsResult, StatsError> {
    check_alpha(alpha)?;
    let statistic = ks_statistic(a, b)?;
    ks_decide(statistic, a.total_nodes(), b.total_nodes(), alpha)
}

/// KS test between two samples regardless of their direction tags, e.g. a
/// graph's in-degrees against its own out-degrees.
pub fn ks_two_sample_test_any(a: &DegreeView, b: &DegreeView, alpha: f64) -> Result<KsResult, StatsError> {
    check_alpha(alpha)?;
    let statistic = ks_unchecked(a, b)?;
    ks_decide(statistic, a.total_nodes(), b.total_nodes(), alpha)
}

fn ks_decide(statistic: f64, n1: usize, n2: usize, alpha: f64) -> Result<KsResult, StatsError> {
    let (f1, f2) = (n1 as f64, n2 as f64);
    let critical_value = ks_coefficient(alpha) * ((f1 + f2) / (f1 * f2)).sqrt();
    Ok(KsResult {
        statistic,
        n1,
        n2,
        alpha,
        critical_value,
        reject_h0: statistic > critical_value,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaResult {
    pub k_in: f64,
    pub k_out: f64,
    pub delta: f64,
}

impl DeltaResult {
    pub fn from_components(k_in: f64, k_out: f64) -> Self {
        DeltaResult { k_in, k_out, delta: k_in.max(k_out) }
    }
}

/// Worse of the in-degree and out-degree KS distances between two graphs.
pub fn delta(real: &DependencyGraph, synthetic: &DependencyGraph) -> Result<DeltaResult, StatsError> {
    let reference = ReferenceDistributions::new(real);
    reference.delta(synthetic)
}

/// Degree views of a fixed graph, computed once and compared against many
/// candidates.
#[derive(Debug, Clone)]
pub struct ReferenceDistributions {
    pub in_degrees: DegreeView,
    pub out_degrees: DegreeView,
}

impl ReferenceDistributions {
    pub fn new(g: &DependencyGraph) -> Self {
        ReferenceDistributions {
            in_degrees: g.degree_view(Direction::In),
            out_degrees: g.degree_view(Direction::Out),
        }
    }

    pub fn delta(&self, other: &DependencyGraph) -> Result<DeltaResult, StatsError> {
        let k_in = ks_statistic(&self.in_degrees, &other.degree_view(Direction::In))?;
        let k_out = ks_statistic(&self.out_degrees, &other.degree_view(Direction::Out))?;
        Ok(DeltaResult::from_components(k_in, k_out))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PValueMethod {
    Exact,
    Normal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MwuResult {
    /// U of the first sample: its rank sum minus `n1 (n1 + 1) / 2`.
    pub u_statistic: f64,
    pub n1: usize,
    pub n2: usize,
    pub p_value: f64,
    pub alpha: f64,
    pub reject_h0: bool,
    pub method: PValueMethod,
}

/// Both samples need at least this many values for the normal approximation.
pub const MWU_NORMAL_MIN: usize = 8;
/// Above this combined size the exact distribution is too costly and the
/// normal approximation is used regardless of group sizes.
pub const MWU_EXACT_MAX_TOTAL: usize = 2000;

/// Doubled midranks (`2 * rank`, integral) of the pooled sample, plus the
/// tie-correction term `sum(t^3 - t)`.
fn doubled_midranks(pooled: &[f64]) -> (Vec<u64>, f64) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&a, &b| pooled[a].total_cmp(&pooled[b]));
    let mut ranks = vec![0u64; pooled.len()];
    let mut ties = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]] == pooled[order[start]] {
            end += 1;
        }
        // Positions start+1 ..= end share midrank (start + 1 + end) / 2.
        let doubled = (start + 1 + end) as u64;
        for &i in &order[start..end] {
            ranks[i] = doubled;
        }
        let t = (end - start) as f64;
        ties += t * t * t - t;
        start = end;
    }
    (ranks, ties)
}

/// Two-sided Mann–Whitney U test with midranks for ties.
///
/// The p-value is exact (permutation distribution of the rank sum, ties
/// included) when either sample has fewer than [`MWU_NORMAL_MIN`] values,
/// and otherwise comes from the normal approximation with tie and
/// continuity corrections.
pub fn mann_whitney_u(xs: &[f64], ys: &[f64], alpha: f64) -> Result<MwuResult, StatsError> {
    check_alpha(alpha)?;
    if xs.is_empty() || ys.is_empty() {
        return Err(StatsError::EmptySample);
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let (n1, n2) = (xs.len(), ys.len());
    let total = n1 + n2;
    let pooled: Vec<f64> = xs.iter().chain(ys).copied().collect();
    let (ranks, ties) = doubled_midranks(&pooled);
    let doubled_sum_x: u64 = ranks[..n1].iter().sum();
    let u_statistic = doubled_sum_x as f64 / 2.0 - (n1 * (n1 + 1)) as f64 / 2.0;

    let exact = (n1 < MWU_NORMAL_MIN || n2 < MWU_NORMAL_MIN) && total <= MWU_EXACT_MAX_TOTAL;
    let (p_value, method) = if exact {
        (exact_p_value(&ranks, n1), PValueMethod::Exact)
    } else {
        (normal_p_value(u_statistic, n1, n2, ties), PValueMethod::Normal)
    };
    Ok(MwuResult {
        u_statistic,
        n1,
        n2,
        p_value,
        alpha,
        reject_h0: p_value < alpha,
        method,
    })
}

/// Share of size-`n1` subsets of the pooled ranks whose doubled rank sum is
/// at least as far from its mean as the observed one.
fn exact_p_value(ranks: &[u64], n1: usize) -> f64 {
    let total = ranks.len();
    // Work with the smaller group; the two sums determine each other.
    let (m, observed): (usize, u64) = if n1 <= total - n1 {
        (n1, ranks[..n1].iter().sum())
    } else {
        (total - n1, ranks[n1..].iter().sum())
    };
    let mean = (m * (total + 1)) as i64;
    let distance = (observed as i64 - mean).abs();
    let max_sum = ranks.iter().sum::<u64>() as usize;
    // ways[k][s]: number of k-subsets of the ranks seen so far summing to s.
    let mut ways = vec![vec![0.0f64; max_sum + 1]; m + 1];
    ways[0][0] = 1.0;
    let mut reach = 0usize;
    for &r in ranks {
        let r = r as usize;
        reach += r;
        for k in (1..=m).rev() {
            let (lower, upper) = ways.split_at_mut(k);
            let (prev, cur) = (&lower[k - 1], &mut upper[0]);
            for s in (r..=reach.min(max_sum)).rev() {
                cur[s] += prev[s - r];
            }
        }
    }
    let all: f64 = ways[m].iter().sum();
    let extreme: f64 = ways[m]
        .iter()
        .enumerate()
        .filter(|(s, _)| (*s as i64 - mean).abs() >= distance)
        .map(|(_, w)| w)
        .sum();
    (extreme / all).min(1.0)
}

fn normal_p_value(u: f64, n1: usize, n2: usize, ties: f64) -> f64 {
    let (f1, f2) = (n1 as f64, n2 as f64);
    let n = f1 + f2;
    let mean = f1 * f2 / 2.0;
    let variance = f1 * f2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if variance <= 0.0 {
        return 1.0;
    }
    let z = ((u - mean).abs() - 0.5).max(0.0) / variance.sqrt();
    erfc(z / std::f64::consts::SQRT_2).min(1.0)
}

/// One test in a pairwise sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairTest {
    pub first: String,
    pub second: String,
    pub direction: Direction,
    pub result: KsResult,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RejectionCount {
    pub direction: Direction,
    pub rejected: usize,
    pub not_rejected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseKs {
    pub alpha: f64,
    pub tests: Vec<PairTest>,
    pub counts: Vec<RejectionCount>,
}

impl PairwiseKs {
    pub fn total(&self) -> RejectionCount {
        self.counts.iter().fold(
            RejectionCount { direction: Direction::In, rejected: 0, not_rejected: 0 },
            |acc, c| RejectionCount {
                direction: acc.direction,
                rejected: acc.rejected + c.rejected,
                not_rejected: acc.not_rejected + c.not_rejected,
            },
        )
    }
}

/// Runs the two-sample KS test on every unordered pair of graphs, once for
/// in-degrees and once for out-degrees.
pub fn pairwise_ks(graphs: &[(String, DependencyGraph)], alpha: f64) -> Result<PairwiseKs, StatsError> {
    check_alpha(alpha)?;
    let refs: Vec<ReferenceDistributions> = graphs.iter().map(|(_, g)| ReferenceDistributions::new(g)).collect();
    let mut tests = Vec::new();
    let mut counts = Vec::new();
    for direction in [Direction::In, Direction::Out] {
        let mut count = RejectionCount { direction, rejected: 0, not_rejected: 0 };
        for i in 0..graphs.len() {
            for j in (i + 1)..graphs.len() {
                let pick = |r: &ReferenceDistributions| match direction {
                    Direction::In => r.in_degrees.clone(),
                    Direction::Out => r.out_degrees.clone(),
                };
                let result = ks_two_sample_test(&pick(&refs[i]), &pick(&refs[j]), alpha)?;
                if result.reject_h0 {
                    count.rejected += 1;
                } else {
                    count.not_rejected += 1;
                }
                tests.push(PairTest {
                    first: graphs[i].0.clone(),
                    second: graphs[j].0.clone(),
                    direction,
                    result,
                });
            }
        }
        counts.push(count);
    }
    Ok(PairwiseKs { alpha, tests, counts })
}
