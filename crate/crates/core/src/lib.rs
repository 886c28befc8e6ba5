//! Generative models of software dependency graphs and the statistics used
//! to judge them.
//!
//! * [`graph`]: simple digraphs, degree views (CDF/ICD), density, and the
//!   application/library node filter.
//! * [`generators`]: GNC attachment, GD-GNC, Erdős–Rényi and a
//!   Baxter–Frean style baseline, all reproducible from a seed.
//! * [`stats`]: Kolmogorov–Smirnov distance and test, the δ distance between
//!   graphs, and the Mann–Whitney U test.
//! * [`fitting`]: grid search, replicate evaluation and model comparison.
//! * [`io`]: edge-list files and CSV/JSON output.
//!
//! ```
//! use softgraph::{delta, generate_gdgnc, GdGncParams};
//!
//! let real = generate_gdgnc(&GdGncParams { n_nodes: 500, p: 0.8, q: 0.3, seed: 1 }).unwrap();
//! let synthetic = generate_gdgnc(&GdGncParams { n_nodes: 500, p: 0.8, q: 0.3, seed: 2 }).unwrap();
//! let d = delta(&real, &synthetic).unwrap();
//! assert!(d.delta < 0.2);
//! ```

pub mod fitting;
pub mod generators;
pub mod graph;
pub mod io;
pub mod rng;
pub mod stats;

pub use fitting::{
    compare_models, evaluate, fit, fit_with, Aggregate, CellRecord, Distance, Evaluation, FitError, FitModel,
    FitReport, GridSpec, ModelComparison, Objective, ParamRange,
};
pub use generators::{
    generate_batch, generate_bf, generate_bf_nodes, generate_er, generate_gdgnc, generate_gdgnc_traced, gnc_attach,
    gnc_attach_to, BfParams, ErParams, GdGncParams, GenerateError, GraphModel, GrowthStep, ModelSpec,
};
pub use graph::{density_of, DegreeView, DependencyGraph, Direction, GraphError, NodeClassifier, NodeId, NodeKind};
pub use rng::{replicate_seed, GraphRng};
pub use stats::{
    delta, ks_statistic, ks_two_sample_test, ks_two_sample_test_any, mann_whitney_u, pairwise_ks, DeltaResult,
    KsResult, MwuResult, StatsError,
};

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/statistics.md")]
    mod statistics {}
    #[doc = include_str!("../../../book/src/fitting.md")]
    mod fitting {}
    #[doc = include_str!("../../../book/src/files.md")]
    mod files {}
}
