//! Fits GD-GNC back onto graphs it generated and reports how close the
//! recovered parameters are.
//!
//! cargo run --release -p softgraph --example self_fit -- [trials]

use std::time::Instant;

use softgraph::{fit, generate_gdgnc, FitModel, GdGncParams, GridSpec};

fn main() {
    let trials: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let (p, q) = (0.75, 0.30);
    for trial in 0..trials {
        let start = Instant::now();
        let real = generate_gdgnc(&GdGncParams { n_nodes: 800, p, q, seed: 1000 + trial }).unwrap();
        let report = fit(&real, FitModel::Gdgnc, &GridSpec::default_for(FitModel::Gdgnc), 7 + trial).unwrap();
        println!(
            "trial {trial}: best p={:.2} q={:.2} median delta={:.4} cells={} ({:.1?})",
            report.best_p,
            report.best_q,
            report.objective,
            report.cells.len(),
            start.elapsed()
        );
    }
}
