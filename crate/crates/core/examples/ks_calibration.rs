//! Rejection rate of the two-sample KS test between GD-GNC graphs that share
//! parameters but not seeds.
//!
//! cargo run --release -p softgraph --example ks_calibration -- [trials] [nodes]

use softgraph::{generate_gdgnc, ks_two_sample_test, Direction, GdGncParams};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let n_nodes: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2000);
    for direction in [Direction::In, Direction::Out] {
        let mut rejected = 0;
        for t in 0..trials {
            let a = generate_gdgnc(&GdGncParams { n_nodes, p: 0.8, q: 0.3, seed: 2 * t }).unwrap();
            let b = generate_gdgnc(&GdGncParams { n_nodes, p: 0.8, q: 0.3, seed: 2 * t + 1 }).unwrap();
            if ks_two_sample_test(&a.degree_view(direction), &b.degree_view(direction), 0.01).unwrap().reject_h0 {
                rejected += 1;
            }
        }
        println!("{direction}-degree: rejected {rejected}/{trials} at alpha=0.01");
    }
}
