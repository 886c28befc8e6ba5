//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits non-zero if any of them fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use softgraph::{
    compare_models, density_of, fit, generate_er, generate_gdgnc, generate_gdgnc_traced, ks_statistic,
    ks_two_sample_test_any, mann_whitney_u, DegreeView, Direction, ErParams, FitModel, GdGncParams, GraphRng,
    GridSpec, GrowthStep, ModelSpec, NodeId,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn density_table() -> Outcome {
    let rows = [("ant", 1252usize, 5763usize, "0.004"), ("jtds", 90, 328, "0.040"), ("vuze", 4633, 18493, "0.001")];
    let mut mismatches = Vec::new();
    let mut shown = Vec::new();
    for (name, n, e, table) in rows {
        let gamma = density_of(n, e).map_err(|err| err.to_string())?;
        let rounded = format!("{gamma:.3}");
        shown.push(format!("{name} {rounded}"));
        if rounded != table {
            let square = e as f64 / (n * n) as f64;
            mismatches.push(format!(
                "{name}: |E|/(|N|(|N|-1)) = {gamma:.5} -> {rounded}, table {table} (|E|/|N|^2 = {square:.5} -> {square:.3})"
            ));
        }
    }
    if mismatches.is_empty() {
        Ok(shown.join(", "))
    } else {
        Err(mismatches.join("; "))
    }
}

fn gnc_reduction() -> Outcome {
    for seed in 0..100 {
        let (g, trace) = generate_gdgnc_traced(&GdGncParams { n_nodes: 200, p: 1.0, q: 0.0, seed })
            .map_err(|e| e.to_string())?;
        for (i, step) in trace.iter().enumerate().skip(1) {
            let GrowthStep::Attach { first, second: None } = step else {
                return Err(format!("seed {seed}: node {i} did not take a single GNC step"));
            };
            let mut expected: BTreeSet<NodeId> = first.snapshot.iter().copied().collect();
            expected.insert(first.target);
            let actual: BTreeSet<NodeId> = g.successors(NodeId(i)).iter().copied().collect();
            if actual != expected {
                return Err(format!("seed {seed}: node {i} has successors {actual:?}, expected {expected:?}"));
            }
        }
        let sinks = g.degree_view(Direction::Out).count(0);
        if sinks != 1 {
            return Err(format!("seed {seed}: {sinks} nodes with out-degree 0"));
        }
    }
    Ok("100 seeds, every node copies {j} + succ(j), one sink each".into())
}

fn reverse_only() -> Outcome {
    for seed in 0..100 {
        let g = generate_gdgnc(&GdGncParams { n_nodes: 200, p: 0.0, q: 0.0, seed }).map_err(|e| e.to_string())?;
        if g.edge_count() != 199 {
            return Err(format!("seed {seed}: {} edges", g.edge_count()));
        }
        let bad = g.nodes().skip(1).find(|&v| g.in_degree(v) != 1);
        if let Some(v) = bad {
            return Err(format!("seed {seed}: node {} has in-degree {}", v.0, g.in_degree(v)));
        }
    }
    Ok("100 seeds, 199 edges, in-degree 1 for every node but 0".into())
}

fn erdos_renyi() -> Outcome {
    let (n, prob) = (500usize, 0.01);
    let pairs = (n * (n - 1)) as f64;
    let (mean, sd) = (pairs * prob, (pairs * prob * (1.0 - prob)).sqrt());
    let mut total = 0.0;
    let mut worst: f64 = 0.0;
    for seed in 0..30 {
        let g = generate_er(&ErParams { n_nodes: n, edge_prob: prob, seed }).map_err(|e| e.to_string())?;
        total += g.density().map_err(|e| e.to_string())?;
        worst = worst.max((g.edge_count() as f64 - mean).abs() / sd);
    }
    let mean_density = total / 30.0;
    let rel = (mean_density - prob).abs() / prob;
    check(
        rel <= 0.10 && worst <= 4.0,
        format!("mean density {mean_density:.5} ({:.2}% off), largest |E| deviation {worst:.2} sd", rel * 100.0),
    )
}

fn dense_grid_ks(a: &[usize], b: &[usize]) -> f64 {
    let max = a.iter().chain(b).copied().max().unwrap();
    let cdf = |xs: &[usize], d: usize| xs.iter().filter(|&&x| x <= d).count() as f64 / xs.len() as f64;
    (0..=max).map(|d| (cdf(a, d) - cdf(b, d)).abs()).fold(0.0, f64::max)
}

fn ks_oracle() -> Outcome {
    let mut rng = GraphRng::new(0x6b73);
    let sample = |rng: &mut GraphRng| {
        let len = 1 + rng.below(40);
        let spread = 1 + rng.below(30);
        (0..len).map(|_| rng.below(spread)).collect::<Vec<_>>()
    };
    for pair in 0..1000 {
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        let got = ks_statistic(
            &DegreeView::from_degrees(Direction::Out, a.iter().copied()),
            &DegreeView::from_degrees(Direction::Out, b.iter().copied()),
        )
        .map_err(|e| e.to_string())?;
        let want = dense_grid_ks(&a, &b);
        if got != want {
            return Err(format!("pair {pair}: {got} vs dense grid {want}"));
        }
    }
    Ok("1000 pairs equal the dense-grid supremum exactly".into())
}

/// Two-sided p-value by enumerating every assignment of pooled positions to
/// the first sample.
fn enumerated_mwu_p(xs: &[f64], ys: &[f64]) -> f64 {
    let pooled: Vec<f64> = xs.iter().chain(ys).copied().collect();
    let n = pooled.len();
    let ranks: Vec<f64> = pooled
        .iter()
        .map(|&v| {
            let below = pooled.iter().filter(|&&w| w < v).count() as f64;
            let equal = pooled.iter().filter(|&&w| w == v).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect();
    let n1 = xs.len();
    let rank_sum = |mask: u32| -> f64 { (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ranks[i]).sum() };
    let mean = (n1 * (n + 1)) as f64 / 2.0;
    let observed = (rank_sum((1u32 << n1) - 1) - mean).abs();
    let (mut hits, mut total) = (0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == n1 {
            total += 1;
            if (rank_sum(mask) - mean).abs() >= observed - 1e-9 {
                hits += 1;
            }
        }
    }
    hits as f64 / total as f64
}

fn mwu_exact() -> Outcome {
    let mut rng = GraphRng::new(0x6d77);
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    for n1 in 1..10 {
        for n2 in 1..=10 - n1 {
            for _ in 0..25 {
                let range = 2 + rng.below(8);
                let xs: Vec<f64> = (0..n1).map(|_| rng.below(range) as f64).collect();
                let ys: Vec<f64> = (0..n2).map(|_| rng.below(range) as f64).collect();
                let got = mann_whitney_u(&xs, &ys, 0.05).map_err(|e| e.to_string())?.p_value;
                let want = enumerated_mwu_p(&xs, &ys);
                worst = worst.max((got - want).abs());
                if (got - want).abs() > 1e-12 {
                    return Err(format!("{xs:?} vs {ys:?}: p = {got}, enumeration {want}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} samples over all n1 + n2 <= 10, max |diff| {worst:e}"))
}

const TRUE_P: f64 = 0.75;
const TRUE_Q: f64 = 0.30;

fn self_fit_real(trial: u64) -> softgraph::DependencyGraph {
    generate_gdgnc(&GdGncParams { n_nodes: 800, p: TRUE_P, q: TRUE_Q, seed: 1000 + trial }).unwrap()
}

fn self_fit(fitted: &mut Vec<(f64, f64)>) -> Outcome {
    let grid = GridSpec::default_for(FitModel::Gdgnc);
    let mut hits = 0;
    for trial in 0..10u64 {
        let report = fit(&self_fit_real(trial), FitModel::Gdgnc, &grid, 7 + trial).map_err(|e| e.to_string())?;
        if (report.best_p - TRUE_P).abs() <= 0.10 + 1e-9 && (report.best_q - TRUE_Q).abs() <= 0.10 + 1e-9 {
            hits += 1;
        }
        fitted.push((report.best_p, report.best_q));
    }
    let shown: Vec<String> = fitted.iter().map(|(p, q)| format!("({p:.2}, {q:.2})")).collect();
    check(hits >= 8, format!("{hits}/10 within 0.10: {}", shown.join(" ")))
}

fn model_separation(fitted: &[(f64, f64)]) -> Outcome {
    let real = self_fit_real(0);
    let (p, q) = fitted.first().copied().unwrap_or((TRUE_P, TRUE_Q));
    let gd = ModelSpec::Gdgnc { p, q };
    let er = ModelSpec::ErdosRenyi { edge_prob: real.density().map_err(|e| e.to_string())? };
    let c = compare_models(&real, &gd, &er, 30, 0.05, 8).map_err(|e| e.to_string())?;
    check(
        c.first.median < c.second.median && c.test.reject_h0,
        format!(
            "median delta GD-GNC({p:.2}, {q:.2}) {:.3} vs ER {:.3}, Mann-Whitney p = {:.3e}",
            c.first.median, c.second.median, c.test.p_value
        ),
    )
}

fn asymmetry() -> Outcome {
    let mut rejected = 0;
    for seed in 0..30 {
        let g = generate_gdgnc(&GdGncParams { n_nodes: 2000, p: 0.8, q: 0.3, seed }).map_err(|e| e.to_string())?;
        let r = ks_two_sample_test_any(&g.degree_view(Direction::In), &g.degree_view(Direction::Out), 0.01)
            .map_err(|e| e.to_string())?;
        if r.reject_h0 {
            rejected += 1;
        }
    }
    check(rejected >= 25, format!("in vs out rejected in {rejected}/30 graphs"))
}

fn run(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_softgraph")).args(args).output().map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!("softgraph {}: {}", args.join(" "), String::from_utf8_lossy(&out.stderr)))
    }
}

fn read(path: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name);
    let s = |p: &Path| p.to_str().unwrap().to_owned();
    for name in ["g1.txt", "g2.txt"] {
        run(&["generate", "--model", "gdgnc", "--nodes", "600", "--p", "0.8", "--q", "0.3", "--seed", "42", "--out", &s(&path(name))])?;
    }
    let generated = read(&path("g1.txt"))?;
    if generated != read(&path("g2.txt"))? {
        return Err("generated edge lists differ".into());
    }
    for name in ["f1.json", "f2.json"] {
        run(&["fit", "--graph", &s(&path("g1.txt")), "--seed", "5", "--out", &s(&path(name))])?;
    }
    let report = read(&path("f1.json"))?;
    check(
        report == read(&path("f2.json"))?,
        format!("edge lists ({} bytes) and fit reports ({} bytes) byte-identical", generated.len(), report.len()),
    )
}

fn main() -> ExitCode {
    let mut fitted = Vec::new();
    let mut failed = 0;
    let mut report = |number: usize, name: &str, outcome: Outcome, started: Instant| {
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {number:>2} {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {number:>2} {name}: {detail} ({secs:.1}s)");
            }
        }
    };
    let t = Instant::now();
    report(1, "density matches Table I rounding", density_table(), t);
    let t = Instant::now();
    report(2, "GNC reduction (p=1, q=0)", gnc_reduction(), t);
    let t = Instant::now();
    report(3, "p=0 degeneration", reverse_only(), t);
    let t = Instant::now();
    report(4, "Erdos-Renyi calibration", erdos_renyi(), t);
    let t = Instant::now();
    report(5, "KS oracle equivalence", ks_oracle(), t);
    let t = Instant::now();
    report(6, "Mann-Whitney exact mode", mwu_exact(), t);
    let t = Instant::now();
    report(7, "self-fit recovery", self_fit(&mut fitted), t);
    let t = Instant::now();
    report(8, "model separation", model_separation(&fitted), t);
    let t = Instant::now();
    report(9, "in/out asymmetry", asymmetry(), t);
    let t = Instant::now();
    report(10, "end-to-end determinism", determinism(), t);
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
