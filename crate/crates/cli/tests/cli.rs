use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use softgraph::io::parse_edge_list;
use softgraph::{generate_gdgnc, GdGncParams};

fn softgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_softgraph")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = softgraph(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    path.to_str().unwrap().to_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Parses the single data row of `analyze` CSV output.
fn analyze_row(csv: &str) -> Vec<String> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("nodes,edges,density,self_loops_dropped,duplicates_dropped"));
    lines.next().unwrap().split(',').map(str::to_owned).collect()
}

#[test]
fn generate_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.edges");
    ok(&["generate", "--model", "gdgnc", "--nodes", "1000", "--p", "0.8", "--q", "0.3", "--seed", "7", "--out", s(&g)]);
    let row = analyze_row(&ok(&["analyze", s(&g)]));
    assert_eq!(row[0], "1000");
    assert!(row[1].parse::<usize>().unwrap() >= 999);
}

#[test]
fn generated_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.edges");
    ok(&["generate", "--model", "gdgnc", "--nodes", "300", "--p", "0.6", "--q", "0.2", "--seed", "3", "--out", s(&path)]);
    let expected = generate_gdgnc(&GdGncParams { n_nodes: 300, p: 0.6, q: 0.2, seed: 3 }).unwrap();
    let (parsed, _) = parse_edge_list(&path).unwrap();
    assert_eq!(parsed.node_count(), expected.node_count());
    let edges = |g: &softgraph::DependencyGraph| {
        let mut e: Vec<(String, String)> =
            g.edges().map(|(a, b)| (g.label(a).into_owned(), g.label(b).into_owned())).collect();
        e.sort();
        e
    };
    assert_eq!(edges(&parsed), edges(&expected));
}

#[test]
fn isolated_nodes_survive_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("er.edges");
    ok(&["generate", "--model", "er", "--nodes", "50", "--edge-prob", "0.001", "--seed", "1", "--out", s(&path)]);
    assert_eq!(analyze_row(&ok(&["analyze", s(&path)]))[0], "50");
}

#[test]
fn analyze_density_equals_parsed_density() {
    let path = fixture("gdgnc-800.edges");
    let row = analyze_row(&ok(&["analyze", &path]));
    let (g, _) = parse_edge_list(Path::new(&path)).unwrap();
    assert_eq!(row[2].parse::<f64>().unwrap(), g.density().unwrap());
}

#[test]
fn analyze_reports_dropped_lines() {
    let row = analyze_row(&ok(&["analyze", &fixture("messy.edges")]));
    assert_eq!(row, ["3", "2", "0.3333333333333333", "1", "1"]);
}

#[test]
fn analyze_emits_all_distributions() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["analyze", &fixture("shop.edges"), "--emit-dir", s(dir.path())]);
    for direction in ["in", "out"] {
        for form in ["cdf", "icd"] {
            for mode in ["proportion", "count"] {
                let text = std::fs::read_to_string(dir.path().join(format!("{direction}_{form}_{mode}.csv"))).unwrap();
                assert!(text.starts_with("degree,value\n"), "{direction}_{form}_{mode}");
            }
        }
    }
    let cdf = std::fs::read_to_string(dir.path().join("in_cdf_proportion.csv")).unwrap();
    assert!(cdf.trim_end().ends_with(",1"), "{cdf}");
}

#[test]
fn distribution_of_chain() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain.edges");
    std::fs::write(&chain, "a b\nb c\n").unwrap();
    let out = ok(&["distribution", s(&chain), "--direction", "out", "--form", "icd", "--mode", "count"]);
    assert_eq!(out, "degree,value\n0,3\n1,2\n");
}

#[test]
fn filter_endo_keeps_application_edges() {
    let out = ok(&["filter-endo", &fixture("shop.edges"), "--app-prefixes", &fixture("shop.app-prefixes")]);
    assert_eq!(out.lines().count(), 11);
    assert!(out.lines().all(|l| l.split(' ').all(|id| id.starts_with("com.shop."))));
}

#[test]
fn compare_identical_graphs() {
    let g = fixture("gdgnc-800.edges");
    let out = ok(&["compare", &g, &g]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.ends_with(",false") && r.split(',').nth(1) == Some("0")));
}

#[test]
fn pairwise_over_fifteen_graphs() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..15u64 {
        let p = format!("{}", 0.5 + 0.03 * i as f64);
        let out = dir.path().join(format!("g{i:02}.edges"));
        ok(&["generate", "--model", "gdgnc", "--nodes", "400", "--p", &p, "--q", "0.3", "--seed", &i.to_string(), "--out", s(&out)]);
    }
    let detail = dir.path().join("detail.json");
    let out = softgraph(&["pairwise-ks", s(dir.path()), "--detail", s(&detail)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("direction,rejected,not_rejected,tests,rejected_ratio"));
    let rows: Vec<Vec<usize>> =
        lines.map(|l| l.split(',').skip(1).take(3).map(|c| c.parse().unwrap()).collect()).collect();
    // in, out, total
    assert_eq!(rows.len(), 3);
    for row in &rows {
        assert_eq!(row[0] + row[1], row[2]);
    }
    assert_eq!((rows[0][2], rows[1][2], rows[2][2]), (105, 105, 210));
    let tests: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&detail).unwrap()).unwrap();
    assert_eq!(tests.as_array().unwrap().len(), 210);
}

#[test]
fn evaluate_er_uses_reference_density() {
    let out = ok(&["evaluate", "--graph", &fixture("gdgnc-800.edges"), "--model", "er", "--replicates", "5", "--seed", "1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["spec"]["edge_prob"].as_f64().unwrap(), 4069.0 / (800.0 * 799.0));
    let csv = ok(&["evaluate", "--graph", &fixture("gdgnc-800.edges"), "--model", "er", "--replicates", "5", "--seed", "1"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("model,replicates,delta_min,delta_median,delta_max"));
    assert!(lines.next().unwrap().starts_with("er,5,"));
}

#[test]
fn compare_models_prefers_gdgnc() {
    let out = ok(&[
        "compare-models", "--graph", &fixture("gdgnc-800.edges"), "--a", "gdgnc:p=0.75,q=0.3", "--b", "er",
        "--replicates", "15", "--seed", "4", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(doc["first"]["evaluation"]["median"].as_f64() < doc["second"]["evaluation"]["median"].as_f64());
    assert_eq!(doc["test"]["reject_h0"], true);
}

#[test]
fn seed_is_reported() {
    let out = softgraph(&["generate", "--model", "er", "--nodes", "5", "--edge-prob", "0.5"]);
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    let seed = stderr.strip_prefix("seed: ").unwrap().trim();
    let again = ok(&["generate", "--model", "er", "--nodes", "5", "--edge-prob", "0.5", "--seed", seed]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), again);
}

#[test]
fn exit_codes() {
    assert_eq!(softgraph(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(softgraph(&["generate", "--model", "gdgnc", "--nodes", "lots"]).status.code(), Some(1));
    assert_eq!(softgraph(&["--help"]).status.code(), Some(0));
    assert_eq!(softgraph(&["analyze", "/nonexistent/graph.edges"]).status.code(), Some(2));
    let invalid = softgraph(&["generate", "--model", "gdgnc", "--nodes", "10", "--p", "1.5", "--seed", "1"]);
    assert_eq!(invalid.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&invalid.stderr).contains("error:"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.edges");
    std::fs::write(&bad, "a b\nonly-one-id\n").unwrap();
    assert_eq!(softgraph(&["analyze", s(&bad)]).status.code(), Some(3));
}

#[test]
fn help_documents_exit_codes_and_columns() {
    let help = ok(&["--help"]);
    assert!(help.contains("2 I/O error"));
    assert!(help.contains("p,q,stage,delta_min,delta_median,delta_max"));
}

#[test]
fn generated_fixture_is_reproducible() {
    let out = ok(&["generate", "--model", "gdgnc", "--nodes", "800", "--p", "0.75", "--q", "0.3", "--seed", "2024"]);
    assert_eq!(out, std::fs::read_to_string(fixture("gdgnc-800.edges")).unwrap());
}
