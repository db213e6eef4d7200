use serde_json::Value;
use sortnet::experiments::first_swap_experiment;
use sortnet::fredholm::{dyson_tail, gap_probability};
use sortnet::kernels::{k_lambda, ContourConfig, LambdaKernelQuery};
use sortnet::network::sample_network;
use sortnet::rng::{self, DEFAULT_SEED};
use sortnet::tableau::YoungDiagram;
use std::path::PathBuf;
use std::process::{Command, Output};

fn sortnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sortnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sortnet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn zero_timing(mut v: Value) -> Value {
    v["wall_clock_secs"] = Value::from(0.0);
    v
}

#[test]
fn help_and_usage_errors() {
    let o = sortnet(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("Usage"));

    let o = sortnet(&["fredholm", "--t", "2", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    assert_eq!(sortnet(&[]).status.code(), Some(2));
    assert_eq!(sortnet(&["sample-network", "--n", "1"]).status.code(), Some(2));
    assert_eq!(sortnet(&["--seed", "abc", "sample-network", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn fredholm_matches_library() {
    let v = json(&sortnet(&["fredholm", "--t", "2.0", "--nodes", "64", "--format", "json"]));
    let f = gap_probability(2.0, 64).unwrap();
    assert_eq!(v["t"].as_f64(), Some(2.0));
    assert_eq!(v["gap_probability"].as_f64(), Some(f));
    assert_eq!(v["first_swap_cdf"].as_f64(), Some(1.0 - f));
    assert_eq!(v["dyson_tail"].as_f64(), Some(dyson_tail(2.0).unwrap()));
}

#[test]
fn fredholm_exit_codes() {
    let o = sortnet(&["fredholm", "--t", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("t must be"));
    let o = sortnet(&["fredholm", "--t", "50", "--nodes", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn fredholm_batch_csv() {
    let grid = temp_path("grid.csv");
    std::fs::write(&grid, "t\n0\n0.5\n3\n").unwrap();
    let out = stdout(&sortnet(&["fredholm", "--grid", grid.to_str().unwrap(), "--format", "csv"]));
    let lines: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines[0], "t,gap_probability,first_swap_cdf,dyson_tail");
    assert_eq!(lines.len(), 4);
    let row: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(row[0], "0.5");
    let m = sortnet::fredholm::default_nodes(0.5);
    assert_eq!(row[1].parse::<f64>().unwrap(), gap_probability(0.5, m).unwrap());
    assert!(lines[1].ends_with(','), "no tail value at t = 0");
}

#[test]
fn sample_network_is_byte_identical() {
    let out = stdout(&sortnet(&["sample-network", "--n", "12"]));
    let lib = sample_network(12, &mut rng::stream(DEFAULT_SEED, 0)).unwrap();
    assert!(out.contains(&format!("\"network\":{}", lib.to_json())));
    assert!(out.contains(&format!("\"seed\":{DEFAULT_SEED}")));

    let csv = stdout(&sortnet(&["--seed", "5", "sample-network", "--n", "7", "--format", "csv"]));
    let lib = sample_network(7, &mut rng::stream(5, 0)).unwrap();
    let (header, body) = csv.split_once('\n').unwrap();
    assert!(header.starts_with('#') && header.contains("seed=5"));
    assert_eq!(body, lib.wiring_csv());
}

#[test]
fn random_seed_is_reported() {
    let a = json(&sortnet(&["sample-network", "--n", "20", "--seed", "random"]));
    let seed = a["params"]["seed"].as_u64().unwrap();
    let b = json(&sortnet(&["sample-network", "--n", "20", "--seed", &seed.to_string()]));
    assert_eq!(a, b);
}

#[test]
fn sample_tableau_output() {
    let v = json(&sortnet(&["sample-tableau", "--shape", "4,3,2,1", "--poissonize"]));
    assert_eq!(v["tableau"]["shape"], serde_json::json!([4, 3, 2, 1]));
    assert_eq!(v["params"]["poissonize"], Value::Bool(true));
    let csv = stdout(&sortnet(&["sample-tableau", "--shape", "2,1", "--format", "csv"]));
    assert_eq!(csv.lines().nth(1), Some("i,j,value"));
    assert_eq!(csv.lines().count(), 5);
    assert_eq!(sortnet(&["sample-tableau", "--shape", "1,2"]).status.code(), Some(2));
}

#[test]
fn kernel_outputs() {
    let v = json(&sortnet(&["kernel", "edge", "--x1", "0", "--u1", "0.5", "--x2", "-1", "--u2", "1"]));
    assert_eq!(v["value"].as_f64(), Some(sortnet::kernels::k_edge(0, 0.5, -1, 1.0)));
    assert_eq!(v["query"]["x2"].as_i64(), Some(-1));

    let args = ["kernel", "lambda", "--shape", "2,1", "--x1", "0", "--t1", "0.5", "--x2", "1", "--t2", "0.7"];
    let v = json(&sortnet(&args));
    let q = LambdaKernelQuery {
        shape: YoungDiagram::new(vec![2, 1]).unwrap(),
        n: 2,
        x1: 0,
        t1: 0.5,
        x2: 1,
        t2: 0.7,
    };
    let lib = k_lambda(&q, &ContourConfig::default()).unwrap();
    assert_eq!(v["value"].as_f64(), Some(lib.value));
    assert_eq!(v["metadata"]["nodes"].as_u64(), Some(lib.nodes as u64));
    assert_eq!(v["metadata"]["imag_residual"].as_f64(), Some(lib.imag_residual));
}

#[test]
fn local_eg_from_json_and_csv() {
    let input = temp_path("points.json");
    std::fs::write(&input, r#"{"points":[[0,0.25],[2,0.5],[1,0.75]]}"#).unwrap();
    let v = json(&sortnet(&["local-eg", "--input", input.to_str().unwrap(), "--window", "0,1"]));
    let swaps = v["swaps"].as_array().unwrap();
    assert_eq!(swaps.len(), 3);
    assert_eq!(swaps[0]["t"].as_f64(), Some(0.25));

    let input = temp_path("points.csv");
    std::fs::write(&input, "x,u\n0,0.25\n").unwrap();
    let out = stdout(&sortnet(&["local-eg", "--input", input.to_str().unwrap(), "--window", "0,0", "--format", "csv"]));
    assert!(out.ends_with("x,t\n0,2.50000000000000000e-1\n"));

    let o = sortnet(&["local-eg", "--input", "/nonexistent/points.csv", "--window", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn experiment_matches_library_and_thread_count() {
    let args = ["experiment", "first-swap", "--n", "24", "--trials", "20", "--seed", "9"];
    let one = zero_timing(json(&sortnet(&[&args[..], &["--threads", "1"]].concat())));
    let two = zero_timing(json(&sortnet(&[&args[..], &["--threads", "2"]].concat())));
    assert_eq!(one, two);
    let lib = first_swap_experiment(24, 0.0, 20, 9).unwrap().without_timing();
    assert_eq!(one, serde_json::from_str::<Value>(&lib.to_json()).unwrap());
}

#[test]
fn experiment_files() {
    let prefix = temp_path("fs");
    let samples = temp_path("fs_samples.csv");
    let out = stdout(&sortnet(&[
        "experiment",
        "first-swap",
        "--n",
        "20",
        "--trials",
        "10",
        "--format",
        "csv",
        "--plot-data",
        prefix.to_str().unwrap(),
        "--samples-out",
        samples.to_str().unwrap(),
    ]));
    assert!(out.lines().nth(1).unwrap().starts_with("lo,hi,count,density,reference"));
    let emp = std::fs::read_to_string(temp_path("fs_empirical.dat")).unwrap();
    let reference = std::fs::read_to_string(temp_path("fs_reference.dat")).unwrap();
    assert!(!emp.is_empty() && !reference.is_empty());
    assert!(emp.lines().all(|l| l.split_whitespace().count() == 2));
    assert!(std::fs::read_to_string(samples).unwrap().lines().count() > 1);

    let o = sortnet(&["experiment", "first-swap", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file() {
    let path = temp_path("net.json");
    let o = sortnet(&["sample-network", "--n", "5", "--output", path.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["network"]["n"].as_u64(), Some(5));
}
