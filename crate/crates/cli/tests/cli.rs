//! Process-level checks of the binary: output schemas, manifests, replay,
//! determinism, and the exit-code contract (0 success, 2 usage, 3 resource
//! bound, 4 numerical failure).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn workdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    if dir.exists() {
        fs::remove_dir_all(&dir).unwrap();
    }
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glass-anneal"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary should launch")
}

fn assert_ok(output: &Output) {
    assert!(
        output.status.success(),
        "expected success, got {:?}\nstderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process should exit")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn manifest_map(path: &Path) -> BTreeMap<String, String> {
    fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
        .lines()
        .filter_map(|line| {
            line.split_once(" = ")
                .map(|(k, v)| (k.to_string(), v.to_string()))
        })
        .collect()
}

fn read_rows(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .expect("header row")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|line| {
            line.split(',')
                .map(|cell| cell.parse::<f64>().unwrap())
                .collect()
        })
        .collect();
    (header, rows)
}

#[test]
fn theory_writes_constants_and_an_exact_index_table() {
    let dir = workdir("theory");
    let output = run_in(
        &dir,
        &[
            "theory",
            "--mixture",
            "3:1.0",
            "--constants",
            "--table",
            "index-vs-energy",
            "--points",
            "101",
        ],
    );
    assert_ok(&output);

    let report = fs::read_to_string(dir.join("constants.txt")).unwrap();
    assert!(report.contains("eps_c = -2.04124"), "{report}");
    assert!(report.contains("effective_lr_factor = 2.2"), "{report}");

    let (header, rows) = read_rows(&dir.join("index_vs_energy.csv"));
    assert_eq!(header, ["eps", "alpha", "lambda_bar"]);
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[50], [0.0, 0.5, 0.0]);
    assert_eq!(rows[0][1], 0.0);
    assert_eq!(rows[100][1], 1.0);

    let manifest = manifest_map(&dir.join("theory.manifest"));
    assert!(manifest["output.constants"].ends_with("constants.txt"));
    assert!(manifest["output.table"].ends_with("index_vs_energy.csv"));
    assert!(manifest.contains_key("duration_ms"));
}

#[test]
fn malformed_mixture_exits_2_naming_the_degree_rule() {
    let dir = workdir("theory-bad");
    let output = run_in(&dir, &["theory", "--mixture", "1:1.0", "--constants"]);
    assert_eq!(exit_code(&output), 2);
    assert!(
        stderr_of(&output).contains("minimum degree 2"),
        "{}",
        stderr_of(&output)
    );
}

#[test]
fn descend_emits_one_row_per_step_and_replays_byte_identically() {
    let dir = workdir("descend");
    let output = run_in(
        &dir,
        &[
            "glass", "descend", "--n", "16", "--p", "3", "--steps", "120", "--lr", "1e-3",
            "--seed", "1", "--out", "traj.csv",
        ],
    );
    assert_ok(&output);
    let (header, rows) = read_rows(&dir.join("traj.csv"));
    assert_eq!(header, ["step", "eps", "grad_norm"]);
    assert_eq!(rows.len(), 120);

    let original = fs::read(dir.join("traj.csv")).unwrap();
    fs::remove_file(dir.join("traj.csv")).unwrap();
    let replay = run_in(&dir, &["replay", "--manifest", "traj.manifest"]);
    assert_ok(&replay);
    let replayed = fs::read(dir.join("traj.csv")).unwrap();
    assert_eq!(original, replayed, "replay must reproduce the CSV bytes");
}

#[test]
fn sampling_is_deterministic_in_the_seed() {
    let dir = workdir("sample");
    assert_ok(&run_in(
        &dir,
        &["glass", "sample", "--n", "4", "--p", "3", "--seed", "9", "--out", "a.csv"],
    ));
    assert_ok(&run_in(
        &dir,
        &["glass", "sample", "--n", "4", "--p", "3", "--seed", "9", "--out", "b.csv"],
    ));
    assert_ok(&run_in(
        &dir,
        &["glass", "sample", "--n", "4", "--p", "3", "--seed", "10", "--out", "c.csv"],
    ));
    let a = fs::read(dir.join("a.csv")).unwrap();
    let b = fs::read(dir.join("b.csv")).unwrap();
    let c = fs::read(dir.join("c.csv")).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    let (_, rows) = read_rows(&dir.join("a.csv"));
    assert_eq!(rows.len(), 64);
}

#[test]
fn goe_manifest_reports_a_semicircle_fit() {
    let dir = workdir("goe");
    let output = run_in(&dir, &["glass", "goe", "--n", "256", "--seed", "1"]);
    assert_ok(&output);
    let (header, rows) = read_rows(&dir.join("goe.csv"));
    assert_eq!(header, ["idx", "eigenvalue"]);
    assert_eq!(rows.len(), 256);
    assert!(rows.windows(2).all(|w| w[0][1] <= w[1][1]), "sorted spectrum");

    let manifest = manifest_map(&dir.join("goe.manifest"));
    let ks: f64 = manifest["result.ks_stat"].parse().unwrap();
    let neg: f64 = manifest["result.negative_fraction"].parse().unwrap();
    assert!(ks <= 0.05, "ks = {ks}");
    assert!((0.4..=0.6).contains(&neg), "negative fraction = {neg}");
}

#[test]
fn goe_beyond_the_dense_bound_exits_3() {
    let dir = workdir("goe-big");
    let output = run_in(&dir, &["glass", "goe", "--n", "513", "--seed", "1"]);
    assert_eq!(exit_code(&output), 3);
    assert!(stderr_of(&output).contains("512"), "{}", stderr_of(&output));
}

#[test]
fn enumerate_reports_the_free_energy_and_respects_its_bound() {
    let dir = workdir("enumerate");
    let output = run_in(
        &dir,
        &["glass", "enumerate", "--n", "8", "--beta", "50", "--seed", "1"],
    );
    assert_ok(&output);
    let manifest = manifest_map(&dir.join("gibbs.manifest"));
    let free_energy: f64 = manifest["result.free_energy"].parse().unwrap();
    let ground: f64 = manifest["result.min_energy_per_site"].parse().unwrap();
    // The +-sigma degeneracy puts an exact ln(2)/(n beta) floor under
    // F - (-min H / n); excited states can only add to it.
    let floor = std::f64::consts::LN_2 / (8.0 * 50.0);
    let gap = free_energy + ground;
    assert!(gap >= floor - 1e-12, "gap = {gap}, floor = {floor}");
    assert!(gap <= 10.0 * floor, "gap = {gap} looks too large");

    let (header, rows) = read_rows(&dir.join("gibbs.csv"));
    assert_eq!(header, ["state", "energy", "probability"]);
    assert_eq!(rows.len(), 256);
    let total: f64 = rows.iter().map(|r| r[2]).sum();
    assert!((total - 1.0).abs() <= 1e-12, "probabilities sum to {total}");

    let over = run_in(&dir, &["glass", "enumerate", "--n", "30", "--beta", "1.0"]);
    assert_eq!(exit_code(&over), 3);
    assert!(stderr_of(&over).contains("24"), "{}", stderr_of(&over));
}

#[test]
fn free_energy_is_nonincreasing_in_beta() {
    let dir = workdir("enumerate-beta");
    let mut previous = f64::INFINITY;
    for (label, beta) in [("a", "0.5"), ("b", "2"), ("c", "10")] {
        let out = format!("{label}.csv");
        assert_ok(&run_in(
            &dir,
            &["glass", "enumerate", "--n", "8", "--beta", beta, "--seed", "3", "--out", &out],
        ));
        let manifest = manifest_map(&dir.join(format!("{label}.manifest")));
        let free_energy: f64 = manifest["result.free_energy"].parse().unwrap();
        assert!(
            free_energy <= previous + 1e-12,
            "F({beta}) = {free_energy} > {previous}"
        );
        previous = free_energy;
    }
}

#[test]
fn covcheck_matches_theory_within_sampling_error() {
    let dir = workdir("covcheck");
    let output = run_in(
        &dir,
        &["glass", "covcheck", "--n", "8", "--p", "3", "--samples", "400", "--seed", "1"],
    );
    assert_ok(&output);
    let (header, rows) = read_rows(&dir.join("covcheck.csv"));
    assert_eq!(header, ["overlap", "empirical", "theory", "z"]);
    assert_eq!(rows.len(), 5);
    for row in &rows {
        assert!(row[3].abs() <= 4.0, "overlap {}: z = {}", row[0], row[3]);
    }
    assert_eq!(rows[0][2], -1.0);
    assert_eq!(rows[4][2], 1.0);

    let few = run_in(
        &dir,
        &["glass", "covcheck", "--n", "8", "--p", "3", "--samples", "9", "--seed", "1"],
    );
    assert_eq!(exit_code(&few), 2);
}

#[test]
fn indexscan_writes_measured_steps_with_a_theory_column() {
    let dir = workdir("indexscan");
    let output = run_in(
        &dir,
        &[
            "glass", "indexscan", "--n", "16", "--p", "3", "--steps", "30", "--lr", "1e-2",
            "--measure-every", "10", "--seed", "1",
        ],
    );
    assert_ok(&output);
    let (header, rows) = read_rows(&dir.join("indexscan.csv"));
    assert_eq!(
        header,
        ["step", "eps", "alpha_hat", "lambda_bar_hat", "alpha_theory"]
    );
    let steps: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(steps, [0.0, 10.0, 20.0, 29.0]);
    for row in &rows {
        assert!((0.0..=1.0).contains(&row[2]), "alpha_hat = {}", row[2]);
        assert!((0.0..=1.0).contains(&row[4]), "alpha_theory = {}", row[4]);
    }
}

#[test]
fn train_cosine_lambda_column_is_the_closed_form_and_runs_are_byte_identical() {
    let dir = workdir("train-cosine");
    let args = [
        "train", "--target", "mlp", "--d-in", "4", "--d-h", "6", "--samples", "32", "--algo",
        "cosine", "--lambda0", "1e-3", "--T", "8", "--epochs", "8", "--seed", "3", "--out",
        "run.csv",
    ];
    assert_ok(&run_in(&dir, &args));
    let first = fs::read(dir.join("run.csv")).unwrap();
    let (header, rows) = read_rows(&dir.join("run.csv"));
    assert_eq!(header, ["epoch", "loss", "lambda", "trace_estimate", "grad_norm"]);
    assert_eq!(rows.len(), 8);
    for (i, row) in rows.iter().enumerate() {
        let expected =
            1e-3 * (1.0 + (std::f64::consts::TAU * i as f64 / 8.0).cos());
        assert_eq!(row[2], expected, "epoch {i}");
    }
    assert_eq!(rows[0][2], 2e-3);
    assert_eq!(rows[2][2], 1e-3);
    assert_eq!(rows[4][2], 0.0);

    let mut again: Vec<&str> = args.to_vec();
    let last = again.len() - 1;
    again[last] = "again.csv";
    assert_ok(&run_in(&dir, &again));
    let second = fs::read(dir.join("again.csv")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn train_config_file_merges_with_flag_overrides() {
    let dir = workdir("train-config");
    fs::write(
        dir.join("run.cfg"),
        "# teacher-student smoke\ntarget = mlp\nd-in = 4\nd-h = 6\nsamples = 32\nalgo = cosine\nT = 4\nepochs = 4\nlambda0 = 1e-3\nout = from-file.csv\n",
    )
    .unwrap();
    let output = run_in(
        &dir,
        &["train", "--config", "run.cfg", "--epochs", "6", "--seed", "5"],
    );
    assert_ok(&output);
    let manifest = manifest_map(&dir.join("from-file.manifest"));
    assert_eq!(manifest["config.algo"], "cosine");
    assert_eq!(manifest["config.T"], "4");
    assert_eq!(manifest["config.epochs"], "6");
    assert_eq!(manifest["seed"], "5");
    let (_, rows) = read_rows(&dir.join("from-file.csv"));
    assert_eq!(rows.len(), 6);

    fs::write(dir.join("bad.cfg"), "target = mlp\nwidth = 3\n").unwrap();
    let bad = run_in(&dir, &["train", "--config", "bad.cfg"]);
    assert_eq!(exit_code(&bad), 2);
    assert!(stderr_of(&bad).contains("width"), "{}", stderr_of(&bad));
}

#[test]
fn train_nonpositive_loss_exits_4_with_a_partial_csv() {
    let dir = workdir("train-fail");
    let output = run_in(
        &dir,
        &[
            "train", "--target", "glass", "--n", "16", "--p", "3", "--algo", "matched",
            "--loss-mode", "strict", "--lambda0", "1e-3", "--lr", "2e-2", "--epochs", "2000",
            "--out", "fail.csv",
        ],
    );
    assert_eq!(exit_code(&output), 4);
    let stderr = stderr_of(&output);
    assert!(stderr.contains("nonpositive loss"), "{stderr}");

    let (_, rows) = read_rows(&dir.join("fail.csv"));
    assert!(!rows.is_empty(), "partial CSV should hold the epochs that ran");
    assert!(rows.len() < 2000);
    let manifest = manifest_map(&dir.join("fail.manifest"));
    assert!(manifest["result.failure"].contains("nonpositive loss"));
}

#[test]
fn train_svg_renders_loss_and_lambda_panels() {
    let dir = workdir("train-svg");
    let output = run_in(
        &dir,
        &[
            "train", "--target", "glass", "--n", "12", "--p", "3", "--algo", "cosine",
            "--lambda0", "1e-3", "--T", "4", "--epochs", "8", "--out", "run.csv", "--svg",
            "run.svg",
        ],
    );
    assert_ok(&output);
    let svg = fs::read_to_string(dir.join("run.svg")).unwrap();
    assert_eq!(svg.matches("class=\"series\"").count(), 2);
    assert!(svg.contains(">loss<"));
    assert!(svg.contains(">lambda<"));
    let manifest = manifest_map(&dir.join("run.manifest"));
    assert_eq!(manifest["output.svg"], "run.svg");
}

#[test]
fn plot_draws_one_path_per_series_and_a_dashed_marker() {
    let dir = workdir("plot");
    fs::write(
        dir.join("data.csv"),
        "eps,alpha,lambda_bar\n-2,0,4\n0,0.5,0\n2,1,-4\n",
    )
    .unwrap();
    let output = run_in(
        &dir,
        &[
            "plot", "--in", "data.csv", "--out", "fig.svg", "--vline", "-2.04124", "--title",
            "index curve",
        ],
    );
    assert_ok(&output);
    let svg = fs::read_to_string(dir.join("fig.svg")).unwrap();
    assert_eq!(svg.matches("class=\"series\"").count(), 2);
    assert!(svg.contains("stroke-dasharray"));
    assert!(svg.contains("data-x=\"-2.04124\""));

    let missing = run_in(&dir, &["plot", "--in", "data.csv", "--y", "sigma"]);
    assert_eq!(exit_code(&missing), 2);

    fs::write(dir.join("empty.csv"), "a,b\n").unwrap();
    let empty = run_in(&dir, &["plot", "--in", "empty.csv"]);
    assert_eq!(exit_code(&empty), 2);

    fs::write(dir.join("ragged.csv"), "a,b\n1,2\n3\n").unwrap();
    let ragged = run_in(&dir, &["plot", "--in", "ragged.csv"]);
    assert_eq!(exit_code(&ragged), 2);
}

#[test]
fn thread_cap_env_var_is_validated() {
    let dir = workdir("threads");
    let ok = Command::new(env!("CARGO_BIN_EXE_glass-anneal"))
        .current_dir(&dir)
        .env("GLASS_ANNEAL_THREADS", "1")
        .args(["glass", "covcheck", "--n", "4", "--p", "2", "--samples", "150"])
        .output()
        .unwrap();
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));

    let bad = Command::new(env!("CARGO_BIN_EXE_glass-anneal"))
        .current_dir(&dir)
        .env("GLASS_ANNEAL_THREADS", "many")
        .args(["glass", "covcheck", "--n", "4", "--p", "2", "--samples", "150"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn parallel_and_capped_runs_agree_bitwise() {
    let dir = workdir("threads-agree");
    for (threads, out) in [("1", "one.csv"), ("4", "four.csv")] {
        let output = Command::new(env!("CARGO_BIN_EXE_glass-anneal"))
            .current_dir(&dir)
            .env("GLASS_ANNEAL_THREADS", threads)
            .args([
                "glass", "covcheck", "--n", "6", "--p", "3", "--samples", "500", "--seed", "7",
                "--out", out,
            ])
            .output()
            .unwrap();
        assert!(output.status.success());
    }
    let one = fs::read(dir.join("one.csv")).unwrap();
    let four = fs::read(dir.join("four.csv")).unwrap();
    assert_eq!(one, four, "thread count must not change results");
}
