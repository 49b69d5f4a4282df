use std::path::PathBuf;
use std::process::{Command, Output};

use disent_core::qstate::pauli::BellState;
use disent_core::qstate::{BlochVector, DensityMatrix};
use disent_core::rng::schmidt_state;
use serde_json::Value;
use tempfile::TempDir;

fn disent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disent"))
        .args(args)
        .env_remove("DISENT_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn state(&self, name: &str, rho: &DensityMatrix) -> String {
        self.write(name, &rho.to_json())
    }
}

fn phi_plus() -> DensityMatrix {
    DensityMatrix::pure(&BellState::PhiPlus.ket()).unwrap()
}

// ---- teleport

#[test]
fn teleport_werner_channel_shrinks_by_a_third() {
    let out = disent(&[
        "teleport",
        "--weights",
        "0.5,0.1666666667,0.1666666667,0.1666666667",
        "--bloch",
        "1,0,0",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let b = floats(&v["output_bloch"]);
    assert!((b[0] - 1.0 / 3.0).abs() < 1e-9 && b[1].abs() < 1e-12 && b[2].abs() < 1e-12);
    for l in floats(&v["lambda"]) {
        assert!((l - 1.0 / 3.0).abs() < 1e-9);
    }
}

#[test]
fn teleport_through_perfect_channel_is_identity() {
    let out = disent(&[
        "teleport",
        "--weights",
        "1,0,0,0",
        "--bloch",
        "0.3,0.4,0.5",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let b = floats(&json(&out)["output_bloch"]);
    for (x, y) in b.iter().zip([0.3, 0.4, 0.5]) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn teleport_half_psi_mixture_kills_x() {
    let out = disent(&[
        "teleport",
        "--weights",
        "0.5,0.5,0,0",
        "--bloch",
        "1,0,0",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert!(floats(&json(&out)["output_bloch"])
        .iter()
        .all(|x| x.abs() < 1e-12));
}

#[test]
fn teleport_pretty_reports_the_lambda_triple() {
    let out = disent(&["teleport", "--weights", "0.5,0.5,0,0", "--bloch", "0,0,1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("equivalent lambda: (0.000000, 0.000000, 1.000000)"));
}

#[test]
fn teleport_one_party_of_a_state_file() {
    let files = Files::new();
    let path = files.state("phi.json", &phi_plus());
    let sixth = "0.16666666666666666";
    let weights = format!("0.5,{sixth},{sixth},{sixth}");
    for party in ["1", "2"] {
        let out = disent(&[
            "teleport",
            "--weights",
            &weights,
            "--state",
            &path,
            "--party",
            party,
            "--format",
            "json",
        ]);
        assert_eq!(code(&out), 0);
        let v = json(&out);
        assert_eq!(v["party"], party);
        assert_eq!(v["output_state"]["n_qubits"], 2);
        assert!(v["output_bloch"].is_null());
    }
}

#[test]
fn teleport_single_qubit_state_file() {
    let files = Files::new();
    let rho = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.6, 0.0).unwrap());
    let path = files.state("q.json", &rho);
    let out = disent(&[
        "teleport",
        "--weights",
        "0,1,0,0",
        "--state",
        &path,
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    // psi- through the psi+ protocol: lambda = (-1, -1, 1).
    let b = floats(&json(&out)["output_bloch"]);
    assert!((b[1] + 0.6).abs() < 1e-12);
}

#[test]
fn teleport_shots_are_seeded() {
    let args = [
        "teleport",
        "--weights",
        "0.4,0.3,0.2,0.1",
        "--bloch",
        "0,0,1",
        "--shots",
        "500",
        "--format",
        "json",
    ];
    let a = disent(&args);
    assert_eq!(code(&a), 0);
    let total: u64 = json(&a)["shots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 500);
    assert_eq!(a.stdout, disent(&args).stdout);
    let mut other = args.to_vec();
    other.extend(["--seed", "9"]);
    assert_ne!(a.stdout, disent(&other).stdout);
}

#[test]
fn teleport_rejects_non_simplex_weights_as_invariant() {
    for w in ["0.5,0.6,0,0", "1.2,-0.2,0,0", "0.25,0.25,0.25,0.2500001"] {
        let out = disent(&["teleport", "--weights", w, "--bloch", "1,0,0"]);
        assert_eq!(code(&out), 3, "{w}");
        assert!(stderr(&out).contains("not a probability vector"));
    }
}

#[test]
fn teleport_renormalizes_within_tolerance() {
    let out = disent(&[
        "teleport",
        "--weights",
        "0.25,0.25,0.25,0.2500000001",
        "--bloch",
        "1,0,0",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let w = floats(&json(&out)["channel"]);
    assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
}

#[test]
fn teleport_rejects_bloch_outside_ball() {
    let out = disent(&["teleport", "--weights", "1,0,0,0", "--bloch", "1,1,0"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn teleport_usage_errors() {
    let cases: [&[&str]; 5] = [
        &["teleport", "--weights", "0.5,0.5,0", "--bloch", "1,0,0"],
        &["teleport", "--weights", "a,b,c,d", "--bloch", "1,0,0"],
        &["teleport", "--weights", "1,0,0,0"],
        &[
            "teleport",
            "--weights",
            "1,0,0,0",
            "--bloch",
            "1,0,0",
            "--state",
            "x.json",
        ],
        &[
            "teleport",
            "--weights",
            "1,0,0,0",
            "--bloch",
            "1,0,0",
            "--party",
            "3",
        ],
    ];
    for args in cases {
        assert_eq!(code(&disent(args)), 2, "{args:?}");
    }
}

#[test]
fn unreadable_or_malformed_state_file_is_usage_error() {
    let files = Files::new();
    let garbage = files.write("bad.json", "{\"n_qubits\": 1, \"matrix\": 3}");
    for path in [garbage.as_str(), "/nonexistent/state.json"] {
        let out = disent(&["teleport", "--weights", "1,0,0,0", "--state", path]);
        assert_eq!(code(&out), 2, "{path}");
    }
}

#[test]
fn non_density_state_file_is_invariant_violation() {
    let files = Files::new();
    let trace_two = files.write(
        "t2.json",
        "{\"n_qubits\":1,\"matrix\":[[[1,0],[0,0]],[[0,0],[1,0]]]}",
    );
    let out = disent(&["teleport", "--weights", "1,0,0,0", "--state", &trace_two]);
    assert_eq!(code(&out), 3);
}

#[test]
fn three_qubit_state_file_is_rejected() {
    let files = Files::new();
    let path = files.state("three.json", &DensityMatrix::maximally_mixed(3).unwrap());
    assert_eq!(
        code(&disent(&[
            "teleport",
            "--weights",
            "1,0,0,0",
            "--state",
            &path
        ])),
        2
    );
}

// ---- disentangle

#[test]
fn universal_machine_disentangles_phi_plus() {
    let files = Files::new();
    let path = files.state("phi.json", &phi_plus());
    let out = disent(&["disentangle", "--scenario", "universal", "--state", &path]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["separable"], true);
    assert_eq!(v["scenario"], "universal");
}

#[test]
fn equatorial_machine_disentangles_schmidt_state() {
    let files = Files::new();
    let path = files.state("s.json", &schmidt_state(0.9));
    let out = disent(&["disentangle", "--scenario", "equatorial", "--state", &path]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["separable"], true);
}

#[test]
fn commuting_machine_on_diagonal_marginal_preserves_it() {
    let files = Files::new();
    let path = files.state("s.json", &schmidt_state(0.8));
    let out = disent(&[
        "disentangle",
        "--scenario",
        "commuting",
        "--state",
        &path,
        "--format",
        "pretty",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("marginal fidelity: party 1 1.000000, party 2 1.000000"));
}

#[test]
fn commuting_premise_violation_prints_marginal() {
    // Party-2 marginal (I + sigma1)/2.
    let plus = DensityMatrix::from_bloch(BlochVector::new(1.0, 0.0, 0.0).unwrap());
    let rho = DensityMatrix::maximally_mixed(1)
        .unwrap()
        .tensor(&plus)
        .unwrap();
    let files = Files::new();
    let path = files.state("plus.json", &rho);
    let out = disent(&["disentangle", "--scenario", "commuting", "--state", &path]);
    assert_eq!(code(&out), 4);
    let err = stderr(&out);
    assert!(err.contains("party-2 marginal"), "{err}");
    assert!(err.contains("\"n_qubits\":1"), "{err}");
    assert!(stdout(&out).is_empty());
}

#[test]
fn equatorial_premise_violation() {
    let y = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.5, 0.0).unwrap());
    let rho = DensityMatrix::maximally_mixed(1)
        .unwrap()
        .tensor(&y)
        .unwrap();
    let files = Files::new();
    let path = files.state("y.json", &rho);
    assert_eq!(
        code(&disent(&[
            "disentangle",
            "--scenario",
            "equatorial",
            "--state",
            &path
        ])),
        4
    );
}

#[test]
fn identity_machine_leaves_entanglement_exit_one() {
    let files = Files::new();
    let path = files.state("phi.json", &phi_plus());
    let out = disent(&[
        "disentangle",
        "--scenario",
        "custom",
        "--lambda",
        "1,1,1",
        "--state",
        &path,
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["separable"], false);
    assert!(v["min_pt_eigenvalue"].as_f64().unwrap() < -0.49);
}

#[test]
fn custom_machine_that_is_not_completely_positive() {
    let files = Files::new();
    let path = files.state("phi.json", &phi_plus());
    let out = disent(&[
        "disentangle",
        "--scenario",
        "custom",
        "--lambda",
        "1,1,-1",
        "--state",
        &path,
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn disentangle_usage_errors() {
    let files = Files::new();
    let path = files.state("phi.json", &phi_plus());
    let cases: [&[&str]; 4] = [
        &["disentangle", "--scenario", "sideways", "--state", &path],
        &["disentangle", "--scenario", "custom", "--state", &path],
        &[
            "disentangle",
            "--scenario",
            "universal",
            "--lambda",
            "1,1,1",
            "--state",
            &path,
        ],
        &["disentangle", "--scenario", "universal"],
    ];
    for args in cases {
        assert_eq!(code(&disent(args)), 2, "{args:?}");
    }
}

// ---- optimize

fn lambda_max(args: &[&str]) -> f64 {
    let mut full = vec!["optimize", "--format", "json"];
    full.extend(args);
    let out = disent(&full);
    assert_eq!(code(&out), 0);
    json(&out)["lambda_max"].as_f64().unwrap()
}

#[test]
fn optimize_default_finds_one_half() {
    let out = disent(&["optimize"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("lambda_max: 0.500000"));
    assert!((lambda_max(&[]) - 0.5).abs() <= 1e-3);
}

#[test]
fn optimize_physicality_only_reaches_one() {
    assert!((lambda_max(&["--skip-a15"]) - 1.0).abs() <= 1e-3);
}

#[test]
fn optimize_coarse_grid() {
    assert!((lambda_max(&["--grid-step", "0.1"]) - 0.5).abs() <= 1e-2);
}

#[test]
fn optimize_bad_flags() {
    for args in [
        &["optimize", "--grid-step", "0.5"][..],
        &["optimize", "--refine-tol", "1e-9"],
        &["optimize", "--grid-step", "fine"],
    ] {
        assert_eq!(code(&disent(args)), 2, "{args:?}");
    }
}

// ---- verify

#[test]
fn verify_small_runs_clean() {
    for samples in ["1", "200"] {
        let out = disent(&["verify", "--samples", samples, "--format", "json"]);
        assert_eq!(code(&out), 0, "{}", stdout(&out));
        let v = json(&out);
        let suites = v["suites"].as_array().unwrap();
        assert_eq!(suites.len(), 3);
        assert!(suites.iter().all(|s| s["mismatches"] == 0));
    }
}

#[test]
fn verify_fault_injection_fails() {
    let out = disent(&["verify", "--samples", "10", "--inject-fault"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("1 mismatches"));
}

#[test]
fn verify_rejects_zero_samples() {
    assert_eq!(code(&disent(&["verify", "--samples", "0"])), 2);
}

// ---- reproduce

#[test]
fn reproduce_all_rows_pass() {
    for seed in ["42", "7"] {
        let out = disent(&["reproduce", "--seed", seed]);
        assert_eq!(code(&out), 0, "{}", stdout(&out));
        assert!(stdout(&out).contains("5/5 passed"));
    }
}

#[test]
fn reproduce_csv_is_machine_readable() {
    let out = disent(&["reproduce", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,expected,observed,tolerance,pass"));
    assert_eq!(lines.filter(|l| l.ends_with(",true")).count(), 5);
}

#[test]
fn reproduce_highlights_failing_row() {
    let out = disent(&["reproduce", "--inject-fault"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(
        text.lines()
            .any(|l| l.starts_with(">> Werner") && l.ends_with("FAIL")),
        "{text}"
    );
    assert!(text.contains("4/5 passed"));
}

// ---- sweep

#[test]
fn sweep_csv_header_and_threshold() {
    let out = disent(&["sweep", "--steps", "10"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "lambda,l,m,n,a14_1,a14_2,a14_3,a15_1,a15_2,a15_3,feasible"
    );
    assert_eq!(lines.len(), 12);
    assert!(lines[6].starts_with("5.0000000000000000e-1,") && lines[6].ends_with(",true"));
    assert!(lines[7].ends_with(",false"));
}

#[test]
fn sweep_json_rows() {
    let out = disent(&[
        "sweep", "--steps", "4", "--lo", "-1", "--hi", "1", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out).as_array().unwrap().len(), 5);
}

// ---- determinism and shared flags

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "--samples", "50", "--format", "json"];
    let a = disent(&args);
    assert_eq!(a.stdout, disent(&args).stdout);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    assert_eq!(a.stdout, disent(&threaded).stdout);
}

#[test]
fn seed_env_var_is_overridden_by_flag() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_disent"));
        cmd.args(["verify", "--samples", "5", "--format", "json"])
            .env_remove("DISENT_SEED");
        if let Some(e) = env {
            cmd.env("DISENT_SEED", e);
        }
        if let Some(f) = flag {
            cmd.args(["--seed", f]);
        }
        let out = cmd.output().unwrap();
        json(&out)["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None, None), 42);
    assert_eq!(run(Some("7"), None), 7);
    assert_eq!(run(Some("7"), Some("9")), 9);
}

#[test]
fn malformed_seed_or_threads_is_usage_error() {
    assert_eq!(code(&disent(&["verify", "--seed", "-1"])), 2);
    assert_eq!(code(&disent(&["verify", "--threads", "0"])), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_disent"))
        .args(["verify", "--samples", "1"])
        .env("DISENT_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn help_and_unknown_command() {
    assert_eq!(code(&disent(&["--help"])), 0);
    assert_eq!(code(&disent(&["frobnicate"])), 2);
    assert_eq!(code(&disent(&[])), 2);
}
