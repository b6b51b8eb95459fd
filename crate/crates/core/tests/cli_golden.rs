mod common;

use common::{golden, run_cli, run_cli_json, ANNULUS_DECOMPOSE, GREEN_STOKES, OCTAHEDRON_BETTI};
use hodgelab::cli::formats::{
    chain_from_json, chain_to_json, cochain_from_json, cochain_to_json, complex_from_json, complex_from_text,
    complex_to_json, form_from_json, form_to_json,
};
use hodgelab::cli::parse::{evaluate, parse_form};
use hodgelab::complex::build_complex;
use serde_json::{json, Value};

fn annulus() -> std::sync::Arc<hodgelab::complex::SimplicialComplex> {
    complex_from_text(&std::fs::read_to_string(common::fixture("annulus.json")).unwrap()).unwrap()
}

#[test]
fn golden_outputs() {
    for (args, file) in [
        (OCTAHEDRON_BETTI, "octahedron_betti.json"),
        (GREEN_STOKES, "green_stokes.json"),
        (ANNULUS_DECOMPOSE, "annulus_decompose.json"),
    ] {
        let (code, out) = run_cli(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(out, golden(file), "{args:?}");
        assert_eq!(run_cli(args).1, out, "repeat run of {args:?}");
    }
}

#[test]
fn decomposition_output_reconstructs_input() {
    let k = annulus();
    let (_, v) = run_cli_json(ANNULUS_DECOMPOSE);
    let part = |key: &str| cochain_from_json(&v[key], &k).unwrap();
    let input: Value =
        serde_json::from_str(&std::fs::read_to_string(common::fixture("annulus_cochain.json")).unwrap()).unwrap();
    let w = cochain_from_json(&input, &k).unwrap();
    assert_eq!(&(&part("exact") + &part("coexact")) + &part("harmonic"), w);
    assert_eq!(part("alpha").d(), part("exact"));
    assert_eq!(part("beta").codiff(), part("coexact"));
    for key in ["alpha", "beta", "exact", "coexact", "harmonic"] {
        assert_eq!(cochain_to_json(&part(key)), v[key], "{key}");
    }
}

#[test]
fn documented_examples() {
    let (code, v) = run_cli_json(&["d", "dx1^dx2^dx3"]);
    assert_eq!(code, 0);
    assert_eq!(v["terms"], json!([]));
    assert_eq!(v["degree"], json!(3));
    let (code, v) = run_cli_json(&["betti", "--complex", "tetrahedron.off"]);
    assert_eq!((code, v), (0, json!({"betti": [1, 0, 1], "euler": 2})));
    let (code, v) = run_cli_json(&["betti", "--complex", "isolated.off"]);
    assert_eq!((code, v), (0, json!({"betti": [4], "euler": 4})));
}

#[test]
fn exit_codes() {
    let (code, v) = run_cli_json(&["betti", "--complex", "bad_index.off"]);
    assert_eq!((code, v["error"]["kind"].as_str()), (2, Some("format")));
    let (code, v) = run_cli_json(&["homotopy", "x1"]);
    assert_eq!((code, v["error"]["kind"].as_str()), (1, Some("invalid_degree")));
    let (code, v) = run_cli_json(&["eval", "x1 + * x2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["position"], json!({"line": 1, "column": 6}));
    let (code, v) = run_cli_json(&["eval", "dx1 + x1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], json!("degree_mismatch"));
    let (code, _) = run_cli(&["eval", "x1", "--no-such-flag"]);
    assert_eq!(code, 2);
    let (code, v) = run_cli_json(&["betti", "--complex", "missing.json"]);
    assert_eq!((code, v["error"]["kind"].as_str()), (2, Some("io")));
    let (code, v) = run_cli_json(&[
        "harmonic-rep",
        "--complex",
        "annulus.json",
        "--cochain",
        "annulus_cochain.json",
    ]);
    assert_eq!((code, v["error"]["kind"].as_str()), (1, Some("not_closed")));
}

#[test]
fn dimension_limit_from_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_hodgelab"))
        .args(["eval", "-n", "5", "x1"])
        .env("HODGELAB_MAX_DIM", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], json!("dimension_limit"));
}

#[test]
fn complex_subcommands() {
    let (_, v) = run_cli_json(&[
        "pairing",
        "--complex",
        "annulus.json",
        "--chain",
        "inner_loop.json",
        "--cochain",
        "annulus_cochain.json",
    ]);
    assert_eq!(v, json!({"value": "3"}));
    let (_, v) = run_cli_json(&[
        "cohomologous",
        "--complex",
        "annulus.json",
        "--first",
        "annulus_exact.json",
        "--second",
        "annulus_zero.json",
    ]);
    assert_eq!(v["cohomologous"], json!(true));
    let k = annulus();
    let theta = cochain_from_json(&v["witness"], &k).unwrap();
    let exact: Value =
        serde_json::from_str(&std::fs::read_to_string(common::fixture("annulus_exact.json")).unwrap()).unwrap();
    assert_eq!(theta.d(), cochain_from_json(&exact, &k).unwrap());
    let (_, v) = run_cli_json(&["euler", "--complex", "annulus.json"]);
    assert_eq!(v, json!({"euler": 0, "simplex_counts": [6, 12, 6]}));
    let (_, v) = run_cli_json(&["integrate", "x1*x2*dx1^dx2", "--chain", "unit_square.json"]);
    assert_eq!(v, json!({"value": "1/4"}));
    let (_, v) = run_cli_json(&["l2", "x1*dx1", "dx1", "--domain", "unit_square.json"]);
    assert_eq!(v, json!({"value": "1/2"}));
}

#[test]
fn output_file_flag() {
    let dir = std::env::temp_dir().join(format!("hodgelab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("betti.json");
    let (code, stdout) = run_cli(&[
        "betti",
        "--complex",
        "octahedron.off",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), golden("octahedron_betti.json"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn emitted_artifacts_round_trip() {
    for args in [
        vec!["eval", "(x1 - 2/3*x2)^2*dx1^dx3 + x3*dx2^dx3"],
        vec!["star", "x1*dx1 - x2*x3*dx2"],
        vec!["witten", "--t", "1/2", "--f", "x1*x2", "x3*dx1"],
        vec!["curl", "x2*dx1 - x1*dx2 + x3^2*dx3"],
        vec!["maxwell", "x2*dx1 + x1*x4*dx3"],
    ] {
        let (code, v) = run_cli_json(&args);
        assert_eq!(code, 0, "{args:?}");
        let form_json = if args[0] == "maxwell" {
            v["field"].clone()
        } else {
            v.clone()
        };
        let w = form_from_json(&form_json).unwrap();
        let mut reemitted = form_to_json(&w);
        reemitted["text"] = json!(w.to_string());
        assert_eq!(reemitted, form_json);
        let reparsed = evaluate(
            &parse_form(form_json["text"].as_str().unwrap(), w.dim()).unwrap(),
            w.dim(),
        )
        .unwrap();
        assert_eq!(reparsed, w);
    }
    let (_, v) = run_cli_json(&["betti", "--complex", "annulus.json", "--basis"]);
    let k = annulus();
    for basis in v["harmonic_basis"].as_array().unwrap() {
        for c in basis.as_array().unwrap() {
            assert_eq!(cochain_to_json(&cochain_from_json(c, &k).unwrap()), *c);
        }
    }
    let chain_json: Value =
        serde_json::from_str(&std::fs::read_to_string(common::fixture("unit_square.json")).unwrap()).unwrap();
    let chain = chain_from_json(&chain_json).unwrap();
    assert_eq!(chain_from_json(&chain_to_json(&chain)).unwrap(), chain);
    let mut rng = common::rng(41);
    for _ in 0..20 {
        let facets = common::random_facets(&mut rng);
        let k = build_complex(&facets).unwrap();
        let back = complex_from_json(&complex_to_json(&k)).unwrap();
        assert_eq!(*back, *k);
        assert_eq!(back.facets(), k.facets());
    }
}
