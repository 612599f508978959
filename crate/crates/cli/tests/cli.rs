use ainfty::{run, Cli, CliError};
use clap::Parser;

fn cli(args: &[&str]) -> Cli {
    Cli::parse_from(std::iter::once("ainfty").chain(args.iter().copied()))
}

fn report(args: &[&str]) -> serde_json::Value {
    let out = run(&cli(args)).unwrap();
    assert_eq!(out.exit_code, 0, "{}", out.summary);
    serde_json::from_str(&out.json).unwrap()
}

#[test]
fn golod_on_the_pfaffian_file() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/codim3.json");
    let r = report(&["golod", path]);
    assert_eq!(r["module"]["golod"], false);
    assert_eq!(r["module"]["first_discrepancy_degree"], 4);
    assert_eq!(r["module"]["actual"], serde_json::json!([1, 3, 8, 21, 55]));
    assert_eq!(r["module"]["bound"], serde_json::json!([1, 3, 8, 21, 56]));
    assert_eq!(r["module"]["deciders_agree"], true);
    assert_eq!(r["ring"]["golod"], false);
}

#[test]
fn shipped_fixtures_verify() {
    for name in ["codim3", "hhs4", "hyper", "fatpoint", "shamash"] {
        let r = report(&["verify-fixture", name]);
        assert_eq!(r["passed"], true, "{name}: {r}");
    }
}

#[test]
fn resolving_k_over_a_polynomial_ring_takes_two_steps() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kx.json");
    std::fs::write(
        &path,
        r#"{"schema":1,"p":7,"vars":["x"],"ideal":[],"module":"residue-field"}"#,
    )
    .unwrap();
    let r = report(&["resolve", path.to_str().unwrap(), "--over-q"]);
    assert_eq!(r["ranks"], serde_json::json!([1, 1]));
    assert_eq!(r["projective_dimension"], 1);
    assert_eq!(r["differentials"], serde_json::json!([[["x"]]]));
    assert_eq!(r["verification"]["passed"], true);
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["bar", "fatpoint", "--cache", cache.to_str().unwrap()];
    let cold = run(&cli(&args)).unwrap();
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    let warm = run(&cli(&args)).unwrap();
    assert_eq!(cold, warm);
    // a different cap is a different entry
    let mut other = args.to_vec();
    other.extend(["--cap-hom", "3"]);
    run(&cli(&other)).unwrap();
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 2);
}

#[test]
fn out_directory_receives_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let c = cli(&[
        "syzygy",
        "hyper",
        "--level",
        "2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let out = run(&c).unwrap();
    ainfty::write_outputs(&c, &out).unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("syzygy.json")).unwrap())
            .unwrap();
    assert_eq!(json["verification"]["passed"], true);
    assert!(dir.path().join("syzygy.txt").exists());
}

#[test]
fn spectral_sequence_report() {
    let r = report(&["ss", "codim3", "--rmax", "3"]);
    assert_eq!(r["e2"]["equals_tor_over_tor"], true);
    assert!(r["edge_maps"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["injective"] == true));
}

#[test]
fn invalid_inputs_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"schema":1,"p":7,"vars":["x","y"],"ideal":["x^2+y"]}"#,
    )
    .unwrap();
    for args in [
        vec!["resolve", "no-such-problem"],
        vec!["resolve", bad.to_str().unwrap()],
        vec!["syzygy", "hyper", "--level", "0"],
        vec!["golod", "hyper", "--prime", "8"],
        vec!["verify-fixture", "nonexistent"],
    ] {
        let err = run(&cli(&args)).unwrap_err();
        assert_eq!(err.exit_code(), 1, "{args:?}: {err}");
    }
    // a linear ideal generator is outside Golod theory
    std::fs::write(
        &bad,
        r#"{"schema":1,"p":7,"vars":["x","y"],"ideal":["x","y^2"]}"#,
    )
    .unwrap();
    assert_eq!(
        run(&cli(&["golod", bad.to_str().unwrap()]))
            .unwrap_err()
            .exit_code(),
        1
    );
}

#[test]
fn engine_failures_map_to_two() {
    let e: CliError = ainfty_core::Error::Internal("d² ≠ 0".into()).into();
    assert_eq!(e.exit_code(), 2);
    let e: CliError = ainfty_core::Error::Unsolvable("lift".into()).into();
    assert_eq!(e.exit_code(), 2);
}
