//! End-to-end command-line behavior: exit codes, report determinism,
//! and the documented flag semantics, against the shipped fixtures.

use std::path::PathBuf;
use std::process::Command;

use btsurf::formats;
use btsurf_core::fixtures;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_btsurf"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn shipped_fixture_files_match_builtins() {
    let text = std::fs::read_to_string(fixture("solid_torus.tri")).unwrap();
    assert_eq!(
        formats::parse_triangulation(&text).unwrap(),
        fixtures::solid_torus()
    );
    let text = std::fs::read_to_string(fixture("handlebody.tri")).unwrap();
    assert_eq!(
        formats::parse_triangulation(&text).unwrap(),
        fixtures::handlebody()
    );
    let text = std::fs::read_to_string(fixture("fiber.surf")).unwrap();
    assert_eq!(
        formats::parse_surface(&text, 3).unwrap(),
        fixtures::fiber_surface()
    );
    let text = std::fs::read_to_string(fixture("sepdisc.surf")).unwrap();
    assert_eq!(
        formats::parse_surface(&text, 9).unwrap(),
        fixtures::separating_disc()
    );
}

#[test]
fn validate_fixtures_exit_zero() {
    for (tri, surf) in [
        ("solid_torus.tri", Some("fiber.surf")),
        ("handlebody.tri", Some("sepdisc.surf")),
        ("closed_one_tet.tri", Some("vertex_link.surf")),
    ] {
        let mut args = vec!["validate".to_string(), fixture(tri)];
        if let Some(s) = surf {
            args.push("--surface".into());
            args.push(fixture(s));
        }
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, stdout, stderr) = run(&refs);
        assert_eq!(code, 0, "{}: {}{}", tri, stdout, stderr);
    }
}

#[test]
fn vertex_link_reported_separating() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let (code, _, _) = run(&[
        "validate",
        &fixture("closed_one_tet.tri"),
        "--surface",
        &fixture("vertex_link.surf"),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let s = &json["validate"]["surface"];
    assert_eq!(s["euler"], 2);
    assert_eq!(s["separating"], true);
    assert_eq!(s["components"], 1);
}

#[test]
fn detect_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let r1 = dir.path().join("a.json");
    let r2 = dir.path().join("b.json");
    for r in [&r1, &r2] {
        let (code, _, _) = run(&[
            "detect",
            &fixture("handlebody.tri"),
            &fixture("sepdisc.surf"),
            &fixture("sepdisc.coor"),
            &fixture("double.perm"),
            "--report",
            r.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let a = std::fs::read(&r1).unwrap();
    let b = std::fs::read(&r2).unwrap();
    assert_eq!(a, b, "identical inputs must produce identical reports");
}

#[test]
fn detect_reports_two_copies() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let (code, _, _) = run(&[
        "detect",
        &fixture("solid_torus.tri"),
        &fixture("fiber.surf"),
        &fixture("fiber.coor"),
        &fixture("trivial.perm"),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["detect"]["dual_equals_two_copies"], true);
    assert_eq!(json["detect"]["psi"]["values"], serde_json::json!([1]));
    assert_eq!(json["detect"]["trace_pole_found"], true);
}

#[test]
fn gauge_and_seed_do_not_change_the_verdict() {
    for gauge in ["0", "1", "2", "3"] {
        let (code, _, _) = run(&[
            "detect",
            &fixture("solid_torus.tri"),
            &fixture("fiber.surf"),
            &fixture("fiber.coor"),
            &fixture("trivial.perm"),
            "--gauge",
            gauge,
            "--seed",
            "42",
        ]);
        assert_eq!(code, 0, "gauge {}", gauge);
    }
}

#[test]
fn reversed_coorientation_negates_psi() {
    let dir = tempfile::tempdir().unwrap();
    let reversed: Vec<i8> = fixtures::fiber_coorientation().iter().map(|s| -s).collect();
    let coor_path = dir.path().join("reversed.coor");
    std::fs::write(&coor_path, formats::write_coorientation(&reversed)).unwrap();
    let report = dir.path().join("r.json");
    let (code, _, _) = run(&[
        "detect",
        &fixture("solid_torus.tri"),
        &fixture("fiber.surf"),
        coor_path.to_str().unwrap(),
        &fixture("trivial.perm"),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "the reversed gauge is equally valid");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["detect"]["psi"]["values"], serde_json::json!([-1]));
}

#[test]
fn matching_psi_override_passes() {
    let dir = tempfile::tempdir().unwrap();
    let psi_path = dir.path().join("good.psi");
    std::fs::write(&psi_path, "psi v1\n1\n").unwrap();
    let (code, _, _) = run(&[
        "detect",
        &fixture("solid_torus.tri"),
        &fixture("fiber.surf"),
        &fixture("fiber.coor"),
        &fixture("trivial.perm"),
        "--psi",
        psi_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
}

#[test]
fn corollary_trivial_cover_is_inconclusive_but_clean() {
    let dir = tempfile::tempdir().unwrap();
    // Degree-1 rep for the handlebody's two generators.
    let perm = dir.path().join("trivial2.perm");
    std::fs::write(&perm, "perm v1\nperm x0: 1\nperm x1: 1\n").unwrap();
    let report = dir.path().join("r.json");
    let (code, _, _) = run(&[
        "corollary",
        &fixture("handlebody.tri"),
        &fixture("sepdisc.surf"),
        &fixture("sepdisc.coor"),
        perm.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let c = &json["corollary"];
    assert_eq!(c["surface_preimage_components"], 1);
    assert_eq!(c["piece_preimage_components"], serde_json::json!([1, 1]));
    assert_eq!(c["inequality_holds"], false);
}

#[test]
fn corollary_double_cover_exhibits_nonseparating_lift() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let (code, _, _) = run(&[
        "corollary",
        &fixture("handlebody.tri"),
        &fixture("sepdisc.surf"),
        &fixture("sepdisc.coor"),
        &fixture("double.perm"),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let c = &json["corollary"];
    assert_eq!(c["inequality_holds"], true);
    assert_eq!(c["nonseparating_confirmed"], true);
}

#[test]
fn cover_writes_a_valid_triangulation() {
    let dir = tempfile::tempdir().unwrap();
    let out_tri = dir.path().join("double.tri");
    let (code, _, _) = run(&[
        "cover",
        &fixture("handlebody.tri"),
        &fixture("double.perm"),
        "--surface",
        &fixture("sepdisc.surf"),
        "--out-tri",
        out_tri.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out_tri).unwrap();
    let tri = formats::parse_triangulation(&text).unwrap();
    assert_eq!(tri.num_tets(), 18);
    tri.validate().unwrap();
    let (code, _, _) = run(&["validate", out_tri.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn character_passes_on_fixtures() {
    for (tri, surf, coor, perm) in [
        ("solid_torus.tri", "fiber.surf", "fiber.coor", "trivial.perm"),
        ("handlebody.tri", "sepdisc.surf", "sepdisc.coor", "double.perm"),
    ] {
        let (code, stdout, stderr) = run(&[
            "character",
            &fixture(tri),
            &fixture(surf),
            &fixture(coor),
            &fixture(perm),
        ]);
        assert_eq!(code, 0, "{}: {}{}", tri, stdout, stderr);
    }
}

#[test]
fn building_queries() {
    let (code, stdout, _) = run(&["building", "dist", "--a", "L(0)", "--b", "L(1)"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("pass"));
    let (code, _, _) = run(&["building", "adjacent", "--a", "L'(0)", "--b", "L(1)"]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["building", "type", "--a", "t,0;0,t^-1"]);
    assert_eq!(code, 0);
    // A singular matrix is not a lattice basis: input error.
    let (code, _, _) = run(&["building", "dist", "--a", "t,t;t,t", "--b", "L(0)"]);
    assert_eq!(code, 1);
}

#[test]
fn garbage_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.tri");
    std::fs::write(&junk, "tri v1\ntet x\n").unwrap();
    let (code, _, stderr) = run(&["validate", junk.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("error"));
    let (code, _, _) = run(&["validate", "/nonexistent/path.tri"]);
    assert_eq!(code, 1);
}

#[test]
fn detect_with_separating_surface_fails_cleanly() {
    // The separating disc with the trivial cover has no non-separating
    // lift: a math failure, exit 2.
    let dir = tempfile::tempdir().unwrap();
    let perm = dir.path().join("trivial2.perm");
    std::fs::write(&perm, "perm v1\nperm x0: 1\nperm x1: 1\n").unwrap();
    let report = dir.path().join("r.json");
    let (code, _, _) = run(&[
        "detect",
        &fixture("handlebody.tri"),
        &fixture("sepdisc.surf"),
        &fixture("sepdisc.coor"),
        perm.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(json["witness"]
        .as_str()
        .unwrap()
        .contains("non-separating"));
}
