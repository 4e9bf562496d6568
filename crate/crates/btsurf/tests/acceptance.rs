//! Acceptance suite: one test per criterion, each printing a pass line
//! and enforcing its time budget.  Run with
//! `cargo test -p btsurf --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::collections::{BTreeMap, VecDeque};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use btsurf_core::detect::{Pipeline, TetClass};
use btsurf_core::fixtures;
use btsurf_core::group::{
    induced_rep, CosetStructure, Perm, PermRep, Presentation, PsiMap, Word, ZLaurent,
};
use btsurf_core::lattice::{
    adjacent, graph_distance, standard_lambda, standard_lambda_prime, DiagonalClass,
};
use btsurf_core::manifold::{
    abelianization, corollary_count, first_homology, fundamental_group, psi_from_surface,
    Cover, CoverWalker, RegionComplex, TriComplex,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn budget(name: &str, limit: Duration, start: Instant) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= limit,
        "{} exceeded its budget: {:?} > {:?}",
        name,
        elapsed,
        limit
    );
    println!("{}: PASS ({:?})", name, elapsed);
}

/// Criterion 1: the graph distance from invariant factors equals the
/// breadth-first distance in the apartment graph, for all diagonal-class
/// pairs with exponents in {0,1,2,3}^n, n in {2,3,4}.
#[test]
fn criterion_1_building_distance_oracle() {
    let start = Instant::now();
    for dim in [2usize, 3, 4] {
        let bfs = apartment_bfs(dim, 8);
        let vectors = exponent_box(dim, 3);
        for a in &vectors {
            for b in &vectors {
                let expected = {
                    let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
                    let min = *diff.iter().min().unwrap();
                    let normalized: Vec<i64> = diff.iter().map(|x| x - min).collect();
                    bfs[&normalized]
                };
                let fast = DiagonalClass::new(a).distance(&DiagonalClass::new(b));
                assert_eq!(fast, expected, "fast path at {:?}, {:?}", a, b);
                let full = graph_distance(
                    &DiagonalClass::new(a).to_basis(),
                    &DiagonalClass::new(b).to_basis(),
                )
                .unwrap();
                assert_eq!(full, expected, "invariant factors at {:?}, {:?}", a, b);
            }
        }
    }
    budget(
        "criterion 1 (building distance vs apartment BFS)",
        Duration::from_secs(10),
        start,
    );
}

fn exponent_box(dim: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn apartment_bfs(dim: usize, radius: u64) -> BTreeMap<Vec<i64>, u64> {
    let origin = vec![0i64; dim];
    let mut dist = BTreeMap::new();
    dist.insert(origin.clone(), 0u64);
    let mut queue = VecDeque::from([origin]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d >= radius {
            continue;
        }
        for mask in 1..(1u32 << dim) - 1 {
            for sign in [1i64, -1] {
                let stepped: Vec<i64> = v
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| x + sign * ((mask >> i) & 1) as i64)
                    .collect();
                let min = *stepped.iter().min().unwrap();
                let normalized: Vec<i64> = stepped.iter().map(|x| x - min).collect();
                dist.entry(normalized.clone()).or_insert_with(|| {
                    queue.push_back(normalized);
                    d + 1
                });
            }
        }
    }
    dist
}

/// Criterion 2: the flag relations of the primed lattices and the
/// distance-2 gap between consecutive diagonal lattices.
#[test]
fn criterion_2_flags_and_adjacency() {
    let start = Instant::now();
    for n in -3..=3 {
        let prime = standard_lambda_prime(n);
        let this = standard_lambda(n);
        let next = standard_lambda(n + 1);
        assert!(adjacent(&prime, &this).unwrap(), "prime({}) ~ lambda({})", n, n);
        assert!(
            adjacent(&prime, &next).unwrap(),
            "prime({}) ~ lambda({})",
            n,
            n + 1
        );
        assert_eq!(graph_distance(&this, &next).unwrap(), 2);
    }
    budget(
        "criterion 2 (primed flags and distance 2)",
        Duration::from_secs(1),
        start,
    );
}

struct GroupFixture {
    cosets: CosetStructure,
    psi: PsiMap,
    num_gens: usize,
}

fn group_fixtures() -> Vec<GroupFixture> {
    let mut out = Vec::new();
    let pres = Presentation::new(vec!["a".into()], vec![]).unwrap();
    out.push(GroupFixture {
        cosets: CosetStructure::build(&pres, &PermRep::trivial(1)).unwrap(),
        psi: PsiMap::new(vec![1]),
        num_gens: 1,
    });
    let rep = PermRep::new(2, vec![Perm::from_images(vec![1, 0]).unwrap()]).unwrap();
    out.push(GroupFixture {
        cosets: CosetStructure::build(&pres, &rep).unwrap(),
        psi: PsiMap::new(vec![1]),
        num_gens: 1,
    });
    let pres2 = Presentation::new(vec!["a".into(), "b".into()], vec![]).unwrap();
    let rep3 = PermRep::new(
        3,
        vec![
            Perm::from_images(vec![1, 2, 0]).unwrap(),
            Perm::from_images(vec![1, 0, 2]).unwrap(),
        ],
    )
    .unwrap();
    let cosets3 = CosetStructure::build(&pres2, &rep3).unwrap();
    let n3 = cosets3.schreier_generators().len();
    out.push(GroupFixture {
        cosets: cosets3,
        psi: PsiMap::new((0..n3).map(|i| (i as i64 % 5) - 2).collect()),
        num_gens: 2,
    });
    let rep4 = PermRep::new(
        4,
        vec![
            Perm::from_images(vec![1, 2, 3, 0]).unwrap(),
            Perm::from_images(vec![1, 0, 3, 2]).unwrap(),
        ],
    )
    .unwrap();
    let cosets4 = CosetStructure::build(&pres2, &rep4).unwrap();
    let n4 = cosets4.schreier_generators().len();
    out.push(GroupFixture {
        cosets: cosets4,
        psi: PsiMap::new((0..n4).map(|i| (i as i64 % 3) - 1).collect()),
        num_gens: 2,
    });
    out
}

/// Criterion 3: block-monomial traces equal symbolic matrix traces on
/// 200 random words per fixture group.
#[test]
fn criterion_3_trace_oracle() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(2024);
    for fx in group_fixtures() {
        assert!(fx.cosets.degree() <= 4);
        for _ in 0..200 {
            let len = rng.gen_range(0..=12);
            let letters: Vec<i32> = (0..len)
                .map(|_| {
                    let g = rng.gen_range(1..=fx.num_gens as i32);
                    if rng.gen_bool(0.5) {
                        g
                    } else {
                        -g
                    }
                })
                .collect();
            let w = Word::from_letters(&letters);
            let m = induced_rep(&w, &fx.cosets, &fx.psi).unwrap();
            let symbolic = ZLaurent::from_ratfunc(&m.to_matrix().trace()).unwrap();
            assert_eq!(m.trace_poly(), symbolic);
        }
    }
    budget("criterion 3 (trace oracle)", Duration::from_secs(5), start);
}

fn fiber_pipeline() -> Pipeline {
    let tri = fixtures::solid_torus();
    let dual = fundamental_group(&tri).unwrap();
    Pipeline::build(
        &tri,
        &fixtures::fiber_surface(),
        &fixtures::fiber_coorientation(),
        &PermRep::trivial(dual.num_generators()),
        None,
        0,
    )
    .unwrap()
}

fn handlebody_pipeline() -> Pipeline {
    let swap = Perm::from_images(vec![1, 0]).unwrap();
    Pipeline::build(
        &fixtures::handlebody(),
        &fixtures::separating_disc(),
        &fixtures::separating_disc_coorientation(),
        &PermRep::new(2, vec![swap.clone(), swap]).unwrap(),
        None,
        0,
    )
    .unwrap()
}

fn generator_words(n: usize) -> Vec<Word> {
    let mut words = Vec::new();
    for g in 0..n {
        words.push(Word::generator(g));
        words.push(Word::generator(g).inverse());
    }
    words
}

/// Criterion 4: the classical (degree 1) pipeline on the fiber fixture.
#[test]
fn criterion_4_pipeline_classical() {
    let start = Instant::now();
    let p = fiber_pipeline();
    let words = generator_words(p.dual().presentation().num_generators());
    let checks = p.check_equivariance(&words).unwrap();
    assert_eq!(checks, words.len() * 3 * 4, "all generators x all corners");
    let classes = p.classify_tets().unwrap();
    for c in &classes {
        match c {
            TetClass::Single { .. } => {}
            TetClass::Pair { distance, .. } => assert_eq!(*distance, 2),
        }
    }
    let extracted = p.extract_and_compare(&classes).unwrap();
    assert_eq!(extracted, fixtures::fiber_surface().scale(2));
    budget(
        "criterion 4 (pipeline, classical case)",
        Duration::from_secs(10),
        start,
    );
}

/// Criterion 5: the covering (degree 2) pipeline on the handlebody
/// fixture, with the trace table checks of the rank-4 representation.
#[test]
fn criterion_5_pipeline_covering() {
    let start = Instant::now();
    let p = handlebody_pipeline();
    assert_eq!(p.cover().degree(), 2);
    let num_gens = p.dual().presentation().num_generators();
    let mut words = generator_words(num_gens);
    words.push(Word::from_letters(&[1, 2]));
    words.push(Word::from_letters(&[1, 1]));
    words.push(Word::from_letters(&[2, -1]));
    let checks = p.check_equivariance(&words).unwrap();
    assert_eq!(checks, words.len() * 9 * 4);
    let classes = p.classify_tets().unwrap();
    for c in &classes {
        if let TetClass::Pair { distance, .. } = c {
            assert_eq!(*distance, 2);
        }
    }
    let extracted = p.extract_and_compare(&classes).unwrap();
    assert_eq!(extracted, fixtures::separating_disc().scale(2));
    let character = p.character(&words).unwrap();
    assert!(character.any_nonconstant);
    let pole = character.pole_witness.expect("a trace with a pole");
    assert!(character.entries[pole].valuation.unwrap() <= -1);
    assert!(character.all_symmetric);
    assert!(character.all_w_exact);
    budget(
        "criterion 5 (pipeline, covering case)",
        Duration::from_secs(30),
        start,
    );
}

/// Criterion 6: component counting over the double cover.
#[test]
fn criterion_6_corollary_counting() {
    let start = Instant::now();
    let tri = fixtures::handlebody();
    let complex = TriComplex::build(&tri);
    let dual = fundamental_group(&tri).unwrap();
    let swap = Perm::from_images(vec![1, 0]).unwrap();
    let rep = PermRep::new(2, vec![swap.clone(), swap]).unwrap();
    let report = corollary_count(
        &tri,
        &complex,
        &dual,
        &fixtures::separating_disc(),
        &fixtures::separating_disc_coorientation(),
        &rep,
    )
    .unwrap();
    assert!(report.inequality_holds);
    assert!(
        report.surface_preimage_components
            >= report.piece_preimage_components.iter().sum::<usize>()
    );
    assert_eq!(report.surface_orbit_count, report.surface_preimage_components);
    assert_eq!(report.piece_orbit_counts, report.piece_preimage_components);
    let comp = report.nonseparating_component.expect("a non-separating lift");
    assert!(report.nonseparating_confirmed, "component {} confirmed", comp);
    budget(
        "criterion 6 (covering component counts)",
        Duration::from_secs(5),
        start,
    );
}

/// Criterion 7: the intersection homomorphism vanishes on relators and
/// is surjective for the non-separating fixtures; the homology oracle
/// agrees with the dual presentation on every fixture.
#[test]
fn criterion_7_psi_and_homology_consistency() {
    let start = Instant::now();
    // Fiber fixture, degree 1.
    {
        let tri = fixtures::solid_torus();
        let dual = fundamental_group(&tri).unwrap();
        let rep = PermRep::trivial(dual.num_generators());
        let cosets = CosetStructure::build(dual.presentation(), &rep).unwrap();
        let cover = Cover::build(&tri, &dual, &rep).unwrap();
        let regions = RegionComplex::build(
            cover.total(),
            &fixtures::fiber_surface(),
            &fixtures::fiber_coorientation(),
        )
        .unwrap();
        let walker = CoverWalker::new(&cover, &dual, &regions);
        let psi = psi_from_surface(&walker, &cosets);
        let gcd = psi.validate(dual.presentation(), &cosets).unwrap();
        assert_eq!(gcd, 1, "surjective for the non-separating fiber");
    }
    // Handlebody fixture, degree 2: psi of the chosen non-separating
    // lift, via the pipeline.
    {
        let p = handlebody_pipeline();
        let gcd = p
            .psi()
            .validate(p.dual().presentation(), p.cosets())
            .unwrap();
        assert_eq!(gcd, 1, "surjective for the non-separating lift");
    }
    // Homology oracle vs abelianization, on the fixtures and the double
    // covers used above.
    let swap = Perm::from_images(vec![1, 0]).unwrap();
    let mut complexes = vec![
        fixtures::solid_torus(),
        fixtures::handlebody(),
        fixtures::closed_one_tet(),
    ];
    {
        let tri = fixtures::handlebody();
        let dual = fundamental_group(&tri).unwrap();
        let rep = PermRep::new(2, vec![swap.clone(), swap]).unwrap();
        complexes.push(Cover::build(&tri, &dual, &rep).unwrap().total().clone());
    }
    for tri in &complexes {
        let complex = TriComplex::build(tri);
        let dual = fundamental_group(tri).unwrap();
        assert_eq!(
            abelianization(dual.presentation()),
            first_homology(tri, &complex)
        );
    }
    budget(
        "criterion 7 (psi and homology consistency)",
        Duration::from_secs(5),
        start,
    );
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_btsurf"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

/// Criterion 8: corrupted inputs produce exit code 2 with a concrete
/// witness in the report.
#[test]
fn criterion_8_negative_controls() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();

    // Corrupt psi by +1 on one generator.
    let bad_psi = dir.path().join("bad.psi");
    std::fs::write(&bad_psi, "psi v1\n2\n").unwrap();
    let report_path = dir.path().join("psi_report.json");
    let (code, _) = run_cli(&[
        "detect",
        fixture_path("solid_torus.tri").to_str().unwrap(),
        fixture_path("fiber.surf").to_str().unwrap(),
        fixture_path("fiber.coor").to_str().unwrap(),
        fixture_path("trivial.perm").to_str().unwrap(),
        "--psi",
        bad_psi.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2, "corrupted psi exits 2");
    let report = std::fs::read_to_string(&report_path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(json["pass"], false);
    let witness = json["witness"].as_str().unwrap();
    assert!(
        witness.contains("psi") && witness.contains("crossing"),
        "witness names the disagreement: {}",
        witness
    );

    // Break one face gluing: swap two vertex images so orientations
    // cannot be reconciled.
    let good = std::fs::read_to_string(fixture_path("solid_torus.tri")).unwrap();
    let broken = good.replace("glue 0.0 1.3 0 1 2", "glue 0.0 1.3 0 2 1");
    assert_ne!(good, broken);
    let bad_tri = dir.path().join("broken.tri");
    std::fs::write(&bad_tri, broken).unwrap();
    let report_path = dir.path().join("tri_report.json");
    let (code, _) = run_cli(&[
        "validate",
        bad_tri.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2, "broken gluing exits 2");
    let report = std::fs::read_to_string(&report_path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(json["pass"], false);
    let witness = json["witness"].as_str().unwrap();
    assert!(
        witness.contains("orientation") || witness.contains("face"),
        "witness names the face: {}",
        witness
    );

    // The same break through the detect pipeline also exits 2.
    let (code, _) = run_cli(&[
        "detect",
        bad_tri.to_str().unwrap(),
        fixture_path("fiber.surf").to_str().unwrap(),
        fixture_path("fiber.coor").to_str().unwrap(),
        fixture_path("trivial.perm").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    budget(
        "criterion 8 (negative controls)",
        Duration::from_secs(5),
        start,
    );
}
