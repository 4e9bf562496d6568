//! Subcommand drivers: parse inputs, run the checks, assemble reports.
//!
//! Exit code conventions: 0 when every check passed, 1 for input errors
//! (unreadable or unparsable files, bad arguments), 2 for a mathematical
//! check failure, with the witness recorded in the report.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use btsurf_core::detect::{Pipeline, TetClass};
use btsurf_core::group::{PermRep, Presentation, PsiMap, Word};
use btsurf_core::lattice::{
    adjacent, graph_distance, invariant_factor_exponents, standard_lambda,
    standard_lambda_prime, vertex_type, LatticeBasis, SqMatrix,
};
use btsurf_core::manifold::{
    abelianization, corollary_count, first_homology, fundamental_group, is_separating,
    normal_check, Cover, NormalSurfaceVec, TriComplex, Triangulation,
};

use crate::formats;
use crate::report::*;

/// Input-level failure: exit code 1.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type RunResult = Result<Report, InputError>;

pub fn exit_code(report: &Report) -> i32 {
    if report.pass {
        0
    } else {
        2
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {}", path.display(), e)))
}

fn input_map(pairs: &[(&str, &Path)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, p)| (k.to_string(), p.display().to_string()))
        .collect()
}

struct LoadedTriangulation {
    tri: Triangulation,
}

fn load_triangulation(path: &Path) -> Result<LoadedTriangulation, InputError> {
    let text = read(path)?;
    let tri = formats::parse_triangulation(&text)
        .map_err(|e| InputError(format!("{}: {}", path.display(), e)))?;
    Ok(LoadedTriangulation { tri })
}

fn load_surface(path: &Path, num_tets: usize) -> Result<NormalSurfaceVec, InputError> {
    let text = read(path)?;
    formats::parse_surface(&text, num_tets)
        .map_err(|e| InputError(format!("{}: {}", path.display(), e)))
}

fn load_coorientation(path: &Path, surface: &NormalSurfaceVec) -> Result<Vec<i8>, InputError> {
    let text = read(path)?;
    formats::parse_coorientation(&text, surface)
        .map_err(|e| InputError(format!("{}: {}", path.display(), e)))
}

fn load_perm_rep(path: &Path, pres: &Presentation) -> Result<PermRep, InputError> {
    let text = read(path)?;
    formats::parse_perm_rep(&text, pres)
        .map_err(|e| InputError(format!("{}: {}", path.display(), e)))
}

fn load_psi(path: &Path) -> Result<PsiMap, InputError> {
    let text = read(path)?;
    formats::parse_psi(&text).map_err(|e| InputError(format!("{}: {}", path.display(), e)))
}

fn load_words(path: &Path, pres: &Presentation) -> Result<Vec<Word>, InputError> {
    let text = read(path)?;
    formats::parse_words(&text, pres)
        .map_err(|e| InputError(format!("{}: {}", path.display(), e)))
}

fn homology_summary(tri: &Triangulation, complex: &TriComplex) -> HomologySummary {
    let h = first_homology(tri, complex);
    HomologySummary {
        betti: h.betti,
        torsion: h.torsion,
    }
}

fn surface_summary(
    tri: &Triangulation,
    complex: &TriComplex,
    surface: &NormalSurfaceVec,
) -> Result<SurfaceSummary, String> {
    let a = normal_check(tri, complex, surface).map_err(|e| e.to_string())?;
    let sep = is_separating(tri, complex, surface).map_err(|e| e.to_string())?;
    Ok(SurfaceSummary {
        discs: surface.total_discs(),
        components: a.num_components,
        euler: a.euler,
        two_sided: a.two_sided,
        pipeline_ready: surface.is_pipeline_ready(),
        separating: sep.separating,
        complement_components: sep.complement_components,
    })
}

/// `validate`: structural checks of a triangulation and, optionally, a
/// normal surface in it.
pub fn validate(tri_path: &Path, surface_path: Option<&Path>) -> RunResult {
    let mut inputs = input_map(&[("triangulation", tri_path)]);
    if let Some(p) = surface_path {
        inputs.insert("surface".into(), p.display().to_string());
    }
    let mut report = Report::new("validate", inputs);
    let loaded = load_triangulation(tri_path)?;
    let tri = &loaded.tri;
    if let Err(e) = tri.validate() {
        report.fail(e.to_string());
        return Ok(report);
    }
    let complex = TriComplex::build(tri);
    let dual = fundamental_group(tri).expect("validated");
    let homology = homology_summary(tri, &complex);
    let ab = abelianization(dual.presentation());
    let matches = ab.betti == homology.betti && ab.torsion == homology.torsion;
    let boundary_faces = (0..tri.num_tets())
        .map(|t| (0..4u8).filter(|&f| tri.is_boundary(t, f)).count())
        .sum();
    let mut surface = None;
    if let Some(p) = surface_path {
        let s = load_surface(p, tri.num_tets())?;
        match surface_summary(tri, &complex, &s) {
            Ok(summary) => surface = Some(summary),
            Err(witness) => {
                report.fail(witness);
                return Ok(report);
            }
        }
    }
    if !matches {
        report.fail("dual presentation abelianization disagrees with homology".into());
    }
    report.validate = Some(ValidateReport {
        tets: tri.num_tets(),
        orientable: true,
        vertex_classes: complex.num_vertex_classes,
        edge_classes: complex.num_edge_classes,
        face_classes: complex.num_face_classes,
        boundary_faces,
        fundamental_group_generators: dual.num_generators(),
        fundamental_group_relators: dual.presentation().relators().len(),
        homology,
        abelianization_matches_homology: matches,
        surface,
    });
    Ok(report)
}

/// `cover`: builds the cover determined by a permutation representation
/// and optionally writes its triangulation.
pub fn cover(
    tri_path: &Path,
    perm_path: &Path,
    surface_path: Option<&Path>,
    out_tri: Option<&Path>,
) -> RunResult {
    let mut inputs = input_map(&[("triangulation", tri_path), ("permutations", perm_path)]);
    if let Some(p) = surface_path {
        inputs.insert("surface".into(), p.display().to_string());
    }
    let mut report = Report::new("cover", inputs);
    let loaded = load_triangulation(tri_path)?;
    let tri = &loaded.tri;
    let dual = match fundamental_group(tri) {
        Ok(d) => d,
        Err(e) => {
            report.fail(e.to_string());
            return Ok(report);
        }
    };
    let rep = load_perm_rep(perm_path, dual.presentation())?;
    let cover = match Cover::build(tri, &dual, &rep) {
        Ok(c) => c,
        Err(e) => {
            report.fail(e.to_string());
            return Ok(report);
        }
    };
    let total = cover.total();
    let cx = TriComplex::build(total);
    let mut lifted_surface = None;
    if let Some(p) = surface_path {
        let s = load_surface(p, tri.num_tets())?;
        let lifted = cover.lift_surface(&s);
        match surface_summary(total, &cx, &lifted) {
            Ok(summary) => lifted_surface = Some(summary),
            Err(witness) => {
                report.fail(witness);
                return Ok(report);
            }
        }
    }
    if let Some(out) = out_tri {
        std::fs::write(out, formats::write_triangulation(total))
            .map_err(|e| InputError(format!("cannot write {}: {}", out.display(), e)))?;
    }
    report.cover = Some(CoverReport {
        degree: cover.degree(),
        total_tets: total.num_tets(),
        homology: homology_summary(total, &cx),
        lifted_surface,
    });
    Ok(report)
}

/// `corollary`: the component-counting argument over a finite cover.
pub fn corollary(
    tri_path: &Path,
    surface_path: &Path,
    coor_path: &Path,
    perm_path: &Path,
) -> RunResult {
    let inputs = input_map(&[
        ("triangulation", tri_path),
        ("surface", surface_path),
        ("coorientation", coor_path),
        ("permutations", perm_path),
    ]);
    let mut report = Report::new("corollary", inputs);
    let loaded = load_triangulation(tri_path)?;
    let tri = &loaded.tri;
    let dual = match fundamental_group(tri) {
        Ok(d) => d,
        Err(e) => {
            report.fail(e.to_string());
            return Ok(report);
        }
    };
    let complex = TriComplex::build(tri);
    let surface = load_surface(surface_path, tri.num_tets())?;
    let coor = load_coorientation(coor_path, &surface)?;
    let rep = load_perm_rep(perm_path, dual.presentation())?;
    match corollary_count(tri, &complex, &dual, &surface, &coor, &rep) {
        Ok(r) => {
            let orbit_match = r.surface_orbit_count == r.surface_preimage_components
                && r.piece_orbit_counts == r.piece_preimage_components;
            if !orbit_match {
                report.fail("orbit counts disagree with cut counts".into());
            } else if r.inequality_holds
                && !(r.nonseparating_component.is_some() && r.nonseparating_confirmed)
            {
                report.fail("counts force a non-separating component but none was confirmed".into());
            }
            report.corollary = Some(CorollaryReport {
                degree: r.degree,
                complement_components: r.complement_components,
                surface_preimage_components: r.surface_preimage_components,
                piece_preimage_components: r.piece_preimage_components,
                surface_orbit_count: r.surface_orbit_count,
                piece_orbit_counts: r.piece_orbit_counts,
                orbit_counts_match_cut_counts: orbit_match,
                inequality_holds: r.inequality_holds,
                nonseparating_component: r.nonseparating_component,
                nonseparating_confirmed: r.nonseparating_confirmed,
            });
        }
        Err(e) => report.fail(e.to_string()),
    }
    Ok(report)
}

fn sample_words(num_gens: usize, seed: u64, count: usize, max_len: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if num_gens == 0 {
        return out;
    }
    while out.len() < count {
        let len = rng.gen_range(1..=max_len);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..=num_gens as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let w = Word::from_letters(&letters);
        if !w.is_empty() {
            out.push(w);
        }
    }
    out
}

fn generator_words(pres: &Presentation) -> Vec<Word> {
    let mut words = Vec::new();
    for g in 0..pres.num_generators() {
        words.push(Word::generator(g));
        words.push(Word::generator(g).inverse());
    }
    words
}

fn psi_report(pipeline: &Pipeline, source: &str) -> PsiReport {
    PsiReport {
        source: source.to_string(),
        values: pipeline.psi().values().to_vec(),
        image_gcd: pipeline.psi_image_gcd(),
        surjective: pipeline.psi_image_gcd() == 1,
    }
}

fn trace_reports(
    pres: &Presentation,
    entries: &[btsurf_core::detect::TraceEntry],
) -> Vec<TraceReport> {
    entries
        .iter()
        .map(|e| TraceReport {
            word: pres.format_word(&e.word),
            trace: e.trace.to_string(),
            valuation: e.valuation,
            symmetric: e.symmetric,
            w_polynomial: e.w_polynomial.clone(),
            w_roundtrip_exact: e.w_roundtrip_exact,
        })
        .collect()
}

struct PipelineInputs {
    tri: Triangulation,
    surface: NormalSurfaceVec,
    coor: Vec<i8>,
    rep: PermRep,
    psi_override: Option<PsiMap>,
    psi_source: String,
    extra_words: Vec<Word>,
}

fn load_pipeline_inputs(
    tri_path: &Path,
    surface_path: &Path,
    coor_path: &Path,
    perm_path: &Path,
    psi_path: Option<&Path>,
    words_path: Option<&Path>,
) -> Result<Result<PipelineInputs, String>, InputError> {
    let loaded = load_triangulation(tri_path)?;
    let tri = loaded.tri;
    let dual = match fundamental_group(&tri) {
        Ok(d) => d,
        Err(e) => return Ok(Err(e.to_string())),
    };
    let surface = load_surface(surface_path, tri.num_tets())?;
    let coor = load_coorientation(coor_path, &surface)?;
    let rep = load_perm_rep(perm_path, dual.presentation())?;
    let (psi_override, psi_source) = match psi_path {
        Some(p) => (Some(load_psi(p)?), "file".to_string()),
        None => (None, "geometric".to_string()),
    };
    let extra_words = match words_path {
        Some(p) => load_words(p, dual.presentation())?,
        None => Vec::new(),
    };
    Ok(Ok(PipelineInputs {
        tri,
        surface,
        coor,
        rep,
        psi_override,
        psi_source,
        extra_words,
    }))
}

/// `detect`: the full pipeline with report.
#[allow(clippy::too_many_arguments)]
pub fn detect(
    tri_path: &Path,
    surface_path: &Path,
    coor_path: &Path,
    perm_path: &Path,
    psi_path: Option<&Path>,
    words_path: Option<&Path>,
    gauge: u8,
    seed: u64,
) -> RunResult {
    let mut inputs = input_map(&[
        ("triangulation", tri_path),
        ("surface", surface_path),
        ("coorientation", coor_path),
        ("permutations", perm_path),
    ]);
    if let Some(p) = psi_path {
        inputs.insert("psi".into(), p.display().to_string());
    }
    if let Some(p) = words_path {
        inputs.insert("words".into(), p.display().to_string());
    }
    let mut report = Report::new("detect", inputs);
    let loaded = load_pipeline_inputs(
        tri_path,
        surface_path,
        coor_path,
        perm_path,
        psi_path,
        words_path,
    )?;
    let pin = match loaded {
        Ok(p) => p,
        Err(witness) => {
            report.fail(witness);
            return Ok(report);
        }
    };
    let pipeline = match Pipeline::build(
        &pin.tri,
        &pin.surface,
        &pin.coor,
        &pin.rep,
        pin.psi_override.clone(),
        gauge,
    ) {
        Ok(p) => p,
        Err(e) => {
            report.fail(e.to_string());
            return Ok(report);
        }
    };
    let pres = pipeline.dual().presentation().clone();

    let mut words = generator_words(&pres);
    words.extend(pin.extra_words.iter().cloned());
    words.extend(sample_words(pres.num_generators(), seed, 12, 8));

    let equivariance = pipeline.check_equivariance(&words);
    let (equivariance_checks, equivariance_passed, witness) = match equivariance {
        Ok(n) => (n, true, None),
        Err(e) => (0, false, Some(e.to_string())),
    };
    if let Some(w) = witness {
        report.fail(w);
    }

    let mut tets = Vec::new();
    let mut extracted = Vec::new();
    let mut dual_equals_two_copies = false;
    let mut classification_passed = false;
    if report.pass {
        match pipeline.classify_tets() {
            Ok(classes) => {
                classification_passed = true;
                for (t, c) in classes.iter().enumerate() {
                    tets.push(match c {
                        TetClass::Single { .. } => TetClassReport {
                            tet: t,
                            classes: 1,
                            distance: None,
                            plus_corners: None,
                            crossed_sheets: None,
                        },
                        TetClass::Pair {
                            plus_corners,
                            crossed_sheets,
                            distance,
                            ..
                        } => TetClassReport {
                            tet: t,
                            classes: 2,
                            distance: Some(*distance),
                            plus_corners: Some(plus_corners.clone()),
                            crossed_sheets: Some(crossed_sheets.clone()),
                        },
                    });
                }
                match pipeline.extract_and_compare(&classes) {
                    Ok(s) => {
                        dual_equals_two_copies = true;
                        extracted = s.coords().to_vec();
                    }
                    Err(e) => report.fail(e.to_string()),
                }
            }
            Err(e) => report.fail(e.to_string()),
        }
    }

    let mut character_words = generator_words(&pres);
    character_words.extend(pin.extra_words.iter().cloned());
    character_words.extend(sample_words(pres.num_generators(), seed.wrapping_add(1), 4, 6));
    let character = match pipeline.character(&character_words) {
        Ok(c) => c,
        Err(e) => {
            report.fail(e.to_string());
            return Ok(report);
        }
    };
    if report.pass && character.pole_witness.is_none() {
        report.fail("no trace has a pole at the ideal point".into());
    }
    if report.pass && (!character.all_symmetric || !character.all_w_exact) {
        report.fail("a trace fails the symmetry or w-rewrite check".into());
    }

    report.detect = Some(DetectReport {
        degree: pipeline.cover().degree(),
        gauge: GaugeReport {
            base_tet: 0,
            base_sheet: 0,
            base_corner: pipeline.gauge(),
            tree: "breadth-first over generator order",
            seed,
        },
        chosen_component: pipeline.chosen_component(),
        psi: psi_report(&pipeline, &pin.psi_source),
        equivariance_words: words.len(),
        equivariance_checks,
        equivariance_passed,
        classification_passed,
        tets,
        extracted_surface: extracted,
        dual_equals_two_copies,
        trace_table: trace_reports(&pres, &character.entries),
        traces_all_symmetric: character.all_symmetric,
        traces_all_w_exact: character.all_w_exact,
        trace_pole_found: character.pole_witness.is_some(),
    });
    Ok(report)
}

/// `character`: the trace table alone.
pub fn character(
    tri_path: &Path,
    surface_path: &Path,
    coor_path: &Path,
    perm_path: &Path,
    psi_path: Option<&Path>,
    words_path: Option<&Path>,
    seed: u64,
) -> RunResult {
    let mut inputs = input_map(&[
        ("triangulation", tri_path),
        ("surface", surface_path),
        ("coorientation", coor_path),
        ("permutations", perm_path),
    ]);
    if let Some(p) = psi_path {
        inputs.insert("psi".into(), p.display().to_string());
    }
    if let Some(p) = words_path {
        inputs.insert("words".into(), p.display().to_string());
    }
    let mut report = Report::new("character", inputs);
    let loaded = load_pipeline_inputs(
        tri_path,
        surface_path,
        coor_path,
        perm_path,
        psi_path,
        words_path,
    )?;
    let pin = match loaded {
        Ok(p) => p,
        Err(witness) => {
            report.fail(witness);
            return Ok(report);
        }
    };
    let pipeline = match Pipeline::build(
        &pin.tri,
        &pin.surface,
        &pin.coor,
        &pin.rep,
        pin.psi_override.clone(),
        0,
    ) {
        Ok(p) => p,
        Err(e) => {
            report.fail(e.to_string());
            return Ok(report);
        }
    };
    let pres = pipeline.dual().presentation().clone();
    let mut words = generator_words(&pres);
    words.extend(pin.extra_words.iter().cloned());
    words.extend(sample_words(pres.num_generators(), seed, 8, 8));
    let character = match pipeline.character(&words) {
        Ok(c) => c,
        Err(e) => {
            report.fail(e.to_string());
            return Ok(report);
        }
    };
    if !character.all_symmetric || !character.all_w_exact {
        report.fail("a trace fails the symmetry or w-rewrite check".into());
    } else if !character.any_nonconstant {
        report.fail("all traces are constant".into());
    } else if character.pole_witness.is_none() {
        report.fail("no trace has a pole at the ideal point".into());
    }
    report.character = Some(CharacterReport {
        degree: pipeline.cover().degree(),
        psi: psi_report(&pipeline, &pin.psi_source),
        trace_table: trace_reports(&pres, &character.entries),
        any_nonconstant: character.any_nonconstant,
        pole_witness: character.pole_witness,
        all_symmetric: character.all_symmetric,
        all_w_exact: character.all_w_exact,
    });
    Ok(report)
}

/// Parses a lattice basis: `L(n)`, `L'(n)`, or a semicolon-separated
/// row list of comma-separated field elements.
pub fn parse_lattice(text: &str) -> Result<LatticeBasis, String> {
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("L'(") {
        let n: i64 = rest
            .strip_suffix(')')
            .ok_or("expected closing parenthesis")?
            .trim()
            .parse()
            .map_err(|_| "bad integer in L'(n)".to_string())?;
        return Ok(standard_lambda_prime(n));
    }
    if let Some(rest) = trimmed.strip_prefix("L(") {
        let n: i64 = rest
            .strip_suffix(')')
            .ok_or("expected closing parenthesis")?
            .trim()
            .parse()
            .map_err(|_| "bad integer in L(n)".to_string())?;
        return Ok(standard_lambda(n));
    }
    let rows: Vec<&str> = trimmed.split(';').collect();
    let dim = rows.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for row in &rows {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != dim {
            return Err(format!(
                "matrix must be square: row has {} entries, expected {}",
                cells.len(),
                dim
            ));
        }
        for cell in cells {
            entries.push(
                btsurf_core::funcfield::parse_ratfunc(cell.trim())
                    .map_err(|e| e.to_string())?,
            );
        }
    }
    LatticeBasis::new(SqMatrix::from_rows(dim, entries)).map_err(|e| e.to_string())
}

/// `building dist|adjacent|type`.
pub fn building(op: &str, a_text: &str, b_text: Option<&str>) -> RunResult {
    let mut inputs = BTreeMap::new();
    inputs.insert("a".to_string(), a_text.to_string());
    if let Some(b) = b_text {
        inputs.insert("b".to_string(), b.to_string());
    }
    let mut report = Report::new("building", inputs);
    let a = match parse_lattice(a_text) {
        Ok(a) => a,
        Err(e) => return Err(InputError(format!("--a: {}", e))),
    };
    let b = match b_text {
        Some(t) => Some(parse_lattice(t).map_err(|e| InputError(format!("--b: {}", e)))?),
        None => None,
    };
    let mut building = BuildingReport {
        operation: op.to_string(),
        dim: a.dim(),
        distance: None,
        adjacent: None,
        vertex_type: None,
        invariant_factors: None,
    };
    let outcome = (|| -> Result<(), String> {
        match op {
            "dist" => {
                let b = b.as_ref().ok_or("dist needs --b")?;
                building.invariant_factors =
                    Some(invariant_factor_exponents(&a, b).map_err(|e| e.to_string())?);
                building.distance = Some(graph_distance(&a, b).map_err(|e| e.to_string())?);
            }
            "adjacent" => {
                let b = b.as_ref().ok_or("adjacent needs --b")?;
                building.invariant_factors =
                    Some(invariant_factor_exponents(&a, b).map_err(|e| e.to_string())?);
                building.adjacent = Some(adjacent(&a, b).map_err(|e| e.to_string())?);
            }
            "type" => {
                building.vertex_type = Some(vertex_type(&a).map_err(|e| e.to_string())?);
            }
            other => return Err(format!("unknown building operation '{}'", other)),
        }
        Ok(())
    })();
    if let Err(witness) = outcome {
        report.fail(witness);
    }
    report.building = Some(building);
    Ok(report)
}

/// Writes the report when a path is given; always prints the summary.
pub fn finish(report: &Report, report_path: Option<&PathBuf>) -> Result<i32, InputError> {
    let json = report.to_json();
    if let Some(path) = report_path {
        std::fs::write(path, &json)
            .map_err(|e| InputError(format!("cannot write {}: {}", path.display(), e)))?;
    }
    println!(
        "{}: {}{}",
        report.mode,
        if report.pass { "pass" } else { "FAIL" },
        report
            .witness
            .as_ref()
            .map(|w| format!(" ({})", w))
            .unwrap_or_default()
    );
    Ok(exit_code(report))
}
