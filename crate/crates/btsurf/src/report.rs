//! Machine-readable run reports.
//!
//! Reports serialize with a fixed field order and no environment-derived
//! content, so identical inputs produce byte-identical files.

use std::collections::BTreeMap;

use serde::Serialize;

pub const SCHEMA: &str = "btsurf-report/v1";

#[derive(Serialize, Debug)]
pub struct Report {
    pub schema: &'static str,
    pub mode: String,
    pub inputs: BTreeMap<String, String>,
    /// True when every check the mode performs passed.
    pub pass: bool,
    /// Machine-checkable witness of the first failure, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validate: Option<ValidateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corollary: Option<CorollaryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detect: Option<DetectReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub building: Option<BuildingReport>,
}

impl Report {
    pub fn new(mode: &str, inputs: BTreeMap<String, String>) -> Self {
        Report {
            schema: SCHEMA,
            mode: mode.to_string(),
            inputs,
            pass: true,
            witness: None,
            validate: None,
            cover: None,
            corollary: None,
            detect: None,
            character: None,
            building: None,
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.pass = false;
        self.witness = Some(witness);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Serialize, Debug)]
pub struct HomologySummary {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

#[derive(Serialize, Debug)]
pub struct SurfaceSummary {
    pub discs: u64,
    pub components: usize,
    pub euler: i64,
    pub two_sided: bool,
    pub pipeline_ready: bool,
    pub separating: bool,
    pub complement_components: usize,
}

#[derive(Serialize, Debug)]
pub struct ValidateReport {
    pub tets: usize,
    pub orientable: bool,
    pub vertex_classes: usize,
    pub edge_classes: usize,
    pub face_classes: usize,
    pub boundary_faces: usize,
    pub fundamental_group_generators: usize,
    pub fundamental_group_relators: usize,
    pub homology: HomologySummary,
    pub abelianization_matches_homology: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceSummary>,
}

#[derive(Serialize, Debug)]
pub struct CoverReport {
    pub degree: usize,
    pub total_tets: usize,
    pub homology: HomologySummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lifted_surface: Option<SurfaceSummary>,
}

#[derive(Serialize, Debug)]
pub struct CorollaryReport {
    pub degree: usize,
    pub complement_components: usize,
    pub surface_preimage_components: usize,
    pub piece_preimage_components: Vec<usize>,
    pub surface_orbit_count: usize,
    pub piece_orbit_counts: Vec<usize>,
    pub orbit_counts_match_cut_counts: bool,
    pub inequality_holds: bool,
    pub nonseparating_component: Option<usize>,
    pub nonseparating_confirmed: bool,
}

#[derive(Serialize, Debug)]
pub struct GaugeReport {
    pub base_tet: usize,
    pub base_sheet: usize,
    pub base_corner: u8,
    pub tree: &'static str,
    pub seed: u64,
}

#[derive(Serialize, Debug)]
pub struct PsiReport {
    pub source: String,
    pub values: Vec<i64>,
    pub image_gcd: u64,
    pub surjective: bool,
}

#[derive(Serialize, Debug)]
pub struct TetClassReport {
    pub tet: usize,
    pub classes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plus_corners: Option<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossed_sheets: Option<Vec<usize>>,
}

#[derive(Serialize, Debug)]
pub struct DetectReport {
    pub degree: usize,
    pub gauge: GaugeReport,
    pub chosen_component: usize,
    pub psi: PsiReport,
    pub equivariance_words: usize,
    pub equivariance_checks: usize,
    /// Equivariance of the corner map (first key property).
    pub equivariance_passed: bool,
    /// One-or-two-classes-at-distance-2 for every tetrahedron (second
    /// key property).
    pub classification_passed: bool,
    pub tets: Vec<TetClassReport>,
    pub extracted_surface: Vec<[u64; 7]>,
    pub dual_equals_two_copies: bool,
    pub trace_table: Vec<TraceReport>,
    pub traces_all_symmetric: bool,
    pub traces_all_w_exact: bool,
    pub trace_pole_found: bool,
}

#[derive(Serialize, Debug)]
pub struct TraceReport {
    pub word: String,
    pub trace: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<i64>,
    pub symmetric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_polynomial: Option<Vec<i64>>,
    pub w_roundtrip_exact: bool,
}

#[derive(Serialize, Debug)]
pub struct CharacterReport {
    pub degree: usize,
    pub psi: PsiReport,
    pub trace_table: Vec<TraceReport>,
    pub any_nonconstant: bool,
    pub pole_witness: Option<usize>,
    pub all_symmetric: bool,
    pub all_w_exact: bool,
}

#[derive(Serialize, Debug)]
pub struct BuildingReport {
    pub operation: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjacent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_type: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<i64>>,
}
