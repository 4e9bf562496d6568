//! Trace polynomials of the induced representation along the curve
//! parameter, with the symmetry and pole data that witness the ideal
//! point.

use alloc::vec::Vec;

use crate::group::{induced_rep, CosetStructure, GroupError, PsiMap, Word, ZLaurent};
use crate::lattice::{act, homothetic, LatticeError};

use super::heights::VertexImage;

/// Trace data of one word.
#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub word: Word,
    pub trace: ZLaurent,
    /// Lowest degree in the curve parameter; `None` for the zero trace.
    pub valuation: Option<i64>,
    pub symmetric: bool,
    /// Integer coefficients of the trace rewritten in `w = z + z^-1`.
    pub w_polynomial: Option<Vec<i64>>,
    /// Whether substituting `w = z + z^-1` back reproduces the trace.
    pub w_roundtrip_exact: bool,
}

/// Trace table over a set of words.
#[derive(Clone, Debug)]
pub struct CharacterReport {
    pub entries: Vec<TraceEntry>,
    /// Some trace is nonconstant, so the character curve is not a point.
    pub any_nonconstant: bool,
    /// Index of a trace with a pole at the ideal point (valuation < 0).
    pub pole_witness: Option<usize>,
    pub all_symmetric: bool,
    pub all_w_exact: bool,
}

/// Evaluates the trace of every word, checking the block-monomial trace
/// against the symbolic matrix trace.
pub fn character_report(
    cosets: &CosetStructure,
    psi: &PsiMap,
    words: &[Word],
) -> Result<CharacterReport, GroupError> {
    let mut entries = Vec::with_capacity(words.len());
    for w in words {
        let m = induced_rep(w, cosets, psi)?;
        let trace = m.trace_poly();
        let via_matrix = ZLaurent::from_ratfunc(&m.to_matrix().trace())
            .expect("monomial trace is an integer Laurent polynomial");
        debug_assert_eq!(trace, via_matrix);
        let symmetric = trace.is_symmetric();
        let w_polynomial = trace.as_w_polynomial();
        let w_roundtrip_exact = w_polynomial
            .as_ref()
            .map(|p| ZLaurent::expand_w_polynomial(p) == trace)
            .unwrap_or(false);
        entries.push(TraceEntry {
            word: w.clone(),
            valuation: trace.valuation(),
            symmetric,
            w_polynomial,
            w_roundtrip_exact,
            trace,
        });
    }
    let any_nonconstant = entries.iter().any(|e| !e.trace.is_constant());
    let pole_witness = entries
        .iter()
        .position(|e| e.valuation.is_some_and(|v| v < 0));
    let all_symmetric = entries.iter().all(|e| e.symmetric);
    let all_w_exact = entries.iter().all(|e| e.w_roundtrip_exact);
    Ok(CharacterReport {
        entries,
        any_nonconstant,
        pole_witness,
        all_symmetric,
        all_w_exact,
    })
}

/// Which of the given words move a vertex class: a nonempty answer
/// certifies that the class has a proper stabilizer.
pub fn stabilizer_probe(
    cosets: &CosetStructure,
    psi: &PsiMap,
    class: &VertexImage,
    words: &[Word],
) -> Result<Vec<(Word, bool)>, ProbeError> {
    let basis = class.to_basis();
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        let m = induced_rep(w, cosets, psi).map_err(ProbeError::Group)?;
        let moved = act(&m.to_matrix(), &basis).map_err(ProbeError::Lattice)?;
        let fixes = homothetic(&moved, &basis).map_err(ProbeError::Lattice)?;
        out.push((w.clone(), fixes));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeError {
    Group(GroupError),
    Lattice(LatticeError),
}

impl core::fmt::Display for ProbeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ProbeError::Group(e) => write!(f, "group: {}", e),
            ProbeError::Lattice(e) => write!(f, "lattice: {}", e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{PermRep, Presentation};
    use alloc::vec;

    #[test]
    fn degenerate_psi_probes_no_movers() {
        // With psi identically zero every image is the identity matrix,
        // so nothing moves any class: no nontriviality witness.
        let pres = Presentation::new(vec!["a".into()], vec![]).unwrap();
        let cosets = CosetStructure::build(&pres, &PermRep::trivial(1)).unwrap();
        let psi = PsiMap::new(vec![0]);
        let class = VertexImage::new(vec![0]);
        let probe =
            stabilizer_probe(&cosets, &psi, &class, &[Word::generator(0)]).unwrap();
        let movers: alloc::vec::Vec<_> = probe.iter().filter(|(_, fixes)| !fixes).collect();
        assert!(movers.is_empty(), "no nontriviality witness");
    }

    #[test]
    fn core_loop_moves_the_base_class() {
        let pres = Presentation::new(vec!["a".into()], vec![]).unwrap();
        let cosets = CosetStructure::build(&pres, &PermRep::trivial(1)).unwrap();
        let psi = PsiMap::new(vec![1]);
        let class = VertexImage::new(vec![0]);
        let probe =
            stabilizer_probe(&cosets, &psi, &class, &[Word::generator(0)]).unwrap();
        assert!(!probe[0].1, "the loop sends the base lattice to its neighbor");
    }
}
