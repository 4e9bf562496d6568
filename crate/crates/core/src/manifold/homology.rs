//! Integer homology from the boundary maps of the cell classes, used as
//! an independent oracle against the dual presentation.

use alloc::vec::Vec;

use crate::group::{Presentation, Word};

use super::tri::{TriComplex, Triangulation};

/// Rank and torsion of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

/// Dense integer matrix in row-major order.
struct IntMat {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMat {
    fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            entries: alloc::vec![0; rows * cols],
        }
    }

    fn add_at(&mut self, r: usize, c: usize, v: i64) {
        self.entries[r * self.cols + c] += v;
    }
}

/// Diagonal of the Smith normal form of an integer matrix: nonnegative
/// entries with each dividing the next, padded with zeros to the shorter
/// dimension.
pub fn integer_snf_diagonal(rows: usize, cols: usize, entries: &[i64]) -> Vec<i64> {
    assert_eq!(entries.len(), rows * cols);
    let mut m = entries.to_vec();
    let at = |m: &Vec<i64>, r: usize, c: usize| m[r * cols + c];
    let n = rows.min(cols);
    let mut out = Vec::with_capacity(n);
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        // Find the nonzero entry of least magnitude.
        let mut best: Option<(i64, usize, usize)> = None;
        for r in top..rows {
            for c in left..cols {
                let v = at(&m, r, c).abs();
                if v != 0 && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        for c in 0..cols {
            m.swap(top * cols + c, pr * cols + c);
        }
        for r in 0..rows {
            m.swap(r * cols + left, r * cols + pc);
        }
        // Reduce row and column against the pivot; restart if a smaller
        // remainder shows up (it becomes the next pivot candidate).
        let mut dirty = true;
        while dirty {
            dirty = false;
            let p = at(&m, top, left);
            for r in (top + 1)..rows {
                let q = div_round(at(&m, r, left), p);
                if q != 0 {
                    for c in left..cols {
                        m[r * cols + c] -= q * at(&m, top, c);
                    }
                }
                if at(&m, r, left) != 0 {
                    // Remainder smaller than the pivot: swap it up and
                    // start over with the smaller pivot.
                    for c in 0..cols {
                        m.swap(top * cols + c, r * cols + c);
                    }
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            for c in (left + 1)..cols {
                let q = div_round(at(&m, top, c), p);
                if q != 0 {
                    for r in top..rows {
                        m[r * cols + c] -= q * at(&m, r, left);
                    }
                }
                if at(&m, top, c) != 0 {
                    for r in 0..rows {
                        m.swap(r * cols + left, r * cols + c);
                    }
                    dirty = true;
                    break;
                }
            }
        }
        out.push(at(&m, top, left).abs());
        top += 1;
        left += 1;
    }
    out.resize(n, 0);
    // Enforce the divisibility chain.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 1..out.len() {
            if out[i - 1] != 0 && out[i] % out[i - 1] != 0 {
                let g = gcd(out[i - 1], out[i]);
                let l = out[i - 1] / g * out[i];
                out[i - 1] = g;
                out[i] = l;
                changed = true;
            } else if out[i - 1] == 0 && out[i] != 0 {
                out.swap(i - 1, i);
                changed = true;
            }
        }
    }
    out
}

fn div_round(a: i64, b: i64) -> i64 {
    // Quotient leaving |r| < |b| (truncated division is enough here).
    a / b
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn rank_and_torsion(diag: &[i64]) -> (usize, Vec<u64>) {
    let rank = diag.iter().filter(|&&d| d != 0).count();
    let torsion = diag
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| d as u64)
        .collect();
    (rank, torsion)
}

/// First homology of the quotient cell complex: vertex, edge and face
/// classes with boundary maps read off chosen representatives.
pub fn first_homology(tri: &Triangulation, complex: &TriComplex) -> Homology {
    // d1: edges -> vertices.
    let mut d1 = IntMat::zero(complex.num_vertex_classes, complex.num_edge_classes);
    for (e, &(t, a, b)) in complex.edge_reps.iter().enumerate() {
        d1.add_at(complex.vertex_of(t, b), e, 1);
        d1.add_at(complex.vertex_of(t, a), e, -1);
    }
    // d2: faces -> edges.
    let mut d2 = IntMat::zero(complex.num_edge_classes, complex.num_face_classes);
    for (fc, &(t, f)) in complex.face_reps.iter().enumerate() {
        let vs: Vec<u8> = (0..4u8).filter(|&v| v != f).collect();
        let (a, b, c) = (vs[0], vs[1], vs[2]);
        for (x, y, sign) in [(b, c, 1i64), (a, c, -1), (a, b, 1)] {
            let (class, dir) = complex.edge_of(t, x, y);
            d2.add_at(class, fc, sign * dir as i64);
        }
    }
    let _ = tri;
    let s1 = integer_snf_diagonal(d1.rows, d1.cols, &d1.entries);
    let s2 = integer_snf_diagonal(d2.rows, d2.cols, &d2.entries);
    let (r1, _) = rank_and_torsion(&s1);
    let (r2, torsion) = rank_and_torsion(&s2);
    Homology {
        betti: complex.num_edge_classes - r1 - r2,
        torsion,
    }
}

/// Abelianization of a finite presentation, for comparison against
/// [`first_homology`].
pub fn abelianization(pres: &Presentation) -> Homology {
    let rows = pres.num_generators();
    let cols = pres.relators().len();
    let mut m = IntMat::zero(rows.max(1), cols.max(1));
    for (c, r) in pres.relators().iter().enumerate() {
        for &l in r.letters() {
            m.add_at(Word::generator_of(l), c, if l > 0 { 1 } else { -1 });
        }
    }
    let diag = integer_snf_diagonal(m.rows, m.cols, &m.entries);
    let (rank, torsion) = rank_and_torsion(&diag);
    let rank = if pres.num_generators() == 0 { 0 } else { rank };
    Homology {
        betti: pres.num_generators() - rank,
        torsion,
    }
}
