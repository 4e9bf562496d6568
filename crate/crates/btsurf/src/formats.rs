//! Line-oriented file formats.
//!
//! All formats are versioned by their first line and every parser
//! rejects unknown directives and trailing garbage.
//!
//! Triangulation (`tri v1`):
//!
//! ```text
//! tri v1
//! tet 3
//! glue 0.0 1.3 0 1 2
//! boundary 0.1
//! ```
//!
//! A `glue a.f b.g i j k` line identifies face `f` of tet `a` with face
//! `g` of tet `b`, sending the vertices of the source face in increasing
//! order to `i j k`; each internal face is stated once (from either
//! side) and the partner direction is filled in automatically.
//! `boundary` lines are optional documentation: unstated faces are
//! boundary.
//!
//! Normal surface (`surf v1`): one line of 7 nonnegative integers per
//! tetrahedron (4 triangle slots then 3 quadrilateral slots).
//!
//! Coorientation (`coor v1`): one `+1`/`-1` line per disc instance, in
//! tetrahedron/slot/level order.
//!
//! Permutation representation (`perm v1`): one `perm <name>: <images>`
//! line per generator, images of points `1..d` (1-indexed).
//!
//! Presentation (`grp v1`): a `gens: a b c` line, then `rel:` lines with
//! whitespace-separated generator names, `^-1` for inverses.
//!
//! Psi override (`psi v1`): one line of integers, one per Schreier
//! generator in canonical order.
//!
//! Words (`words v1`): one word per line in the `rel:` syntax without
//! the prefix.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use btsurf_core::group::{Perm, PermRep, Presentation, PsiMap, Word};
use btsurf_core::manifold::{DiscIndex, Gluing, NormalSurfaceVec, Perm4, Triangulation};

/// A parse failure with the offending line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn content_lines(input: &str) -> Vec<(usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn expect_header(
    lines: &[(usize, &str)],
    header: &str,
) -> Result<(), FormatError> {
    match lines.first() {
        Some(&(_, l)) if l == header => Ok(()),
        Some(&(n, l)) => err(n, format!("expected header '{}', found '{}'", header, l)),
        None => err(0, format!("empty file, expected header '{}'", header)),
    }
}

fn parse_face_ref(line: usize, token: &str) -> Result<(usize, u8), FormatError> {
    let Some((t, f)) = token.split_once('.') else {
        return err(line, format!("expected <tet>.<face>, found '{}'", token));
    };
    let tet: usize = t
        .parse()
        .map_err(|_| FormatError {
            line,
            message: format!("bad tetrahedron index '{}'", t),
        })?;
    let face: u8 = f
        .parse()
        .map_err(|_| FormatError {
            line,
            message: format!("bad face index '{}'", f),
        })?;
    if face > 3 {
        return err(line, format!("face index {} out of range", face));
    }
    Ok((tet, face))
}

/// Parses a triangulation file.
pub fn parse_triangulation(input: &str) -> Result<Triangulation, FormatError> {
    let lines = content_lines(input);
    expect_header(&lines, "tri v1")?;
    let mut iter = lines.iter().skip(1);
    let Some(&(n, tet_line)) = iter.next() else {
        return err(0, "missing 'tet <count>' line");
    };
    let count: usize = match tet_line.strip_prefix("tet ") {
        Some(rest) => rest.trim().parse().map_err(|_| FormatError {
            line: n,
            message: format!("bad tetrahedron count '{}'", rest.trim()),
        })?,
        None => return err(n, "expected 'tet <count>'"),
    };
    let mut gluings: Vec<[Option<Gluing>; 4]> = vec![[None, None, None, None]; count];
    for &(n, line) in iter {
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("glue") => {
                let a = tokens
                    .next()
                    .ok_or_else(|| FormatError {
                        line: n,
                        message: "missing source face".into(),
                    })
                    .and_then(|t| parse_face_ref(n, t))?;
                let b = tokens
                    .next()
                    .ok_or_else(|| FormatError {
                        line: n,
                        message: "missing target face".into(),
                    })
                    .and_then(|t| parse_face_ref(n, t))?;
                let mut images = [0u8; 3];
                for slot in &mut images {
                    let tok = tokens.next().ok_or_else(|| FormatError {
                        line: n,
                        message: "expected three vertex images".into(),
                    })?;
                    *slot = tok.parse().map_err(|_| FormatError {
                        line: n,
                        message: format!("bad vertex image '{}'", tok),
                    })?;
                }
                if tokens.next().is_some() {
                    return err(n, "trailing input after gluing");
                }
                if a.0 >= count || b.0 >= count {
                    return err(n, "tetrahedron index out of range");
                }
                let src_vertices: Vec<u8> = (0..4u8).filter(|&v| v != a.1).collect();
                let mut vmap_images = [0u8; 4];
                vmap_images[a.1 as usize] = b.1;
                for (v, &img) in src_vertices.iter().zip(&images) {
                    vmap_images[*v as usize] = img;
                }
                let Some(vmap) = Perm4::from_images(vmap_images) else {
                    return err(n, "vertex images do not form a permutation");
                };
                let fwd = Gluing {
                    tet: b.0,
                    face: b.1,
                    vmap,
                };
                let bwd = Gluing {
                    tet: a.0,
                    face: a.1,
                    vmap: vmap.inverse(),
                };
                for (side, g) in [(a, fwd), (b, bwd)] {
                    let slot = &mut gluings[side.0][side.1 as usize];
                    match slot {
                        None => *slot = Some(g),
                        Some(existing) if *existing == g => {}
                        Some(_) => {
                            return err(
                                n,
                                format!(
                                    "face {}.{} is glued twice inconsistently",
                                    side.0, side.1
                                ),
                            )
                        }
                    }
                }
            }
            Some("boundary") => {
                let a = tokens
                    .next()
                    .ok_or_else(|| FormatError {
                        line: n,
                        message: "missing face".into(),
                    })
                    .and_then(|t| parse_face_ref(n, t))?;
                if tokens.next().is_some() {
                    return err(n, "trailing input after boundary mark");
                }
                if a.0 >= count {
                    return err(n, "tetrahedron index out of range");
                }
                if gluings[a.0][a.1 as usize].is_some() {
                    return err(n, format!("face {}.{} marked boundary but glued", a.0, a.1));
                }
            }
            Some(other) => return err(n, format!("unknown directive '{}'", other)),
            None => unreachable!("blank lines filtered"),
        }
    }
    Ok(Triangulation::new(gluings))
}

/// Writes a triangulation file listing each internal face once, from
/// its lexicographically smaller side, then explicit boundary marks.
pub fn write_triangulation(tri: &Triangulation) -> String {
    let mut out = String::from("tri v1\n");
    let _ = writeln!(out, "tet {}", tri.num_tets());
    for t in 0..tri.num_tets() {
        for f in 0..4u8 {
            let Some(g) = tri.gluing(t, f) else { continue };
            if (t, f) > (g.tet, g.face) {
                continue;
            }
            let src: Vec<String> = (0..4u8)
                .filter(|&v| v != f)
                .map(|v| g.vmap.apply(v).to_string())
                .collect();
            let _ = writeln!(
                out,
                "glue {}.{} {}.{} {}",
                t,
                f,
                g.tet,
                g.face,
                src.join(" ")
            );
        }
    }
    for t in 0..tri.num_tets() {
        for f in 0..4u8 {
            if tri.is_boundary(t, f) {
                let _ = writeln!(out, "boundary {}.{}", t, f);
            }
        }
    }
    out
}

/// Parses a normal surface file; the tetrahedron count must match.
pub fn parse_surface(input: &str, num_tets: usize) -> Result<NormalSurfaceVec, FormatError> {
    let lines = content_lines(input);
    expect_header(&lines, "surf v1")?;
    let mut coords = Vec::with_capacity(num_tets);
    for &(n, line) in lines.iter().skip(1) {
        let values: Result<Vec<u64>, _> = line.split_whitespace().map(str::parse).collect();
        let Ok(values) = values else {
            return err(n, "expected 7 nonnegative integers");
        };
        if values.len() != 7 {
            return err(n, format!("expected 7 coordinates, found {}", values.len()));
        }
        coords.push([
            values[0], values[1], values[2], values[3], values[4], values[5], values[6],
        ]);
    }
    if coords.len() != num_tets {
        return err(
            lines.last().map(|&(n, _)| n).unwrap_or(0),
            format!("expected {} coordinate lines, found {}", num_tets, coords.len()),
        );
    }
    Ok(NormalSurfaceVec::new(coords))
}

pub fn write_surface(surface: &NormalSurfaceVec) -> String {
    let mut out = String::from("surf v1\n");
    for t in 0..surface.num_tets() {
        let c = surface.tet(t);
        let _ = writeln!(
            out,
            "{} {} {} {} {} {} {}",
            c[0], c[1], c[2], c[3], c[4], c[5], c[6]
        );
    }
    out
}

/// Parses a coorientation file: one sign per disc instance.
pub fn parse_coorientation(
    input: &str,
    surface: &NormalSurfaceVec,
) -> Result<Vec<i8>, FormatError> {
    let lines = content_lines(input);
    expect_header(&lines, "coor v1")?;
    let mut signs = Vec::new();
    for &(n, line) in lines.iter().skip(1) {
        let sign = match line {
            "+1" => 1,
            "-1" => -1,
            other => return err(n, format!("expected +1 or -1, found '{}'", other)),
        };
        signs.push(sign);
    }
    let expected = DiscIndex::build(surface).len();
    if signs.len() != expected {
        return err(
            lines.last().map(|&(n, _)| n).unwrap_or(0),
            format!("expected {} signs, found {}", expected, signs.len()),
        );
    }
    Ok(signs)
}

pub fn write_coorientation(signs: &[i8]) -> String {
    let mut out = String::from("coor v1\n");
    for s in signs {
        let _ = writeln!(out, "{}", if *s > 0 { "+1" } else { "-1" });
    }
    out
}

/// Parses a permutation representation against the generator names of a
/// presentation.  Images are 1-indexed in the file.
pub fn parse_perm_rep(
    input: &str,
    pres: &Presentation,
) -> Result<PermRep, FormatError> {
    let lines = content_lines(input);
    expect_header(&lines, "perm v1")?;
    let mut by_name: BTreeMap<String, (usize, Vec<usize>)> = BTreeMap::new();
    for &(n, line) in lines.iter().skip(1) {
        let Some(rest) = line.strip_prefix("perm ") else {
            return err(n, "expected 'perm <name>: <images>'");
        };
        let Some((name, images)) = rest.split_once(':') else {
            return err(n, "expected ':' after the generator name");
        };
        let name = name.trim().to_string();
        let parsed: Result<Vec<usize>, _> =
            images.split_whitespace().map(str::parse).collect();
        let Ok(parsed) = parsed else {
            return err(n, "bad image list");
        };
        if parsed.contains(&0) {
            return err(n, "images are 1-indexed");
        }
        if by_name
            .insert(name.clone(), (n, parsed))
            .is_some()
        {
            return err(n, format!("duplicate permutation for '{}'", name));
        }
    }
    let degree = by_name
        .values()
        .map(|(_, v)| v.len())
        .max()
        .unwrap_or(1);
    let mut perms = Vec::with_capacity(pres.num_generators());
    for name in pres.generator_names() {
        let Some((n, images)) = by_name.remove(name) else {
            return err(0, format!("missing permutation for generator '{}'", name));
        };
        if images.len() != degree {
            return err(n, format!("expected {} images for '{}'", degree, name));
        }
        let zero_based: Vec<usize> = images.iter().map(|&x| x - 1).collect();
        let Some(perm) = Perm::from_images(zero_based) else {
            return err(n, format!("images for '{}' are not a permutation", name));
        };
        perms.push(perm);
    }
    if let Some((name, (n, _))) = by_name.into_iter().next() {
        return err(n, format!("unknown generator '{}'", name));
    }
    PermRep::new(degree, perms).map_err(|e| FormatError {
        line: 0,
        message: e.to_string(),
    })
}

pub fn write_perm_rep(rep: &PermRep, pres: &Presentation) -> String {
    let mut out = String::from("perm v1\n");
    for (i, name) in pres.generator_names().iter().enumerate() {
        let images: Vec<String> = (0..rep.degree())
            .map(|x| (rep.generator_perm(i).apply(x) + 1).to_string())
            .collect();
        let _ = writeln!(out, "perm {}: {}", name, images.join(" "));
    }
    out
}

/// Parses one word in generator-name syntax, e.g. `a b^-1 a`.
pub fn parse_word(
    line: usize,
    text: &str,
    pres: &Presentation,
) -> Result<Word, FormatError> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let (name, inverse) = match token.strip_suffix("^-1") {
            Some(base) => (base, true),
            None => (token, false),
        };
        let Some(g) = pres.generator_index(name) else {
            return err(line, format!("unknown generator '{}'", name));
        };
        let letter = g as i32 + 1;
        letters.push(if inverse { -letter } else { letter });
    }
    Ok(Word::from_letters(&letters))
}

/// Parses a presentation file.
pub fn parse_presentation(input: &str) -> Result<Presentation, FormatError> {
    let lines = content_lines(input);
    expect_header(&lines, "grp v1")?;
    let mut gens: Option<Vec<String>> = None;
    let mut relator_lines = Vec::new();
    for &(n, line) in lines.iter().skip(1) {
        if let Some(rest) = line.strip_prefix("gens:") {
            if gens.is_some() {
                return err(n, "duplicate gens line");
            }
            gens = Some(rest.split_whitespace().map(String::from).collect());
        } else if let Some(rest) = line.strip_prefix("rel:") {
            relator_lines.push((n, rest.to_string()));
        } else {
            return err(n, format!("unknown directive '{}'", line));
        }
    }
    let Some(gens) = gens else {
        return err(0, "missing gens line");
    };
    let skeleton = Presentation::new(gens.clone(), vec![]).map_err(|e| FormatError {
        line: 0,
        message: e.to_string(),
    })?;
    let mut relators = Vec::new();
    for (n, text) in relator_lines {
        relators.push(parse_word(n, &text, &skeleton)?);
    }
    Presentation::new(gens, relators).map_err(|e| FormatError {
        line: 0,
        message: e.to_string(),
    })
}

pub fn write_presentation(pres: &Presentation) -> String {
    let mut out = String::from("grp v1\n");
    let _ = writeln!(out, "gens: {}", pres.generator_names().join(" "));
    for r in pres.relators() {
        let _ = writeln!(out, "rel: {}", pres.format_word(r));
    }
    out
}

/// Parses a psi override file: integers in canonical Schreier order.
pub fn parse_psi(input: &str) -> Result<PsiMap, FormatError> {
    let lines = content_lines(input);
    expect_header(&lines, "psi v1")?;
    let mut values = Vec::new();
    for &(n, line) in lines.iter().skip(1) {
        for token in line.split_whitespace() {
            let v: i64 = token.parse().map_err(|_| FormatError {
                line: n,
                message: format!("bad integer '{}'", token),
            })?;
            values.push(v);
        }
    }
    Ok(PsiMap::new(values))
}

pub fn write_psi(psi: &PsiMap) -> String {
    let values: Vec<String> = psi.values().iter().map(|v| v.to_string()).collect();
    format!("psi v1\n{}\n", values.join(" "))
}

/// Parses a words file: one word per line.
pub fn parse_words(input: &str, pres: &Presentation) -> Result<Vec<Word>, FormatError> {
    let lines = content_lines(input);
    expect_header(&lines, "words v1")?;
    lines
        .iter()
        .skip(1)
        .map(|&(n, line)| parse_word(n, line, pres))
        .collect()
}
