//! Reading complexes and maps from text, and the result record format.
//!
//! Text input is a list of `key: value` lines:
//!
//! ```text
//! # the 6-vertex octahedron
//! n: 6
//! involution: (1,6)(2,5)(3,4)
//! orbits: 123, 124, 135, 145
//! ```
//!
//! Keys are `n`, `involution`, `facets`, `orbits` and `faces` (polygons).
//! A key may repeat; its values are joined. A line starting with `{` is
//! read as a JSON object with the same fields, or as a [`ResultRecord`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, Simplex, VertexLabel};
use crate::enumerate::{classify, EnumerationResult, Equivalence};
use crate::homology;
use crate::map::{Face, PolyhedralMap};
use crate::notation;
use crate::symmetry::{orbit_closure, Involution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn at(line: usize, message: impl fmt::Display) -> RecordError {
    RecordError::Parse {
        line,
        message: message.to_string(),
    }
}

/// What an input file describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Complex(Complex),
    Map(PolyhedralMap),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Input {
    pub object: Object,
    pub involution: Option<Involution>,
}

impl Input {
    /// The complex, or the map's faces when they are all triangles.
    pub fn complex(&self) -> Option<Complex> {
        match &self.object {
            Object::Complex(c) => Some(c.clone()),
            Object::Map(m) => m.to_complex(),
        }
    }

    pub fn n(&self) -> usize {
        match &self.object {
            Object::Complex(c) => c.n(),
            Object::Map(m) => m.n(),
        }
    }
}

/// JSON input; the derived fields of a [`ResultRecord`] are ignored.
#[derive(Debug, Default, Deserialize)]
struct JsonInput {
    n: Option<usize>,
    dim: Option<usize>,
    facets: Option<Vec<Vec<VertexLabel>>>,
    faces: Option<Vec<Vec<VertexLabel>>>,
    orbit_reps: Option<Vec<String>>,
    involution: Option<String>,
}

#[derive(Default)]
struct Collected {
    n: Option<usize>,
    involution: Option<(usize, String)>,
    facets: Vec<(usize, Vec<VertexLabel>)>,
    orbits: Vec<(usize, Vec<VertexLabel>)>,
    faces: Vec<(usize, Vec<VertexLabel>)>,
}

pub fn parse_input(text: &str) -> Result<Input, RecordError> {
    let first = text
        .lines()
        .enumerate()
        .find(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    match first {
        Some((i, l)) if l.trim_start().starts_with('{') => parse_json(l, i + 1),
        _ => parse_text(text),
    }
}

fn parse_text(text: &str) -> Result<Input, RecordError> {
    let mut c = Collected::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let (key, value) = l
            .split_once(':')
            .ok_or_else(|| at(line, format!("expected 'key: value', got {l:?}")))?;
        let value = value.trim();
        let list = || -> Result<Vec<(usize, Vec<VertexLabel>)>, RecordError> {
            Ok(notation::parse_face_list(value)
                .map_err(|e| at(line, e))?
                .into_iter()
                .map(|f| (line, f))
                .collect())
        };
        match key.trim().to_ascii_lowercase().as_str() {
            "n" => {
                c.n = Some(
                    value
                        .parse()
                        .map_err(|_| at(line, format!("bad vertex count {value:?}")))?,
                )
            }
            "involution" => c.involution = Some((line, value.to_string())),
            "facets" => c.facets.extend(list()?),
            "orbits" => c.orbits.extend(list()?),
            "faces" => c.faces.extend(list()?),
            other => return Err(at(line, format!("unknown key {other:?}"))),
        }
    }
    assemble(c)
}

fn assemble(c: Collected) -> Result<Input, RecordError> {
    let kinds = [
        !c.facets.is_empty(),
        !c.orbits.is_empty(),
        !c.faces.is_empty(),
    ];
    if kinds.iter().filter(|&&k| k).count() != 1 {
        return Err(RecordError::Invalid(
            "give exactly one of facets, orbits or faces".into(),
        ));
    }
    let max_label = c
        .facets
        .iter()
        .chain(&c.orbits)
        .chain(&c.faces)
        .flat_map(|(_, f)| f.iter().copied())
        .max()
        .unwrap_or(0) as usize;
    let involution = match &c.involution {
        Some((line, text)) => {
            Some(Involution::parse(text, c.n.or(Some(max_label))).map_err(|e| at(*line, e))?)
        }
        None => None,
    };

    if !c.faces.is_empty() {
        let faces = c
            .faces
            .into_iter()
            .map(|(line, f)| Face::new(f).map_err(|e| at(line, e)))
            .collect::<Result<Vec<_>, _>>()?;
        let map = match c.n {
            Some(n) => PolyhedralMap::with_vertex_count(n, faces),
            None => PolyhedralMap::new(faces),
        }
        .map_err(|e| RecordError::Invalid(e.to_string()))?;
        return Ok(Input {
            object: Object::Map(map),
            involution,
        });
    }

    let simplices = |v: Vec<(usize, Vec<VertexLabel>)>| {
        v.into_iter()
            .map(|(line, f)| Simplex::new(f).map_err(|e| at(line, e)))
            .collect::<Result<Vec<_>, _>>()
    };
    let complex = if !c.orbits.is_empty() {
        let n = c.n.unwrap_or_else(|| {
            involution
                .as_ref()
                .map(|i| i.n())
                .unwrap_or(max_label + max_label % 2)
        });
        let inv = match &involution {
            Some(i) => i.clone(),
            None => Involution::canonical(n).map_err(|e| RecordError::Invalid(e.to_string()))?,
        };
        let reps = simplices(c.orbits)?;
        let closed = orbit_closure(&reps, &inv).map_err(|e| RecordError::Invalid(e.to_string()))?;
        return Ok(Input {
            object: Object::Complex(closed),
            involution: Some(inv),
        });
    } else {
        let facets = simplices(c.facets)?;
        match c.n {
            Some(n) => Complex::with_vertex_count(n, facets),
            None => Complex::new(facets),
        }
        .map_err(|e| RecordError::Invalid(e.to_string()))?
    };
    Ok(Input {
        object: Object::Complex(complex),
        involution,
    })
}

fn parse_json(line_text: &str, line: usize) -> Result<Input, RecordError> {
    let j: JsonInput = serde_json::from_str(line_text).map_err(|e| at(line, e))?;
    let tag = |v: Vec<Vec<VertexLabel>>| v.into_iter().map(|f| (line, f)).collect::<Vec<_>>();
    let mut c = Collected {
        n: j.n,
        involution: j.involution.map(|s| (line, s)),
        ..Collected::default()
    };
    if let Some(f) = j.facets {
        c.facets = tag(f);
    }
    if let Some(f) = j.faces {
        c.faces = tag(f);
    }
    if let Some(reps) = j.orbit_reps {
        c.orbits = reps
            .iter()
            .map(|r| {
                notation::parse_face(r)
                    .map(|f| (line, f))
                    .map_err(|e| at(line, e))
            })
            .collect::<Result<_, _>>()?;
    }
    let input = assemble(c)?;
    if let (Some(d), Some(cx)) = (j.dim, input.complex()) {
        if cx.dim() != d {
            return Err(at(
                line,
                format!("dim {d} does not match facets of dimension {}", cx.dim()),
            ));
        }
    }
    Ok(input)
}

/// Text form accepted by [`parse_input`].
pub fn format_input(input: &Input) -> String {
    let mut out = format!("n: {}\n", input.n());
    if let Some(i) = &input.involution {
        out.push_str(&format!("involution: {i}\n"));
    }
    match &input.object {
        Object::Complex(c) => out.push_str(&format!(
            "facets: {}\n",
            notation::format_simplices(c.facets())
        )),
        Object::Map(m) => out.push_str(&format!(
            "faces: {}\n",
            notation::format_face_list(m.faces().iter().map(|f| f.cycle()))
        )),
    }
    out
}

/// One line of an enumeration result file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub n: usize,
    pub dim: usize,
    pub orbit_reps: Vec<String>,
    pub f_vector: Vec<usize>,
    pub homology: String,
    pub orientable: bool,
    pub equivalence: String,
    pub canonical_hash: String,
}

impl ResultRecord {
    pub fn from_result(r: &EnumerationResult, eq: Equivalence) -> Self {
        ResultRecord {
            n: r.complex.n(),
            dim: r.complex.dim(),
            orbit_reps: r.orbit_reps.iter().map(|s| s.to_string()).collect(),
            f_vector: r.face_vector.0.clone(),
            homology: r.homology.compact_string(),
            orientable: r.orientable,
            equivalence: eq.to_string(),
            canonical_hash: r.canonical.hash_hex(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self, RecordError> {
        serde_json::from_str(line).map_err(|e| RecordError::Invalid(e.to_string()))
    }

    /// The complex spanned by the orbit representatives under `v ↔ n+1−v`.
    pub fn complex(&self) -> Result<Complex, RecordError> {
        let inv = Involution::canonical(self.n).map_err(|e| RecordError::Invalid(e.to_string()))?;
        let reps = self
            .orbit_reps
            .iter()
            .map(|r| {
                notation::parse_face(r)
                    .map_err(|e| RecordError::Invalid(e.to_string()))
                    .and_then(|f| Simplex::new(f).map_err(|e| RecordError::Invalid(e.to_string())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let c = orbit_closure(&reps, &inv).map_err(|e| RecordError::Invalid(e.to_string()))?;
        Complex::with_vertex_count(self.n, c.facets().to_vec())
            .map_err(|e| RecordError::Invalid(e.to_string()))
    }

    /// Recomputes every derived field from the orbit representatives.
    pub fn rederive(&self) -> Result<ResultRecord, RecordError> {
        let c = self.complex()?;
        let eq: Equivalence = self.equivalence.parse().map_err(RecordError::Invalid)?;
        let inv = Involution::canonical(self.n).map_err(|e| RecordError::Invalid(e.to_string()))?;
        let form = classify(&c, &inv, eq).map_err(|e| RecordError::Invalid(e.to_string()))?;
        let orientable =
            homology::is_orientable(&c).map_err(|e| RecordError::Invalid(e.to_string()))?;
        Ok(ResultRecord {
            n: c.n(),
            dim: c.dim(),
            orbit_reps: self.orbit_reps.clone(),
            f_vector: c.face_vector().0,
            homology: homology::homology(&c).compact_string(),
            orientable,
            equivalence: self.equivalence.clone(),
            canonical_hash: form.hash_hex(),
        })
    }
}

impl fmt::Display for ResultRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fv: Vec<String> = self.f_vector.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "({}) ({}) {}",
            fv.join(", "),
            self.homology,
            self.orbit_reps.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const OCTAHEDRON: &str =
        "# octahedron\nn: 6\ninvolution: (1,6)(2,5)(3,4)\norbits: 123, 124, 135, 145\n";

    #[test]
    fn orbits_expand_under_the_involution() {
        let i = parse_input(OCTAHEDRON).unwrap();
        let c = i.complex().unwrap();
        assert_eq!(c.face_vector().0, vec![6, 12, 8]);
        assert!(i.involution.is_some());
    }

    #[test]
    fn orbits_default_to_the_canonical_involution() {
        let i = parse_input("orbits: 123, 124, 135, 145").unwrap();
        assert_eq!(i.involution.unwrap(), Involution::canonical(6).unwrap());
    }

    #[test]
    fn keys_can_repeat() {
        let i = parse_input("facets: 123, 124\nfacets: 134, 234\n").unwrap();
        assert_eq!(i.complex().unwrap().facets().len(), 4);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_input("n: 6\n\nfacets: 12!\n").unwrap_err();
        assert!(matches!(e, RecordError::Parse { line: 3, .. }), "{e}");
        let e = parse_input("n: 6\nbogus: 1\n").unwrap_err();
        assert!(matches!(e, RecordError::Parse { line: 2, .. }));
        let e = parse_input("n: six\n").unwrap_err();
        assert!(matches!(e, RecordError::Parse { line: 1, .. }));
    }

    #[test]
    fn faces_give_a_map() {
        let i =
            parse_input("faces: [1,2,3,4], [5,6,7,8], [1,2,6,5], [2,3,7,6], [3,4,8,7], [4,1,5,8]")
                .unwrap();
        assert!(matches!(i.object, Object::Map(_)));
        assert!(i.complex().is_none());
    }

    #[test]
    fn json_input() {
        let i = parse_input(r#"{"n": 4, "dim": 2, "facets": [[1,2,3],[1,2,4],[1,3,4],[2,3,4]]}"#)
            .unwrap();
        assert_eq!(i.complex().unwrap().euler_characteristic(), 2);
        assert!(
            parse_input(r#"{"n": 4, "dim": 1, "facets": [[1,2,3],[1,2,4],[1,3,4],[2,3,4]]}"#)
                .is_err()
        );
    }

    #[test]
    fn text_round_trip() {
        let i = parse_input(OCTAHEDRON).unwrap();
        let again = parse_input(&format_input(&i)).unwrap();
        assert_eq!(again.complex(), i.complex());
        assert_eq!(again.involution, i.involution);
    }
}
