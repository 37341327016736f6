//! Fixed-point-free involutions, central symmetry and admissible orbits.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, ComplexError, Simplex, VertexLabel};
use crate::map::{Face, MapError, PolyhedralMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("an involution needs an even positive vertex count, got {0}")]
    OddVertexCount(usize),
    #[error("vertex {0} is fixed")]
    FixedPoint(VertexLabel),
    #[error("vertex {0} appears in more than one pair")]
    RepeatedVertex(VertexLabel),
    #[error("vertex {0} is not paired")]
    Unpaired(VertexLabel),
    #[error("vertex {label} is outside 1..={n}")]
    LabelOutOfRange { label: VertexLabel, n: usize },
    #[error("cannot parse involution: {0}")]
    Parse(String),
    #[error("orbit closure repeats facet {0}")]
    DuplicateFacet(Simplex),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A fixed-point-free involution on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Involution {
    image: Vec<VertexLabel>,
}

impl Involution {
    /// `v ↔ n + 1 − v`.
    pub fn canonical(n: usize) -> Result<Self, SymmetryError> {
        if n == 0 || n % 2 == 1 {
            return Err(SymmetryError::OddVertexCount(n));
        }
        Ok(Involution {
            image: (1..=n).map(|v| (n + 1 - v) as VertexLabel).collect(),
        })
    }

    pub fn from_pairs(
        n: usize,
        pairs: &[(VertexLabel, VertexLabel)],
    ) -> Result<Self, SymmetryError> {
        if n == 0 || n % 2 == 1 {
            return Err(SymmetryError::OddVertexCount(n));
        }
        let mut image = vec![0 as VertexLabel; n];
        for &(a, b) in pairs {
            for v in [a, b] {
                if v == 0 || v as usize > n {
                    return Err(SymmetryError::LabelOutOfRange { label: v, n });
                }
            }
            if a == b {
                return Err(SymmetryError::FixedPoint(a));
            }
            for v in [a, b] {
                if image[v as usize - 1] != 0 {
                    return Err(SymmetryError::RepeatedVertex(v));
                }
            }
            image[a as usize - 1] = b;
            image[b as usize - 1] = a;
        }
        if let Some(i) = image.iter().position(|&w| w == 0) {
            return Err(SymmetryError::Unpaired(i as VertexLabel + 1));
        }
        Ok(Involution { image })
    }

    /// Parses cycle notation such as `(1,12)(2,11)` or `(1 12) (2 11)`.
    /// With `n = None` the vertex count is the largest label.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self, SymmetryError> {
        let mut pairs = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| SymmetryError::Parse(format!("expected '(' at {rest:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| SymmetryError::Parse("missing ')'".into()))?;
            let nums: Vec<VertexLabel> = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<VertexLabel>()
                        .map_err(|_| SymmetryError::Parse(format!("bad label {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            match nums.as_slice() {
                [a, b] => pairs.push((*a, *b)),
                [a] => return Err(SymmetryError::FixedPoint(*a)),
                _ => {
                    return Err(SymmetryError::Parse(format!(
                        "cycle {:?} is not a transposition",
                        &open[..close]
                    )))
                }
            }
            rest = open[close + 1..].trim_start();
        }
        let n = n.unwrap_or_else(|| {
            pairs
                .iter()
                .map(|&(a, b)| a.max(b) as usize)
                .max()
                .unwrap_or(0)
        });
        Self::from_pairs(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self, v: VertexLabel) -> VertexLabel {
        self.image[v as usize - 1]
    }

    pub fn try_image(&self, v: VertexLabel) -> Result<VertexLabel, SymmetryError> {
        if v == 0 || v as usize > self.n() {
            return Err(SymmetryError::LabelOutOfRange {
                label: v,
                n: self.n(),
            });
        }
        Ok(self.image(v))
    }

    /// Pairs `(a, b)` with `a < b`, ordered by `a`.
    pub fn pairs(&self) -> Vec<(VertexLabel, VertexLabel)> {
        (1..=self.n() as VertexLabel)
            .filter(|&v| v < self.image(v))
            .map(|v| (v, self.image(v)))
            .collect()
    }

    pub fn is_canonical(&self) -> bool {
        let n = self.n() as VertexLabel;
        (1..=n).all(|v| self.image(v) == n + 1 - v)
    }

    pub fn apply(&self, s: &Simplex) -> Result<Simplex, SymmetryError> {
        for &v in s.vertices() {
            self.try_image(v)?;
        }
        Ok(s.map(|v| self.image(v))?)
    }

    pub fn apply_face(&self, f: &Face) -> Result<Face, SymmetryError> {
        for &v in f.cycle() {
            self.try_image(v)?;
        }
        Ok(f.map(|v| self.image(v))?)
    }

    /// True iff the simplex contains no pair `{v, I(v)}`.
    pub fn is_admissible(&self, s: &Simplex) -> bool {
        s.vertices().iter().all(|&v| !s.contains(self.image(v)))
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// An unordered pair `{F, F^I}` of disjoint simplices; `rep` is the smaller.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orbit {
    pub rep: Simplex,
    pub image: Simplex,
}

fn same_size(inv: &Involution, n: usize) -> bool {
    inv.n() == n
}

/// The involution permutes the facets and fixes no face of dimension ≥ 1
/// setwise.
pub fn is_centrally_symmetric(c: &Complex, inv: &Involution) -> bool {
    if !same_size(inv, c.n()) || c.is_empty() {
        return false;
    }
    let facets: BTreeSet<&Simplex> = c.facets().iter().collect();
    for f in c.facets() {
        match inv.apply(f) {
            Ok(g) if facets.contains(&g) => {}
            _ => return false,
        }
    }
    (1..=c.dim()).all(|k| {
        c.faces(k)
            .iter()
            .all(|f| inv.apply(f).map(|g| g != *f).unwrap_or(false))
    })
}

/// Map version: faces map to faces, and no edge or face is fixed setwise.
pub fn is_centrally_symmetric_map(m: &PolyhedralMap, inv: &Involution) -> bool {
    if !same_size(inv, m.n()) || m.faces().is_empty() {
        return false;
    }
    let faces: BTreeSet<&Face> = m.faces().iter().collect();
    for f in m.faces() {
        match inv.apply_face(f) {
            Ok(g) if faces.contains(&g) && g != *f => {}
            _ => return false,
        }
    }
    let edges = m.edges();
    edges.iter().all(|&(a, b)| {
        let (x, y) = (inv.image(a), inv.image(b));
        edges.contains(&(x.min(y), x.max(y))) && (x.min(y), x.max(y)) != (a, b)
    })
}

/// Every face is disjoint from its image.
pub fn all_faces_disjoint_from_image(m: &PolyhedralMap, inv: &Involution) -> bool {
    m.faces().iter().all(|f| {
        f.cycle()
            .iter()
            .all(|&v| v as usize <= inv.n() && !f.contains(inv.image(v)))
    })
}

/// All orbits of `k`-simplices on `1..=n` whose members are disjoint, sorted
/// by representative.
pub fn admissible_face_orbits(n: usize, k: usize, inv: &Involution) -> Vec<Orbit> {
    assert_eq!(inv.n(), n, "involution acts on a different vertex count");
    let all = Simplex::new(1..=n as VertexLabel)
        .map(|s| s.faces_of_size(k + 1))
        .unwrap_or_default();
    all.into_iter()
        .filter(|s| inv.is_admissible(s))
        .filter_map(|s| {
            let image = inv.apply(&s).expect("labels in range");
            (s < image).then_some(Orbit { rep: s, image })
        })
        .collect()
}

pub fn orbit_closure(reps: &[Simplex], inv: &Involution) -> Result<Complex, SymmetryError> {
    if reps.is_empty() {
        return Ok(Complex::empty());
    }
    let mut facets = Vec::with_capacity(reps.len() * 2);
    let mut seen = BTreeSet::new();
    for r in reps {
        let img = inv.apply(r)?;
        for f in [r.clone(), img] {
            if !seen.insert(f.clone()) {
                return Err(SymmetryError::DuplicateFacet(f));
            }
            facets.push(f);
        }
    }
    Ok(Complex::with_vertex_count(inv.n(), facets)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[VertexLabel]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_images() {
        let i6 = Involution::canonical(6).unwrap();
        assert_eq!(i6.apply(&s(&[1, 2, 3])).unwrap(), s(&[4, 5, 6]));
        let i12 = Involution::canonical(12).unwrap();
        assert_eq!(i12.apply(&s(&[1, 2, 4])).unwrap(), s(&[9, 11, 12]));
        assert_eq!(
            i12.apply(&s(&[1, 13])),
            Err(SymmetryError::LabelOutOfRange { label: 13, n: 12 })
        );
        assert!(Involution::canonical(7).is_err());
    }

    #[test]
    fn parse_and_format() {
        let inv = Involution::parse("(1,6)(2,5)(3,4)", None).unwrap();
        assert!(inv.is_canonical());
        assert_eq!(inv.to_string(), "(1,6)(2,5)(3,4)");
        let spaced = Involution::parse("(1 4) (2 3)", None).unwrap();
        assert_eq!(spaced.pairs(), vec![(1, 4), (2, 3)]);
        assert!(matches!(
            Involution::parse("(1,2)(2,4)", None),
            Err(SymmetryError::RepeatedVertex(2))
        ));
        assert!(matches!(
            Involution::parse("(1,2)", Some(4)),
            Err(SymmetryError::Unpaired(3))
        ));
        assert!(Involution::parse("(1,2,3)", None).is_err());
        assert!(matches!(
            Involution::parse("(3,3)(1,2)", Some(4)),
            Err(SymmetryError::FixedPoint(3))
        ));
    }

    #[test]
    fn admissible_orbits_small() {
        let inv = Involution::canonical(6).unwrap();
        let tri: Vec<String> = admissible_face_orbits(6, 2, &inv)
            .iter()
            .map(|o| format!("{}/{}", o.rep, o.image))
            .collect();
        assert_eq!(tri, ["123/456", "124/356", "135/246", "145/236"]);
        assert_eq!(admissible_face_orbits(6, 1, &inv).len(), 6);
        let i12 = Involution::canonical(12).unwrap();
        assert_eq!(admissible_face_orbits(12, 2, &i12).len(), 80);
    }

    #[test]
    fn six_tight_closure() {
        let inv = Involution::canonical(6).unwrap();
        let reps = [s(&[1, 2, 3]), s(&[1, 2, 4]), s(&[1, 3, 5]), s(&[1, 4, 5])];
        let c = orbit_closure(&reps, &inv).unwrap();
        assert_eq!(c.facets().len(), 8);
        assert!(is_centrally_symmetric(&c, &inv));
        assert!(orbit_closure(&[], &inv).unwrap().is_empty());
        let dup = orbit_closure(&[s(&[1, 2, 3]), s(&[4, 5, 6])], &inv);
        assert!(matches!(dup, Err(SymmetryError::DuplicateFacet(_))));
    }

    #[test]
    fn tetrahedron_is_never_cs() {
        let c = Complex::from_lists(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        for pairs in [[(1, 2), (3, 4)], [(1, 3), (2, 4)], [(1, 4), (2, 3)]] {
            let inv = Involution::from_pairs(4, &pairs).unwrap();
            assert!(!is_centrally_symmetric(&c, &inv));
        }
    }
}
