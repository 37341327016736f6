//! Polyhedral maps: closed surfaces cut into polygons that meet properly.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, ComplexError, FaceVector, Simplex, VertexLabel};
use crate::notation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("face {0:?} has fewer than three vertices")]
    ShortFace(Vec<VertexLabel>),
    #[error("vertex label 0 is not allowed")]
    ZeroLabel,
    #[error("repeated vertex {0} in face")]
    RepeatedVertex(VertexLabel),
    #[error("duplicate face {0}")]
    DuplicateFace(Face),
    #[error("vertex labels are not dense: {0} does not occur in any face")]
    MissingLabel(VertexLabel),
    #[error("vertex {label} exceeds declared vertex count {n}")]
    LabelOutOfRange { label: VertexLabel, n: usize },
    #[error("not a polyhedral map: {0}")]
    NotPolyhedral(MapDefect),
    #[error("complex must be 2-dimensional")]
    NotTwoDimensional,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A face cycle, stored as the least of its rotations and reflections.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexLabel>", into = "Vec<VertexLabel>")]
pub struct Face(Vec<VertexLabel>);

impl Face {
    pub fn new(cycle: impl IntoIterator<Item = VertexLabel>) -> Result<Self, MapError> {
        let c: Vec<VertexLabel> = cycle.into_iter().collect();
        if c.len() < 3 {
            return Err(MapError::ShortFace(c));
        }
        if c.contains(&0) {
            return Err(MapError::ZeroLabel);
        }
        for (i, v) in c.iter().enumerate() {
            if c[..i].contains(v) {
                return Err(MapError::RepeatedVertex(*v));
            }
        }
        Ok(Face(normalize_cycle(&c)))
    }

    /// Vertices in cyclic order starting from the least label.
    pub fn cycle(&self) -> &[VertexLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexLabel) -> bool {
        self.0.contains(&v)
    }

    /// Boundary edges as sorted pairs.
    pub fn edges(&self) -> impl Iterator<Item = (VertexLabel, VertexLabel)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| {
            let (a, b) = (self.0[i], self.0[(i + 1) % k]);
            (a.min(b), a.max(b))
        })
    }

    /// Directed boundary edges in stored order.
    pub fn darts(&self) -> impl Iterator<Item = (VertexLabel, VertexLabel)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }

    /// The two cycle neighbours of `v`, if present.
    pub fn neighbours(&self, v: VertexLabel) -> Option<(VertexLabel, VertexLabel)> {
        let k = self.0.len();
        let i = self.0.iter().position(|&w| w == v)?;
        Some((self.0[(i + k - 1) % k], self.0[(i + 1) % k]))
    }

    pub fn has_edge(&self, a: VertexLabel, b: VertexLabel) -> bool {
        matches!(self.neighbours(a), Some((p, q)) if p == b || q == b)
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexLabel> {
        self.0.iter().copied().collect()
    }

    pub fn map(&self, f: impl Fn(VertexLabel) -> VertexLabel) -> Result<Face, MapError> {
        Face::new(self.0.iter().map(|&v| f(v)))
    }
}

fn normalize_cycle(c: &[VertexLabel]) -> Vec<VertexLabel> {
    let k = c.len();
    let mut best: Option<Vec<VertexLabel>> = None;
    let rev: Vec<VertexLabel> = c.iter().rev().copied().collect();
    for seq in [c, rev.as_slice()] {
        for r in 0..k {
            let cand: Vec<VertexLabel> = (0..k).map(|i| seq[(r + i) % k]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("cycle is nonempty")
}

impl TryFrom<Vec<VertexLabel>> for Face {
    type Error = MapError;
    fn try_from(v: Vec<VertexLabel>) -> Result<Self, Self::Error> {
        Face::new(v)
    }
}

impl From<Face> for Vec<VertexLabel> {
    fn from(f: Face) -> Self {
        f.0
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&notation::format_bracketed(&self.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapDefect {
    Empty,
    EdgeDegree {
        edge: (VertexLabel, VertexLabel),
        faces: usize,
    },
    VertexStar {
        vertex: VertexLabel,
    },
    BadIntersection {
        a: Face,
        b: Face,
    },
}

impl fmt::Display for MapDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapDefect::Empty => write!(f, "no faces"),
            MapDefect::EdgeDegree { edge, faces } => {
                write!(f, "edge {}{} lies in {faces} faces", edge.0, edge.1)
            }
            MapDefect::VertexStar { vertex } => {
                write!(
                    f,
                    "faces around vertex {vertex} do not close into one cycle"
                )
            }
            MapDefect::BadIntersection { a, b } => {
                write!(f, "faces {a} and {b} meet in more than a vertex or an edge")
            }
        }
    }
}

/// A map on a closed surface given by its face cycles on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyhedralMap {
    n: usize,
    faces: Vec<Face>,
}

impl PolyhedralMap {
    pub fn new(faces: Vec<Face>) -> Result<Self, MapError> {
        let n = faces
            .iter()
            .flat_map(|f| f.cycle().iter())
            .max()
            .copied()
            .unwrap_or(0) as usize;
        Self::with_vertex_count(n, faces)
    }

    pub fn with_vertex_count(n: usize, mut faces: Vec<Face>) -> Result<Self, MapError> {
        faces.sort_unstable();
        if let Some(w) = faces.windows(2).find(|w| w[0] == w[1]) {
            return Err(MapError::DuplicateFace(w[0].clone()));
        }
        let mut seen = vec![false; n + 1];
        for f in &faces {
            for &v in f.cycle() {
                if v as usize > n {
                    return Err(MapError::LabelOutOfRange { label: v, n });
                }
                seen[v as usize] = true;
            }
        }
        if let Some(v) = (1..=n).find(|&v| !seen[v]) {
            return Err(MapError::MissingLabel(v as VertexLabel));
        }
        Ok(PolyhedralMap { n, faces })
    }

    pub fn from_cycles<L: AsRef<[VertexLabel]>>(cycles: &[L]) -> Result<Self, MapError> {
        let faces = cycles
            .iter()
            .map(|c| Face::new(c.as_ref().iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(faces)
    }

    pub fn from_complex(c: &Complex) -> Result<Self, MapError> {
        if c.dim() != 2 {
            return Err(MapError::NotTwoDimensional);
        }
        let faces = c
            .facets()
            .iter()
            .map(|s| Face::new(s.vertices().iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::with_vertex_count(c.n(), faces)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> BTreeSet<(VertexLabel, VertexLabel)> {
        self.faces.iter().flat_map(|f| f.edges()).collect()
    }

    /// (V, E, F).
    pub fn face_vector(&self) -> FaceVector {
        FaceVector(vec![self.n, self.edges().len(), self.faces.len()])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_vector().euler_characteristic()
    }

    /// Face sizes if they are all equal.
    pub fn uniform_face_size(&self) -> Option<usize> {
        let k = self.faces.first()?.len();
        self.faces.iter().all(|f| f.len() == k).then_some(k)
    }

    pub fn vertex_degree(&self, v: VertexLabel) -> usize {
        self.edges()
            .iter()
            .filter(|(a, b)| *a == v || *b == v)
            .count()
    }

    /// First reason the faces do not close up into a surface: an edge not
    /// on exactly two faces, or a vertex whose faces do not form one cycle.
    pub fn surface_defect(&self) -> Option<MapDefect> {
        if self.faces.is_empty() {
            return Some(MapDefect::Empty);
        }
        let mut edge_faces: BTreeMap<(VertexLabel, VertexLabel), usize> = BTreeMap::new();
        for f in &self.faces {
            for e in f.edges() {
                *edge_faces.entry(e).or_default() += 1;
            }
        }
        if let Some((&edge, &faces)) = edge_faces.iter().find(|(_, &c)| c != 2) {
            return Some(MapDefect::EdgeDegree { edge, faces });
        }
        // Around each vertex the faces must form a single cycle, linked
        // through shared edges.
        for v in 1..=self.n as VertexLabel {
            let mut adj: HashMap<VertexLabel, Vec<VertexLabel>> = HashMap::new();
            let mut count = 0;
            for f in &self.faces {
                if let Some((p, q)) = f.neighbours(v) {
                    adj.entry(p).or_default().push(q);
                    adj.entry(q).or_default().push(p);
                    count += 1;
                }
            }
            if !single_cycle(&adj, count) {
                return Some(MapDefect::VertexStar { vertex: v });
            }
        }
        None
    }

    pub fn is_closed_surface(&self) -> bool {
        self.surface_defect().is_none()
    }

    pub fn polyhedral_defect(&self) -> Option<MapDefect> {
        if let Some(d) = self.surface_defect() {
            return Some(d);
        }
        for (i, a) in self.faces.iter().enumerate() {
            let sa = a.vertex_set();
            for b in &self.faces[i + 1..] {
                let common: Vec<VertexLabel> = b
                    .cycle()
                    .iter()
                    .copied()
                    .filter(|v| sa.contains(v))
                    .collect();
                let ok = match common.len() {
                    0 | 1 => true,
                    2 => a.has_edge(common[0], common[1]) && b.has_edge(common[0], common[1]),
                    _ => false,
                };
                if !ok {
                    return Some(MapDefect::BadIntersection {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        None
    }

    pub fn is_polyhedral_map(&self) -> bool {
        self.polyhedral_defect().is_none()
    }

    /// A coherent choice of face directions (`true` keeps the stored order),
    /// or `None` if the surface is non-orientable. Requires every edge to lie
    /// in exactly two faces.
    pub fn orientation_assignment(&self) -> Option<Vec<bool>> {
        let mut by_edge: HashMap<(VertexLabel, VertexLabel), Vec<(usize, bool)>> = HashMap::new();
        for (i, f) in self.faces.iter().enumerate() {
            for (a, b) in f.darts() {
                by_edge
                    .entry((a.min(b), a.max(b)))
                    .or_default()
                    .push((i, a < b));
            }
        }
        let mut nbrs: Vec<Vec<(usize, bool)>> = vec![Vec::new(); self.faces.len()];
        for inc in by_edge.values() {
            if inc.len() != 2 {
                return None;
            }
            let ((a, da), (b, db)) = (inc[0], inc[1]);
            // Keeping both directions is coherent iff they traverse the edge
            // oppositely.
            let same = da != db;
            nbrs[a].push((b, same));
            nbrs[b].push((a, same));
        }
        let mut dir: Vec<Option<bool>> = vec![None; self.faces.len()];
        for start in 0..self.faces.len() {
            if dir[start].is_some() {
                continue;
            }
            dir[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let du = dir[u].expect("visited");
                for &(w, same) in &nbrs[u] {
                    let want = if same { du } else { !du };
                    match dir[w] {
                        None => {
                            dir[w] = Some(want);
                            queue.push_back(w);
                        }
                        Some(d) if d != want => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(dir.into_iter().map(|d| d.expect("all visited")).collect())
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation_assignment().is_some()
    }

    /// All faces are triangles: the map as a simplicial complex.
    pub fn to_complex(&self) -> Option<Complex> {
        if self.uniform_face_size() != Some(3) {
            return None;
        }
        let facets = self
            .faces
            .iter()
            .map(|f| Simplex::new(f.cycle().iter().copied()))
            .collect::<Result<Vec<_>, _>>()
            .ok()?;
        Complex::with_vertex_count(self.n, facets).ok()
    }

    /// Cones every face from a new vertex `n + i + 1`. Triangles are kept
    /// as they are when `keep_triangles` is set.
    pub fn cone_subdivision(&self, keep_triangles: bool) -> Result<Complex, ComplexError> {
        let mut facets = Vec::new();
        let mut next = self.n as VertexLabel;
        for f in &self.faces {
            if keep_triangles && f.len() == 3 {
                facets.push(Simplex::new(f.cycle().iter().copied())?);
                continue;
            }
            next += 1;
            for (a, b) in f.darts() {
                facets.push(Simplex::new([a, b, next])?);
            }
        }
        Complex::with_vertex_count(next as usize, facets)
    }

    pub fn relabel(&self, perm: &[VertexLabel]) -> Result<PolyhedralMap, MapError> {
        let faces = self
            .faces
            .iter()
            .map(|f| f.map(|v| perm[v as usize - 1]))
            .collect::<Result<Vec<_>, _>>()?;
        PolyhedralMap::with_vertex_count(self.n, faces)
    }
}

fn single_cycle(adj: &HashMap<VertexLabel, Vec<VertexLabel>>, edges: usize) -> bool {
    if edges < 3 || adj.values().any(|n| n.len() != 2) || adj.len() != edges {
        return false;
    }
    let start = *adj.keys().next().expect("nonempty");
    let (mut prev, mut cur) = (start, adj[&start][0]);
    let mut steps = 1;
    while cur != start {
        let nx = &adj[&cur];
        let next = if nx[0] == prev { nx[1] } else { nx[0] };
        prev = cur;
        cur = next;
        steps += 1;
        if steps > edges {
            return false;
        }
    }
    steps == edges
}

impl fmt::Display for PolyhedralMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.faces.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> PolyhedralMap {
        PolyhedralMap::from_cycles(&[
            [1, 2, 3, 4],
            [5, 6, 7, 8],
            [1, 2, 6, 5],
            [2, 3, 7, 6],
            [3, 4, 8, 7],
            [4, 1, 5, 8],
        ])
        .unwrap()
    }

    #[test]
    fn face_normalization() {
        let a = Face::new([3, 1, 2]).unwrap();
        let b = Face::new([2, 1, 3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.cycle(), &[1, 2, 3]);
        let q = Face::new([5, 9, 2, 7]).unwrap();
        assert_eq!(q.cycle(), &[2, 7, 5, 9]);
        assert!(Face::new([1, 2]).is_err());
        assert!(Face::new([1, 2, 1]).is_err());
    }

    #[test]
    fn cube_is_polyhedral_sphere() {
        let c = cube();
        assert_eq!(c.face_vector(), FaceVector(vec![8, 12, 6]));
        assert_eq!(c.euler_characteristic(), 2);
        assert!(c.is_polyhedral_map());
        assert!(c.is_orientable());
        let cone = c.cone_subdivision(true).unwrap();
        assert!(cone.is_combinatorial_surface());
        assert_eq!(cone.euler_characteristic(), 2);
    }

    #[test]
    fn quads_sharing_opposite_vertices() {
        let m = PolyhedralMap::from_cycles(&[[1, 2, 3, 4], [1, 5, 3, 6]]).unwrap();
        assert!(!m.is_polyhedral_map());
        // Embedded in a closed surface the same defect is caught by the
        // pairwise intersection rule.
        let a = Face::new([1, 2, 3, 4]).unwrap();
        let b = Face::new([1, 5, 3, 6]).unwrap();
        let common: Vec<_> = b.cycle().iter().filter(|v| a.contains(**v)).collect();
        assert_eq!(common.len(), 2);
        assert!(!a.has_edge(1, 3));
    }

    #[test]
    fn triangle_maps_round_trip() {
        let m = PolyhedralMap::from_cycles(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let c = m.to_complex().unwrap();
        assert_eq!(PolyhedralMap::from_complex(&c).unwrap(), m);
        assert!(m.is_polyhedral_map());
    }
}
