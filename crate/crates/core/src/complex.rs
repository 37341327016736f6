//! Pure simplicial complexes given by their facets.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::notation;

/// 1-based vertex label.
pub type VertexLabel = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("empty simplex")]
    EmptySimplex,
    #[error("vertex label 0 is not allowed (labels start at 1)")]
    ZeroLabel,
    #[error("repeated vertex {0} in simplex")]
    RepeatedVertex(VertexLabel),
    #[error("duplicate facet {0}")]
    DuplicateFacet(Simplex),
    #[error("complex is not pure: facet {facet} has dimension {found}, expected {expected}")]
    NotPure {
        facet: Simplex,
        found: usize,
        expected: usize,
    },
    #[error("vertex labels are not dense: {0} does not occur in any facet")]
    MissingLabel(VertexLabel),
    #[error("vertex {label} exceeds declared vertex count {n}")]
    LabelOutOfRange { label: VertexLabel, n: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexLabel),
    #[error("not a closed pseudomanifold")]
    NotClosedPseudomanifold,
}

/// A simplex as a strictly increasing list of labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexLabel>", into = "Vec<VertexLabel>")]
pub struct Simplex(Vec<VertexLabel>);

impl Simplex {
    pub fn new(vertices: impl IntoIterator<Item = VertexLabel>) -> Result<Self, ComplexError> {
        let mut vs: Vec<VertexLabel> = vertices.into_iter().collect();
        if vs.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vs.sort_unstable();
        if vs[0] == 0 {
            return Err(ComplexError::ZeroLabel);
        }
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex(w[0]));
        }
        Ok(Simplex(vs))
    }

    /// Caller guarantees `vs` is nonempty and strictly increasing.
    pub(crate) fn from_sorted(vs: Vec<VertexLabel>) -> Self {
        debug_assert!(!vs.is_empty() && vs.windows(2).all(|w| w[0] < w[1]));
        Simplex(vs)
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexLabel) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn max_label(&self) -> VertexLabel {
        *self.0.last().expect("simplex is nonempty")
    }

    /// The simplex with `v` removed, or `None` if that would leave nothing.
    pub fn without(&self, v: VertexLabel) -> Option<Simplex> {
        let rest: Vec<_> = self.0.iter().copied().filter(|&w| w != v).collect();
        (!rest.is_empty()).then_some(Simplex(rest))
    }

    /// Codimension-one faces paired with the position of the omitted vertex.
    pub fn boundary(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        (0..self.0.len())
            .filter(|_| self.0.len() > 1)
            .map(move |i| {
                let mut f = self.0.clone();
                f.remove(i);
                (i, Simplex(f))
            })
    }

    /// All faces with exactly `k` vertices, in lexicographic order.
    pub fn faces_of_size(&self, k: usize) -> Vec<Simplex> {
        let n = self.0.len();
        if k == 0 || k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Simplex(idx.iter().map(|&i| self.0[i]).collect()));
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        out
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn map(&self, f: impl Fn(VertexLabel) -> VertexLabel) -> Result<Simplex, ComplexError> {
        Simplex::new(self.0.iter().map(|&v| f(v)))
    }
}

impl TryFrom<Vec<VertexLabel>> for Simplex {
    type Error = ComplexError;
    fn try_from(v: Vec<VertexLabel>) -> Result<Self, Self::Error> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<VertexLabel> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&notation::format_vertices(&self.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceVector(pub Vec<usize>);

impl FaceVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl fmt::Display for FaceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Why a complex fails to be a closed combinatorial manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldDefect {
    WrongDimension { expected: usize, found: usize },
    Empty,
    RidgeDegree { ridge: Simplex, facets: usize },
    Disconnected,
    VertexLink { vertex: VertexLabel, dim: usize },
}

impl fmt::Display for ManifoldDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldDefect::WrongDimension { expected, found } => {
                write!(f, "dimension {found}, expected {expected}")
            }
            ManifoldDefect::Empty => write!(f, "no facets"),
            ManifoldDefect::RidgeDegree { ridge, facets } => {
                write!(f, "ridge {ridge} lies in {facets} facets")
            }
            ManifoldDefect::Disconnected => write!(f, "not connected"),
            ManifoldDefect::VertexLink { vertex, dim: 2 } => {
                write!(f, "link of {vertex} is not a single cycle")
            }
            ManifoldDefect::VertexLink { vertex, .. } => {
                write!(f, "link of {vertex} is not a sphere")
            }
        }
    }
}

/// A pure simplicial complex on the vertex set `1..=n`.
///
/// Immutable once built. Lower-dimensional faces are computed on first use.
#[derive(Clone, Debug)]
pub struct Complex {
    n: usize,
    dim: usize,
    facets: Vec<Simplex>,
    faces: OnceLock<Vec<Vec<Simplex>>>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for Complex {}

impl Hash for Complex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.facets.hash(state);
    }
}

impl Complex {
    /// Builds a complex whose vertex count is the largest label used.
    pub fn new(facets: Vec<Simplex>) -> Result<Self, ComplexError> {
        let n = facets
            .iter()
            .map(|s| s.max_label() as usize)
            .max()
            .unwrap_or(0);
        Self::with_vertex_count(n, facets)
    }

    /// Builds a complex on exactly `1..=n`; every label must occur.
    pub fn with_vertex_count(n: usize, mut facets: Vec<Simplex>) -> Result<Self, ComplexError> {
        facets.sort_unstable();
        if let Some(w) = facets.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateFacet(w[0].clone()));
        }
        let dim = facets.first().map(|s| s.dim()).unwrap_or(0);
        let mut seen = vec![false; n + 1];
        for s in &facets {
            if s.dim() != dim {
                return Err(ComplexError::NotPure {
                    facet: s.clone(),
                    found: s.dim(),
                    expected: dim,
                });
            }
            for &v in s.vertices() {
                if v as usize > n {
                    return Err(ComplexError::LabelOutOfRange { label: v, n });
                }
                seen[v as usize] = true;
            }
        }
        if let Some(v) = (1..=n).find(|&v| !seen[v]) {
            return Err(ComplexError::MissingLabel(v as VertexLabel));
        }
        Ok(Complex {
            n,
            dim,
            facets,
            faces: OnceLock::new(),
        })
    }

    pub fn empty() -> Self {
        Complex {
            n: 0,
            dim: 0,
            facets: Vec::new(),
            faces: OnceLock::new(),
        }
    }

    pub fn from_lists<L: AsRef<[VertexLabel]>>(lists: &[L]) -> Result<Self, ComplexError> {
        let facets = lists
            .iter()
            .map(|l| Simplex::new(l.as_ref().iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(facets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    fn all_faces(&self) -> &Vec<Vec<Simplex>> {
        self.faces.get_or_init(|| {
            if self.facets.is_empty() {
                return Vec::new();
            }
            (0..=self.dim)
                .map(|k| {
                    let set: BTreeSet<Simplex> = self
                        .facets
                        .iter()
                        .flat_map(|f| f.faces_of_size(k + 1))
                        .collect();
                    set.into_iter().collect()
                })
                .collect()
        })
    }

    /// The `k`-dimensional faces in lexicographic order.
    pub fn faces(&self, k: usize) -> &[Simplex] {
        self.all_faces().get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn face_vector(&self) -> FaceVector {
        FaceVector(self.all_faces().iter().map(|v| v.len()).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_vector().euler_characteristic()
    }

    /// Euler characteristic without building the face lattice.
    ///
    /// Facets are added one at a time; the faces a facet shares with earlier
    /// facets form a union of subsimplices whose Euler characteristic is
    /// subtracted from that of the new facet.
    pub fn euler_characteristic_incremental(&self) -> i64 {
        let k = self.dim + 1;
        let full: u32 = (1u32 << k) - 1;
        let mut chi = 0i64;
        for (i, f) in self.facets.iter().enumerate() {
            let mut shared: Vec<u32> = Vec::new();
            for g in &self.facets[..i] {
                let mut mask = 0u32;
                for (p, &v) in f.vertices().iter().enumerate() {
                    if g.contains(v) {
                        mask |= 1 << p;
                    }
                }
                if mask != 0 {
                    shared.push(mask);
                }
            }
            let mut new_chi = 0i64;
            for sub in 1..=full {
                if !shared.iter().any(|&m| sub & m == sub) {
                    let d = sub.count_ones() as i64 - 1;
                    new_chi += if d % 2 == 0 { 1 } else { -1 };
                }
            }
            chi += new_chi;
        }
        chi
    }

    pub fn vertex_degree(&self, v: VertexLabel) -> usize {
        let mut nbrs = BTreeSet::new();
        for f in self.facets.iter().filter(|f| f.contains(v)) {
            nbrs.extend(f.vertices().iter().copied().filter(|&w| w != v));
        }
        nbrs.len()
    }

    pub fn link(&self, v: VertexLabel) -> Result<Link, ComplexError> {
        let facets: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| f.contains(v))
            .filter_map(|f| f.without(v))
            .collect();
        if facets.is_empty() && !self.facets.iter().any(|f| f.contains(v)) {
            return Err(ComplexError::UnknownVertex(v));
        }
        Ok(Link { facets })
    }

    /// Maps each ridge to the indices of the facets containing it.
    pub fn ridge_incidence(&self) -> HashMap<Simplex, Vec<usize>> {
        let mut map: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for (_, r) in f.boundary() {
                map.entry(r).or_default().push(i);
            }
        }
        map
    }

    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.dim >= 1
            && !self.facets.is_empty()
            && self.ridge_incidence().values().all(|v| v.len() == 2)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n + 1];
        for f in &self.facets {
            let vs = f.vertices();
            for w in vs.windows(2) {
                adj[w[0] as usize].push(w[1] as usize);
                adj[w[1] as usize].push(w[0] as usize);
            }
        }
        let mut seen = vec![false; self.n + 1];
        let mut queue = VecDeque::from([1usize]);
        seen[1] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// First reason the complex is not a closed combinatorial `d`-manifold for
    /// `d` in {2, 3}, or `None` if it is one.
    pub fn manifold_defect(&self, d: usize) -> Option<ManifoldDefect> {
        if self.facets.is_empty() {
            return Some(ManifoldDefect::Empty);
        }
        if self.dim != d {
            return Some(ManifoldDefect::WrongDimension {
                expected: d,
                found: self.dim,
            });
        }
        let mut bad: Vec<(Simplex, usize)> = self
            .ridge_incidence()
            .into_iter()
            .filter(|(_, v)| v.len() != 2)
            .map(|(r, v)| (r, v.len()))
            .collect();
        bad.sort();
        if let Some((ridge, facets)) = bad.into_iter().next() {
            return Some(ManifoldDefect::RidgeDegree { ridge, facets });
        }
        if !self.is_connected() {
            return Some(ManifoldDefect::Disconnected);
        }
        for v in 1..=self.n as VertexLabel {
            let link = self.link(v).expect("labels are dense");
            let ok = match d {
                2 => link.is_single_cycle(),
                3 => link.is_two_sphere(),
                _ => false,
            };
            if !ok {
                return Some(ManifoldDefect::VertexLink { vertex: v, dim: d });
            }
        }
        None
    }

    pub fn is_combinatorial_surface(&self) -> bool {
        self.manifold_defect(2).is_none()
    }

    /// Closed pseudomanifold, connected, and every vertex link is a connected
    /// combinatorial surface with χ = 2.
    pub fn is_combinatorial_3manifold(&self) -> bool {
        self.manifold_defect(3).is_none()
    }

    /// A coherent orientation as one sign per facet (in `facets()` order), or
    /// `None` if the complex is not orientable.
    pub fn orientation_assignment(&self) -> Result<Option<Vec<i8>>, ComplexError> {
        if !self.is_closed_pseudomanifold() {
            return Err(ComplexError::NotClosedPseudomanifold);
        }
        let mut ridges: HashMap<Simplex, Vec<(usize, usize)>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for (pos, r) in f.boundary() {
                ridges.entry(r).or_default().push((i, pos));
            }
        }
        let sign = |pos: usize| if pos % 2 == 0 { 1i8 } else { -1i8 };
        let mut orient = vec![0i8; self.facets.len()];
        let mut nbrs: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.facets.len()];
        for inc in ridges.values() {
            let (a, pa) = inc[0];
            let (b, pb) = inc[1];
            // Induced orientations on the shared ridge must cancel.
            let rel = -sign(pa) * sign(pb);
            nbrs[a].push((b, rel));
            nbrs[b].push((a, rel));
        }
        for start in 0..self.facets.len() {
            if orient[start] != 0 {
                continue;
            }
            orient[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(w, rel) in &nbrs[u] {
                    let want = orient[u] * rel;
                    if orient[w] == 0 {
                        orient[w] = want;
                        queue.push_back(w);
                    } else if orient[w] != want {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some(orient))
    }

    /// Relabels vertex `v` to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[VertexLabel]) -> Result<Complex, ComplexError> {
        let facets = self
            .facets
            .iter()
            .map(|f| f.map(|v| perm[v as usize - 1]))
            .collect::<Result<Vec<_>, _>>()?;
        Complex::with_vertex_count(self.n, facets)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&notation::format_simplices(&self.facets))
    }
}

/// The link of a vertex: facets on labels that need not be dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    facets: Vec<Simplex>,
}

impl Link {
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn vertices(&self) -> BTreeSet<VertexLabel> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    /// True iff the facets are edges forming one cycle through every vertex.
    pub fn is_single_cycle(&self) -> bool {
        if self.facets.len() < 3 || self.facets.iter().any(|f| f.len() != 2) {
            return false;
        }
        let mut adj: HashMap<VertexLabel, Vec<VertexLabel>> = HashMap::new();
        for e in &self.facets {
            let v = e.vertices();
            adj.entry(v[0]).or_default().push(v[1]);
            adj.entry(v[1]).or_default().push(v[0]);
        }
        if adj.values().any(|n| n.len() != 2) {
            return false;
        }
        let start = self.facets[0].vertices()[0];
        let (mut prev, mut cur) = (start, adj[&start][0]);
        let mut steps = 1;
        while cur != start {
            let nx = &adj[&cur];
            let next = if nx[0] == prev { nx[1] } else { nx[0] };
            prev = cur;
            cur = next;
            steps += 1;
        }
        steps == adj.len()
    }

    /// Compacts the labels to `1..=k`, returning the complex and the original
    /// label of each new vertex.
    pub fn relabeled(&self) -> (Complex, Vec<VertexLabel>) {
        let labels: Vec<VertexLabel> = self.vertices().into_iter().collect();
        let index: HashMap<VertexLabel, VertexLabel> = labels
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as VertexLabel + 1))
            .collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Simplex::from_sorted(f.vertices().iter().map(|v| index[v]).collect()))
            .collect();
        let c = Complex::with_vertex_count(labels.len(), facets)
            .expect("relabeled link is a valid complex");
        (c, labels)
    }

    pub fn is_two_sphere(&self) -> bool {
        let (c, _) = self.relabeled();
        c.is_combinatorial_surface() && c.euler_characteristic() == 2
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn tetra_boundary() -> Complex {
        Complex::from_lists(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap()
    }

    #[test]
    fn simplex_normalizes() {
        let s = Simplex::new([3, 1, 2]).unwrap();
        assert_eq!(s.vertices(), &[1, 2, 3]);
        assert_eq!(s.dim(), 2);
        assert!(Simplex::new([1, 1]).is_err());
        assert!(Simplex::new([0, 1]).is_err());
        assert!(Simplex::new([]).is_err());
    }

    #[test]
    fn faces_of_size_are_lex() {
        let s = Simplex::new([1, 2, 3, 4]).unwrap();
        let f: Vec<String> = s.faces_of_size(2).iter().map(|x| x.to_string()).collect();
        assert_eq!(f, ["12", "13", "14", "23", "24", "34"]);
    }

    #[test]
    fn rejects_gaps_and_mixed_dimension() {
        assert_eq!(
            Complex::from_lists(&[vec![1, 2, 4]]).unwrap_err(),
            ComplexError::MissingLabel(3)
        );
        assert!(matches!(
            Complex::from_lists(&[vec![1, 2, 3], vec![1, 2]]),
            Err(ComplexError::NotPure { .. })
        ));
        assert!(matches!(
            Complex::from_lists(&[vec![1, 2, 3], vec![3, 2, 1]]),
            Err(ComplexError::DuplicateFacet(_))
        ));
    }

    #[test]
    fn tetrahedron_boundary_basics() {
        let c = tetra_boundary();
        assert_eq!(c.face_vector(), FaceVector(vec![4, 6, 4]));
        assert_eq!(c.euler_characteristic(), 2);
        assert_eq!(c.euler_characteristic_incremental(), 2);
        assert!(c.is_closed_pseudomanifold());
        assert!(c.is_combinatorial_surface());
        let l = c.link(1).unwrap();
        assert_eq!(l.facets().len(), 3);
        assert!(l.is_single_cycle());
        assert_eq!(c.link(9), Err(ComplexError::UnknownVertex(9)));
        assert!(c.orientation_assignment().unwrap().is_some());
    }

    #[test]
    fn single_triangle_is_not_closed() {
        let c = Complex::from_lists(&[[1, 2, 3]]).unwrap();
        assert!(!c.is_closed_pseudomanifold());
        assert_eq!(
            c.orientation_assignment(),
            Err(ComplexError::NotClosedPseudomanifold)
        );
    }

    #[test]
    fn disconnected_and_pinched() {
        let two = Complex::from_lists(&[
            [1, 2, 3],
            [1, 2, 4],
            [1, 3, 4],
            [2, 3, 4],
            [5, 6, 7],
            [5, 6, 8],
            [5, 7, 8],
            [6, 7, 8],
        ])
        .unwrap();
        assert!(!two.is_connected());
        assert_eq!(two.manifold_defect(2), Some(ManifoldDefect::Disconnected));
        let pinched = Complex::from_lists(&[
            [1, 2, 3],
            [1, 2, 4],
            [1, 3, 4],
            [2, 3, 4],
            [1, 5, 6],
            [1, 5, 7],
            [1, 6, 7],
            [5, 6, 7],
        ])
        .unwrap();
        assert!(pinched.is_connected());
        assert_eq!(
            pinched.manifold_defect(2),
            Some(ManifoldDefect::VertexLink { vertex: 1, dim: 2 })
        );
        let tris = Complex::from_lists(&[[1, 2, 3], [4, 5, 6]]).unwrap();
        assert!(!tris.is_connected());
    }

    #[test]
    fn four_simplex_boundary_is_3manifold() {
        let facets: Vec<Simplex> = Simplex::new(1..=5).unwrap().faces_of_size(4);
        let c = Complex::new(facets).unwrap();
        assert!(c.is_combinatorial_3manifold());
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.euler_characteristic_incremental(), 0);
        let solid = Complex::from_lists(&[[1, 2, 3, 4]]).unwrap();
        assert!(!solid.is_combinatorial_3manifold());
    }

    #[test]
    fn projective_plane_is_non_orientable() {
        let rp2 = Complex::from_lists(&[
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 5],
            [2, 4, 5],
            [2, 4, 6],
            [3, 4, 6],
            [3, 5, 6],
        ])
        .unwrap();
        assert!(rp2.is_combinatorial_surface());
        assert_eq!(rp2.euler_characteristic(), 1);
        assert_eq!(rp2.orientation_assignment().unwrap(), None);
    }
}
