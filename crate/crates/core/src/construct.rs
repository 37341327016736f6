//! Seed maps, the centrally symmetric connected sum, genus families, duals
//! and tightness checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::complex::{Complex, VertexLabel};
use crate::map::{Face, MapDefect, MapError, PolyhedralMap};
use crate::notation;
use crate::symmetry::{self, Involution, SymmetryError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("map is not centrally symmetric under the given involution")]
    NotCentrallySymmetric,
    #[error("involution acts on {found} vertices, map has {expected}")]
    InvolutionSize { expected: usize, found: usize },
    #[error("glue faces differ in size: {a} vs {b}")]
    SizeMismatch { a: usize, b: usize },
    #[error("{side} glue cycle {cycle} is not a face")]
    NotAFace { side: GlueSide, cycle: String },
    #[error("{side} glue face {cycle} meets its image")]
    FaceMeetsImage { side: GlueSide, cycle: String },
    #[error("{side} map has an edge {}{} joining the glue face to its image", .edge.0, .edge.1)]
    EdgeToImage {
        side: GlueSide,
        edge: (VertexLabel, VertexLabel),
    },
    #[error("not a polyhedral map: {0}")]
    NotPolyhedral(MapDefect),
    #[error("result is not a closed surface: {0}")]
    NotSurface(MapDefect),
    #[error("no face of the {0} map can be glued")]
    NoAdmissibleFace(GlueSide),
    #[error("bad gluing spec: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlueSide {
    First,
    Second,
}

impl fmt::Display for GlueSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GlueSide::First => "first",
            GlueSide::Second => "second",
        })
    }
}

/// A map together with an involution it is centrally symmetric under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsMap {
    map: PolyhedralMap,
    involution: Involution,
}

impl CsMap {
    pub fn new(map: PolyhedralMap, involution: Involution) -> Result<Self, ConstructError> {
        if involution.n() != map.n() {
            return Err(ConstructError::InvolutionSize {
                expected: map.n(),
                found: involution.n(),
            });
        }
        if !symmetry::is_centrally_symmetric_map(&map, &involution) {
            return Err(ConstructError::NotCentrallySymmetric);
        }
        Ok(CsMap { map, involution })
    }

    pub fn from_complex(c: &Complex, involution: Involution) -> Result<Self, ConstructError> {
        Self::new(PolyhedralMap::from_complex(c)?, involution)
    }

    pub fn map(&self) -> &PolyhedralMap {
        &self.map
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.map.euler_characteristic()
    }

    /// Orientable genus, or `None` on a non-orientable surface.
    pub fn genus(&self) -> Option<i64> {
        self.map
            .is_orientable()
            .then(|| (2 - self.euler_characteristic()) / 2)
    }

    /// The map as a simplicial complex when every face is a triangle.
    pub fn to_complex(&self) -> Option<Complex> {
        self.map.to_complex()
    }

    /// Faces whose orbit may serve as a glue site: disjoint from the image
    /// and joined to it by no edge. Sorted.
    pub fn admissible_glue_faces(&self) -> Vec<&Face> {
        let edges = self.map.edges();
        self.map
            .faces()
            .iter()
            .filter(|f| glue_face_defect(f, &self.involution, &edges).is_none())
            .collect()
    }
}

enum GlueDefect {
    MeetsImage,
    Edge((VertexLabel, VertexLabel)),
}

fn glue_face_defect(
    f: &Face,
    inv: &Involution,
    edges: &BTreeSet<(VertexLabel, VertexLabel)>,
) -> Option<GlueDefect> {
    let own = f.vertex_set();
    let image: BTreeSet<VertexLabel> = own.iter().map(|&v| inv.image(v)).collect();
    if !own.is_disjoint(&image) {
        return Some(GlueDefect::MeetsImage);
    }
    for &a in &own {
        for &b in &image {
            if edges.contains(&(a.min(b), a.max(b))) {
                return Some(GlueDefect::Edge((a.min(b), a.max(b))));
            }
        }
    }
    None
}

/// Glue face cycles of two maps; position `s` of `a` is identified with
/// position `s` of `b`, and the images correspond through the involutions.
/// Labels of `b` are its own, before any relabeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingSpec {
    pub a: Vec<VertexLabel>,
    pub b: Vec<VertexLabel>,
}

impl GluingSpec {
    pub fn new(a: Vec<VertexLabel>, b: Vec<VertexLabel>) -> Self {
        GluingSpec { a, b }
    }

    /// Least admissible face on both sides, aligned from the least vertex.
    pub fn default_for(a: &CsMap, b: &CsMap) -> Result<Self, ConstructError> {
        let fa = a
            .admissible_glue_faces()
            .first()
            .map(|f| f.cycle().to_vec())
            .ok_or(ConstructError::NoAdmissibleFace(GlueSide::First))?;
        let fb = b
            .admissible_glue_faces()
            .first()
            .map(|f| f.cycle().to_vec())
            .ok_or(ConstructError::NoAdmissibleFace(GlueSide::Second))?;
        Ok(GluingSpec::new(fa, fb))
    }

    pub fn validate(&self, a: &CsMap, b: &CsMap) -> Result<(), ConstructError> {
        if self.a.len() != self.b.len() {
            return Err(ConstructError::SizeMismatch {
                a: self.a.len(),
                b: self.b.len(),
            });
        }
        check_side(&self.a, a, GlueSide::First)?;
        check_side(&self.b, b, GlueSide::Second)
    }
}

fn check_side(cycle: &[VertexLabel], m: &CsMap, side: GlueSide) -> Result<(), ConstructError> {
    let shown = notation::format_bracketed(cycle);
    let face = Face::new(cycle.iter().copied()).map_err(|_| ConstructError::NotAFace {
        side,
        cycle: shown.clone(),
    })?;
    if m.map.faces().binary_search(&face).is_err() {
        return Err(ConstructError::NotAFace { side, cycle: shown });
    }
    match glue_face_defect(&face, &m.involution, &m.map.edges()) {
        None => Ok(()),
        Some(GlueDefect::MeetsImage) => Err(ConstructError::FaceMeetsImage { side, cycle: shown }),
        Some(GlueDefect::Edge(edge)) => Err(ConstructError::EdgeToImage { side, edge }),
    }
}

impl fmt::Display for GluingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}",
            notation::format_bracketed(&self.a),
            notation::format_bracketed(&self.b)
        )
    }
}

/// `[1,2,3] -> [4,5,6]`, or compact cycles such as `123 -> 456`.
impl FromStr for GluingSpec {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, r) = s
            .split_once("->")
            .ok_or_else(|| ConstructError::Parse(format!("expected '->' in {s:?}")))?;
        let side = |t: &str| {
            notation::parse_face(t.trim()).map_err(|e| ConstructError::Parse(e.to_string()))
        };
        Ok(GluingSpec::new(side(l)?, side(r)?))
    }
}

/// Removes the glue faces and their images from both maps and identifies
/// the boundaries. `a` keeps its labels, the remaining vertices of `b`
/// follow in increasing order.
pub fn cs_connected_sum(a: &CsMap, b: &CsMap, spec: &GluingSpec) -> Result<CsMap, ConstructError> {
    spec.validate(a, b)?;
    let (na, nb, q) = (a.n(), b.n(), spec.a.len());
    let (ia, ib) = (&a.involution, &b.involution);

    let mut to_new = vec![0 as VertexLabel; nb + 1];
    for (&x, &y) in spec.b.iter().zip(&spec.a) {
        to_new[x as usize] = y;
        to_new[ib.image(x) as usize] = ia.image(y);
    }
    let mut next = na as VertexLabel;
    for slot in to_new.iter_mut().skip(1) {
        if *slot == 0 {
            next += 1;
            *slot = next;
        }
    }
    let n = na + nb - 2 * q;
    debug_assert_eq!(next as usize, n);

    let cut = |cycle: &[VertexLabel], inv: &Involution| -> Result<[Face; 2], MapError> {
        let f = Face::new(cycle.iter().copied())?;
        let g = f.map(|v| inv.image(v))?;
        Ok([f, g])
    };
    let cut_a = cut(&spec.a, ia)?;
    let cut_b = cut(&spec.b, ib)?;

    let mut faces: Vec<Face> = a
        .map
        .faces()
        .iter()
        .filter(|f| !cut_a.contains(f))
        .cloned()
        .collect();
    for f in b.map.faces().iter().filter(|f| !cut_b.contains(f)) {
        faces.push(f.map(|v| to_new[v as usize])?);
    }
    let map = PolyhedralMap::with_vertex_count(n, faces)?;

    let mut pairs = ia.pairs();
    for (x, y) in ib.pairs() {
        let (u, w) = (to_new[x as usize], to_new[y as usize]);
        if u as usize > na {
            pairs.push((u, w));
        }
    }
    let involution = Involution::from_pairs(n, &pairs)?;
    if let Some(defect) = map.surface_defect() {
        return Err(ConstructError::NotSurface(defect));
    }
    CsMap::new(map, involution)
}

fn cs_map(cycles: &[Vec<VertexLabel>], involution: Involution) -> CsMap {
    let map = PolyhedralMap::from_cycles(cycles).expect("seed faces are valid");
    CsMap::new(map, involution).expect("seed is centrally symmetric")
}

/// Label of `a_{xyz}` on the cube: `4x + 2y + z + 1`, so the antipodal
/// map is `v ↔ 9 − v`.
fn cube_label(x: u32, y: u32, z: u32) -> VertexLabel {
    4 * x + 2 * y + z + 1
}

/// Boundary of the cube, faces listed as `f1, …, f6` with `f5` and `f6`
/// in the order of the duality example.
pub fn cube() -> CsMap {
    let c = cube_label;
    let faces = vec![
        vec![c(0, 0, 0), c(0, 0, 1), c(1, 0, 1), c(1, 0, 0)],
        vec![c(0, 0, 0), c(1, 0, 0), c(1, 1, 0), c(0, 1, 0)],
        vec![c(0, 0, 0), c(0, 0, 1), c(0, 1, 1), c(0, 1, 0)],
        vec![c(1, 1, 1), c(1, 0, 1), c(1, 0, 0), c(1, 1, 0)],
        vec![c(1, 1, 1), c(1, 0, 1), c(0, 0, 1), c(0, 1, 1)],
        vec![c(1, 1, 1), c(0, 1, 1), c(0, 1, 0), c(1, 1, 0)],
    ];
    cs_map(&faces, Involution::canonical(8).expect("even"))
}

/// Label of the subdivided-cube vertex with doubled coordinates in
/// `{0,1,2}³`. The centre is skipped, so `(x,y,z) ↦ (2−x,2−y,2−z)` becomes
/// `v ↔ 27 − v`.
pub fn subdivided_cube_label(x: u32, y: u32, z: u32) -> VertexLabel {
    let idx = 9 * x + 3 * y + z;
    assert!(idx != 13 && x < 3 && y < 3 && z < 3, "not a boundary point");
    if idx < 13 {
        idx + 1
    } else {
        idx
    }
}

/// The cube with every square cut into four: 26 vertices, 24 squares.
pub fn subdivided_cube() -> CsMap {
    let mut faces = Vec::with_capacity(24);
    for axis in 0..3 {
        for side in [0, 2] {
            for u in 0..2 {
                for v in 0..2 {
                    let corner = |du: u32, dv: u32| {
                        let mut p = [0u32; 3];
                        p[axis] = side;
                        p[(axis + 1) % 3] = u + du;
                        p[(axis + 2) % 3] = v + dv;
                        subdivided_cube_label(p[0], p[1], p[2])
                    };
                    faces.push(vec![corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)]);
                }
            }
        }
    }
    cs_map(&faces, Involution::canonical(26).expect("even"))
}

pub fn dodecahedron() -> CsMap {
    let faces: Vec<Vec<VertexLabel>> = vec![
        vec![1, 2, 17, 16, 10],
        vec![2, 3, 4, 18, 17],
        vec![4, 5, 6, 19, 18],
        vec![6, 19, 20, 8, 7],
        vec![8, 20, 16, 10, 9],
        vec![16, 17, 18, 19, 20],
        vec![1, 2, 3, 12, 11],
        vec![3, 4, 5, 13, 12],
        vec![5, 6, 7, 14, 13],
        vec![7, 8, 9, 15, 14],
        vec![9, 10, 1, 11, 15],
        vec![11, 12, 13, 14, 15],
    ];
    let inv = Involution::parse(
        "(5,10)(2,7)(3,8)(1,6)(4,9)(14,17)(13,16)(15,18)(11,19)(12,20)",
        Some(20),
    )
    .expect("valid involution");
    cs_map(&faces, inv)
}

/// Torus of twelve hexagons on 24 vertices, symmetric under `v ↔ v + 12`.
pub fn hexagonal_torus() -> CsMap {
    let faces: Vec<Vec<VertexLabel>> = vec![
        vec![1, 2, 3, 8, 7, 6],
        vec![3, 4, 5, 10, 9, 8],
        vec![5, 6, 7, 12, 11, 10],
        vec![7, 8, 9, 14, 13, 12],
        vec![9, 10, 11, 16, 15, 14],
        vec![11, 12, 13, 18, 17, 16],
        vec![13, 14, 15, 20, 19, 18],
        vec![15, 16, 17, 22, 21, 20],
        vec![17, 18, 19, 24, 23, 22],
        vec![19, 20, 21, 2, 1, 24],
        vec![21, 22, 23, 4, 3, 2],
        vec![23, 24, 1, 6, 5, 4],
    ];
    let pairs: Vec<(VertexLabel, VertexLabel)> = (1..=12).map(|v| (v, v + 12)).collect();
    cs_map(&faces, Involution::from_pairs(24, &pairs).expect("valid"))
}

/// The 12-vertex triangulated torus with `0′, 1′, 2′` written as 10, 11, 12.
pub fn example_torus() -> CsMap {
    let text = "123, 124, 134, 235, 245, 346, 357, 369, 378, 389, [4,5,10], 468, 478, \
                [4,7,10], 569, [5,6,10], 579, [6,8,10], [7,9,10], [8,9,11], [8,10,11], \
                [9,10,12], [9,11,12], [10,11,12]";
    let faces = notation::parse_face_list(text).expect("valid face list");
    cs_map(&faces, Involution::canonical(12).expect("even"))
}

/// Glue faces fixed by the worked examples for each seed.
pub fn example_gluing() -> GluingSpec {
    GluingSpec::new(vec![1, 2, 3], vec![1, 2, 3])
}

fn subdivided_cube_glue_face() -> Vec<VertexLabel> {
    let l = subdivided_cube_label;
    vec![l(0, 0, 0), l(0, 0, 1), l(1, 0, 1), l(1, 0, 0)]
}

/// The `2q` ways to align a cycle: rotations, then reflected rotations.
fn alignments(cycle: &[VertexLabel]) -> impl Iterator<Item = Vec<VertexLabel>> + '_ {
    let q = cycle.len();
    (0..2 * q).map(move |k| {
        (0..q)
            .map(|s| {
                let i = if k < q { s + k } else { k + q - s };
                cycle[i % q]
            })
            .collect()
    })
}

/// First gluing that yields a polyhedral map: candidate faces of `a` in
/// order, then every alignment of `glue` on `b`. Without one, the first
/// gluing that yields a surface at all.
fn first_polyhedral_sum(
    a: &CsMap,
    b: &CsMap,
    faces: &[Vec<VertexLabel>],
    glue: &[VertexLabel],
) -> Result<CsMap, ConstructError> {
    let mut fallback = Err(ConstructError::NoAdmissibleFace(GlueSide::First));
    for fa in faces {
        for fb in alignments(glue) {
            match cs_connected_sum(a, b, &GluingSpec::new(fa.clone(), fb)) {
                Ok(r) if r.map.is_polyhedral_map() => return Ok(r),
                Ok(r) if fallback.is_err() => fallback = Ok(r),
                Ok(_) => {}
                Err(e) if fallback.is_err() => fallback = Err(e),
                Err(_) => {}
            }
        }
    }
    fallback
}

/// Glues fresh copies of `seed` onto the running map, `steps` times. The
/// first step tries `glue` on the running map before other faces.
fn iterate_family(
    seed: CsMap,
    glue: Vec<VertexLabel>,
    steps: usize,
) -> Result<CsMap, ConstructError> {
    let mut cur = seed.clone();
    for step in 0..steps {
        let mut faces: Vec<Vec<VertexLabel>> = Vec::new();
        if step == 0 {
            faces.push(glue.clone());
        }
        faces.extend(
            cur.admissible_glue_faces()
                .iter()
                .map(|f| f.cycle().to_vec()),
        );
        cur = first_polyhedral_sum(&cur, &seed, &faces, &glue)?;
    }
    Ok(cur)
}

/// Quadrangulated orientable surface of genus `g` on `18g + 26` vertices.
pub fn quad_genus_surface(g: usize) -> Result<CsMap, ConstructError> {
    iterate_family(subdivided_cube(), subdivided_cube_glue_face(), g)
}

/// Pentagonal orientable surface of genus `g` on `10g + 20` vertices.
pub fn pentagon_genus_surface(g: usize) -> Result<CsMap, ConstructError> {
    iterate_family(dodecahedron(), vec![1, 2, 17, 16, 10], g)
}

/// Hexagonal orientable surface of genus `2k − 1` on `24 + 12(k − 1)`
/// vertices.
pub fn hexagon_genus_surface(k: usize) -> Result<CsMap, ConstructError> {
    if k == 0 {
        return Err(ConstructError::InvalidParameter(
            "hexagon family needs k >= 1 (genus 2k-1 must be odd)".into(),
        ));
    }
    iterate_family(hexagonal_torus(), vec![1, 2, 3, 8, 7, 6], k - 1)
}

/// Hexagon family indexed by genus; only odd genus is reachable.
pub fn hexagon_surface_of_genus(genus: usize) -> Result<CsMap, ConstructError> {
    if genus % 2 == 0 {
        return Err(ConstructError::InvalidParameter(format!(
            "hexagon genus must be odd, got {genus}"
        )));
    }
    hexagon_genus_surface(genus.div_ceil(2))
}

/// Dual map: vertex `i` is the `i`-th face of `m` in sorted order, and the
/// faces are the vertex stars of `m`.
pub fn dual_map(m: &CsMap) -> Result<CsMap, ConstructError> {
    if let Some(defect) = m.map.polyhedral_defect() {
        return Err(ConstructError::NotPolyhedral(defect));
    }
    let faces = m.map.faces();
    let mut by_edge: BTreeMap<(VertexLabel, VertexLabel), Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for e in f.edges() {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let key = |a: VertexLabel, b: VertexLabel| (a.min(b), a.max(b));

    let mut stars = Vec::with_capacity(m.n());
    for v in 1..=m.n() as VertexLabel {
        let start = faces
            .iter()
            .position(|f| f.contains(v))
            .expect("every vertex lies on a face");
        let mut cycle = vec![start as VertexLabel + 1];
        let (_, mut through) = faces[start].neighbours(v).expect("contains v");
        let mut cur = start;
        loop {
            let inc = &by_edge[&key(v, through)];
            let next = if inc[0] == cur { inc[1] } else { inc[0] };
            if next == start {
                break;
            }
            cycle.push(next as VertexLabel + 1);
            let (p, q) = faces[next].neighbours(v).expect("contains v");
            through = if p == through { q } else { p };
            cur = next;
        }
        stars.push(cycle);
    }

    let mut pairs = Vec::with_capacity(faces.len() / 2);
    for (i, f) in faces.iter().enumerate() {
        let g = m.involution.apply_face(f)?;
        let j = faces
            .binary_search(&g)
            .map_err(|_| ConstructError::NotCentrallySymmetric)?;
        if i < j {
            pairs.push((i as VertexLabel + 1, j as VertexLabel + 1));
        } else if i == j {
            return Err(ConstructError::NotCentrallySymmetric);
        }
    }
    let dual = PolyhedralMap::from_cycles(&stars)?;
    let inv = Involution::from_pairs(faces.len(), &pairs)?;
    CsMap::new(dual, inv)
}

/// Euler characteristic forced by `2(m−1)(m−3) = 3(2−χ)` on `n = 2m`
/// vertices, if it is an integer.
pub fn cs_tight_euler_characteristic(n: usize) -> Option<i64> {
    if n % 2 == 1 || n < 6 {
        return None;
    }
    let m = (n / 2) as i64;
    let lhs = 2 * (m - 1) * (m - 3);
    (lhs % 3 == 0).then(|| 2 - lhs / 3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsTightness {
    pub expected_edges: usize,
    pub edges_match: bool,
    /// `None` when no Euler characteristic satisfies the relation on `n`
    /// vertices.
    pub required_euler_characteristic: Option<i64>,
    pub relation_holds: bool,
    pub centrally_symmetric: bool,
}

impl CsTightness {
    pub fn is_cs_tight(&self) -> bool {
        self.edges_match && self.relation_holds && self.centrally_symmetric
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightnessReport {
    pub n: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
    /// Complete edge graph.
    pub two_neighbourly: bool,
    /// `(n−3)(n−4) = 6(2−χ)`.
    pub tight_relation: bool,
    pub cs: Option<CsTightness>,
}

impl TightnessReport {
    pub fn is_tight(&self) -> bool {
        self.two_neighbourly && self.tight_relation
    }

    pub fn is_cs_tight(&self) -> bool {
        self.cs.as_ref().is_some_and(CsTightness::is_cs_tight)
    }
}

impl fmt::Display for TightnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(f, "tight: {}", yn(self.is_tight()))?;
        if let Some(cs) = &self.cs {
            match cs.required_euler_characteristic {
                None => write!(
                    f,
                    "; CS-tight: no (no CS-tight object on {} vertices)",
                    self.n
                )?,
                Some(chi) => write!(
                    f,
                    "; CS-tight: {} (edges {}/{}, required χ = {})",
                    yn(cs.is_cs_tight()),
                    self.edges,
                    cs.expected_edges,
                    chi
                )?,
            }
        }
        Ok(())
    }
}

pub fn tightness_check(c: &Complex, inv: Option<&Involution>) -> TightnessReport {
    let n = c.n();
    let edges = c.faces(1).len();
    let chi = c.euler_characteristic();
    let ni = n as i64;
    let cs = inv.map(|i| {
        let expected_edges = n * n.saturating_sub(1) / 2 - n / 2;
        let required = cs_tight_euler_characteristic(n);
        CsTightness {
            expected_edges,
            edges_match: edges == expected_edges,
            required_euler_characteristic: required,
            relation_holds: required == Some(chi),
            centrally_symmetric: symmetry::is_centrally_symmetric(c, i),
        }
    });
    TightnessReport {
        n,
        edges,
        euler_characteristic: chi,
        two_neighbourly: edges == n * n.saturating_sub(1) / 2,
        tight_relation: (ni - 3) * (ni - 4) == 6 * (2 - chi),
        cs,
    }
}
