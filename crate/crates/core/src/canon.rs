//! Canonical labeling by individualization and refinement.
//!
//! A complex is viewed as a vertex-colored hypergraph, optionally with a
//! fixed-point-free pairing of its vertices. Colors are refined until stable;
//! if some color class still has several vertices, each member is tried in
//! turn as a singled-out vertex. Every discrete leaf gives a relabeling, and
//! the least resulting code wins. Leaves with equal codes yield
//! automorphisms, which are used to skip equivalent branches.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, Simplex, VertexLabel};
use crate::homology::homology;
use crate::map::PolyhedralMap;
use crate::notation;
use crate::symmetry::Involution;

pub const DEFAULT_MAX_VERTICES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonError {
    #[error(
        "complex has {n} vertices, above the canonical-form bound {bound}; \
         raise the bound explicitly to proceed"
    )]
    TooLarge { n: usize, bound: usize },
    #[error("involution acts on {found} vertices, complex has {expected}")]
    InvolutionSize { expected: usize, found: usize },
    #[error("root vertex {0} is not a vertex of the complex")]
    BadRoot(VertexLabel),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonOptions {
    pub max_vertices: usize,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

impl CanonOptions {
    pub fn unbounded() -> Self {
        CanonOptions {
            max_vertices: usize::MAX,
        }
    }
}

/// Relabeling-invariant serialization of a complex plus a stable 64-bit
/// FNV-1a digest of that string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    serial: String,
    hash: u64,
}

impl CanonicalForm {
    fn from_serial(serial: String) -> Self {
        let hash = fnv1a64(serial.as_bytes());
        CanonicalForm { serial, hash }
    }

    pub fn serial(&self) -> &str {
        &self.serial
    }

    pub fn hash64(&self) -> u64 {
        self.hash
    }

    pub fn hash_hex(&self) -> String {
        format!("{:016x}", self.hash)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serial)
    }
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Colored hypergraph on vertices `0..n`.
struct Structure {
    n: usize,
    colors: Vec<u32>,
    partner: Option<Vec<u32>>,
    facets: Vec<Vec<u32>>,
    incidence: Vec<Vec<usize>>,
}

impl Structure {
    fn new(n: usize, colors: Vec<u32>, partner: Option<Vec<u32>>, facets: Vec<Vec<u32>>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (i, f) in facets.iter().enumerate() {
            for &v in f {
                incidence[v as usize].push(i);
            }
        }
        Structure {
            n,
            colors,
            partner,
            facets,
            incidence,
        }
    }

    fn from_complex(c: &Complex, inv: Option<&Involution>, root: Option<VertexLabel>) -> Self {
        let n = c.n();
        let mut colors = vec![1u32; n];
        if let Some(r) = root {
            colors[r as usize - 1] = 0;
        }
        let partner = inv.map(|i| {
            (1..=n as VertexLabel)
                .map(|v| i.image(v) - 1)
                .collect::<Vec<_>>()
        });
        let facets = c
            .facets()
            .iter()
            .map(|f| f.vertices().iter().map(|&v| v - 1).collect())
            .collect();
        Structure::new(n, colors, partner, facets)
    }

    /// Orders vertices by (color, neighbourhood signature) and recolors each
    /// vertex with the position of its class. Repeats until stable.
    fn refine(&self, colors: &mut [u32]) {
        let mut cells = count_cells(colors);
        loop {
            let mut keyed: Vec<(u32, Vec<u32>, usize)> = (0..self.n)
                .map(|v| (colors[v], self.signature(v, colors), v))
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 0..keyed.len() {
                if i > 0 && (keyed[i].0, &keyed[i].1) != (keyed[i - 1].0, &keyed[i - 1].1) {
                    start = i;
                }
                colors[keyed[i].2] = start as u32;
            }
            let now = count_cells(colors);
            if now == cells {
                break;
            }
            cells = now;
        }
    }

    fn signature(&self, v: usize, colors: &[u32]) -> Vec<u32> {
        let mut parts: Vec<Vec<u32>> = self.incidence[v]
            .iter()
            .map(|&fi| {
                let mut cs: Vec<u32> = self.facets[fi]
                    .iter()
                    .filter(|&&w| w as usize != v)
                    .map(|&w| colors[w as usize])
                    .collect();
                cs.sort_unstable();
                cs
            })
            .collect();
        parts.sort_unstable();
        let mut sig = Vec::with_capacity(2 + parts.len() * 4);
        sig.push(
            self.partner
                .as_ref()
                .map(|p| colors[p[v] as usize])
                .unwrap_or(u32::MAX),
        );
        sig.push(parts.len() as u32);
        for p in parts {
            sig.push(p.len() as u32);
            sig.extend(p);
        }
        sig
    }

    /// Code of the relabeling `v ↦ perm[v]`.
    fn code(&self, perm: &[u32]) -> Vec<u32> {
        let mut inv = vec![0u32; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p as usize] = v as u32;
        }
        let mut code: Vec<u32> = inv.iter().map(|&v| self.colors[v as usize]).collect();
        if let Some(p) = &self.partner {
            code.extend(inv.iter().map(|&v| perm[p[v as usize] as usize]));
        }
        let mut fs: Vec<Vec<u32>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<u32> = f.iter().map(|&v| perm[v as usize]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        fs.sort_unstable();
        for f in fs {
            code.push(f.len() as u32);
            code.extend(f);
        }
        code
    }

    fn canonical_labeling(&self) -> Vec<u32> {
        let mut search = Search {
            s: self,
            best: None,
            automorphisms: Vec::new(),
        };
        let mut colors = self.colors.clone();
        // Initial colors become positions so that refinement only splits.
        let mut keys: Vec<(u32, usize)> = colors.iter().copied().zip(0..).collect();
        keys.sort_unstable();
        let mut start = 0;
        for i in 0..keys.len() {
            if i > 0 && keys[i].0 != keys[i - 1].0 {
                start = i;
            }
            colors[keys[i].1] = start as u32;
        }
        search.descend(colors, &mut Vec::new());
        search.best.expect("at least one leaf").1
    }
}

fn count_cells(colors: &[u32]) -> usize {
    let mut c: Vec<u32> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    s: &'a Structure,
    best: Option<(Vec<u32>, Vec<u32>)>,
    automorphisms: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn descend(&mut self, mut colors: Vec<u32>, prefix: &mut Vec<u32>) {
        self.s.refine(&mut colors);
        let n = self.s.n;
        let mut sizes = vec![0u32; n.max(1)];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..n).find(|&c| sizes[c] > 1);
        let Some(target) = target else {
            self.leaf(colors);
            return;
        };
        let members: Vec<u32> = (0..n as u32)
            .filter(|&v| colors[v as usize] == target as u32)
            .collect();
        let mut tried: Vec<u32> = Vec::new();
        for &v in &members {
            if !tried.is_empty() {
                let orbit = self.orbit_of(v, prefix);
                if tried.iter().any(|t| orbit[*t as usize]) {
                    continue;
                }
            }
            tried.push(v);
            let mut next = colors.clone();
            for &w in &members {
                if w != v {
                    next[w as usize] = target as u32 + 1;
                }
            }
            prefix.push(v);
            self.descend(next, prefix);
            prefix.pop();
        }
    }

    /// Membership mask of the orbit of `v` under the known automorphisms
    /// that fix `prefix` pointwise.
    fn orbit_of(&self, v: u32, prefix: &[u32]) -> Vec<bool> {
        let gens: Vec<&Vec<u32>> = self
            .automorphisms
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p as usize] == p))
            .collect();
        let mut seen = vec![false; self.s.n];
        seen[v as usize] = true;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for g in &gens {
                let w = g[u as usize];
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    fn leaf(&mut self, perm: Vec<u32>) {
        let code = self.s.code(&perm);
        match &self.best {
            None => self.best = Some((code, perm)),
            Some((best, bperm)) => match code.cmp(best) {
                Ordering::Less => self.best = Some((code, perm)),
                Ordering::Equal => {
                    // bperm⁻¹ ∘ perm preserves the structure.
                    let mut binv = vec![0u32; perm.len()];
                    for (v, &p) in bperm.iter().enumerate() {
                        binv[p as usize] = v as u32;
                    }
                    let g: Vec<u32> = perm.iter().map(|&p| binv[p as usize]).collect();
                    if g.iter().enumerate().any(|(i, &x)| i as u32 != x) {
                        self.automorphisms.push(g);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }
}

fn check_bound(n: usize, opts: &CanonOptions) -> Result<(), CanonError> {
    if n > opts.max_vertices {
        return Err(CanonError::TooLarge {
            n,
            bound: opts.max_vertices,
        });
    }
    Ok(())
}

/// The canonical relabeling as a map old label → new label (`perm[v - 1]`).
pub fn canonical_labeling(
    c: &Complex,
    opts: &CanonOptions,
) -> Result<Vec<VertexLabel>, CanonError> {
    check_bound(c.n(), opts)?;
    Ok(to_labels(
        Structure::from_complex(c, None, None).canonical_labeling(),
    ))
}

fn to_labels(perm: Vec<u32>) -> Vec<VertexLabel> {
    perm.into_iter().map(|p| p + 1).collect()
}

fn serial_for(
    c: &Complex,
    perm: &[VertexLabel],
    inv: Option<&Involution>,
    root: Option<VertexLabel>,
) -> String {
    let relabeled = c
        .relabel(perm)
        .expect("canonical labeling is a permutation");
    let mut s = format!(
        "{}:{}",
        c.n(),
        notation::format_simplices(relabeled.facets())
    );
    if let Some(i) = inv {
        let pairs: Vec<(VertexLabel, VertexLabel)> = i
            .pairs()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (perm[a as usize - 1], perm[b as usize - 1]);
                (x.min(y), x.max(y))
            })
            .collect();
        let ci = Involution::from_pairs(c.n(), &pairs).expect("relabeled pairing");
        s.push('|');
        s.push_str(&ci.to_string());
    }
    if let Some(r) = root {
        s.push_str(&format!("|root={}", perm[r as usize - 1]));
    }
    s
}

/// Canonical form under simplicial isomorphism.
pub fn canonical_form(c: &Complex) -> Result<CanonicalForm, CanonError> {
    canonical_form_with(c, &CanonOptions::default())
}

pub fn canonical_form_with(c: &Complex, opts: &CanonOptions) -> Result<CanonicalForm, CanonError> {
    let perm = canonical_labeling(c, opts)?;
    Ok(CanonicalForm::from_serial(serial_for(c, &perm, None, None)))
}

/// Canonical form under isomorphisms that commute with `inv` and, when
/// `root` is given, fix that vertex.
pub fn equivariant_canonical_form(
    c: &Complex,
    inv: &Involution,
    root: Option<VertexLabel>,
    opts: &CanonOptions,
) -> Result<CanonicalForm, CanonError> {
    check_bound(c.n(), opts)?;
    if inv.n() != c.n() {
        return Err(CanonError::InvolutionSize {
            expected: c.n(),
            found: inv.n(),
        });
    }
    if let Some(r) = root {
        if r == 0 || r as usize > c.n() {
            return Err(CanonError::BadRoot(r));
        }
    }
    let s = Structure::from_complex(c, Some(inv), root);
    let perm = to_labels(s.canonical_labeling());
    Ok(CanonicalForm::from_serial(serial_for(
        c,
        &perm,
        Some(inv),
        root,
    )))
}

/// Canonical form of a map, through its cone subdivision with face centres
/// colored apart from the original vertices.
pub fn map_canonical_form(
    m: &PolyhedralMap,
    inv: Option<&Involution>,
    opts: &CanonOptions,
) -> Result<CanonicalForm, CanonError> {
    let cone = m
        .cone_subdivision(false)
        .expect("cone over a valid map is a complex");
    check_bound(cone.n(), opts)?;
    let n = m.n();
    let mut colors = vec![0u32; cone.n()];
    for c in colors.iter_mut().skip(n) {
        *c = 1;
    }
    let partner = inv.map(|i| {
        let mut p: Vec<u32> = (1..=n as VertexLabel).map(|v| i.image(v) - 1).collect();
        for f in m.faces() {
            let g = i.apply_face(f).expect("labels in range");
            let j = m
                .faces()
                .binary_search(&g)
                .expect("involution maps faces to faces");
            p.push((n + j) as u32);
        }
        p
    });
    let facets = cone
        .facets()
        .iter()
        .map(|f| f.vertices().iter().map(|&v| v - 1).collect())
        .collect();
    let s = Structure::new(cone.n(), colors, partner, facets);
    let perm = to_labels(s.canonical_labeling());
    let relabeled = cone.relabel(&perm).expect("permutation");
    let centres: Vec<VertexLabel> = (n + 1..=cone.n()).map(|v| perm[v - 1]).collect();
    let mut centres_sorted = centres.clone();
    centres_sorted.sort_unstable();
    let mut serial = format!(
        "map{}:{}|centres={}",
        n,
        notation::format_simplices(relabeled.facets()),
        notation::format_bracketed(&centres_sorted)
    );
    if inv.is_some() {
        serial.push_str("|cs");
    }
    Ok(CanonicalForm::from_serial(serial))
}

/// Cheap invariants first, then canonical forms.
pub fn are_isomorphic(a: &Complex, b: &Complex) -> Result<bool, CanonError> {
    are_isomorphic_with(a, b, &CanonOptions::default())
}

pub fn are_isomorphic_with(
    a: &Complex,
    b: &Complex,
    opts: &CanonOptions,
) -> Result<bool, CanonError> {
    if a.n() != b.n() || a.facets().len() != b.facets().len() || a.dim() != b.dim() {
        return Ok(false);
    }
    if a.face_vector() != b.face_vector() {
        return Ok(false);
    }
    let degrees = |c: &Complex| {
        let mut d: Vec<usize> = (1..=c.n() as VertexLabel)
            .map(|v| c.vertex_degree(v))
            .collect();
        d.sort_unstable();
        d
    };
    if degrees(a) != degrees(b) {
        return Ok(false);
    }
    if homology(a) != homology(b) {
        return Ok(false);
    }
    Ok(canonical_form_with(a, opts)? == canonical_form_with(b, opts)?)
}

/// Facets of the canonical relabeling.
pub fn canonical_facets(c: &Complex, opts: &CanonOptions) -> Result<Vec<Simplex>, CanonError> {
    let perm = canonical_labeling(c, opts)?;
    Ok(c.relabel(&perm).expect("permutation").facets().to_vec())
}
