//! Backtracking over admissible orbits.
//!
//! The search state tracks how often each ridge is used and, for every
//! codimension-2 face, the partial link as a set of paths. A link that
//! closes into a cycle must be the whole link of that face.

use std::collections::HashMap;

use crate::complex::{Simplex, VertexLabel};
use crate::symmetry::{admissible_face_orbits, Involution};

use super::SearchStatistics;

const NONE: u8 = u8::MAX;

pub(crate) struct OrbitData {
    pub facets: [u64; 2],
    ridges: Vec<u32>,
    /// (codim-2 face, link edge endpoints) for both facets.
    link_edges: Vec<(u32, u8, u8)>,
    pub rep: Simplex,
}

/// Static data for one `(m, d)`.
pub(crate) struct Problem {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub orbits: Vec<OrbitData>,
    ridge_orbits: Vec<Vec<u32>>,
    ridge_masks: Vec<u64>,
    n_taus: usize,
    pub inv: Involution,
    /// Root orbit and the two admissible covers of its least ridge, used when
    /// symmetry breaking is on.
    root: Option<(u32, Vec<u32>)>,
}

fn mask_of(vs: &[VertexLabel]) -> u64 {
    vs.iter().fold(0u64, |m, &v| m | 1u64 << (v - 1))
}

fn vertices_of(mask: u64) -> Vec<VertexLabel> {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i as VertexLabel + 1)
        .collect()
}

impl Problem {
    pub fn new(m: usize, d: usize, symmetry_breaking: bool) -> Self {
        let n = 2 * m;
        let inv = Involution::canonical(n).expect("n is even");
        let raw = admissible_face_orbits(n, d, &inv);

        let mut ridge_keys: Vec<Vec<VertexLabel>> = Vec::new();
        let mut ridge_index: HashMap<u64, u32> = HashMap::new();
        for o in &raw {
            for f in [&o.rep, &o.image] {
                for r in f.faces_of_size(d) {
                    let mk = mask_of(r.vertices());
                    if let std::collections::hash_map::Entry::Vacant(e) = ridge_index.entry(mk) {
                        e.insert(0);
                        ridge_keys.push(r.vertices().to_vec());
                    }
                }
            }
        }
        ridge_keys.sort();
        for (i, k) in ridge_keys.iter().enumerate() {
            ridge_index.insert(mask_of(k), i as u32);
        }

        // Codimension-2 faces: vertices for surfaces, edges for 3-manifolds.
        let mut tau_index: HashMap<u64, u32> = HashMap::new();
        let mut orbits = Vec::with_capacity(raw.len());
        for o in &raw {
            let mut ridges = Vec::new();
            let mut link_edges = Vec::new();
            for f in [&o.rep, &o.image] {
                for r in f.faces_of_size(d) {
                    ridges.push(ridge_index[&mask_of(r.vertices())]);
                }
                for t in f.faces_of_size(d - 1) {
                    let tm = mask_of(t.vertices());
                    let next = tau_index.len() as u32;
                    let ti = *tau_index.entry(tm).or_insert(next);
                    let rest = vertices_of(mask_of(f.vertices()) & !tm);
                    link_edges.push((ti, (rest[0] - 1) as u8, (rest[1] - 1) as u8));
                }
            }
            orbits.push(OrbitData {
                facets: [mask_of(o.rep.vertices()), mask_of(o.image.vertices())],
                ridges,
                link_edges,
                rep: o.rep.clone(),
            });
        }
        let mut ridge_orbits = vec![Vec::new(); ridge_keys.len()];
        for (i, o) in orbits.iter().enumerate() {
            for &r in &o.ridges {
                ridge_orbits[r as usize].push(i as u32);
            }
        }

        let root = symmetry_breaking.then(|| {
            let find = |vs: Vec<VertexLabel>| -> u32 {
                let mk = mask_of(&vs);
                orbits
                    .iter()
                    .position(|o| o.facets[0] == mk || o.facets[1] == mk)
                    .expect("orbit exists") as u32
            };
            let base: Vec<VertexLabel> = (1..=d as VertexLabel).collect();
            let mut first = base.clone();
            first.push(d as VertexLabel + 1);
            let mut a = base.clone();
            a.push(d as VertexLabel + 2);
            let mut b = base;
            b.push(inv.image(d as VertexLabel + 1));
            // A surface whose every flag at vertex 1 needs the antipodal cover
            // is the octahedron, so for m > 3 the fresh vertex suffices.
            let mut covers = if d == 2 && m > 3 {
                vec![find(a)]
            } else {
                vec![find(a), find(b)]
            };
            covers.sort_unstable();
            (find(first), covers)
        });

        Problem {
            n,
            m,
            d,
            orbits,
            ridge_orbits,
            ridge_masks: ridge_keys.iter().map(|k| mask_of(k)).collect(),
            n_taus: tau_index.len(),
            inv,
            root,
        }
    }
}

#[derive(Clone, Copy)]
enum Slot {
    Usage,
    LinkEnd,
    OpenEnds,
    TauClosed,
    VertexOpen,
    VertexFacets,
    VertexClosed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Prune {
    RidgeOveruse,
    LinkBreak,
    VertexLink,
}

/// Mutable search state with an undo log.
pub(crate) struct State<'p> {
    pub p: &'p Problem,
    usage: Vec<u8>,
    link_end: Vec<u8>,
    open_ends: Vec<u8>,
    tau_closed: Vec<u8>,
    vertex_open: Vec<u8>,
    vertex_facets: Vec<u8>,
    vertex_closed: Vec<u8>,
    log: Vec<(Slot, u32, u8)>,
    marks: Vec<usize>,
    pub chosen: Vec<u32>,
    in_use: Vec<bool>,
    floor: u32,
}

impl<'p> State<'p> {
    pub fn new(p: &'p Problem) -> Self {
        State {
            p,
            usage: vec![0; p.ridge_orbits.len()],
            link_end: vec![NONE; p.n_taus * p.n],
            open_ends: vec![0; p.n_taus],
            tau_closed: vec![0; p.n_taus],
            vertex_open: vec![0; p.n],
            vertex_facets: vec![0; p.n],
            vertex_closed: vec![0; p.n],
            log: Vec::new(),
            marks: Vec::new(),
            chosen: Vec::new(),
            in_use: vec![false; p.orbits.len()],
            floor: 0,
        }
    }

    fn slot(&mut self, s: Slot) -> &mut Vec<u8> {
        match s {
            Slot::Usage => &mut self.usage,
            Slot::LinkEnd => &mut self.link_end,
            Slot::OpenEnds => &mut self.open_ends,
            Slot::TauClosed => &mut self.tau_closed,
            Slot::VertexOpen => &mut self.vertex_open,
            Slot::VertexFacets => &mut self.vertex_facets,
            Slot::VertexClosed => &mut self.vertex_closed,
        }
    }

    fn set(&mut self, s: Slot, i: usize, v: u8) {
        let old = self.slot(s)[i];
        self.log.push((s, i as u32, old));
        self.slot(s)[i] = v;
    }

    fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (s, i, old) = self.log.pop().expect("nonempty");
            self.slot(s)[i as usize] = old;
        }
    }

    /// Adds both facets of orbit `o`. On failure the state is unchanged.
    pub fn push(&mut self, o: u32) -> Result<(), Prune> {
        let mark = self.log.len();
        match self.apply(o) {
            Ok(()) => {
                if self.chosen.is_empty() {
                    self.floor = o;
                }
                self.chosen.push(o);
                self.in_use[o as usize] = true;
                self.marks.push(mark);
                Ok(())
            }
            Err(e) => {
                self.rollback(mark);
                Err(e)
            }
        }
    }

    pub fn pop(&mut self) {
        let o = self.chosen.pop().expect("nonempty");
        self.in_use[o as usize] = false;
        let mark = self.marks.pop().expect("mark per orbit");
        self.rollback(mark);
    }

    fn apply(&mut self, o: u32) -> Result<(), Prune> {
        let p = self.p;
        let orbit = &p.orbits[o as usize];
        let k = p.d + 1;
        let c2 = k * (k - 1) / 2;
        for (fi, &facet) in orbit.facets.iter().enumerate() {
            for v in 0..p.n {
                if facet >> v & 1 == 1 && self.vertex_closed[v] != 0 {
                    return Err(Prune::LinkBreak);
                }
            }
            for &r in &orbit.ridges[fi * k..(fi + 1) * k] {
                let u = self.usage[r as usize] + 1;
                if u > 2 {
                    return Err(Prune::RidgeOveruse);
                }
                self.set(Slot::Usage, r as usize, u);
                let rm = p.ridge_masks[r as usize];
                for v in 0..p.n {
                    if rm >> v & 1 == 1 {
                        let open = if u == 1 {
                            self.vertex_open[v] + 1
                        } else {
                            self.vertex_open[v] - 1
                        };
                        self.set(Slot::VertexOpen, v, open);
                    }
                }
            }
            for &(tau, a, b) in &orbit.link_edges[fi * c2..(fi + 1) * c2] {
                if self.tau_closed[tau as usize] != 0 {
                    return Err(Prune::LinkBreak);
                }
                self.join(tau as usize, a as usize, b as usize)?;
            }
            for v in 0..p.n {
                if facet >> v & 1 == 1 {
                    let f = self.vertex_facets[v] + 1;
                    self.set(Slot::VertexFacets, v, f);
                }
            }
        }
        if p.d == 3 {
            for &facet in &orbit.facets {
                for v in 0..p.n {
                    if facet >> v & 1 == 1 && self.vertex_open[v] == 0 && self.vertex_closed[v] == 0
                    {
                        self.set(Slot::VertexClosed, v, 1);
                        if !self.closed_vertex_link_ok(v, o) {
                            return Err(Prune::VertexLink);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// χ of the link of `v`, which is closed: vertices − facets/2.
    fn closed_vertex_link_ok(&self, v: usize, extra: u32) -> bool {
        let mut nbrs = 0u64;
        let mut facets = 0i64;
        for &c in self.chosen.iter().chain(std::iter::once(&extra)) {
            for &f in &self.p.orbits[c as usize].facets {
                if f >> v & 1 == 1 {
                    nbrs |= f;
                    facets += 1;
                }
            }
        }
        nbrs &= !(1u64 << v);
        nbrs.count_ones() as i64 - facets / 2 == 2
    }

    fn join(&mut self, tau: usize, a: usize, b: usize) -> Result<(), Prune> {
        let n = self.p.n;
        let base = tau * n;
        let ea = self.link_end[base + a];
        let eb = self.link_end[base + b];
        let deg_a = link_degree(ea);
        let deg_b = link_degree(eb);
        let mut ends = self.open_ends[tau] as i32;
        match (deg_a, deg_b) {
            (0, 0) => {
                self.set(Slot::LinkEnd, base + a, b as u8);
                self.set(Slot::LinkEnd, base + b, a as u8);
                ends += 2;
            }
            (1, 0) | (0, 1) => {
                let (end, iso) = if deg_a == 1 { (a, b) } else { (b, a) };
                let far = self.link_end[base + end] as usize;
                self.set(Slot::LinkEnd, base + far, iso as u8);
                self.set(Slot::LinkEnd, base + iso, far as u8);
                self.set(Slot::LinkEnd, base + end, INTERIOR);
            }
            (1, 1) => {
                if ea as usize == b {
                    // Closing a cycle: it must be the whole link.
                    self.set(Slot::LinkEnd, base + a, INTERIOR);
                    self.set(Slot::LinkEnd, base + b, INTERIOR);
                    ends -= 2;
                    if ends != 0 {
                        return Err(Prune::LinkBreak);
                    }
                    self.set(Slot::TauClosed, tau, 1);
                } else {
                    let (fa, fb) = (ea as usize, eb as usize);
                    self.set(Slot::LinkEnd, base + fa, fb as u8);
                    self.set(Slot::LinkEnd, base + fb, fa as u8);
                    self.set(Slot::LinkEnd, base + a, INTERIOR);
                    self.set(Slot::LinkEnd, base + b, INTERIOR);
                    ends -= 2;
                }
            }
            _ => return Err(Prune::RidgeOveruse),
        }
        if ends as u8 != self.open_ends[tau] {
            self.set(Slot::OpenEnds, tau, ends as u8);
        }
        Ok(())
    }

    /// Least ridge used exactly once.
    pub fn least_open_ridge(&self) -> Option<u32> {
        self.usage.iter().position(|&u| u == 1).map(|i| i as u32)
    }

    /// Orbits that may be added next, in index order.
    pub fn candidates(&self) -> Vec<u32> {
        if self.chosen.is_empty() {
            return match &self.p.root {
                Some((r, _)) => vec![*r],
                None => (0..self.p.orbits.len() as u32).collect(),
            };
        }
        let Some(r) = self.least_open_ridge() else {
            return Vec::new();
        };
        let restricted = match &self.p.root {
            Some((_, covers)) if self.chosen.len() == 1 => Some(covers),
            _ => None,
        };
        self.p.ridge_orbits[r as usize]
            .iter()
            .copied()
            .filter(|&o| !self.in_use[o as usize])
            .filter(|&o| self.p.root.is_some() || o > self.floor)
            .filter(|&o| restricted.is_none_or(|c| c.contains(&o)))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        !self.chosen.is_empty() && self.least_open_ridge().is_none()
    }

    pub fn all_vertices_used(&self) -> bool {
        self.vertex_facets.iter().all(|&f| f > 0)
    }

    /// Representatives of the chosen orbits in sorted order.
    pub fn sorted_choice(&self) -> Vec<u32> {
        let mut c = self.chosen.clone();
        c.sort_unstable();
        c
    }
}

const INTERIOR: u8 = NONE - 1;

/// Degree of a link vertex from its marker: isolated, path end, or interior.
fn link_degree(marker: u8) -> u8 {
    match marker {
        NONE => 0,
        INTERIOR => 2,
        _ => 1,
    }
}

/// Depth-first search from the current state; `visit` is called on every
/// complete state.
pub(crate) fn dfs<F>(st: &mut State<'_>, stats: &mut SearchStatistics, visit: &mut F)
where
    F: FnMut(&State<'_>, &mut SearchStatistics),
{
    stats.nodes += 1;
    if st.is_complete() {
        visit(st, stats);
        return;
    }
    for o in st.candidates() {
        match st.push(o) {
            Ok(()) => {
                dfs(st, stats, visit);
                st.pop();
            }
            Err(Prune::RidgeOveruse) => stats.prunes_ridge_overuse += 1,
            Err(Prune::LinkBreak) => stats.prunes_link_break += 1,
            Err(Prune::VertexLink) => stats.prunes_vertex_link += 1,
        }
    }
}

/// Collects the states at `depth` chosen orbits (or complete earlier) as
/// orbit sequences, in search order.
pub(crate) fn split(st: &mut State<'_>, depth: usize, out: &mut Vec<Vec<u32>>) {
    if st.chosen.len() >= depth || st.is_complete() {
        out.push(st.chosen.clone());
        return;
    }
    for o in st.candidates() {
        if st.push(o).is_ok() {
            split(st, depth, out);
            st.pop();
        }
    }
}
