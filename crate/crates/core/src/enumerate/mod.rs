//! Exhaustive enumeration of centrally symmetric closed surfaces and
//! 3-manifolds on `2m` vertices under the involution `v ↔ 2m + 1 − v`.
//!
//! Facets are added an orbit `{F, F^I}` at a time. The search always extends
//! the least ridge that lies in exactly one chosen facet. Complete assemblies
//! are classified by a canonical form and one representative per class is
//! kept: the one whose sorted list of orbit representatives is least.

mod checkpoint;
mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{
    canonical_form, equivariant_canonical_form, CanonError, CanonOptions, CanonicalForm,
};
use crate::complex::{Complex, FaceVector, Simplex, VertexLabel};
use crate::homology::{homology, HomologyGroups};
use crate::symmetry::{orbit_closure, Involution};

pub use checkpoint::{Checkpoint, CHECKPOINT_VERSION};
use search::{dfs, split, Problem, State};

/// Which relabelings identify two assemblies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivalence {
    /// Any simplicial isomorphism.
    Isomorphism,
    /// Isomorphisms commuting with the involution.
    Equivariant,
    /// Isomorphisms commuting with the involution and fixing vertex 1.
    RootedEquivariant,
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equivalence::Isomorphism => "isomorphism",
            Equivalence::Equivariant => "equivariant",
            Equivalence::RootedEquivariant => "rooted-equivariant",
        })
    }
}

impl FromStr for Equivalence {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "isomorphism" | "iso" => Ok(Equivalence::Isomorphism),
            "equivariant" => Ok(Equivalence::Equivariant),
            "rooted-equivariant" | "rooted" => Ok(Equivalence::RootedEquivariant),
            _ => Err(format!(
                "unknown equivalence {s:?} (isomorphism, equivariant, rooted-equivariant)"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("dimension must be 2 or 3, got {0}")]
    BadDimension(usize),
    #[error("m = {m} is too small for dimension {d} (need m ≥ {min})")]
    MTooSmall { m: usize, d: usize, min: usize },
    #[error("m = {0} exceeds the supported maximum of 32")]
    MTooLarge(usize),
    #[error("checkpoint I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("checkpoint format: {0}")]
    Format(#[from] serde_json::Error),
    #[error("checkpoint does not match this run: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Canon(#[from] CanonError),
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub m: usize,
    pub dim: usize,
    pub equivalence: Equivalence,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    /// Number of orbit choices that define one work unit.
    pub split_depth: usize,
    /// Fix the first orbit to `{1,…,d+1}` and its neighbour across the least
    /// ridge to one of two choices. Every class has such a member.
    pub symmetry_breaking: bool,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    /// Expanded nodes between checkpoint writes.
    pub checkpoint_every: u64,
}

impl EnumerationConfig {
    pub fn new(m: usize, dim: usize) -> Self {
        EnumerationConfig {
            m,
            dim,
            equivalence: Equivalence::RootedEquivariant,
            jobs: 0,
            split_depth: 4,
            symmetry_breaking: true,
            checkpoint: None,
            resume: false,
            checkpoint_every: 1_000_000,
        }
    }

    pub fn equivalence(mut self, e: Equivalence) -> Self {
        self.equivalence = e;
        self
    }

    pub fn jobs(mut self, j: usize) -> Self {
        self.jobs = j;
        self
    }

    pub fn symmetry_breaking(mut self, on: bool) -> Self {
        self.symmetry_breaking = on;
        self
    }

    pub fn split_depth(mut self, d: usize) -> Self {
        self.split_depth = d;
        self
    }

    fn validate(&self) -> Result<(), EnumerationError> {
        let min = match self.dim {
            2 => 3,
            3 => 4,
            d => return Err(EnumerationError::BadDimension(d)),
        };
        if self.m < min {
            return Err(EnumerationError::MTooSmall {
                m: self.m,
                d: self.dim,
                min,
            });
        }
        if self.m > 32 {
            return Err(EnumerationError::MTooLarge(self.m));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStatistics {
    pub nodes: u64,
    pub prunes_ridge_overuse: u64,
    pub prunes_link_break: u64,
    pub prunes_vertex_link: u64,
    pub prunes_connectivity: u64,
    /// Complete assemblies that passed every check.
    pub solutions: u64,
    pub results_emitted: u64,
    pub duplicates_rejected: u64,
}

impl SearchStatistics {
    fn absorb(&mut self, o: &SearchStatistics) {
        self.nodes += o.nodes;
        self.prunes_ridge_overuse += o.prunes_ridge_overuse;
        self.prunes_link_break += o.prunes_link_break;
        self.prunes_vertex_link += o.prunes_vertex_link;
        self.prunes_connectivity += o.prunes_connectivity;
        self.solutions += o.solutions;
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub complex: Complex,
    pub orbit_reps: Vec<Simplex>,
    pub face_vector: FaceVector,
    pub euler_characteristic: i64,
    pub homology: HomologyGroups,
    pub orientable: bool,
    pub canonical: CanonicalForm,
}

#[derive(Clone, Debug)]
pub struct EnumerationOutput {
    pub results: Vec<EnumerationResult>,
    pub stats: SearchStatistics,
}

/// Canonical form serial → least sorted orbit-index list seen.
type ClassMap = BTreeMap<String, Vec<u32>>;

fn merge_classes(into: &mut ClassMap, from: ClassMap) {
    for (k, v) in from {
        match into.get_mut(&k) {
            Some(cur) if *cur <= v => {}
            Some(cur) => *cur = v,
            None => {
                into.insert(k, v);
            }
        }
    }
}

/// Class of `c` under `eq`; equal forms mean equivalent complexes.
pub fn classify(
    c: &Complex,
    inv: &Involution,
    eq: Equivalence,
) -> Result<CanonicalForm, CanonError> {
    let opts = CanonOptions::unbounded();
    match eq {
        Equivalence::Isomorphism => crate::canon::canonical_form_with(c, &opts),
        Equivalence::Equivariant => equivariant_canonical_form(c, inv, None, &opts),
        Equivalence::RootedEquivariant => equivariant_canonical_form(c, inv, Some(1), &opts),
    }
}

fn closure_of(p: &Problem, orbit_ids: &[u32]) -> Complex {
    let reps: Vec<Simplex> = orbit_ids
        .iter()
        .map(|&o| p.orbits[o as usize].rep.clone())
        .collect();
    orbit_closure(&reps, &p.inv).expect("admissible orbits close to a complex")
}

/// Checks the links of vertices `1..=m` only; the links of the other half
/// are their images under the involution.
fn half_links_ok(c: &Complex, m: usize) -> bool {
    (1..=m as VertexLabel).all(|v| {
        let l = c.link(v).expect("vertex used");
        match c.dim() {
            2 => l.is_single_cycle(),
            _ => l.is_two_sphere(),
        }
    })
}

fn explore(
    p: &Problem,
    prefix: &[u32],
    eq: Equivalence,
) -> Result<(ClassMap, SearchStatistics), CanonError> {
    let mut st = State::new(p);
    for &o in prefix {
        st.push(o).expect("prefix replays");
    }
    let mut classes = ClassMap::new();
    let mut stats = SearchStatistics::default();
    let mut err: Option<CanonError> = None;
    let mut visit = |s: &State<'_>, stats: &mut SearchStatistics| {
        if !s.all_vertices_used() {
            stats.prunes_connectivity += 1;
            return;
        }
        let ids = s.sorted_choice();
        let c = closure_of(p, &ids);
        if !c.is_connected() {
            stats.prunes_connectivity += 1;
            return;
        }
        if !half_links_ok(&c, p.m) {
            stats.prunes_vertex_link += 1;
            return;
        }
        stats.solutions += 1;
        match classify(&c, &p.inv, eq) {
            Ok(form) => {
                let mut one = ClassMap::new();
                one.insert(form.serial().to_string(), ids);
                merge_classes(&mut classes, one);
            }
            Err(e) => err = Some(e),
        }
    };
    dfs(&mut st, &mut stats, &mut visit);
    match err {
        Some(e) => Err(e),
        None => Ok((classes, stats)),
    }
}

/// Work units of the search: orbit prefixes in search order.
fn work_units(p: &Problem, depth: usize) -> Vec<Vec<u32>> {
    let mut st = State::new(p);
    let mut out = Vec::new();
    split(&mut st, depth.max(1), &mut out);
    out
}

pub fn enumerate(cfg: &EnumerationConfig) -> Result<EnumerationOutput, EnumerationError> {
    cfg.validate()?;
    let p = Problem::new(cfg.m, cfg.dim, cfg.symmetry_breaking);
    let units = work_units(&p, cfg.split_depth);

    let mut done = vec![false; units.len()];
    let mut classes = ClassMap::new();
    let mut stats = SearchStatistics::default();
    let header = checkpoint::Header::new(cfg, units.len());
    if cfg.resume {
        if let Some(path) = &cfg.checkpoint {
            if path.exists() {
                let ck = Checkpoint::load(path)?;
                ck.header.check_matches(&header)?;
                for &i in &ck.completed {
                    done[i] = true;
                }
                classes = ck.classes.into_iter().collect();
                stats = ck.stats;
            }
        }
    }

    let acc = Mutex::new(Accumulator {
        classes,
        stats,
        done,
        since_flush: 0,
    });
    let todo: Vec<usize> = {
        let a = acc.lock().expect("lock");
        (0..units.len()).filter(|&i| !a.done[i]).collect()
    };

    let run_unit = |i: usize| -> Result<(), EnumerationError> {
        let (c, s) = explore(&p, &units[i], cfg.equivalence)?;
        let mut a = acc.lock().expect("lock");
        merge_classes(&mut a.classes, c);
        a.stats.absorb(&s);
        a.done[i] = true;
        a.since_flush += s.nodes;
        if let Some(path) = &cfg.checkpoint {
            if a.since_flush >= cfg.checkpoint_every {
                a.since_flush = 0;
                a.to_checkpoint(&header).save(path)?;
            }
        }
        Ok(())
    };

    let run_all = || todo.par_iter().try_for_each(|&i| run_unit(i));
    if cfg.jobs == 1 {
        todo.iter().try_for_each(|&i| run_unit(i))?;
    } else if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| EnumerationError::Io(std::io::Error::other(e)))?;
        pool.install(run_all)?;
    } else {
        run_all()?;
    }

    let acc = acc.into_inner().expect("lock");
    if let Some(path) = &cfg.checkpoint {
        acc.to_checkpoint(&header).save(path)?;
    }
    let mut results = acc
        .classes
        .values()
        .map(|ids| build_result(&p, ids, cfg.equivalence))
        .collect::<Result<Vec<_>, _>>()?;
    results.sort_by(|a, b| a.orbit_reps.cmp(&b.orbit_reps));
    let mut stats = acc.stats;
    stats.results_emitted = results.len() as u64;
    stats.duplicates_rejected = stats.solutions - stats.results_emitted;
    Ok(EnumerationOutput { results, stats })
}

struct Accumulator {
    classes: ClassMap,
    stats: SearchStatistics,
    done: Vec<bool>,
    since_flush: u64,
}

impl Accumulator {
    fn to_checkpoint(&self, header: &checkpoint::Header) -> Checkpoint {
        Checkpoint {
            header: header.clone(),
            completed: (0..self.done.len()).filter(|&i| self.done[i]).collect(),
            classes: self
                .classes
                .iter()
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            stats: self.stats.clone(),
        }
    }
}

fn build_result(
    p: &Problem,
    ids: &[u32],
    eq: Equivalence,
) -> Result<EnumerationResult, CanonError> {
    let complex = closure_of(p, ids);
    let orbit_reps: Vec<Simplex> = ids
        .iter()
        .map(|&o| p.orbits[o as usize].rep.clone())
        .collect();
    let h = homology(&complex);
    let orientable = h.ranks[complex.dim()] == 1;
    let canonical = classify(&complex, &p.inv, eq)?;
    Ok(EnumerationResult {
        face_vector: complex.face_vector(),
        euler_characteristic: complex.euler_characteristic(),
        homology: h,
        orientable,
        canonical,
        orbit_reps,
        complex,
    })
}

/// Closed CS surfaces on `2m` vertices, one per rooted equivariant class.
pub fn enumerate_cs_surfaces(m: usize) -> Result<Vec<EnumerationResult>, EnumerationError> {
    Ok(enumerate(&EnumerationConfig::new(m, 2))?.results)
}

/// Closed CS 3-manifolds on `2m` vertices, one per rooted equivariant class.
pub fn enumerate_cs_3manifolds(m: usize) -> Result<Vec<EnumerationResult>, EnumerationError> {
    Ok(enumerate(&EnumerationConfig::new(m, 3))?.results)
}

/// Counts results by homology, keyed by its display form.
pub fn homology_histogram(results: &[EnumerationResult]) -> BTreeMap<String, usize> {
    let mut h = BTreeMap::new();
    for r in results {
        *h.entry(r.homology.to_string()).or_default() += 1;
    }
    h
}

/// Plain canonical form, independent of the enumeration's equivalence.
pub fn isomorphism_form(c: &Complex) -> Result<CanonicalForm, CanonError> {
    if c.n() <= crate::canon::DEFAULT_MAX_VERTICES {
        canonical_form(c)
    } else {
        crate::canon::canonical_form_with(c, &CanonOptions::unbounded())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m3_surface_is_the_octahedron() {
        let out = enumerate(&EnumerationConfig::new(3, 2).jobs(1)).unwrap();
        assert_eq!(out.results.len(), 1);
        let r = &out.results[0];
        let reps: Vec<String> = r.orbit_reps.iter().map(|s| s.to_string()).collect();
        assert_eq!(reps, ["123", "124", "135", "145"]);
        assert_eq!(r.face_vector, FaceVector(vec![6, 12, 8]));
        assert_eq!(out.stats.results_emitted, 1);
    }

    #[test]
    fn fresh_statistics_are_zero() {
        let s = SearchStatistics::default();
        assert_eq!(
            s.nodes + s.solutions + s.results_emitted + s.duplicates_rejected,
            0
        );
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            enumerate(&EnumerationConfig::new(2, 2)),
            Err(EnumerationError::MTooSmall { .. })
        ));
        assert!(matches!(
            enumerate(&EnumerationConfig::new(4, 4)),
            Err(EnumerationError::BadDimension(4))
        ));
    }

    #[test]
    fn equivalence_names_round_trip() {
        for e in [
            Equivalence::Isomorphism,
            Equivalence::Equivariant,
            Equivalence::RootedEquivariant,
        ] {
            assert_eq!(e.to_string().parse::<Equivalence>().unwrap(), e);
        }
    }
}
