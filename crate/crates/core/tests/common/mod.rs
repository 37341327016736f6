//! Naive subset search with its own manifold test and a permutation-group
//! class key.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

pub type Facet = Vec<u32>;

pub fn antipode(v: u32, n: u32) -> u32 {
    n + 1 - v
}

pub fn subsets(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Admissible facet orbits `{F, F'}` listed by their lesser member.
pub fn orbits(n: u32, k: usize) -> Vec<(Facet, Facet)> {
    let verts: Vec<u32> = (1..=n).collect();
    let mut out = Vec::new();
    for f in subsets(&verts, k) {
        if f.iter().any(|&v| f.contains(&antipode(v, n))) {
            continue;
        }
        let mut g: Facet = f.iter().map(|&v| antipode(v, n)).collect();
        g.sort();
        if f < g {
            out.push((f, g));
        }
    }
    out
}

/// Facets around each face of codimension one and the link graph of each
/// vertex; a closed surface or 3-manifold when every link is a cycle or a
/// 2-sphere.
pub fn is_closed_manifold(facets: &[Facet], n: u32, d: usize) -> bool {
    let mut ridges: HashMap<Facet, usize> = HashMap::new();
    for f in facets {
        for i in 0..f.len() {
            let mut r = f.clone();
            r.remove(i);
            *ridges.entry(r).or_default() += 1;
        }
    }
    if ridges.values().any(|&c| c != 2) {
        return false;
    }
    for v in 1..=n {
        let link: Vec<Facet> = facets
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| f.iter().copied().filter(|&x| x != v).collect())
            .collect();
        if link.is_empty() || !connected(&link) {
            return false;
        }
        if d == 3 {
            // A connected closed surface is a sphere iff V − E + F = 2.
            let vs: BTreeSet<u32> = link.iter().flatten().copied().collect();
            let es: BTreeSet<(u32, u32)> = link
                .iter()
                .flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])])
                .collect();
            if vs.len() as i64 - es.len() as i64 + link.len() as i64 != 2 {
                return false;
            }
        }
    }
    connected(facets)
}

pub fn connected(facets: &[Facet]) -> bool {
    let verts: BTreeSet<u32> = facets.iter().flatten().copied().collect();
    let Some(&start) = verts.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for f in facets.iter().filter(|f| f.contains(&v)) {
            for &w in f {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
    seen.len() == verts.len()
}

pub fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Vertex maps `σ` with `σ(v') = σ(v)'`; `rooted` also fixes vertex 1.
pub fn centralizer(n: u32, rooted: bool) -> Vec<Vec<u32>> {
    let m = n / 2;
    let pairs: Vec<u32> = (1..=m).collect();
    let mut out = Vec::new();
    for order in permutations(&pairs) {
        for flips in 0u32..(1 << m) {
            let mut sigma = vec![0u32; n as usize + 1];
            for (i, &target) in order.iter().enumerate() {
                let v = i as u32 + 1;
                let (a, b) = if flips >> i & 1 == 1 {
                    (antipode(target, n), target)
                } else {
                    (target, antipode(target, n))
                };
                sigma[v as usize] = a;
                sigma[antipode(v, n) as usize] = b;
            }
            if !rooted || sigma[1] == 1 {
                out.push(sigma);
            }
        }
    }
    out
}

pub fn all_perms(n: u32) -> Vec<Vec<u32>> {
    let verts: Vec<u32> = (1..=n).collect();
    permutations(&verts)
        .into_iter()
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect()
}

pub fn class_key(facets: &[Facet], group: &[Vec<u32>]) -> Vec<Facet> {
    group
        .iter()
        .map(|s| {
            let mut img: Vec<Facet> = facets
                .iter()
                .map(|f| {
                    let mut g: Facet = f.iter().map(|&v| s[v as usize]).collect();
                    g.sort();
                    g
                })
                .collect();
            img.sort();
            img
        })
        .min()
        .expect("group is non-empty")
}

/// Every CS closed manifold on all `2m` vertices, grouped by `group`.
pub fn brute_force(m: u32, d: usize, group: &[Vec<u32>]) -> BTreeSet<Vec<Facet>> {
    let n = 2 * m;
    let orb = orbits(n, d + 1);
    assert!(orb.len() <= 20, "too many orbits for a naive search");
    let mut classes = BTreeSet::new();
    for mask in 1u32..(1 << orb.len()) {
        let facets: Vec<Facet> = orb
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .flat_map(|(_, (f, g))| [f.clone(), g.clone()])
            .collect();
        let used: BTreeSet<u32> = facets.iter().flatten().copied().collect();
        if used.len() != n as usize || !is_closed_manifold(&facets, n, d) {
            continue;
        }
        classes.insert(class_key(&facets, group));
    }
    classes
}
