//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported but do not fail the
//! run; the run fails if any other criterion fails or if a known failure
//! starts passing.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;

use cstri_core::canon::{self, CanonOptions};
use cstri_core::construct;
use cstri_core::enumerate::{
    classify, enumerate, homology_histogram, EnumerationConfig, EnumerationResult, Equivalence,
};
use cstri_core::homology;
use cstri_core::records::parse_input;
use cstri_core::symmetry::{is_centrally_symmetric, is_centrally_symmetric_map, Involution};
use cstri_core::{Complex, VertexLabel};

const KNOWN_FAILURES: &[u32] = &[4, 6, 7];

const SURFACES_10: &str = include_str!("data/surfaces_10.txt");
const CHI_MINUS8_12: &str = include_str!("data/chi_minus8_12.txt");
const MANIFOLDS3_12: &str = include_str!("data/manifolds3_12.txt");

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

/// `(label, orbit representatives)` rows of a data file.
fn rows(text: &str) -> Vec<(&str, &str)> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split_once(" | ").expect("label | orbits"))
        .collect()
}

fn from_orbits(n: usize, reps: &str) -> Complex {
    parse_input(&format!("n: {n}\norbits: {reps}"))
        .expect("orbit list parses")
        .complex()
        .expect("orbits give a complex")
}

fn rooted_form(c: &Complex) -> String {
    let inv = Involution::canonical(c.n()).unwrap();
    classify(c, &inv, Equivalence::RootedEquivariant)
        .unwrap()
        .serial()
        .to_string()
}

fn iso_form(c: &Complex) -> String {
    canon::canonical_form_with(c, &CanonOptions::unbounded())
        .unwrap()
        .serial()
        .to_string()
}

fn run(m: usize, d: usize) -> (Vec<EnumerationResult>, Duration) {
    let t = Instant::now();
    let out = enumerate(&EnumerationConfig::new(m, d)).expect("enumeration runs");
    (out.results, t.elapsed())
}

fn reps_of(r: &EnumerationResult) -> String {
    r.orbit_reps
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn hist_line(h: &BTreeMap<String, usize>) -> String {
    h.iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn criterion_1(r: &[EnumerationResult], t: Duration) -> Verdict {
    let ok = r.len() == 1
        && reps_of(&r[0]) == "123, 124, 135, 145"
        && r[0].face_vector.0 == [6, 12, 8]
        && r[0].homology.to_string() == "(1, 0, 1)"
        && t < Duration::from_secs(1);
    verdict(ok, format!("{} class(es), {:?}", r.len(), t))
}

fn criterion_2(r: &[EnumerationResult], t: Duration) -> Verdict {
    let spheres = r
        .iter()
        .filter(|x| x.homology.to_string() == "(1, 0, 1)")
        .count();
    let tori: Vec<&EnumerationResult> = r
        .iter()
        .filter(|x| x.homology.to_string() == "(1, 2, 1)")
        .collect();
    let tight = from_orbits(8, "123, 124, 135, 147, 156, 167, 246, 256");
    let matches = tori.len() == 1 && iso_form(&tori[0].complex) == iso_form(&tight);
    let ok = r.len() == 5 && spheres == 4 && matches && t < Duration::from_secs(10);
    verdict(
        ok,
        format!("{} classes: {spheres} spheres, {} tori, torus matches 8-vertex tight torus: {matches}, {t:?}", r.len(), tori.len()),
    )
}

fn criterion_3(r: &[EnumerationResult], t: Duration) -> Verdict {
    let h = homology_histogram(r);
    let want: BTreeMap<String, usize> =
        [("(1, 0, 1)", 16), ("(1, 2, 1)", 29), ("(1, 1+Z2, 0)", 11)]
            .iter()
            .map(|&(k, v)| (k.to_string(), v))
            .collect();
    // The listed orbit sets, as rooted classes, with their surface types.
    let listed: BTreeMap<String, String> = rows(SURFACES_10)
        .into_iter()
        .map(|(kind, reps)| {
            let c = from_orbits(10, reps);
            let hom = match kind {
                "sphere" => "(1, 0, 1)",
                "torus" => "(1, 2, 1)",
                _ => "(1, 1+Z2, 0)",
            };
            (rooted_form(&c), hom.to_string())
        })
        .collect();
    let ours: BTreeMap<String, String> = r
        .iter()
        .map(|x| (x.canonical.serial().to_string(), x.homology.to_string()))
        .collect();
    let same = listed == ours;
    let ok = h == want && same && t < Duration::from_secs(600);
    verdict(
        ok,
        format!(
            "{} classes ({}), listed orbit sets recovered: {same}, {t:?}",
            r.len(),
            hist_line(&h)
        ),
    )
}

const HISTOGRAM_ORDER: [&str; 11] = [
    "(1, 0, 1)",
    "(1, 2, 1)",
    "(1, 1+Z2, 0)",
    "(1, 4, 1)",
    "(1, 3+Z2, 0)",
    "(1, 6, 1)",
    "(1, 5+Z2, 0)",
    "(1, 8, 1)",
    "(1, 7+Z2, 0)",
    "(1, 10, 1)",
    "(1, 9+Z2, 0)",
];

fn criterion_4(all: &[&[EnumerationResult]], r6: &[EnumerationResult], t: Duration) -> Verdict {
    let want = [81, 499, 232, 178, 1180, 154, 2707, 258, 918, 7, 27];
    let h = homology_histogram(r6);
    let got: Vec<usize> = HISTOGRAM_ORDER
        .iter()
        .map(|k| h.get(*k).copied().unwrap_or(0))
        .collect();
    let extra: usize = h
        .iter()
        .filter(|(k, _)| !HISTOGRAM_ORDER.contains(&k.as_str()))
        .map(|(_, v)| v)
        .sum();
    let orientable: usize = all
        .iter()
        .map(|rs| rs.iter().filter(|x| x.orientable).count())
        .sum();
    let total: usize = all.iter().map(|rs| rs.len()).sum();
    let ok = got == want && extra == 0 && r6.len() == 6241 && orientable == 1228 && total == 6303;
    verdict(
        ok,
        format!(
            "{} classes, histogram {:?} (expected {:?}), n ≤ 12 total {total} ({orientable} orientable, {} non-orientable), {t:?}",
            r6.len(),
            got,
            want,
            total - orientable
        ),
    )
}

fn criterion_5(r6: &[EnumerationResult]) -> Verdict {
    let chi8: Vec<&EnumerationResult> =
        r6.iter().filter(|x| x.euler_characteristic == -8).collect();
    let ori: Vec<&EnumerationResult> = chi8.iter().copied().filter(|x| x.orientable).collect();
    let listed = rows(CHI_MINUS8_12);
    let listed_ori: Vec<Complex> = listed
        .iter()
        .filter(|(h, _)| *h == "(1, 10, 1)")
        .map(|(_, reps)| from_orbits(12, reps))
        .collect();
    let multiset = |cs: Vec<String>| {
        let mut v = cs;
        v.sort();
        v
    };
    let ours_iso = multiset(ori.iter().map(|x| iso_form(&x.complex)).collect());
    let listed_iso = multiset(listed_ori.iter().map(iso_form).collect());
    let ours_rooted: BTreeSet<String> = chi8
        .iter()
        .map(|x| x.canonical.serial().to_string())
        .collect();
    let listed_rooted: BTreeSet<String> = listed
        .iter()
        .map(|(_, reps)| rooted_form(&from_orbits(12, reps)))
        .collect();
    let iso_match = ours_iso == listed_iso;
    let ok = chi8.len() == 34 && ori.len() == 7 && listed_ori.len() == 7 && iso_match;
    verdict(
        ok,
        format!(
            "{} classes with χ = −8 ({} orientable), orientable set matches listed rows: {iso_match}, all 34 listed rows recovered as rooted classes: {}",
            chi8.len(),
            ori.len(),
            ours_rooted == listed_rooted
        ),
    )
}

fn criterion_6(r6: &[EnumerationResult], t: Duration) -> Verdict {
    let h = homology_histogram(r6);
    let ours_iso: BTreeSet<String> = r6.iter().map(|x| iso_form(&x.complex)).collect();
    let ours_rooted: BTreeSet<String> = r6
        .iter()
        .map(|x| x.canonical.serial().to_string())
        .collect();
    let listed = rows(MANIFOLDS3_12);
    let mut valid = Vec::new();
    let mut invalid = Vec::new();
    for (name, reps) in &listed {
        let c = from_orbits(12, reps);
        let good =
            c.is_combinatorial_3manifold() && homology::homology(&c).to_string() == "(1, 1, 1, 1)";
        if good {
            valid.push(c);
        } else {
            invalid.push(*name);
        }
    }
    let listed_iso: BTreeSet<String> = valid.iter().map(iso_form).collect();
    let all_found = valid.iter().all(|c| ours_rooted.contains(&rooted_form(c)));
    let all_11 = h.len() == 1 && h.contains_key("(1, 1, 1, 1)");
    let in_listed = r6
        .iter()
        .all(|x| listed_iso.contains(&iso_form(&x.complex)));
    let ok = r6.len() == 68 && all_11 && in_listed;
    verdict(
        ok,
        format!(
            "{} classes ({}), {} isomorphism types; listed rows: {} valid, not manifolds with that homology: {:?}, {} isomorphism types, every valid row found: {all_found}; {t:?}",
            r6.len(),
            hist_line(&h),
            ours_iso.len(),
            valid.len(),
            invalid,
            listed_iso.len()
        ),
    )
}

fn criterion_7() -> Verdict {
    let mut bad = Vec::new();
    let check =
        |name: String, m: &construct::CsMap, n: usize, genus: i64, bad: &mut Vec<String>| {
            let mut why = Vec::new();
            if m.n() != n {
                why.push(format!("{} vertices, expected {n}", m.n()));
            }
            if m.genus() != Some(genus) {
                why.push(format!("genus {:?}, expected {genus}", m.genus()));
            }
            if !m.map().is_polyhedral_map() {
                why.push(format!(
                    "not polyhedral ({})",
                    m.map().polyhedral_defect().unwrap()
                ));
            }
            if !is_centrally_symmetric_map(m.map(), m.involution()) {
                why.push("not CS".into());
            }
            if !why.is_empty() {
                bad.push(format!("{name}: {}", why.join(", ")));
            }
        };
    for g in 0..=4usize {
        let q = construct::quad_genus_surface(g).unwrap();
        check(format!("quad g={g}"), &q, 18 * g + 26, g as i64, &mut bad);
        let p = construct::pentagon_genus_surface(g).unwrap();
        check(
            format!("pentagon g={g}"),
            &p,
            10 * g + 20,
            g as i64,
            &mut bad,
        );
    }
    for k in 1..=3usize {
        match construct::hexagon_genus_surface(k) {
            Ok(h) => check(
                format!("hexagon k={k}"),
                &h,
                24 + 12 * (k - 1),
                2 * k as i64 - 1,
                &mut bad,
            ),
            Err(e) => bad.push(format!("hexagon k={k}: {e}")),
        }
    }
    let detail = if bad.is_empty() {
        "13 maps checked".to_string()
    } else {
        bad.join("; ")
    };
    verdict(bad.is_empty(), detail)
}

fn criterion_8() -> Verdict {
    let t = construct::example_torus();
    let s = construct::cs_connected_sum(&t, &t, &construct::example_gluing()).unwrap();
    let c = s.to_complex().unwrap();
    // Reference copy of the glued surface, relabeled 1..18.
    let reference = Complex::from_lists(&[
        [1, 2, 4],
        [1, 3, 4],
        [2, 3, 5],
        [2, 4, 5],
        [3, 4, 6],
        [3, 5, 7],
        [3, 6, 9],
        [3, 7, 8],
        [3, 8, 9],
        [4, 5, 10],
        [4, 6, 8],
        [4, 7, 8],
        [4, 7, 10],
        [5, 6, 9],
        [5, 6, 10],
        [5, 7, 9],
        [6, 8, 10],
        [7, 9, 10],
        [8, 9, 11],
        [8, 10, 11],
        [9, 10, 12],
        [9, 11, 12],
        [1, 2, 13],
        [1, 3, 13],
        [2, 3, 14],
        [2, 13, 14],
        [3, 13, 15],
        [3, 14, 16],
        [3, 15, 18],
        [3, 16, 17],
        [3, 17, 18],
        [13, 14, 10],
        [13, 15, 17],
        [13, 16, 17],
        [13, 16, 10],
        [14, 15, 18],
        [14, 15, 10],
        [14, 16, 18],
        [15, 17, 10],
        [16, 18, 10],
        [17, 18, 11],
        [17, 10, 11],
        [18, 10, 12],
        [18, 11, 12],
    ])
    .unwrap();
    let same = canon::are_isomorphic_with(&c, &reference, &CanonOptions::unbounded()).unwrap();
    let ok = s.n() == 18
        && c.facets().len() == 44
        && s.euler_characteristic() == -4
        && is_centrally_symmetric(&c, s.involution())
        && c.is_combinatorial_surface()
        && same;
    verdict(
        ok,
        format!(
            "{} vertices, {} triangles, χ = {}, genus {:?}, isomorphic to the reference map: {same}",
            s.n(),
            c.facets().len(),
            s.euler_characteristic(),
            s.genus()
        ),
    )
}

fn criterion_9() -> Verdict {
    let cube = construct::cube();
    let oct = construct::dual_map(&cube).unwrap();
    let oc = oct.to_complex();
    let is_oct = oc.as_ref().is_some_and(|c| {
        c.n() == 6
            && c.facets().len() == 8
            && iso_form(c) == iso_form(&from_orbits(6, "123, 124, 135, 145"))
    });
    let opts = CanonOptions::unbounded();
    let mut bad = Vec::new();
    for (name, s) in [
        ("cube", construct::cube()),
        ("subdivided cube", construct::subdivided_cube()),
        ("dodecahedron", construct::dodecahedron()),
        ("hexagonal torus", construct::hexagonal_torus()),
        ("12-vertex torus", construct::example_torus()),
    ] {
        let d = construct::dual_map(&s).unwrap();
        let dd = construct::dual_map(&d).unwrap();
        let cs = is_centrally_symmetric_map(d.map(), d.involution());
        let back = canon::map_canonical_form(s.map(), Some(s.involution()), &opts).unwrap()
            == canon::map_canonical_form(dd.map(), Some(dd.involution()), &opts).unwrap();
        if !cs || !back {
            bad.push(format!("{name}: dual CS {cs}, double dual returns {back}"));
        }
    }
    let ok = is_oct && is_centrally_symmetric_map(oct.map(), oct.involution()) && bad.is_empty();
    verdict(
        ok,
        format!(
            "cube dual is the octahedron: {is_oct}; {}",
            if bad.is_empty() {
                "5 seeds dualize and return".into()
            } else {
                bad.join("; ")
            }
        ),
    )
}

fn property_failures(r: &EnumerationResult) -> Vec<String> {
    let c = &r.complex;
    let d = c.dim();
    let mut bad = Vec::new();
    for k in 2..=d {
        let a = homology::boundary_matrix(c, k - 1).unwrap();
        let b = homology::boundary_matrix(c, k).unwrap();
        if !a.mul(&b).is_zero() {
            bad.push(format!("∂∘∂ ≠ 0 in degree {k}"));
        }
    }
    if r.homology.euler_characteristic() != c.euler_characteristic() {
        bad.push("Betti numbers do not sum to χ".into());
    }
    let assigned = c.orientation_assignment().unwrap().is_some();
    if assigned != (r.homology.ranks[d] == 1) {
        bad.push("orientation disagrees with top homology".into());
    }
    for v in 1..=c.n() as VertexLabel {
        let l = c.link(v).unwrap();
        let ok = if d == 2 {
            l.is_single_cycle()
        } else {
            l.is_two_sphere()
        };
        if !ok {
            bad.push(format!("link of {v}"));
        }
    }
    bad
}

fn criterion_10(outputs: &[&[EnumerationResult]]) -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for rs in outputs {
        for r in rs.iter() {
            checked += 1;
            for b in property_failures(r) {
                bad.push(format!("{}: {b}", reps_of(r)));
            }
        }
    }
    // Random relabelings of fixtures keep every canonical form.
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let t = construct::example_torus();
    let fixtures = [
        (
            from_orbits(6, "123, 124, 135, 145"),
            Involution::canonical(6).unwrap(),
        ),
        (
            from_orbits(10, "123, 124, 135, 149, 158, 189, 245, 258, 267, 268"),
            Involution::canonical(10).unwrap(),
        ),
        (t.to_complex().unwrap(), t.involution().clone()),
        (
            from_orbits(12, rows(MANIFOLDS3_12)[0].1),
            Involution::canonical(12).unwrap(),
        ),
    ];
    let opts = CanonOptions::unbounded();
    for (c, inv) in &fixtures {
        let base = canon::canonical_form_with(c, &opts).unwrap();
        let base_eq = canon::equivariant_canonical_form(c, inv, None, &opts).unwrap();
        for _ in 0..100 {
            let mut perm: Vec<VertexLabel> = (1..=c.n() as VertexLabel).collect();
            perm.shuffle(&mut rng);
            let d = c.relabel(&perm).unwrap();
            let pairs: Vec<(VertexLabel, VertexLabel)> = inv
                .pairs()
                .into_iter()
                .map(|(a, b)| (perm[a as usize - 1], perm[b as usize - 1]))
                .collect();
            let j = Involution::from_pairs(c.n(), &pairs).unwrap();
            if canon::canonical_form_with(&d, &opts).unwrap() != base
                || canon::equivariant_canonical_form(&d, &j, None, &opts).unwrap() != base_eq
            {
                bad.push(format!(
                    "canonical form moved under relabeling of a {}-vertex fixture",
                    c.n()
                ));
                break;
            }
        }
    }
    let detail = format!(
        "{checked} outputs and 400 relabelings checked, {} failures{}",
        bad.len(),
        bad.first()
            .map(|b| format!(" (first: {b})"))
            .unwrap_or_default()
    );
    verdict(bad.is_empty(), detail)
}

fn criterion_11(r3: &[EnumerationResult]) -> Verdict {
    let group = common::centralizer(6, true);
    let brute = common::brute_force(3, 2, &group);
    let ours: BTreeSet<Vec<common::Facet>> = r3
        .iter()
        .map(|r| {
            let f: Vec<common::Facet> = r
                .complex
                .facets()
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect();
            common::class_key(&f, &group)
        })
        .collect();
    verdict(
        ours == brute,
        format!(
            "search {} class(es), subset search {}",
            ours.len(),
            brute.len()
        ),
    )
}

fn main() {
    let (r3, t3) = run(3, 2);
    let (r4, t4) = run(4, 2);
    let (r5, t5) = run(5, 2);
    let (r6, t6) = run(6, 2);
    let (m4, _) = run(4, 3);
    let (m5, _) = run(5, 3);
    let (m6, tm6) = run(6, 3);

    let verdicts = vec![
        (1, criterion_1(&r3, t3)),
        (2, criterion_2(&r4, t4)),
        (3, criterion_3(&r5, t5)),
        (4, criterion_4(&[&r3, &r4, &r5, &r6], &r6, t6)),
        (5, criterion_5(&r6)),
        (6, criterion_6(&m6, tm6)),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10(&[&r3, &r4, &r5, &r6, &m4, &m5, &m6])),
        (11, criterion_11(&r3)),
    ];

    let mut unexpected = Vec::new();
    for (n, v) in &verdicts {
        let known = KNOWN_FAILURES.contains(n);
        let tag = match (v.ok, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (listed as a known failure)",
        };
        println!("{tag} criterion {n}: {}", v.detail);
        if v.ok == known {
            unexpected.push(*n);
        }
    }
    let passed = verdicts.iter().filter(|(_, v)| v.ok).count();
    println!("{passed}/{} criteria pass", verdicts.len());
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
