//! `cstri`: enumerate, construct and inspect centrally symmetric
//! triangulations and maps.
//!
//! Exit codes: 0 success, 1 usage error, 2 a verification check failed,
//! 3 input/output error.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cstri_core::canon::{self, CanonOptions};
use cstri_core::construct::{self, CsMap, GluingSpec};
use cstri_core::enumerate::{self, EnumerationConfig, EnumerationResult, Equivalence};
use cstri_core::homology::{self, HomologyGroups};
use cstri_core::records::{self, Input, Object, ResultRecord};
use cstri_core::symmetry::{self, Involution};
use cstri_core::Complex;

#[derive(Parser)]
#[command(
    name = "cstri",
    version,
    about = "Centrally symmetric triangulated manifolds and maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate CS surfaces or 3-manifolds on 2m vertices.
    Enumerate(EnumerateArgs),
    /// Build a seed map, a genus family member, a dual or a connected sum.
    Construct(ConstructArgs),
    /// Classify one complex or map read from a file.
    Verify(VerifyArgs),
    /// Integral homology of a complex.
    Homology(FileArg),
    /// Canonical form of a complex or map.
    Canon(CanonArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    dim: u8,
    #[arg(long)]
    m: usize,
    /// Worker threads.
    #[arg(long, env = "CSTRI_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[arg(long, default_value = "rooted-equivariant")]
    equivalence: Equivalence,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, requires = "checkpoint")]
    resume: bool,
    /// Expanded search nodes between checkpoint writes.
    #[arg(long, default_value_t = 1_000_000)]
    checkpoint_every: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Records)]
    format: Format,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Quadrangulated surface of genus g on 18g + 26 vertices.
    Quad {
        #[arg(long)]
        genus: usize,
    },
    /// Pentagonal surface of genus g on 10g + 20 vertices.
    Pentagon {
        #[arg(long)]
        genus: usize,
    },
    /// Hexagonal surface of odd genus 2k - 1.
    Hexagon {
        #[arg(long, conflicts_with = "genus", required_unless_present = "genus")]
        k: Option<usize>,
        #[arg(long)]
        genus: Option<usize>,
    },
    /// One of the seed maps.
    Seed {
        #[arg(value_enum)]
        name: SeedName,
    },
    /// Dual of a CS map.
    Dual {
        #[arg(long)]
        input: PathBuf,
    },
    /// CS connected sum of two maps.
    ConnectedSum {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
        /// Glue faces, e.g. "[1,2,3] -> [1,2,3]". Defaults to the least
        /// admissible face on each side.
        #[arg(long)]
        glue: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedName {
    Cube,
    SubdividedCube,
    Dodecahedron,
    HexagonalTorus,
    ExampleTorus,
}

#[derive(Args)]
struct FileArg {
    input: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    /// Involution in cycle notation, overriding the file's.
    #[arg(long)]
    involution: Option<String>,
}

#[derive(Args)]
struct CanonArgs {
    input: PathBuf,
    /// Relabelings must commute with the involution.
    #[arg(long)]
    equivariant: bool,
    /// With --equivariant, also fix vertex 1.
    #[arg(long, requires = "equivariant")]
    rooted: bool,
}

enum Failure {
    Usage(String),
    Verification(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Io(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Homology(a) => cmd_homology(a),
        Command::Canon(a) => cmd_canon(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    records::parse_input(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn default_jobs() -> u64 {
    std::thread::available_parallelism()
        .map(|n| n.get() as u64)
        .unwrap_or(1)
}

/// Table order: decreasing Euler characteristic, orientable first.
fn histogram(results: &[EnumerationResult]) -> Vec<(String, usize)> {
    let mut counts: BTreeMap<(i64, bool, String), usize> = BTreeMap::new();
    for r in results {
        let key = (
            -r.homology.euler_characteristic(),
            !r.orientable,
            r.homology.compact_string(),
        );
        *counts.entry(key).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|((_, _, h), c)| (format!("({h})"), c))
        .collect()
}

fn result_line(r: &EnumerationResult) -> String {
    let reps: Vec<String> = r.orbit_reps.iter().map(|s| s.to_string()).collect();
    format!("{} {} {}", r.face_vector, r.homology, reps.join(", "))
}

fn cmd_enumerate(a: EnumerateArgs) -> Outcome {
    let jobs = a.jobs.unwrap_or_else(default_jobs) as usize;
    let mut cfg = EnumerationConfig::new(a.m, a.dim as usize)
        .equivalence(a.equivalence)
        .jobs(jobs);
    cfg.checkpoint = a.checkpoint.clone();
    cfg.resume = a.resume;
    cfg.checkpoint_every = a.checkpoint_every;

    let out = enumerate::enumerate(&cfg).map_err(|e| match e {
        enumerate::EnumerationError::Io(_) | enumerate::EnumerationError::Format(_) => {
            Failure::Io(e.to_string())
        }
        other => Failure::Usage(other.to_string()),
    })?;

    let mut body = String::new();
    let mut failures = Vec::new();
    for r in &out.results {
        let rec = ResultRecord::from_result(r, a.equivalence);
        match rec.rederive() {
            Ok(again) if again == rec => {}
            Ok(_) => failures.push(format!(
                "record does not re-derive: {}",
                rec.orbit_reps.join(", ")
            )),
            Err(e) => failures.push(e.to_string()),
        }
        if let Some(d) = r.complex.manifold_defect(r.complex.dim()) {
            failures.push(format!("{}: {d}", rec.orbit_reps.join(", ")));
        }
        match a.format {
            Format::Records => body.push_str(&rec.to_json_line()),
            Format::Text => body.push_str(&result_line(r)),
        }
        body.push('\n');
    }
    emit(a.output.as_deref(), &body)?;

    let mut summary = format!(
        "n = {}, dim = {}, {} classes ({})\n",
        2 * a.m,
        a.dim,
        out.results.len(),
        a.equivalence
    );
    for (h, c) in histogram(&out.results) {
        summary.push_str(&format!("{h}: {c}\n"));
    }
    let orientable = out.results.iter().filter(|r| r.orientable).count();
    summary.push_str(&format!(
        "orientable: {}, non-orientable: {}\n",
        orientable,
        out.results.len() - orientable
    ));
    let s = &out.stats;
    summary.push_str(&format!(
        "nodes: {}, solutions: {}, duplicates: {}\n",
        s.nodes, s.solutions, s.duplicates_rejected
    ));
    // The summary shares stdout only when the results went to a file.
    if a.output.is_some() {
        emit(None, &summary)?;
    } else {
        eprint!("{summary}");
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failures.join("\n")))
    }
}

fn map_text(m: &CsMap, format: Format) -> String {
    match format {
        Format::Text => records::format_input(&Input {
            object: Object::Map(m.map().clone()),
            involution: Some(m.involution().clone()),
        }),
        Format::Records => {
            let faces: Vec<Vec<u32>> = m.map().faces().iter().map(|f| f.cycle().to_vec()).collect();
            let j = serde_json::json!({
                "n": m.n(),
                "faces": faces,
                "involution": m.involution().to_string(),
            });
            format!("{j}\n")
        }
    }
}

/// Checks every constructed map gets; the bool is the verdict.
fn map_checks(m: &CsMap) -> Vec<(String, bool)> {
    let fv = m.map().face_vector();
    let mut checks = vec![
        (format!("n = {}", m.n()), true),
        (format!("f-vector = {fv}"), true),
        (format!("χ = {}", m.euler_characteristic()), true),
        (
            format!(
                "CS: {}",
                yes_no(symmetry::is_centrally_symmetric_map(
                    m.map(),
                    m.involution()
                ))
            ),
            symmetry::is_centrally_symmetric_map(m.map(), m.involution()),
        ),
        (
            format!("polyhedral: {}", yes_no(m.map().is_polyhedral_map())),
            m.map().is_polyhedral_map(),
        ),
    ];
    match m.genus() {
        Some(g) => checks.push((format!("orientable: yes, genus {g}"), true)),
        None => checks.push(("orientable: no".into(), true)),
    }
    if let Some(k) = m.map().uniform_face_size() {
        checks.push((format!("faces: all {k}-gons"), true));
    }
    checks
}

fn cmd_construct(a: ConstructArgs) -> Outcome {
    let usage = |e: construct::ConstructError| Failure::Usage(e.to_string());
    let (built, expect): (CsMap, Vec<(String, bool)>) = match &a.kind {
        ConstructKind::Quad { genus } => {
            let m = construct::quad_genus_surface(*genus).map_err(usage)?;
            let want = 18 * genus + 26;
            let ok = m.n() == want && m.genus() == Some(*genus as i64);
            (
                m,
                vec![(format!("expected {want} vertices, genus {genus}"), ok)],
            )
        }
        ConstructKind::Pentagon { genus } => {
            let m = construct::pentagon_genus_surface(*genus).map_err(usage)?;
            let want = 10 * genus + 20;
            let ok = m.n() == want && m.genus() == Some(*genus as i64);
            (
                m,
                vec![(format!("expected {want} vertices, genus {genus}"), ok)],
            )
        }
        ConstructKind::Hexagon { k, genus } => {
            let m = match (k, genus) {
                (Some(k), _) => construct::hexagon_genus_surface(*k),
                (None, Some(g)) => construct::hexagon_surface_of_genus(*g),
                (None, None) => unreachable!("clap requires one"),
            }
            .map_err(usage)?;
            let k = k.unwrap_or_else(|| genus.expect("set").div_ceil(2));
            let want = 24 + 12 * (k - 1);
            let ok = m.n() == want && m.genus() == Some(2 * k as i64 - 1);
            (
                m,
                vec![(format!("expected {want} vertices, genus {}", 2 * k - 1), ok)],
            )
        }
        ConstructKind::Seed { name } => {
            let m = match name {
                SeedName::Cube => construct::cube(),
                SeedName::SubdividedCube => construct::subdivided_cube(),
                SeedName::Dodecahedron => construct::dodecahedron(),
                SeedName::HexagonalTorus => construct::hexagonal_torus(),
                SeedName::ExampleTorus => construct::example_torus(),
            };
            (m, Vec::new())
        }
        ConstructKind::Dual { input } => {
            let m = cs_map_from(&read_input(input)?)?;
            let d = construct::dual_map(&m).map_err(usage)?;
            let ok = d.n() == m.map().faces().len() && d.map().faces().len() == m.n();
            (d, vec![("dual vertex and face counts swap".into(), ok)])
        }
        ConstructKind::ConnectedSum {
            first,
            second,
            glue,
        } => {
            let x = cs_map_from(&read_input(first)?)?;
            let y = cs_map_from(&read_input(second)?)?;
            let spec = match glue {
                Some(t) => t.parse::<GluingSpec>().map_err(usage)?,
                None => GluingSpec::default_for(&x, &y).map_err(usage)?,
            };
            let s = construct::cs_connected_sum(&x, &y, &spec).map_err(usage)?;
            let q = spec.a.len();
            let chi = x.euler_characteristic() + y.euler_characteristic() - 4;
            let ok = s.n() == x.n() + y.n() - 2 * q && s.euler_characteristic() == chi;
            (s, vec![(format!("glued {spec}; expected χ = {chi}"), ok)])
        }
    };

    let mut out = map_text(&built, a.format);
    let mut failed = Vec::new();
    let mut block = String::from("# verification\n");
    for (line, ok) in map_checks(&built).into_iter().chain(expect) {
        block.push_str(&format!("# {line}{}\n", if ok { "" } else { "  [FAILED]" }));
        if !ok {
            failed.push(line);
        }
    }
    if a.format == Format::Text {
        out.push_str(&block);
        emit(a.output.as_deref(), &out)?;
    } else {
        emit(a.output.as_deref(), &out)?;
        eprint!("{block}");
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "failed: {}",
            failed.join("; ")
        )))
    }
}

fn cs_map_from(input: &Input) -> Result<CsMap, Failure> {
    let inv = input
        .involution
        .clone()
        .ok_or_else(|| Failure::Usage("input has no involution".into()))?;
    let map = match &input.object {
        Object::Map(m) => m.clone(),
        Object::Complex(c) => {
            cstri_core::PolyhedralMap::from_complex(c).map_err(|e| Failure::Usage(e.to_string()))?
        }
    };
    CsMap::new(map, inv).map_err(|e| Failure::Verification(e.to_string()))
}

fn genus_phrase(chi: i64, orientable: bool) -> String {
    if orientable {
        format!("orientable genus {}", (2 - chi) / 2)
    } else {
        format!("non-orientable genus {}", 2 - chi)
    }
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let mut input = read_input(&a.input)?;
    if let Some(t) = &a.involution {
        input.involution =
            Some(Involution::parse(t, Some(input.n())).map_err(|e| Failure::Usage(e.to_string()))?);
    }
    let mut report = String::new();
    let mut failed = Vec::new();
    // A map of triangles is checked as the complex it spans.
    let as_complex = match &input.object {
        Object::Complex(c) => Some(c.clone()),
        Object::Map(m) => m.to_complex(),
    };
    match (&input.object, as_complex) {
        (_, Some(c)) => verify_complex(&c, input.involution.as_ref(), &mut report, &mut failed),
        (Object::Complex(_), None) => unreachable!("a complex is its own complex"),
        (Object::Map(m), None) => {
            let fv = m.face_vector();
            let surface = m.surface_defect();
            let polyhedral = m.polyhedral_defect();
            match &surface {
                None => report.push_str("surface: yes\n"),
                Some(d) => {
                    report.push_str(&format!("surface: no ({d})\n"));
                    failed.push("surface");
                }
            }
            match &polyhedral {
                None => report.push_str("polyhedral: yes\n"),
                Some(d) => report.push_str(&format!("polyhedral: no ({d})\n")),
            }
            report.push_str(&format!("f-vector: {fv}\n"));
            let chi = m.euler_characteristic();
            report.push_str(&format!("χ: {chi}\n"));
            if surface.is_none() {
                report.push_str(&format!("type: {}\n", genus_phrase(chi, m.is_orientable())));
            }
            if let Some(inv) = &input.involution {
                let cs = symmetry::is_centrally_symmetric_map(m, inv);
                report.push_str(&format!("CS: {}\n", yes_no(cs)));
                if !cs {
                    failed.push("CS");
                }
            }
        }
    }
    emit(None, &report)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "failed: {}",
            failed.join(", ")
        )))
    }
}

fn verify_complex(
    c: &Complex,
    inv: Option<&Involution>,
    report: &mut String,
    failed: &mut Vec<&str>,
) {
    let d = c.dim();
    let defect = if (2..=3).contains(&d) {
        c.manifold_defect(d)
    } else {
        Some(cstri_core::complex::ManifoldDefect::WrongDimension {
            expected: 2,
            found: d,
        })
    };
    match &defect {
        None => report.push_str("manifold: yes\n"),
        Some(x) => {
            report.push_str(&format!("manifold: no ({x})\n"));
            failed.push("manifold");
        }
    }
    report.push_str(&format!("connected: {}\n", yes_no(c.is_connected())));
    report.push_str(&format!("f-vector: {}\n", c.face_vector()));
    let chi = c.euler_characteristic();
    report.push_str(&format!("χ: {chi}\n"));
    let h = homology::homology(c);
    report.push_str(&format!("homology: {h}\n"));
    let orientable = homology::is_orientable(c).ok();
    match orientable {
        Some(o) => report.push_str(&format!("orientable: {}\n", yes_no(o))),
        None => report.push_str("orientable: undefined\n"),
    }
    let orientable = orientable.unwrap_or(false);
    if let Some(inv) = inv {
        let cs = symmetry::is_centrally_symmetric(c, inv);
        report.push_str(&format!("CS: {}\n", yes_no(cs)));
        if !cs {
            failed.push("CS");
        }
    }
    if defect.is_none() && d == 2 {
        report.push_str(&format!("type: {}\n", genus_phrase(chi, orientable)));
        let t = construct::tightness_check(c, inv);
        report.push_str(&format!("{t}\n"));
    }
}

fn cmd_homology(a: FileArg) -> Outcome {
    let input = read_input(&a.input)?;
    let c = input
        .complex()
        .ok_or_else(|| Failure::Usage("homology needs a simplicial complex".into()))?;
    let h: HomologyGroups = homology::homology(&c);
    let reduced: Vec<String> = h.reduced_ranks().iter().map(|r| r.to_string()).collect();
    let text = format!(
        "homology: {h}\nreduced ranks: ({})\nχ: {}\ntorsion-free: {}\n",
        reduced.join(", "),
        h.euler_characteristic(),
        yes_no(h.is_torsion_free())
    );
    emit(None, &text)
}

fn cmd_canon(a: CanonArgs) -> Outcome {
    let input = read_input(&a.input)?;
    let opts = CanonOptions::unbounded();
    let err = |e: canon::CanonError| Failure::Usage(e.to_string());
    let inv = if a.equivariant {
        Some(
            input
                .involution
                .clone()
                .ok_or_else(|| Failure::Usage("--equivariant needs an involution".into()))?,
        )
    } else {
        None
    };
    // Triangle maps get the same form as the complex they span.
    let form = match (&input.object, input.complex()) {
        (_, Some(c)) => match &inv {
            None => canon::canonical_form_with(&c, &opts).map_err(err)?,
            Some(i) => {
                let root = a.rooted.then_some(1);
                canon::equivariant_canonical_form(&c, i, root, &opts).map_err(err)?
            }
        },
        (Object::Complex(_), None) => unreachable!("a complex is its own complex"),
        (Object::Map(m), None) => canon::map_canonical_form(m, inv.as_ref(), &opts).map_err(err)?,
    };
    emit(
        None,
        &format!("hash: {}\nform: {}\n", form.hash_hex(), form.serial()),
    )
}
