//! `hyperpoly`: verify side-pairings, count ends, check invariant
//! hypersurfaces and draw cross-sections from the command line.
//!
//! Exit status is 0 when every checked condition holds, 1 when a condition
//! fails and 2 on bad input.

mod section;

use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperpoly::dataset::{self, PairingKind};
use hyperpoly::document::{Compiled, SpecDocument};
use hyperpoly::invariance::{self, CaseFile, InvarianceReport};
use hyperpoly::pairing::{face_cycles, solid_angle, torsion_eligible};
use hyperpoly::report::ReportDocument;
use hyperpoly::topology::{invariants, ChainSpec};
use hyperpoly::{ExactField, QSqrt2};

#[derive(Parser)]
#[command(name = "hyperpoly", version, about = "Exact side-pairing checks for hyperbolic polyhedra")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Input {
    /// A spec document (JSON).
    file: Option<PathBuf>,
    /// A built-in name instead of a file; see `list`.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List built-in polyhedra and invariance cases.
    List,
    /// Check every hypothesis of the polyhedron theorem and report invariants.
    Verify(Input),
    /// Verify the stacked polyhedron of `n` blocks.
    Chain {
        #[arg(long)]
        blocks: usize,
        /// One digit per block, `1` or `2`, naming its pairing.
        #[arg(long, conflicts_with = "first")]
        pattern: Option<String>,
        /// Use `k` blocks of the first pairing followed by the second.
        #[arg(long)]
        first: Option<usize>,
    },
    /// Check that a hyperplane is precisely invariant under a subgroup.
    Invariance {
        /// A case file: `{"document": ..., "case": ...}`.
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        builtin: Option<String>,
        /// Pairing of the built-in polyhedron.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        pairing: u8,
        /// Run the built-in case conjugated into a block of this chain.
        #[arg(long, requires = "block", requires = "builtin")]
        chain: Option<String>,
        #[arg(long, requires = "chain")]
        block: Option<usize>,
    },
    /// Cross-section at fixed height `z` and hyperbolic height `t`.
    Section {
        #[command(flatten)]
        input: Input,
        /// Scalar literal `[a_num, a_den, b_num, b_den]`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Also draw the section as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Face counts, or the faces of one dimension.
    Faces {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Cycles of faces of one dimension under the pairing.
    Cycles {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dim: usize,
    },
    /// Print a built-in as a spec document or case file.
    Export {
        #[arg(long)]
        builtin: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        pairing: u8,
    },
}

/// Anything that makes the input unusable; exits with status 2.
#[derive(Debug)]
struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn input_error(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

struct Outcome {
    body: String,
    passed: bool,
}

impl Outcome {
    fn info(body: String) -> Self {
        Outcome { body, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    std::panic::set_hook(Box::new(|info| eprintln!("internal error: {info}")));
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&cli)));
    let outcome = match result {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(_) => return ExitCode::from(2),
    };
    if let Err(e) = emit(cli.out.as_deref(), &outcome.body) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}

fn emit(out: Option<&Path>, body: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, body),
        None => {
            let mut stdout = std::io::stdout().lock();
            let written = stdout.write_all(body.as_bytes()).and_then(|()| {
                if body.ends_with('\n') {
                    Ok(())
                } else {
                    stdout.write_all(b"\n")
                }
            });
            match written {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other,
            }
        }
    }
}

fn kind(digit: u8) -> PairingKind {
    if digit == 2 {
        PairingKind::Phi2
    } else {
        PairingKind::Phi1
    }
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    let f = cli.format;
    match &cli.command {
        Command::List => Ok(list(f)),
        Command::Verify(input) => {
            let (name, _, compiled) = load(input)?;
            verify(f, &name, &compiled, None)
        }
        Command::Chain {
            blocks,
            pattern,
            first,
        } => {
            let spec = match (pattern, first) {
                (Some(p), _) => ChainSpec::parse(*blocks, p).ok_or_else(|| {
                    input_error(format!("pattern must be {blocks} digits, each 1 or 2"))
                })?,
                (None, k) => {
                    let k = k.unwrap_or(*blocks);
                    if *blocks == 0 || k > *blocks {
                        return Err(input_error("need 1 ≤ blocks and first ≤ blocks"));
                    }
                    ChainSpec::representative(*blocks, k)
                }
            };
            let compiled = spec.document().compile()?;
            let expected = 4 + 4 * spec.n() - spec.k();
            verify(f, &spec.name(), &compiled, Some(expected))
        }
        Command::Invariance {
            file,
            builtin,
            pairing,
            chain,
            block,
        } => {
            let report = match (file, builtin, chain) {
                (Some(path), _, _) => {
                    let case: CaseFile = serde_json::from_str(&read(path)?)?;
                    let compiled = compile_or_diagnose(&case.document)?;
                    invariance::run_case(&compiled, &case.case)?
                }
                (None, Some(name), Some(chain)) => {
                    let spec = dataset::parse_chain_name(chain)?;
                    let case = invariance::builtin_case(name)
                        .ok_or_else(|| input_error(format!("unknown case {name}")))?
                        .conjugated(&spec, block.unwrap_or(0))?;
                    invariance::run_case(&spec.document().compile()?, &case)?
                }
                (None, Some(name), None) => invariance::run_builtin(name, kind(*pairing))?,
                (None, None, _) => return Err(input_error("give a case file or --builtin")),
            };
            Ok(invariance_outcome(f, &report))
        }
        Command::Section { input, z, t, svg } => {
            let (_, document, compiled) = load(input)?;
            let z: QSqrt2 = z.parse()?;
            let t: QSqrt2 = t.parse()?;
            if !t.gt_zero() {
                return Err(input_error("t must be positive"));
            }
            let s = section::Section::new(&document, &compiled, &z, &t)?;
            if let Some(path) = svg {
                std::fs::write(path, s.to_svg())?;
            }
            Ok(Outcome::info(match f {
                Format::Json => pretty(&s.to_json()),
                Format::Text => s.to_text(),
            }))
        }
        Command::Faces { input, dim } => {
            let (name, _, compiled) = load(input)?;
            faces(f, &name, &compiled, *dim)
        }
        Command::Cycles { input, dim } => {
            let (name, _, compiled) = load(input)?;
            cycles(f, &name, &compiled, *dim)
        }
        Command::Export { builtin, pairing } => {
            let body = match invariance::builtin_case_for(builtin, kind(*pairing)) {
                Some(case) => pretty(&serde_json::to_value(CaseFile {
                    document: dataset::p_document(case.pairing),
                    case,
                })?),
                None => dataset::load(builtin)?.document.to_json(),
            };
            Ok(Outcome::info(body))
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap_or_default()
}

/// Compiles a document; on failure, lists any unrecognized angles with the error.
fn compile_or_diagnose(document: &SpecDocument) -> Result<Compiled, InputError> {
    document.compile().map_err(|e| {
        let mut msg = e.to_string();
        for d in document.angle_diagnostics() {
            msg.push_str(&format!(
                "\n  {} and {} meet at an unrecognized angle (cos² = {}, about {})",
                d.first,
                d.second,
                d.gamma_sq,
                d.gamma_sq.to_decimal(12)
            ));
        }
        InputError(msg)
    })
}

fn load(input: &Input) -> Result<(String, SpecDocument, Compiled), InputError> {
    match (&input.file, &input.builtin) {
        (Some(path), _) => {
            let document = SpecDocument::from_json(&read(path)?)?;
            let compiled = compile_or_diagnose(&document)?;
            Ok((path.display().to_string(), document, compiled))
        }
        (None, Some(name)) => {
            let b = dataset::load(name)?;
            Ok((b.name, b.document, b.compiled))
        }
        (None, None) => Err(input_error("give a spec file or --builtin")),
    }
}

fn list(f: Format) -> Outcome {
    let cases = invariance::builtin_case_names();
    let polyhedra: Vec<String> = dataset::catalog()
        .into_iter()
        .filter(|p| !cases.contains(&p.as_str()))
        .collect();
    Outcome::info(match f {
        Format::Json => pretty(&json!({ "builtins": polyhedra, "cases": cases })),
        Format::Text => {
            let mut s = String::from("built-ins:\n");
            for p in &polyhedra {
                s.push_str(&format!("  {p}\n"));
            }
            s.push_str("invariance cases:\n");
            for c in cases {
                s.push_str(&format!("  {c}\n"));
            }
            s
        }
    })
}

fn verify(
    f: Format,
    name: &str,
    compiled: &Compiled,
    expected_ends: Option<usize>,
) -> Result<Outcome, InputError> {
    let phi = compiled
        .pairing
        .as_ref()
        .ok_or_else(|| input_error("document declares no pairings"))?;
    let start = Instant::now();
    let inv = invariants(&compiled.polyhedron, phi)?;
    let mut report = ReportDocument::new(name, &compiled.polyhedron, inv)?;
    if let Some(e) = expected_ends {
        report = report.expect_ends(e);
    }
    report.timing_ms = Some(start.elapsed().as_millis() as u64);
    Ok(Outcome {
        passed: report.passed,
        body: match f {
            Format::Json => report.to_json(),
            Format::Text => report.to_text(),
        },
    })
}

fn invariance_outcome(f: Format, report: &InvarianceReport) -> Outcome {
    Outcome {
        passed: report.passed,
        body: match f {
            Format::Json => report.to_json(),
            Format::Text => report.to_text(),
        },
    }
}

fn side_names(compiled: &Compiled, carriers: &[usize]) -> Vec<String> {
    let sides = compiled.polyhedron.sides();
    carriers.iter().map(|&i| sides[i].name.clone()).collect()
}

fn faces(f: Format, name: &str, compiled: &Compiled, dim: Option<usize>) -> Result<Outcome, InputError> {
    let lattice = compiled.polyhedron.face_lattice()?;
    let Some(d) = dim else {
        let counts = lattice.counts();
        return Ok(Outcome::info(match f {
            Format::Json => pretty(&json!({
                "name": name,
                "face_counts": counts,
                "finite_vertices": lattice.finite_vertex_count(),
                "ideal_vertices": lattice.ideal_vertex_count(),
            })),
            Format::Text => format!(
                "{name}: faces by dimension {counts:?} ({} finite, {} ideal vertices)\n",
                lattice.finite_vertex_count(),
                lattice.ideal_vertex_count()
            ),
        }));
    };
    if d > lattice.dim() {
        return Err(input_error(format!("dimension {d} exceeds {}", lattice.dim())));
    }
    let rows: Vec<Value> = lattice
        .faces(d)
        .iter()
        .enumerate()
        .map(|(id, face)| {
            let mut row = json!({
                "id": id,
                "sides": side_names(compiled, &face.carriers),
                "vertices": face.vertices,
            });
            if d == 0 {
                let v = &lattice.vertices[face.vertices[0]];
                row["kind"] = json!(if v.is_ideal() { "ideal" } else { "finite" });
                row["point"] = json!(v.point.x.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>());
            }
            row
        })
        .collect();
    Ok(Outcome::info(match f {
        Format::Json => pretty(&json!({ "name": name, "dim": d, "faces": rows })),
        Format::Text => {
            let mut s = format!("{name}: {} faces of dimension {d}\n", rows.len());
            for r in &rows {
                let sides: Vec<&str> = r["sides"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .filter_map(Value::as_str)
                    .collect();
                s.push_str(&format!("  {:>4}  {}", r["id"], sides.join(" ∩ ")));
                if let Some(k) = r.get("kind").and_then(Value::as_str) {
                    s.push_str(&format!("  ({k})"));
                }
                s.push('\n');
            }
            s
        }
    }))
}

fn cycles(f: Format, name: &str, compiled: &Compiled, dim: usize) -> Result<Outcome, InputError> {
    let p = &compiled.polyhedron;
    let phi = compiled
        .pairing
        .as_ref()
        .ok_or_else(|| input_error("document declares no pairings"))?;
    if dim > p.dim() {
        return Err(input_error(format!("dimension {dim} exceeds {}", p.dim())));
    }
    let lattice = p.face_lattice()?;
    let mut rows = Vec::new();
    for c in face_cycles(p, phi, dim)? {
        let first = lattice.face(dim, c.members[0]);
        let omegas = if dim + 3 <= p.dim() && torsion_eligible(lattice, first) {
            let w = c
                .members
                .iter()
                .map(|&m| solid_angle(p, lattice.face(dim, m), m).map(|r| r.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            Some(w)
        } else {
            None
        };
        let members: Vec<Vec<String>> = c
            .members
            .iter()
            .map(|&m| side_names(compiled, &lattice.face(dim, m).carriers))
            .collect();
        rows.push(json!({
            "size": c.members.len(),
            "ideal": c.ideal,
            "members": members,
            "omegas": omegas,
        }));
    }
    Ok(Outcome::info(match f {
        Format::Json => pretty(&json!({ "name": name, "dim": dim, "cycles": rows })),
        Format::Text => {
            let mut s = format!("{name}: {} cycles of {dim}-faces\n", rows.len());
            for (i, r) in rows.iter().enumerate() {
                s.push_str(&format!(
                    "  #{i}: {} members{}",
                    r["size"],
                    if r["ideal"] == json!(true) { ", ideal" } else { "" }
                ));
                if let Some(w) = r["omegas"].as_array() {
                    let w: Vec<&str> = w.iter().filter_map(Value::as_str).collect();
                    if w.windows(2).all(|p| p[0] == p[1]) {
                        s.push_str(&format!(", ω = {} × {}", w.len(), w[0]));
                    } else {
                        s.push_str(&format!(", ω = {}", w.join(" + ")));
                    }
                }
                s.push('\n');
            }
            s
        }
    }))
}
