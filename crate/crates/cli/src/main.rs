mod error;
mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use twoconvex_core::convexity::{
    certify_point, sample_exterior_points, verify_certificate, AvoidanceCertificate, CertifyReport, CertifyResult, ConvexityError, SearchBudget,
};
use twoconvex_core::link::{is_commutator_class, search_theorem1_configuration, word_of_curve, WordReport, LinkBudget, LinkConfig, LinkOutcome, SearchError};
use twoconvex_core::mesh::builtin::generate_builtin;
use twoconvex_core::mesh::embedding::check_embedding;
use twoconvex_core::mesh::off4::write_off4;
use twoconvex_core::mesh::ops::random_remesh;
use twoconvex_core::mesh::{validate, MeshReport};
use twoconvex_core::slicing::{plot_data, slice_at_support, SliceError};
use twoconvex_core::topology::{
    abstract_surface_ring, cohomology_ring, degree_one_obstruction, DegreeError, SimplicialMapZ2, SurfaceDescriptor,
};

use error::{CliError, CliResult, Kind};
use report::{emit, render, write_atomic, Budgets, RunConfig};

#[derive(Parser)]
#[command(name = "two-convex-lab", version, about = "Exact experiments with triangulated surfaces in four-space")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "TWO_CONVEX_LAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Grid samples per certification search.
    #[arg(long, global = true, default_value_t = SearchBudget::default().grid_samples)]
    budget_grid: usize,
    /// Refinement rounds per certification search.
    #[arg(long, global = true, default_value_t = SearchBudget::default().refine_rounds)]
    budget_refine: usize,
    /// Candidate (point, plane) pairs in the link search.
    #[arg(long, global = true, default_value_t = LinkBudget::default().max_candidates)]
    budget_link: usize,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
}

/// Meshes are OFF4 files or `builtin:NAME[:RESOLUTION]`.
#[derive(Subcommand)]
enum Command {
    /// Check that a mesh is a closed triangulated surface.
    Validate {
        mesh: String,
        /// Also check exactly that no two triangles cross.
        #[arg(long)]
        embedding: bool,
    },
    /// Mod 2 cohomology ring with its cup product table.
    Homology { mesh: String },
    /// Mod 2 degree of a simplicial map given by vertex images.
    Degree2 {
        domain: String,
        codomain: String,
        /// File of vertex images in domain order; the identity if omitted.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Whether the cohomology ring admits a degree-one map onto the torus.
    Obstruction {
        #[arg(required_unless_present_any = ["orientable", "nonorientable"])]
        mesh: Option<String>,
        /// Closed orientable surface of this genus.
        #[arg(long, conflicts_with_all = ["mesh", "nonorientable"])]
        orientable: Option<usize>,
        /// Connected sum of this many projective planes.
        #[arg(long, conflicts_with = "mesh")]
        nonorientable: Option<usize>,
    },
    /// Search for 2-planes through points that miss the surface.
    Certify {
        mesh: String,
        /// Query point, four rationals.
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        point: Option<String>,
        /// Number of seeded points around the surface.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Re-check certificates from a certify report or a certificate file.
    VerifyCert { mesh: String, certificates: PathBuf },
    /// Slice near the vertex maximizing a direction.
    Slice {
        mesh: String,
        /// Height direction, four rationals.
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        /// Write the slice curve as `x y` rows for plotting.
        #[arg(long)]
        plot_out: Option<PathBuf>,
    },
    /// Word of a curve around two lines, or a linking search on a slice.
    Linkword {
        /// LinkConfig JSON file.
        #[arg(long, conflicts_with_all = ["mesh", "direction"], required_unless_present = "mesh")]
        fixture: Option<PathBuf>,
        mesh: Option<String>,
        /// Height direction for the slice, four rationals.
        #[arg(long, allow_hyphen_values = true, requires = "mesh")]
        direction: Option<String>,
    },
    /// Write a builtin mesh as OFF4.
    Generate {
        /// One of the builtin mesh names.
        name: String,
        #[arg(long, default_value_t = 8)]
        resolution: usize,
        /// Seeded subdivisions and flips applied afterwards.
        #[arg(long, default_value_t = 0)]
        remesh: usize,
        /// Write the OFF4 text here instead of standard output.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

impl Global {
    fn run_config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            budgets: Budgets { grid_samples: self.budget_grid, refine_rounds: self.budget_refine, link_candidates: self.budget_link },
            exact: true,
        }
    }

    fn search_budget(&self) -> SearchBudget {
        SearchBudget { grid_samples: self.budget_grid, refine_rounds: self.budget_refine }
    }

    fn link_budget(&self) -> LinkBudget {
        LinkBudget { max_candidates: self.budget_link, seed: self.seed, ..LinkBudget::default() }
    }
}

fn convexity_error(e: ConvexityError) -> CliError {
    match e {
        ConvexityError::DegeneratePlane => CliError::validation(e),
        _ => CliError::precondition(e),
    }
}

fn slice_error(e: SliceError) -> CliError {
    match e {
        SliceError::ZeroDirection => CliError::parse(e),
        _ => CliError::precondition(e),
    }
}

#[derive(Serialize)]
struct ValidateResult {
    #[serde(flatten)]
    report: MeshReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    embedded: Option<bool>,
}

#[derive(Serialize)]
struct DegreeResult {
    degree_mod2: u8,
    /// Codomain triangles whose preimage parity was compared.
    triangles_checked: usize,
}

#[derive(Serialize, Deserialize)]
struct CertifyBatch {
    requested: usize,
    certified: usize,
    conclusive_negative: usize,
    inconclusive: usize,
    reports: Vec<CertifyReport>,
}

#[derive(Serialize)]
struct WordResult {
    #[serde(flatten)]
    word: WordReport,
    commutator: bool,
}

#[derive(Serialize)]
struct VerifyResult {
    checked: usize,
    passed: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct SliceResultOut<'a> {
    #[serde(flatten)]
    slice: &'a twoconvex_core::slicing::SlicingResult,
    cone_holds: Option<bool>,
}

/// Reports carry the command result plus an exit status.
struct Outcome {
    text: String,
    status: Option<Kind>,
}

fn certify_batch(reports: Vec<CertifyReport>, requested: usize) -> CertifyBatch {
    let certified = reports.iter().filter(|r| r.certificate().is_some()).count();
    let conclusive_negative = reports.iter().filter(|r| matches!(&r.result, CertifyResult::Negative { evidence } if evidence.is_conclusive())).count();
    CertifyBatch { requested, certified, conclusive_negative, inconclusive: reports.len() - certified - conclusive_negative, reports }
}

/// Certificates from any file `certify` or `verify-cert` understands.
fn load_certificates(path: &Path) -> CliResult<Vec<AvoidanceCertificate>> {
    let value: serde_json::Value = input::read_json(path)?;
    let body = value.get("result").cloned().unwrap_or(value);
    let bad = |e: serde_json::Error| CliError::parse(format!("{}: {e}", path.display()));
    if body.get("witnesses").is_some() {
        return Ok(vec![serde_json::from_value(body).map_err(bad)?]);
    }
    let batch: CertifyBatch = serde_json::from_value(body).map_err(bad)?;
    Ok(batch.reports.into_iter().filter_map(|r| r.certificate().cloned()).collect())
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let g = &cli.global;
    let rc = g.run_config();
    let done = |name: &str, value: &dyn erased::Report| -> CliResult<Outcome> { Ok(Outcome { text: value.render(name, &rc)?, status: None }) };
    match &cli.command {
        Command::Validate { mesh, embedding } => {
            let soup = input::load_soup(mesh)?;
            let report = validate(&soup).map_err(CliError::validation)?;
            let embedded = if *embedding {
                let surface = twoconvex_core::SimplicialSurface::new(soup).map_err(CliError::validation)?;
                Some(check_embedding(&surface).is_ok())
            } else {
                None
            };
            let text = render("validate", &rc, &ValidateResult { report, embedded })?;
            Ok(Outcome { text, status: (embedded == Some(false)).then_some(Kind::Validation) })
        }
        Command::Homology { mesh } => {
            let surface = input::load_surface(mesh)?;
            done("homology", &cohomology_ring(&surface))
        }
        Command::Degree2 { domain, codomain, map } => {
            let a = input::load_surface(domain)?;
            let b = input::load_surface(codomain)?;
            let images = match map {
                Some(p) => input::read_vertex_map(p)?,
                None => (0..a.vertices().len()).collect(),
            };
            let f = SimplicialMapZ2::new(&a, &b, images).map_err(|e| match e {
                DegreeError::WrongLength { .. } | DegreeError::ImageOutOfRange { .. } => CliError::validation(e),
                _ => CliError::precondition(e),
            })?;
            let degree = f.degree_mod2().map_err(CliError::precondition)?;
            done("degree2", &DegreeResult { degree_mod2: degree, triangles_checked: b.triangles().len() })
        }
        Command::Obstruction { mesh, orientable, nonorientable } => {
            let ring = match (mesh, orientable, nonorientable) {
                (Some(m), _, _) => cohomology_ring(&input::load_surface(m)?),
                (None, Some(g), _) => abstract_surface_ring(SurfaceDescriptor::Orientable(*g)).map_err(CliError::precondition)?,
                (None, None, Some(mu)) => abstract_surface_ring(SurfaceDescriptor::NonOrientable(*mu)).map_err(CliError::precondition)?,
                (None, None, None) => return Err(CliError::parse("give a mesh, --orientable or --nonorientable")),
            };
            done("obstruction", &degree_one_obstruction(&ring))
        }
        Command::Certify { mesh, point, samples } => {
            let surface = input::load_surface(mesh)?;
            let budget = g.search_budget();
            if let Some(p) = point {
                let x = input::parse_point(p)?;
                let report = certify_point(&surface, &x, &budget).map_err(convexity_error)?;
                let inconclusive = matches!(&report.result, CertifyResult::Negative { evidence } if !evidence.is_conclusive());
                let text = render("certify", &rc, &certify_batch(vec![report], 1))?;
                return Ok(Outcome { text, status: inconclusive.then_some(Kind::Exhausted) });
            }
            let n = samples.unwrap_or(0);
            let points = sample_exterior_points(&surface, n, g.seed).map_err(convexity_error)?;
            let reports = points.iter().map(|x| certify_point(&surface, x, &budget)).collect::<Result<Vec<_>, _>>().map_err(convexity_error)?;
            done("certify", &certify_batch(reports, n))
        }
        Command::VerifyCert { mesh, certificates } => {
            let surface = input::load_surface(mesh)?;
            let certs = load_certificates(certificates)?;
            let failures: Vec<String> =
                certs.iter().enumerate().filter_map(|(i, c)| verify_certificate(c, &surface).err().map(|e| format!("certificate {i}: {e}"))).collect();
            let result = VerifyResult { checked: certs.len(), passed: certs.len() - failures.len(), failures };
            let failed = !result.failures.is_empty();
            let text = render("verify-cert", &rc, &result)?;
            Ok(Outcome { text, status: failed.then_some(Kind::Validation) })
        }
        Command::Slice { mesh, direction, plot_out } => {
            let surface = input::load_surface(mesh)?;
            let d = input::parse_vec4(direction)?;
            let result = slice_at_support(&surface, &d).map_err(slice_error)?;
            if let Some(p) = plot_out {
                write_atomic(p, &plot_data(&result))?;
            }
            let cone_holds = result.cone.as_ref().map(|c| c.holds());
            done("slice", &SliceResultOut { slice: &result, cone_holds })
        }
        Command::Linkword { fixture, mesh, direction } => {
            if let Some(path) = fixture {
                let config: LinkConfig = input::read_json(path)?;
                let word = word_of_curve(&config).map_err(CliError::precondition)?;
                let commutator = is_commutator_class(&word.cyclic);
                return done("linkword", &WordResult { word, commutator });
            }
            let surface = input::load_surface(mesh.as_deref().unwrap_or_default())?;
            let d = input::parse_vec4(direction.as_deref().ok_or_else(|| CliError::parse("--direction is required with a mesh"))?)?;
            let slice = slice_at_support(&surface, &d).map_err(slice_error)?;
            let outcome = search_theorem1_configuration(&slice, &surface, &g.link_budget(), &[]).map_err(|e| match e {
                SearchError::Convexity(c) => convexity_error(c),
                other => CliError::precondition(other),
            })?;
            let exhausted = matches!(outcome, LinkOutcome::Exhausted { .. });
            let text = render("linkword", &rc, &outcome)?;
            Ok(Outcome { text, status: exhausted.then_some(Kind::Exhausted) })
        }
        Command::Generate { name, resolution, remesh, output } => {
            let base = generate_builtin(name, *resolution).map_err(CliError::parse)?;
            let surface = random_remesh(&base, *remesh, g.seed).map_err(CliError::validation)?;
            let off = write_off4(&surface);
            match output {
                Some(p) => write_atomic(p, &off)?,
                None if g.json_out.is_none() => print!("{off}"),
                None => {}
            }
            let text = render("generate", &rc, surface.report())?;
            // the mesh itself goes to stdout unless a file was named
            Ok(Outcome { text: if output.is_some() || g.json_out.is_some() { text } else { String::new() }, status: None })
        }
    }
}

mod erased {
    use super::*;

    pub trait Report {
        fn render(&self, command: &str, run: &RunConfig) -> CliResult<String>;
    }

    impl<T: Serialize> Report for T {
        fn render(&self, command: &str, run: &RunConfig) -> CliResult<String> {
            super::render(command, run, self)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if !outcome.text.is_empty() {
                if let Err(e) = emit(&outcome.text, cli.global.json_out.as_deref()) {
                    eprintln!("error: {e}");
                    return e.exit_code();
                }
            }
            match outcome.status {
                Some(kind) => ExitCode::from(kind.code()),
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
