use clap::{Args, Parser, Subcommand};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use trispline::basis::{BasisFamily, FamilyTag};
use trispline::error::ErrorClass;
use trispline::nielson::BlendKind;
use trispline::pipeline::{self, PipelineConfig};
use trispline::tables::verify_tables;
use trispline::{Error, Result};

#[derive(Parser)]
#[command(
    name = "trispline",
    version,
    about = "Optimal G1 triangular spline surfaces from triangle meshes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare closed-form energy tables with quadrature.
    VerifyTables(Opts),
    /// Vertex normals and edge tangents.
    Normals(Opts),
    /// The curve network as a polyline OBJ.
    Curves(Opts),
    /// The C0 patches as a triangulated OBJ.
    Patches(Opts),
    /// The G1 surface as a triangulated OBJ, with an optional report.
    Surface(Opts),
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    family: Option<FamilyTag>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    theta: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    epsilon: Option<Vec<f64>>,
    #[arg(long)]
    blend: Option<BlendKind>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    corner_eps: Option<f64>,
    #[arg(long)]
    report: Option<PathBuf>,
    /// JSON file with default settings; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Opts {
    fn config(&self) -> Result<PipelineConfig> {
        let mut c = match &self.config {
            Some(p) => PipelineConfig::from_file(p)?,
            None => PipelineConfig::default(),
        };
        macro_rules! set {
            ($($f:ident),*) => {$(
                if let Some(v) = &self.$f {
                    c.$f = v.clone().into();
                }
            )*};
        }
        set!(input, output, report, family, theta, epsilon, blend, samples, corner_eps);
        if self.beta.is_some() {
            c.beta = self.beta;
        }
        c.validate()?;
        Ok(c)
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Write to the configured output file or to stdout.
fn emit(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_err(p))?);
            f(&mut w).and_then(|_| w.flush()).map_err(io_err(p))
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w)
                .and_then(|_| w.flush())
                .map_err(io_err(Path::new("<stdout>")))
        }
    }
}

const VERIFY_TOL: f64 = 1e-9;

fn verify(opts: &Opts) -> Result<()> {
    let config = opts.config()?;
    let families = match opts.beta {
        Some(_) => vec![config.basis_family()?],
        None if opts.family.is_some() || opts.config.is_some() => {
            BasisFamily::sample_set(config.family)
        }
        None => FamilyTag::ALL
            .iter()
            .flat_map(|&t| BasisFamily::sample_set(t))
            .collect(),
    };
    let mut lines = Vec::new();
    for fam in families {
        lines.extend(verify_tables(fam, 1e-12)?);
    }
    let worst = lines.iter().map(|l| l.diff).fold(0.0, f64::max);
    emit(config.output.as_deref(), |w| {
        for l in &lines {
            writeln!(w, "{l}")?;
        }
        writeln!(w, "max_diff {worst:.3e} entries {}", lines.len())
    })?;
    if worst > VERIFY_TOL {
        return Err(Error::Config(format!(
            "closed tables differ from quadrature by {worst:e}"
        )));
    }
    Ok(())
}

fn normals(opts: &Opts) -> Result<()> {
    let config = opts.config()?;
    let mesh = pipeline::load_input(&config)?;
    let frames = pipeline::stage_normals(&mesh)?;
    emit(config.output.as_deref(), |w| {
        writeln!(
            w,
            "vertices {} faces {} edges {} boundary_edges {}",
            mesh.n_vertices(),
            mesh.n_faces(),
            mesh.n_edges(),
            mesh.n_boundary_edges()
        )?;
        for (v, n) in frames.normals.iter().enumerate() {
            writeln!(w, "normal {v} {:.16e} {:.16e} {:.16e}", n.x, n.y, n.z)?;
        }
        for &(a, b) in mesh.edges() {
            let (t, s) = (frames.tangent(a, b).unwrap(), frames.tangent(b, a).unwrap());
            writeln!(
                w,
                "tangents {a} {b} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e}",
                t.x, t.y, t.z, s.x, s.y, s.z
            )?;
        }
        Ok(())
    })
}

fn curves(opts: &Opts) -> Result<()> {
    let config = opts.config()?;
    let mesh = pipeline::load_input(&config)?;
    let tables = pipeline::stage_tables(&config)?;
    let frames = pipeline::stage_normals(&mesh)?;
    let network = pipeline::stage_curves(&mesh, &frames, &tables)?;
    let lines = network.polylines(config.samples);
    emit(config.output.as_deref(), |w| {
        pipeline::write_polylines(w, &lines)
    })
}

fn patches(opts: &Opts) -> Result<()> {
    let config = opts.config()?;
    let out = pipeline::run_pipeline(&config, pipeline::load_input(&config)?)?;
    let t = pipeline::tessellate_c0(&out.surface, config.samples)
        .map_err(|e| e.at_stage("tessellation"))?;
    emit(config.output.as_deref(), |w| t.write_obj(w))
}

fn surface(opts: &Opts) -> Result<()> {
    let config = opts.config()?;
    let out = pipeline::run_pipeline(&config, pipeline::load_input(&config)?)?;
    let t = pipeline::tessellate_surface(&out.surface, config.samples)
        .map_err(|e| e.at_stage("tessellation"))?;
    emit(config.output.as_deref(), |w| t.write_obj(w))?;
    if let Some(path) = &config.report {
        let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
        let r = pipeline::write_report(&mut w, &config, &out).map_err(|e| e.at_stage("report"))?;
        w.flush().map_err(io_err(path))?;
        log::info!("G1 max angle between sides {:e}", r.g1.between_sides);
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::VerifyTables(o) => verify(o),
        Command::Normals(o) => normals(o),
        Command::Curves(o) => curves(o),
        Command::Patches(o) => patches(o),
        Command::Surface(o) => surface(o),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Config => 2,
                ErrorClass::Mesh => 3,
                ErrorClass::Numeric => 4,
            })
        }
    }
}
