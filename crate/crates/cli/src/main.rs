mod output;
mod source;
mod verify;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use revolve_core::catalog;
use revolve_core::curvature::{classify_mean_inverse, curvature_sample};
use revolve_core::expr::{parse_params, Expr};
use revolve_core::mesh::{revolve, write_obj, write_stl};
use revolve_core::momentum::{Anchor, PrescriptionKind, Sign, DEFAULT_QUAD_TOL};
use revolve_core::reconstruct::Profile;

use output::{invalid, read_file, Artifacts, CliError, CliResult};
use source::{resolve, Model, PrescriptionSpec, Source, Tracing, SOURCE_FILE};

const PROFILE_FILE: &str = "profile.csv";

/// Surfaces of revolution from prescribed curvature.
#[derive(Parser)]
#[command(name = "revolve", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a momentum from a curvature expression.
    Prescribe(PrescribeArgs),
    /// Trace the profile curve of a source.
    Profile(ProfileArgs),
    /// Revolve a profile into a triangle mesh.
    Mesh(MeshArgs),
    /// Check a source and its profile and write a JSON report.
    Verify(VerifyArgs),
    /// Closed-form surfaces.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Which family the surfaces with H = mu/x belong to.
    ClassifyMeanInverse {
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        /// Print the branch with its angle as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Every family with its default parameters, as JSON.
    List {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the source, description and sampled profile of one family.
    Build {
        name: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ParamArgs {
    /// Named constant, `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE", allow_hyphen_values = true)]
    params: Vec<String>,
}

impl ParamArgs {
    fn table(&self) -> CliResult<BTreeMap<String, f64>> {
        Ok(parse_params(self.params.iter().map(String::as_str))?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Kp,
    Km,
    Mean,
    Gauss,
}

#[derive(Args)]
struct PrescribeArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Curvature as a function of `x`.
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    /// Integration constant.
    #[arg(long = "const", default_value_t = 0.0, allow_hyphen_values = true)]
    constant: f64,
    /// Branch of the square root for `gauss`: + or -.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    sign: String,
    /// `lo:hi`.
    #[arg(long, allow_hyphen_values = true)]
    domain: String,
    /// Where antiderivatives vanish: `left`, `origin` or a number.
    #[arg(long, default_value = "left", allow_hyphen_values = true)]
    anchor: String,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = DEFAULT_QUAD_TOL)]
    tol_quad: f64,
    /// Grid points in momentum.csv.
    #[arg(long, default_value_t = 201)]
    samples: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Clone)]
struct TraceArgs {
    /// Starting abscissa; catalog entries use their explicit curve without
    /// one.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<f64>,
    /// Initial direction in `x`: + or -.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    direction: String,
    /// Maximal arc length.
    #[arg(long, default_value_t = 10.0)]
    length: f64,
    /// Samples per monotone branch.
    #[arg(long, default_value_t = 512)]
    samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol_ode: f64,
}

impl TraceArgs {
    fn tracing(&self) -> CliResult<Tracing> {
        if !(self.tol_ode > 0.0) {
            return Err(invalid("--tol-ode must be positive"));
        }
        Ok(Tracing {
            start: self.start,
            direction: parse_sign(&self.direction)?,
            length: self.length,
            samples: self.samples,
            rtol: self.tol_ode,
        })
    }
}

#[derive(Args)]
struct ProfileArgs {
    /// source.json or the directory holding it.
    #[arg(long)]
    source: PathBuf,
    #[command(flatten)]
    trace: TraceArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshFormat {
    Obj,
    Stl,
}

#[derive(Args)]
struct MeshArgs {
    /// profile.csv or the directory holding it.
    #[arg(long, required_unless_present = "source")]
    profile: Option<PathBuf>,
    /// Trace the default profile of this source instead.
    #[arg(long, conflicts_with = "profile")]
    source: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    ntheta: usize,
    #[arg(long, value_enum, default_value = "obj")]
    format: MeshFormat,
    #[command(flatten)]
    trace: TraceArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// source.json or the directory holding it.
    #[arg(long)]
    source: PathBuf,
    /// Profile to check; traced from the source when absent.
    #[arg(long)]
    profile: Option<PathBuf>,
    #[command(flatten)]
    trace: TraceArgs,
    #[arg(long, value_enum, default_value = "json")]
    report: ReportFormat,
    /// Weingarten index for the check `k_m = q k_p`.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    /// Mean curvature for the constraint check.
    #[arg(long, allow_hyphen_values = true, requires = "expr_kg")]
    expr_h: Option<String>,
    /// Gaussian curvature for the constraint check.
    #[arg(long, allow_hyphen_values = true, requires = "expr_h")]
    expr_kg: Option<String>,
    /// Constraint constants; taken from the source momentum when absent.
    #[arg(long, allow_hyphen_values = true)]
    gamma_h: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c_g: Option<f64>,
    /// Expected mean curvature as a function of `x`.
    #[arg(long, allow_hyphen_values = true)]
    expect_h: Option<String>,
    /// Expected Gaussian curvature as a function of `x`.
    #[arg(long, allow_hyphen_values = true)]
    expect_kg: Option<String>,
    #[command(flatten)]
    params: ParamArgs,
    /// Grid points over the domain for analytic checks.
    #[arg(long, default_value_t = 1001)]
    grid: usize,
    /// Discrete checks skip samples closer to the axis than this fraction
    /// of the largest |x|.
    #[arg(long, default_value_t = 0.01)]
    axis_margin: f64,
    /// Tolerance for analytic checks.
    #[arg(long, default_value_t = 1e-6)]
    tol_verify: f64,
    /// Tolerance for checks made with finite differences on the profile.
    #[arg(long, default_value_t = 1e-3)]
    tol_discrete: f64,
    #[arg(long, default_value_t = DEFAULT_QUAD_TOL)]
    tol_quad: f64,
    /// Directory for report.json; the report always goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_sign(s: &str) -> CliResult<Sign> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
        "-" | "-1" | "minus" => Ok(Sign::Minus),
        _ => Err(invalid(format!("sign must be + or -, got `{s}`"))),
    }
}

fn parse_domain(s: &str) -> CliResult<[f64; 2]> {
    let (a, b) = s.split_once(':').ok_or_else(|| invalid(format!("domain must be lo:hi, got `{s}`")))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| invalid(format!("bad number `{t}` in domain")));
    Ok([num(a)?, num(b)?])
}

fn parse_anchor(s: &str) -> CliResult<Anchor> {
    match s {
        "left" => Ok(Anchor::LeftEndpoint),
        "origin" => Ok(Anchor::Origin),
        _ => s.parse().map(Anchor::At).map_err(|_| invalid(format!("anchor must be left, origin or a number, got `{s}`"))),
    }
}

fn parse_expr(s: &str, params: &BTreeMap<String, f64>) -> CliResult<Expr> {
    let e = Expr::parse(s)?;
    e.check(params)?;
    Ok(e)
}

fn report_paths(paths: &[PathBuf]) {
    for p in paths {
        println!("{}", p.display());
    }
}

fn momentum_table(model: &Model, n: usize) -> CliResult<String> {
    let m = model.momentum()?;
    let mut out = String::from("x,K,dK,H,K_G\n");
    for x in m.domain().grid(n) {
        let (k, dk) = (m.eval(x), m.deriv(x));
        let (h, kg) = match curvature_sample(m, x) {
            Ok(s) => (s.h, s.k_g),
            Err(_) => (f64::NAN, f64::NAN),
        };
        writeln!(out, "{x},{k},{dk},{h},{kg}").expect("writing to a string");
    }
    Ok(out)
}

fn profile_csv(p: &Profile) -> String {
    p.to_csv_string()
}

fn prescribe(a: PrescribeArgs) -> CliResult<()> {
    let params = a.params.table()?;
    parse_expr(&a.expr, &params)?;
    if !(a.tol_quad > 0.0) {
        return Err(invalid("--tol-quad must be positive"));
    }
    let kind = match a.kind {
        KindArg::Kp => PrescriptionKind::OnParallels,
        KindArg::Km => PrescriptionKind::OnMeridians,
        KindArg::Mean => PrescriptionKind::Mean,
        KindArg::Gauss => PrescriptionKind::Gauss,
    };
    let source = Source::Prescription(PrescriptionSpec {
        kind,
        expr: a.expr,
        params,
        constant: a.constant,
        sign: parse_sign(&a.sign)?,
        domain: parse_domain(&a.domain)?,
        anchor: parse_anchor(&a.anchor)?,
        tol_quad: a.tol_quad,
    });
    let json = source.to_json();
    let model = source.build()?;
    let mut files = Artifacts::default();
    files.add(SOURCE_FILE, json);
    files.add("momentum.csv", momentum_table(&model, a.samples.max(2))?);
    report_paths(&files.commit(&a.out)?);
    Ok(())
}

fn profile(a: ProfileArgs) -> CliResult<()> {
    let model = Source::load(&a.source)?.build()?;
    let p = model.profile(&a.trace.tracing()?)?;
    let mut files = Artifacts::default();
    files.add(PROFILE_FILE, profile_csv(&p));
    report_paths(&files.commit(&a.out)?);
    Ok(())
}

fn load_profile(path: &Path) -> CliResult<Profile> {
    let file = resolve(path, PROFILE_FILE);
    let bytes = read_file(&file)?;
    Profile::read_csv(bytes.as_slice()).map_err(|e| invalid(format!("{}: {e}", file.display())))
}

fn mesh(a: MeshArgs) -> CliResult<()> {
    let p = match (&a.profile, &a.source) {
        (Some(path), _) => load_profile(path)?,
        (None, Some(src)) => Source::load(src)?.build()?.profile(&a.trace.tracing()?)?,
        (None, None) => return Err(invalid("give --profile or --source")),
    };
    let mesh = revolve(&p, a.ntheta)?;
    let mut bytes = Vec::new();
    let name = match a.format {
        MeshFormat::Obj => {
            write_obj(&mesh, &mut bytes)?;
            "mesh.obj"
        }
        MeshFormat::Stl => {
            write_stl(&mesh, &mut bytes)?;
            "mesh.stl"
        }
    };
    let mut files = Artifacts::default();
    files.add(name, bytes);
    report_paths(&files.commit(&a.out)?);
    Ok(())
}

fn verify(a: VerifyArgs) -> CliResult<()> {
    let ReportFormat::Json = a.report;
    let params = a.params.table()?;
    let model = Source::load(&a.source)?.build()?;
    let expr = |s: &Option<String>| s.as_deref().map(|s| parse_expr(s, &params)).transpose();
    let opts = verify::Options {
        grid: a.grid.max(2),
        axis_margin: a.axis_margin,
        tol: a.tol_verify,
        tol_discrete: a.tol_discrete,
        tol_quad: a.tol_quad,
        q: a.q,
        expr_h: expr(&a.expr_h)?,
        expr_kg: expr(&a.expr_kg)?,
        gamma_h: a.gamma_h,
        c_g: a.c_g,
        expect_h: expr(&a.expect_h)?,
        expect_kg: expr(&a.expect_kg)?,
        params: params.clone(),
    };
    let p = match &a.profile {
        Some(path) => load_profile(path)?,
        None => model.profile(&a.trace.tracing()?)?,
    };
    let report = verify::verify(&model, &p, &opts)?;
    let mut json = serde_json::to_string_pretty(&report).map_err(|e| invalid(e.to_string()))?;
    json.push('\n');
    if let Some(dir) = &a.out {
        let mut files = Artifacts::default();
        files.add("report.json", json.clone());
        files.commit(dir)?;
    }
    print!("{json}");
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn catalog_cmd(c: CatalogCommand) -> CliResult<()> {
    match c {
        CatalogCommand::List { out } => {
            let infos: Vec<_> = catalog::list().iter().map(|e| e.info()).collect();
            let mut json = serde_json::to_string_pretty(&infos).map_err(|e| invalid(e.to_string()))?;
            json.push('\n');
            if let Some(dir) = out {
                let mut files = Artifacts::default();
                files.add("catalog.json", json.clone());
                files.commit(&dir)?;
            }
            print!("{json}");
            Ok(())
        }
        CatalogCommand::Build { name, params, samples, out } => {
            let params = params.table()?;
            let source = Source::Catalog { name, params };
            let json = source.to_json();
            let model = source.build()?;
            let entry = model.entry.as_ref().expect("catalog sources carry their entry");
            let mut info = serde_json::to_string_pretty(&entry.info()).map_err(|e| invalid(e.to_string()))?;
            info.push('\n');
            let p = entry.profile(samples.max(2))?;
            let mut files = Artifacts::default();
            files.add(SOURCE_FILE, json);
            files.add("entry.json", info);
            files.add(PROFILE_FILE, profile_csv(&p));
            report_paths(&files.commit(&out)?);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Prescribe(a) => prescribe(a),
        Command::Profile(a) => profile(a),
        Command::Mesh(a) => mesh(a),
        Command::Verify(a) => verify(a),
        Command::Catalog(c) => catalog_cmd(c),
        Command::ClassifyMeanInverse { mu, json } => {
            let b = classify_mean_inverse(mu)?;
            if json {
                println!("{}", serde_json::to_string(&b).map_err(|e| invalid(e.to_string()))?);
            } else {
                println!("{}", b.name());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
