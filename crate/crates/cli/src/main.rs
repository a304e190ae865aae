use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use orbitcone_cli::config::ConfigFile;
use orbitcone_cli::experiments::roots::RealForm;
use orbitcone_cli::experiments::{convex, cox, dext, maj, parse_floats, parse_rationals, roots};
use orbitcone_cli::{emit, CliError, Ctx, ExperimentConfig, Format, Report, Result};

#[derive(Parser)]
#[command(name = "orbitcone", version, about = "Seeded experiments on invariant cones, Coxeter orbits, majorization and double extensions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed; falls back to the config file, then ORBITCONE_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// JSON config file with seed, trials, tolerances, jobs, format, out, timing.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Record wall time in the report; this makes output run-dependent.
    #[arg(long, global = true)]
    timing: bool,
    /// Tolerance override `name=value`, repeatable.
    #[arg(long = "tol", global = true, value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
}

fn parse_tol(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or("expected name=value")?;
    let v: f64 = v.parse().map_err(|e| format!("{v}: {e}"))?;
    Ok((k.to_string(), v))
}

#[derive(Args)]
struct SystemArgs {
    /// Built-in system (A1, A2, A3, B2, G2, affine_A1, affine_A2) or a name for --data.
    #[arg(long, default_value = "A2")]
    system: String,
    /// Reflection data JSON.
    #[arg(long)]
    data: Option<PathBuf>,
}

#[derive(Args)]
struct SpecArg {
    /// Double extension spec JSON.
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Duality round trip on random semi-equicontinuous sets.
    Duality,
    /// Recession cone against the dual of the finiteness cone.
    Recession,
    /// Dominance test against LP over the orbit for several finite systems.
    CoxOracle {
        #[arg(long, value_delimiter = ',', default_value = "A2,A3,B2,G2")]
        systems: Vec<String>,
    },
    /// `u ∈ conv(W v)`.
    CoxHull(HullArgs),
    /// Affine Ã1 chamber descent and one-sided hull check.
    Affine,
    /// Kostant convexity for u(n).
    Kostant(KostantArgs),
    /// Schur–Horn on Haar samples.
    Schurhorn(SchurhornArgs),
    /// Vertices of the ℓ¹ ball on the sum-zero hyperplane.
    Maxnorm {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Jacobi and compatibility checks for double extensions.
    DextStructure,
    /// Lorentzian form, cone and χ checks.
    Lorentz,
    /// Coadjoint orbit values against the closed-form bound.
    CoadjointBound {
        #[arg(long, default_value_t = 10)]
        lambdas: usize,
    },
    /// Oscillator criterion on rotation and hyperbolic D.
    Osci,
    /// χ sign on random S_n-invariant cones.
    PermCone {
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Same as `dext orbit`.
    DextOrbit(OrbitArgs),
    /// Same as `dext pec`.
    Pec(SpecArg),
    #[command(subcommand)]
    Cox(CoxCommand),
    #[command(subcommand)]
    Roots(RootsCommand),
    #[command(subcommand)]
    Maj(MajCommand),
    #[command(subcommand)]
    Dext(DextCommand),
}

#[derive(Args)]
struct HullArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long, allow_hyphen_values = true)]
    u: String,
}

#[derive(Args)]
struct KostantArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    n: Vec<usize>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
}

#[derive(Args)]
struct SchurhornArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
    n: Vec<usize>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

#[derive(Args)]
struct OrbitArgs {
    #[command(flatten)]
    spec: SpecArg,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    levels: Vec<f64>,
}

#[derive(Subcommand)]
enum CoxCommand {
    /// Chamber descent with the reflection word.
    Reduce {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    Hull(HullArgs),
    /// Roots up to a word length.
    Roots {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 6)]
        length: usize,
    },
}

#[derive(Subcommand, Clone, Copy)]
enum FormArg {
    Un {
        #[arg(long)]
        n: usize,
    },
    Upq {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
}

impl From<FormArg> for RealForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Un { n } => RealForm::Un(n),
            FormArg::Upq { p, q } => RealForm::Upq(p, q),
        }
    }
}

#[derive(Subcommand)]
enum RootsCommand {
    /// Structure checks; `--algebra-out` writes the algebra JSON.
    Build {
        #[command(subcommand)]
        form: FormArg,
        #[arg(long, global = true)]
        algebra_out: Option<PathBuf>,
    },
    Kostant(KostantArgs),
    Classify {
        #[command(subcommand)]
        form: FormArg,
    },
}

#[derive(Subcommand)]
enum MajCommand {
    Sk {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        k: Option<usize>,
    },
    Hull {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    Schurhorn(SchurhornArgs),
    /// Step function JSON `{"breakpoints": [...], "values": [...]}`.
    Ryff {
        #[arg(long)]
        input: PathBuf,
    },
    /// HLP against LP and the two-sided form on random pairs.
    Equiv {
        #[arg(long, default_value_t = 7)]
        nmax: usize,
    },
}

#[derive(Subcommand)]
enum DextCommand {
    Build(SpecArg),
    Check(SpecArg),
    Orbit(OrbitArgs),
    Pec(SpecArg),
}

fn resolve(global: &Global) -> Result<(ExperimentConfig, ConfigFile)> {
    let file = match &global.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let seed = match global.seed.or(file.seed) {
        Some(s) => s,
        None => match std::env::var("ORBITCONE_SEED") {
            Ok(s) => s.trim().parse().map_err(|e| CliError::Schema(format!("ORBITCONE_SEED={s}: {e}")))?,
            Err(_) => 0,
        },
    };
    let jobs = global
        .jobs
        .or(file.jobs)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        return Err(CliError::Schema("--jobs must be positive".into()));
    }
    let mut config = ExperimentConfig::new("", seed).with_trials(global.trials.or(file.trials)).with_jobs(jobs);
    config.tolerances = file.tolerances.clone();
    config.tolerances.extend(global.tol.iter().cloned());
    config.format = global.format.or(file.format).unwrap_or_default();
    config.output = global.out.clone().or(file.out.clone());
    config.timing = global.timing || file.timing.unwrap_or(false);
    Ok((config, file))
}

struct Runner {
    base: ExperimentConfig,
}

impl Runner {
    fn ctx(&self, command: &str, params: &[(&str, String)], inputs: &[&Path]) -> Result<Ctx> {
        let mut c = self.base.clone();
        c.command = command.to_string();
        for (k, v) in params {
            c = c.param(k, v);
        }
        c.inputs = inputs.iter().map(|p| p.to_path_buf()).collect();
        Ctx::new(c)
    }
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn run(command: Command, r: &Runner) -> Result<Report> {
    match command {
        Command::Duality => convex::duality(&r.ctx("duality", &[], &[])?),
        Command::Recession => convex::recession(&r.ctx("recession", &[], &[])?),
        Command::CoxOracle { systems } => {
            cox::oracle(&r.ctx("cox-oracle", &[("systems", list(&systems))], &[])?, &systems)
        }
        Command::CoxHull(a) | Command::Cox(CoxCommand::Hull(a)) => hull(r, a),
        Command::Affine => cox::affine(&r.ctx("affine", &[], &[])?),
        Command::Kostant(a) | Command::Roots(RootsCommand::Kostant(a)) => {
            let x = a.x.as_deref().map(parse_floats).transpose()?;
            let params = [("n", list(&a.n)), ("x", a.x.clone().unwrap_or_default())];
            roots::kostant(&r.ctx("kostant", &params, &[])?, &a.n, x.as_deref())
        }
        Command::Schurhorn(a) | Command::Maj(MajCommand::Schurhorn(a)) => {
            let lambda = a.lambda.as_deref().map(parse_floats).transpose()?;
            let params = [("n", list(&a.n)), ("lambda", a.lambda.clone().unwrap_or_default())];
            maj::schurhorn(&r.ctx("schurhorn", &params, &[])?, &a.n, lambda.as_deref())
        }
        Command::Maxnorm { nmax } => maj::maxnorm(&r.ctx("maxnorm", &[("nmax", nmax.to_string())], &[])?, nmax),
        Command::DextStructure => dext::structure(&r.ctx("dext-structure", &[], &[])?),
        Command::Lorentz => dext::lorentz(&r.ctx("lorentz", &[], &[])?),
        Command::CoadjointBound { lambdas } => {
            dext::coadjoint_bound(&r.ctx("coadjoint-bound", &[("lambdas", lambdas.to_string())], &[])?, lambdas)
        }
        Command::Osci => dext::osci(&r.ctx("osci", &[], &[])?),
        Command::PermCone { n } => maj::perm_cone(&r.ctx("perm-cone", &[("n", n.to_string())], &[])?, n),
        Command::DextOrbit(a) | Command::Dext(DextCommand::Orbit(a)) => {
            let ctx = r.ctx("dext-orbit", &[("levels", list(&a.levels))], &[&a.spec.spec])?;
            dext::orbit(&ctx, &a.spec.spec, &a.levels)
        }
        Command::Pec(a) | Command::Dext(DextCommand::Pec(a)) => dext::pec(&r.ctx("pec", &[], &[&a.spec])?, &a.spec),
        Command::Dext(DextCommand::Build(a)) => dext::build(&r.ctx("dext-build", &[], &[&a.spec])?, &a.spec),
        Command::Dext(DextCommand::Check(a)) => dext::check(&r.ctx("dext-check", &[], &[&a.spec])?, &a.spec),
        Command::Cox(CoxCommand::Reduce { system, v, cap }) => {
            let inputs: Vec<&Path> = system.data.iter().map(PathBuf::as_path).collect();
            let mut params = vec![("system", system.system.clone()), ("v", v.clone())];
            if let Some(c) = cap {
                params.push(("cap", c.to_string()));
            }
            let ctx = r.ctx("cox-reduce", &params, &inputs)?;
            cox::reduce(&ctx, &system.system, system.data.as_deref(), &parse_rationals(&v)?, cap)
        }
        Command::Cox(CoxCommand::Roots { system, length }) => {
            let inputs: Vec<&Path> = system.data.iter().map(PathBuf::as_path).collect();
            let params = [("system", system.system.clone()), ("length", length.to_string())];
            cox::roots(&r.ctx("cox-roots", &params, &inputs)?, &system.system, system.data.as_deref(), length)
        }
        Command::Roots(RootsCommand::Build { form, algebra_out }) => {
            let form = RealForm::from(form);
            roots::build_report(&r.ctx("roots-build", &[("form", form.to_string())], &[])?, form, algebra_out.as_deref())
        }
        Command::Roots(RootsCommand::Classify { form }) => {
            let form = RealForm::from(form);
            roots::classify(&r.ctx("roots-classify", &[("form", form.to_string())], &[])?, form)
        }
        Command::Maj(MajCommand::Sk { x, k }) => {
            let mut params = vec![("x", x.clone())];
            if let Some(k) = k {
                params.push(("k", k.to_string()));
            }
            maj::sk(&r.ctx("maj-sk", &params, &[])?, &parse_rationals(&x)?, k)
        }
        Command::Maj(MajCommand::Hull { x, y }) => {
            let ctx = r.ctx("maj-hull", &[("x", x.clone()), ("y", y.clone())], &[])?;
            maj::hull(&ctx, &parse_rationals(&x)?, &parse_rationals(&y)?)
        }
        Command::Maj(MajCommand::Ryff { input }) => maj::ryff(&r.ctx("maj-ryff", &[], &[&input])?, &input),
        Command::Maj(MajCommand::Equiv { nmax }) => {
            maj::equivalences(&r.ctx("maj", &[("nmax", nmax.to_string())], &[])?, nmax)
        }
    }
}

fn hull(r: &Runner, a: HullArgs) -> Result<Report> {
    let inputs: Vec<&Path> = a.system.data.iter().map(PathBuf::as_path).collect();
    let params = [("system", a.system.system.clone()), ("v", a.v.clone()), ("u", a.u.clone())];
    let ctx = r.ctx("cox-hull", &params, &inputs)?;
    cox::hull(&ctx, &a.system.system, a.system.data.as_deref(), &parse_rationals(&a.v)?, &parse_rationals(&a.u)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = resolve(&cli.global).and_then(|(base, _)| {
        let start = Instant::now();
        let runner = Runner { base: base.clone() };
        let mut report = run(cli.command, &runner)?;
        if base.timing {
            report.wall_time_ms = Some(start.elapsed().as_millis());
        }
        emit(&report, base.format, base.output.as_deref())?;
        Ok(report)
    });
    match outcome {
        Ok(report) if report.all_pass() => ExitCode::SUCCESS,
        Ok(report) => {
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAIL {}: expected {}, observed {}", c.name, c.expected, c.observed);
            }
            eprintln!("{} of {} checks failed", report.summary.failed, report.summary.total);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
