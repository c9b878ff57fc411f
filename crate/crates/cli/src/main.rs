use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hkit_algebra::Rational;
use hkit_core::config::{parse_nodes, ConfigError, SuiteConfig};
use hkit_core::radial::{self, Coulomb, Oscillator};
use hkit_core::report::{Format, RunReport};
use hkit_core::suites::Registry;
use hkit_core::{spectrum, transforms};

#[derive(Parser)]
#[command(name = "hkit", version, about = "Checks for the charge-dyon system and its oscillator dual")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a bilinear map u -> x (D = 2, 4, 8) and print angles.
    Transform {
        /// Components of u; rationals like 3/2 are kept exact.
        #[arg(required = true, allow_negative_numbers = true)]
        u: Vec<String>,
    },
    /// Solve a radial eigenproblem by finite differences.
    Radial {
        #[arg(long, value_enum, default_value_t = Model::Oscillator)]
        model: Model,
        /// Dimension D of the oscillator or d of the Coulomb problem.
        #[arg(long, default_value_t = 8.0)]
        dim: f64,
        /// Angular momentum (L for the oscillator, l for Coulomb).
        #[arg(long, default_value_t = 0.0)]
        l: f64,
        /// Oscillator frequency or Coulomb coupling e^2.
        #[arg(long, default_value_t = 1.0)]
        strength: f64,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long, default_value_t = radial::DEFAULT_POINTS)]
        points: usize,
    },
    /// List energy levels for isospin T.
    Spectrum {
        #[arg(long, default_value = "0")]
        isospin: String,
        #[arg(long, default_value_t = 6)]
        count: usize,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        /// Suite names, or `all`.
        #[arg(default_value = "all")]
        suites: Vec<String>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Re-render a saved JSON report.
    Report {
        input: PathBuf,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Oscillator,
    Coulomb,
}

#[derive(Args)]
struct RunOpts {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long, env = "HKIT_SEED")]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Quadrature nodes as theta,beta,alpha,gamma.
    #[arg(long)]
    nodes: Option<String>,
    #[arg(long)]
    radius: Option<f64>,
    /// Restrict the algebra suite to one relation.
    #[arg(long)]
    relation: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Config(String),
    Checks,
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<SuiteConfig, Failure> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?;
            Ok(SuiteConfig::parse(&text)?)
        }
        None => Ok(SuiteConfig::default()),
    }
}

fn parse_format(name: &str) -> Result<Format, Failure> {
    Format::parse(name).ok_or_else(|| Failure::Config(format!("unknown format `{name}`")))
}

fn verify(suites: Vec<String>, opts: RunOpts) -> Result<(), Failure> {
    let format = parse_format(&opts.format)?;
    let mut cfg = load_config(&opts.config)?;
    if opts.config.is_none() || suites != ["all"] {
        cfg.suites = suites;
    }
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    if let Some(n) = &opts.nodes {
        cfg.nodes = parse_nodes(n)?;
    }
    if let Some(r) = opts.radius {
        cfg.set("quadrature.radius", &r.to_string())?;
    }
    if let Some(rel) = opts.relation {
        cfg.relation = Some(rel);
    }
    let report = Registry::standard().run(&cfg, opts.jobs)?;
    let text = report.emit(format);
    match &opts.output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn transform(u: &[String]) -> Result<(), Failure> {
    let exact: Option<Vec<Rational>> = u.iter().map(|s| Rational::parse(s)).collect();
    let floats: Vec<f64> = match &exact {
        Some(q) => q.iter().map(|v| v.to_f64()).collect(),
        None => u.iter().map(|s| s.parse::<f64>()).collect::<Result<_, _>>().map_err(|_| Failure::Config("components must be numbers".into()))?,
    };
    let h = transforms::h_matrix(u.len()).map_err(|e| Failure::Config(e.to_string()))?;
    match &exact {
        Some(q) => {
            let x = h.apply(q);
            let shown: Vec<String> = x.iter().map(|v| v.to_string()).collect();
            println!("x = H(u) u = ({})", shown.join(", "));
            if let Ok(uu) = <[Rational; 8]>::try_from(q.clone()) {
                let x = transforms::hurwitz_map(&uu);
                println!("x (component formulas) = ({})", x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "));
            }
            println!("|x| - |u|^2 = {}", transforms::euler_defect(q, &x));
        }
        None => {
            let x = h.apply(&floats);
            println!("x = H(u) u = ({})", x.iter().map(|v| format!("{v:.12}")).collect::<Vec<_>>().join(", "));
            println!("|x| - |u|^2 = {:e}", transforms::euler_defect(&floats, &x));
        }
    }
    if let Ok(uu) = <[f64; 8]>::try_from(floats) {
        let x = transforms::hurwitz_map(&uu);
        match transforms::body_angles(&uu) {
            Ok(a) => println!("body angles: alpha_T = {:.12}, beta_T = {:.12}, gamma_T = {:.12}", a.alpha, a.beta, a.gamma),
            Err(e) => println!("body angles: {e}"),
        }
        match transforms::hyperspherical(&x) {
            Ok(hs) => println!("r = {:.12}, theta = {:.12}, alpha = {:.12}, beta = {:.12}, gamma = {:.12}", hs.r, hs.theta, hs.angles.alpha, hs.angles.beta, hs.angles.gamma),
            Err(e) => println!("hyperspherical: {e}"),
        }
    }
    Ok(())
}

fn radial_cmd(model: Model, dim: f64, l: f64, strength: f64, levels: usize, points: usize) -> Result<(), Failure> {
    let err = |e: hkit_core::CoreError| Failure::Config(e.to_string());
    match model {
        Model::Oscillator => {
            if dim.fract() != 0.0 || l.fract() != 0.0 || l < 0.0 {
                return Err(Failure::Config("oscillator needs integer D and L".into()));
            }
            let osc = Oscillator::new(dim as u32, l as u32, strength).map_err(err)?;
            let res = osc.solve(levels, points).map_err(err)?;
            println!("{:>3} {:>20} {:>20} {:>12} {:>20}", "n_r", "numeric", "exact", "rel error", "dual Coulomb eps");
            for (k, e) in res.eigenvalues.iter().enumerate() {
                let exact = osc.exact_level(k);
                let dual = radial::duality_map(&osc, *e);
                println!("{k:>3} {e:>20.12} {exact:>20.12} {:>12.3e} {:>20.12}", ((e - exact) / exact).abs(), dual.epsilon);
            }
        }
        Model::Coulomb => {
            let c = Coulomb::new(dim, l, strength).map_err(err)?;
            let res = c.solve(levels, points).map_err(err)?;
            println!("{:>3} {:>20} {:>20} {:>12}", "n_r", "numeric", "exact", "rel error");
            for (k, e) in res.eigenvalues.iter().enumerate() {
                let exact = c.exact_level(k);
                println!("{k:>3} {e:>20.12} {exact:>20.12} {:>12.3e}", ((e - exact) / exact).abs());
            }
        }
    }
    Ok(())
}

fn spectrum_cmd(isospin: &str, count: usize, config: &Option<PathBuf>) -> Result<(), Failure> {
    let cfg = load_config(config)?;
    let t = Rational::parse(isospin).ok_or_else(|| Failure::Config(format!("bad isospin `{isospin}`")))?;
    let levels = spectrum::energy_levels(&t, count, &cfg.units).map_err(|e| Failure::Config(e.to_string()))?;
    println!("{:>4} {:>6} {:>18} {:>8} {:>10} {:>8} {:>22}", "N", "mu1", "(mu2, mu3)", "C2", "C3", "C4", "energy");
    for lv in levels {
        let mu = format!("({}, {})", lv.mu[1], lv.mu[2]);
        println!(
            "{:>4} {:>6} {:>18} {:>8} {:>10} {:>8} {:>22}",
            lv.n,
            lv.mu[0].to_string(),
            mu,
            lv.casimirs.c2.to_string(),
            lv.casimirs.c3.to_string(),
            lv.casimirs.c4.to_string(),
            format!("{} = {:.10}", lv.energy, lv.energy.to_f64())
        );
    }
    Ok(())
}

fn render(input: &PathBuf, format: &str) -> Result<(), Failure> {
    let format = parse_format(format)?;
    let text = std::fs::read_to_string(input).map_err(|e| Failure::Config(format!("{}: {e}", input.display())))?;
    let report = RunReport::from_json(&text).map_err(|e| Failure::Config(format!("{}: {e}", input.display())))?;
    print!("{}", report.emit(format));
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Transform { u } => transform(&u),
        Command::Radial { model, dim, l, strength, levels, points } => radial_cmd(model, dim, l, strength, levels, points),
        Command::Spectrum { isospin, count, config } => spectrum_cmd(&isospin, count, &config),
        Command::Verify { suites, opts } => verify(suites, opts),
        Command::Report { input, format } => render(&input, &format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
