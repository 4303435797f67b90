//! Command-line front end: construction, Horn systems, verification,
//! amoeba rasters and reports, moment-map images and the image gallery.

mod gallery;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hgpoly::amoeba::{self, LogWindow, Verdict};
use hgpoly::families::{self, F1Parameters, MinorConvention, Progression};
use hgpoly::hypergeometric::{self, OreSatoCoefficient};
use hgpoly::io::{self, AnyPolynomial};
use hgpoly::lattice::{self, IntegerPolytope};
use hgpoly::moment;
use hgpoly::{ComplexPolynomial, Error, LaurentPolynomial, Rational};

#[derive(Parser)]
#[command(name = "hgpoly", version, about = "Hypergeometric polynomials of lattice polytopes and their amoebas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical hypergeometric polynomial of a polytope
    Construct {
        /// Polytope JSON file, inline JSON, or vertices as "x,y;x,y;..."
        polytope: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Horn system of an Ore-Sato coefficient
    Horn {
        /// Ore-Sato JSON file or inline JSON
        oresato: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact check that a polynomial solves the Horn system (exit 1 if not)
    Verify {
        /// Polynomial JSON file, inline JSON, or an expression like "1+x+y"
        polynomial: String,
        oresato: String,
        /// Replace numerator Gamma factors by their reflections first
        #[arg(long)]
        reflect: bool,
    },
    /// Rasterize the amoeba to a PPM, optionally with a JSON report
    Amoeba {
        polynomial: String,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Dilation radius in pixels
        #[arg(long, default_value_t = amoeba::DEFAULT_DILATION)]
        dilation: usize,
    },
    /// Complement components with their orders
    Orders {
        polynomial: String,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Optimality verdict (exit 0 optimal, 1 not optimal, 4 inconclusive)
    Optimal {
        polynomial: String,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// (Weighted) compactified amoeba of Hadamard powers
    Wca {
        polynomial: String,
        #[command(flatten)]
        window: WindowArgs,
        /// Hadamard orders; csv output concatenates one cloud per order,
        /// ppm output uses the first
        #[arg(long, value_delimiter = ',', default_value = "1")]
        r: Vec<f64>,
        /// Plain moment map instead of the coefficient-weighted one
        #[arg(long)]
        unweighted: bool,
        #[arg(long, value_enum, default_value_t = Format::Ppm)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Coefficientwise power of a polynomial
    Hadamard {
        polynomial: String,
        #[arg(long)]
        r: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Roots of 2F1(a, b; c; x) over a grid of (b, c) as CSV or PPM scatter
    Aster {
        #[arg(long, allow_negative_numbers = true, default_value_t = -12)]
        a: i64,
        /// Progression "start,step,count" with rational entries
        #[arg(long, default_value = "1/10,1/10,40")]
        b: String,
        #[arg(long, default_value = "1/10,1/10,40")]
        c: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value_t = 600)]
        res: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Area of one WCA complement component as a coefficient is lowered
    Deform {
        polynomial: String,
        /// Exponent of the deformed term, e.g. "2,2"
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        term: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 128)]
        res: usize,
        #[arg(long, default_value_t = 256)]
        angles: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Polynomials of the classical families
    Build {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Regenerate the full image gallery into a directory
    Gallery {
        dir: PathBuf,
        #[arg(long, default_value_t = 300)]
        res: usize,
        #[arg(long, default_value_t = amoeba::DEFAULT_ANGLES)]
        angles: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Appell F1(a, b1, b2; c; x, y) with integer parameters
    Appell {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b1: i64,
        #[arg(allow_negative_numbers = true)]
        b2: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
    },
    /// Maximal minor of the k x (k+1) Toeplitz matrix
    Toeplitz {
        k: usize,
        #[arg(long, value_enum, default_value_t = Convention::First)]
        minor_convention: Convention,
    },
    /// Biorthogonal polynomial in squared variables
    Vtilde {
        #[arg(value_delimiter = ',')]
        alpha: Vec<i64>,
    },
    /// Terminating Gauss 2F1(a, b; c; x)
    Gauss {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: String,
        #[arg(allow_negative_numbers = true)]
        c: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    First,
    Last,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ppm,
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct WindowArgs {
    /// Log-space window "xmin,xmax,ymin,ymax"; default fits the tentacles
    /// and tropical vertices
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1)]
    window: Option<Vec<f64>>,
    #[arg(long, default_value_t = amoeba::DEFAULT_RESOLUTION)]
    res: usize,
    #[arg(long, default_value_t = amoeba::DEFAULT_ANGLES)]
    angles: usize,
}

impl WindowArgs {
    fn resolve(&self, p: &ComplexPolynomial) -> Result<LogWindow, CliError> {
        match &self.window {
            Some(v) if v.len() == 4 => Ok(LogWindow::new([v[0], v[2]], [v[1], v[3]], self.res, self.angles)?),
            Some(_) => Err(CliError::Usage("--window needs four numbers xmin,xmax,ymin,ymax".into())),
            None => {
                let w = amoeba::default_window(p)?.with_resolution(self.res).with_angles(self.angles);
                w.validate()?;
                Ok(w)
            }
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_parse() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) | CliError::Usage(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Outcome of a successful command, mapped to the exit status.
enum Outcome {
    Done,
    False,
    Inconclusive,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::False) => ExitCode::from(1),
        Ok(Outcome::Inconclusive) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Reads `arg` as a file when such a file exists, otherwise as inline text.
fn read_source(arg: &str) -> CliResult<String> {
    let path = Path::new(arg);
    if path.is_file() {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    } else {
        Ok(arg.to_string())
    }
}

pub(crate) fn load_polynomial(arg: &str, min_dim: usize) -> CliResult<AnyPolynomial> {
    let text = read_source(arg)?;
    if text.trim_start().starts_with('{') {
        Ok(io::any_polynomial_from_str(&text)?)
    } else {
        Ok(AnyPolynomial::Exact(io::parse_polynomial_expr(&text, min_dim)?))
    }
}

fn load_polytope(arg: &str) -> CliResult<IntegerPolytope> {
    let text = read_source(arg)?;
    if text.trim_start().starts_with('{') {
        return Ok(io::polytope_from_str(&text)?);
    }
    let mut vertices = Vec::new();
    for v in text.trim().split(';').filter(|v| !v.trim().is_empty()) {
        let coords: Result<Vec<i64>, _> = v.split(',').map(|x| x.trim().parse::<i64>()).collect();
        vertices.push(coords.map_err(|_| Error::Parse(format!("bad vertex {v:?}")))?);
    }
    let n = vertices.first().map_or(0, Vec::len);
    if n == 0 || vertices.iter().any(|v| v.len() != n) {
        return Err(Error::Parse("vertices must be nonempty and of equal length".into()).into());
    }
    Ok(lattice::facet_description(&vertices)?)
}

fn load_ore_sato(arg: &str) -> CliResult<OreSatoCoefficient> {
    Ok(io::ore_sato_from_str(&read_source(arg)?)?)
}

pub(crate) fn write_output(path: &Path, bytes: &[u8]) -> CliResult<()> {
    io::write_atomic(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Machine output goes to `output` when given, otherwise to stdout.
fn emit(output: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match output {
        Some(p) => write_output(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_progression(s: &str) -> CliResult<Progression> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || CliError::Lib(Error::Parse(format!("progression {s:?} is not start,step,count")));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: Rational = parts[0].trim().parse().map_err(|_| bad())?;
    let step: Rational = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    Ok(Progression { start, step, count })
}

fn run(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Construct { polytope, output } => {
            let p = load_polytope(&polytope)?.canonical_translate();
            let c = hypergeometric::construct_hypergeometric_polynomial(&p)?;
            if let Some(w) = &c.warning {
                eprintln!("warning: {w}");
            }
            let json = io::to_pretty(&io::polynomial_to_json(&c.polynomial));
            match &output {
                Some(path) => {
                    write_output(path, json.as_bytes())?;
                    println!("{}", c.polynomial);
                }
                None => print!("{json}"),
            }
            Ok(Outcome::Done)
        }
        Command::Horn { oresato, output } => {
            let phi = load_ore_sato(&oresato)?;
            let h = hypergeometric::horn_system(&phi)?;
            let json = io::to_pretty(&io::horn_system_to_json(&h));
            if output.is_some() {
                for (j, pair) in h.pairs().iter().enumerate() {
                    println!("P_{}(s) = {}", j + 1, pair.p);
                    println!("Q_{}(s) = {}", j + 1, pair.q);
                }
            }
            emit(&output, &json)?;
            Ok(Outcome::Done)
        }
        Command::Verify {
            polynomial,
            oresato,
            reflect,
        } => {
            let mut phi = load_ore_sato(&oresato)?;
            if reflect {
                phi = hypergeometric::reflect_to_reciprocal(&phi);
            }
            let p = load_polynomial(&polynomial, phi.dim())?.exact()?;
            let ok = hypergeometric::is_horn_solution(&p, &phi)?;
            println!("{ok}");
            Ok(if ok { Outcome::Done } else { Outcome::False })
        }
        Command::Amoeba {
            polynomial,
            window,
            output,
            report,
            dilation,
        } => {
            let p = load_polynomial(&polynomial, 2)?.to_complex();
            let w = window.resolve(&p)?;
            let raster = amoeba::rasterize_amoeba(&p, &w, dilation)?;
            let mut comps = amoeba::complement_components(&raster);
            amoeba::assign_orders(&p, &mut comps);
            write_output(&output, &io::amoeba_ppm(&raster, &comps))?;
            if let Some(path) = report {
                let np = p.newton_polytope()?;
                let r = amoeba::report_from_components(&p, &np, &comps);
                write_output(&path, io::to_pretty(&io::report_to_json(&r)).as_bytes())?;
            }
            println!(
                "window [{}, {}] x [{}, {}], {} components",
                w.min[0],
                w.max[0],
                w.min[1],
                w.max[1],
                comps.len()
            );
            Ok(Outcome::Done)
        }
        Command::Orders {
            polynomial,
            window,
            output,
        } => {
            let p = load_polynomial(&polynomial, 2)?.to_complex();
            let w = window.resolve(&p)?;
            let raster = amoeba::rasterize_amoeba(&p, &w, amoeba::DEFAULT_DILATION)?;
            let mut comps = amoeba::complement_components(&raster);
            amoeba::assign_orders(&p, &mut comps);
            emit(&output, &io::to_pretty(&io::components_to_json(&comps)))?;
            Ok(Outcome::Done)
        }
        Command::Optimal {
            polynomial,
            window,
            output,
        } => {
            let p = load_polynomial(&polynomial, 2)?.to_complex();
            let w = window.resolve(&p)?;
            let r = amoeba::optimality_report(&p, &w)?;
            let json = io::to_pretty(&io::report_to_json(&r));
            if output.is_some() || r.verdict == Verdict::Inconclusive {
                eprintln!(
                    "{} lattice points, {} components: {}",
                    r.lattice_points,
                    r.component_count(),
                    r.verdict.as_str()
                );
                for d in &r.diagnostics {
                    eprintln!("  {d}");
                }
            }
            emit(&output, &json)?;
            Ok(match r.verdict {
                Verdict::Optimal => Outcome::Done,
                Verdict::NotOptimal => Outcome::False,
                Verdict::Inconclusive => Outcome::Inconclusive,
            })
        }
        Command::Wca {
            polynomial,
            window,
            r,
            unweighted,
            format,
            output,
        } => {
            let p = load_polynomial(&polynomial, 2)?.to_complex();
            if r.is_empty() || r.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
                return Err(CliError::Usage("--r needs positive orders".into()));
            }
            let powered = |order: f64| -> CliResult<ComplexPolynomial> {
                if order == 1.0 {
                    Ok(p.clone())
                } else {
                    Ok(moment::hadamard_power_complex(&p, order)?)
                }
            };
            match format {
                Format::Ppm => {
                    let Some(out) = &output else {
                        return Err(CliError::Usage("ppm output needs --output".into()));
                    };
                    let pr = powered(r[0])?;
                    let raster = moment::wca_raster(&pr, window.res, window.angles, !unweighted)?;
                    let comps = moment::wca_components(&pr, &raster, !unweighted);
                    write_output(out, &io::wca_ppm(&raster, &comps))?;
                    let bounded: Vec<_> = comps.iter().filter(|c| c.bounded).filter_map(|c| c.order.clone()).collect();
                    println!("{} gap regions, bounded orders {:?}", comps.len(), bounded);
                }
                Format::Csv | Format::Json => {
                    let mut clouds = Vec::new();
                    for &order in &r {
                        let pr = powered(order)?;
                        let w = window.resolve(&pr)?;
                        let mut cloud = moment::wca_cloud(&pr, &w, !unweighted)?;
                        cloud.r = order;
                        clouds.push(cloud);
                    }
                    let text = if format == Format::Csv {
                        io::clouds_csv(&clouds)
                    } else {
                        let v: Vec<_> = clouds
                            .iter()
                            .map(|c| serde_json::json!({"r": c.r, "weighted": c.weighted, "points": c.points}))
                            .collect();
                        io::to_pretty(&serde_json::Value::Array(v))
                    };
                    emit(&output, &text)?;
                }
            }
            Ok(Outcome::Done)
        }
        Command::Hadamard { polynomial, r, output } => {
            let json = match load_polynomial(&polynomial, 1)? {
                AnyPolynomial::Exact(p) => match p.hadamard_power(r)? {
                    hgpoly::poly::HadamardPower::Exact(q) => io::polynomial_to_json(&q),
                    hgpoly::poly::HadamardPower::Float(q) => io::complex_polynomial_to_json(&q),
                },
                AnyPolynomial::Inexact(p) => io::complex_polynomial_to_json(&moment::hadamard_power_complex(&p, r)?),
            };
            emit(&output, &io::to_pretty(&json))?;
            Ok(Outcome::Done)
        }
        Command::Aster {
            a,
            b,
            c,
            format,
            res,
            output,
        } => {
            if a >= 0 {
                return Err(Error::Domain("a must be a negative integer".into()).into());
            }
            let points = families::aster_scatter(a, &parse_progression(&b)?, &parse_progression(&c)?);
            match format {
                Format::Ppm => {
                    let Some(out) = &output else {
                        return Err(CliError::Usage("ppm output needs --output".into()));
                    };
                    let xy: Vec<[f64; 2]> = points.iter().map(|p| [p.root.re, p.root.im]).collect();
                    write_output(out, &io::scatter_ppm(&xy, res))?;
                    println!("{} roots", points.len());
                }
                _ => emit(&output, &io::aster_csv(&points))?,
            }
            Ok(Outcome::Done)
        }
        Command::Deform {
            polynomial,
            term,
            eps,
            r,
            res,
            angles,
            output,
        } => {
            let p = load_polynomial(&polynomial, 2)?.to_complex();
            if eps.is_empty() {
                return Err(CliError::Usage("--eps needs at least one value".into()));
            }
            let steps = moment::deformation_sweep(&p, &term, &eps, r, res, angles)?;
            let mut csv = String::from("eps,area_pixels,area_fraction,u,v\n");
            for s in &steps {
                let (u, v) = s.representative.map_or((String::new(), String::new()), |r| (r[0].to_string(), r[1].to_string()));
            csv.push_str(&format!("{},{},{:e},{u},{v}\n", s.eps, s.area_pixels, s.area_fraction));
            }
            emit(&output, &csv)?;
            Ok(Outcome::Done)
        }
        Command::Build { family, output } => {
            let json = match family {
                Family::Appell { a, b1, b2, c } => {
                    io::polynomial_to_json(&families::appell_f1(&F1Parameters::from_ints(a, b1, b2, c))?)
                }
                Family::Toeplitz { k, minor_convention } => {
                    let conv = match minor_convention {
                        Convention::First => MinorConvention::First,
                        Convention::Last => MinorConvention::Last,
                    };
                    io::polynomial_to_json(&families::toeplitz_chebyshev(k, conv)?)
                }
                Family::Vtilde { alpha } => io::polynomial_to_json(&families::biorthogonal_vtilde(&alpha)?),
                Family::Gauss { a, b, c } => {
                    let parse = |s: &str| -> CliResult<Rational> {
                        s.parse().map_err(|_| CliError::Lib(Error::Parse(format!("not a rational number: {s:?}"))))
                    };
                    let coeffs = families::gauss_2f1_polynomial(a, &parse(&b)?, &parse(&c)?)?;
                    let p = LaurentPolynomial::from_terms(1, coeffs.into_iter().enumerate().map(|(k, v)| (vec![k as i64], v)))?;
                    io::polynomial_to_json(&p)
                }
            };
            emit(&output, &io::to_pretty(&json))?;
            Ok(Outcome::Done)
        }
        Command::Gallery { dir, res, angles } => {
            gallery::run(&dir, res, angles)?;
            Ok(Outcome::Done)
        }
    }
}
