//! Command-line front end.
//!
//! Every subcommand prints one JSON document followed by a newline. Exit
//! code 0 means success, 1 a domain error (the operation is undefined for
//! the given input), 2 an I/O, usage or parse error. Errors are reported as
//! `{"error": {"kind", "message", "position"?}}`.

pub mod formats;
pub mod parse;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::cochain::{self, Cochain};
use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::exterior::{self, DifferentialForm};
use crate::integrate::{self, EmbeddedChain};
use crate::poly::{format_rational, parse_rational, Rational};
use formats::{
    chain_from_json, cochain_from_json, cochain_to_json, complex_chain_from_json, complex_from_text, form_to_json,
};
use parse::{evaluate, parse_form, Expr, Position};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Io {
        path: PathBuf,
        message: String,
    },
    /// Malformed input file.
    Format(String),
    Parse(parse::ParseError),
    Domain {
        error: Error,
        position: Option<Position>,
    },
    DimensionLimit {
        requested: usize,
        limit: usize,
    },
}

impl CliError {
    pub(crate) fn domain(error: Error) -> Self {
        CliError::Domain { error, position: None }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { .. } | CliError::DimensionLimit { .. } => 1,
            CliError::Io { .. } | CliError::Format(_) | CliError::Parse(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Format(_) => "format",
            CliError::Parse(e) => e.kind,
            CliError::Domain { error, .. } => error.kind(),
            CliError::DimensionLimit { .. } => "dimension_limit",
        }
    }

    fn position(&self) -> Option<Position> {
        match self {
            CliError::Parse(e) => Some(e.position),
            CliError::Domain { position, .. } => *position,
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("kind".into(), json!(self.kind()));
        obj.insert("message".into(), json!(self.to_string()));
        if let Some(p) = self.position() {
            obj.insert("position".into(), json!({ "line": p.line, "column": p.column }));
        }
        json!({ "error": obj })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
            CliError::Format(m) => f.write_str(m),
            CliError::Parse(e) => write!(f, "{}", e.message),
            CliError::Domain { error, .. } => write!(f, "{error}"),
            CliError::DimensionLimit { requested, limit } => {
                write!(f, "dimension {requested} exceeds the limit {limit} (HODGELAB_MAX_DIM)")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<parse::ParseError> for CliError {
    fn from(e: parse::ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<parse::EvalError> for CliError {
    fn from(e: parse::EvalError) -> Self {
        CliError::Domain {
            error: e.error,
            position: Some(e.position),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::domain(e)
    }
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(
    name = "hodgelab",
    version,
    about = "Exact exterior calculus and combinatorial Hodge theory"
)]
pub struct RunConfig {
    /// Write the JSON result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Largest accepted ambient dimension.
    #[arg(long, env = "HODGELAB_MAX_DIM", default_value_t = 6, global = true)]
    pub max_dim: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FormArgs {
    /// Form expression, e.g. "x1*dx2 - x2*dx1".
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
    /// Ambient dimension; inferred from the largest index used when omitted.
    #[arg(long = "dim", short = 'n')]
    pub dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ComplexArg {
    /// Complex as JSON ({"facets": ...}) or an OFF triangle mesh.
    #[arg(long)]
    pub complex: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression and print its canonical form.
    Eval(FormArgs),
    /// Exterior derivative.
    D(FormArgs),
    /// Hodge star.
    Star(FormArgs),
    /// Codifferential.
    Codiff(FormArgs),
    /// Hodge Laplacian.
    Laplacian(FormArgs),
    /// Homotopy operator of the Poincaré lemma.
    Homotopy(FormArgs),
    /// Witten derivative d + t df∧.
    Witten {
        #[command(flatten)]
        form: FormArgs,
        /// Rational parameter t.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Function f, as an expression.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Gradient of a function on R^3, as a 1-form.
    Grad(FormArgs),
    /// Curl of a 1-form on R^3.
    Curl(FormArgs),
    /// Divergence of a 1-form on R^3.
    Div(FormArgs),
    /// Field strength, Bianchi identity and current of a potential on R^4.
    Maxwell {
        #[command(flatten)]
        form: FormArgs,
        /// Chain over which to evaluate the action.
        #[arg(long)]
        domain: Option<PathBuf>,
    },
    /// Integrate a form over a chain.
    Integrate {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Compare ∫_c dw with ∫_∂c w.
    Stokes {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        chain: PathBuf,
    },
    /// L2 inner product of two forms over a domain chain.
    L2 {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        domain: PathBuf,
        #[arg(long = "dim", short = 'n')]
        dim: Option<usize>,
    },
    /// Betti numbers and Euler characteristic.
    Betti {
        #[command(flatten)]
        complex: ComplexArg,
        /// Include a harmonic basis in each degree.
        #[arg(long)]
        basis: bool,
    },
    /// Euler characteristic and simplex counts.
    Euler {
        #[command(flatten)]
        complex: ComplexArg,
    },
    /// Hodge decomposition of a cochain.
    Decompose {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Harmonic representative of a closed cochain.
    HarmonicRep {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Evaluate a cochain on a chain.
    Pairing {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Whether two closed cochains differ by a coboundary.
    Cohomologous {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Format(format!("{}: invalid JSON: {e}", path.display())))
}

fn load_complex(arg: &ComplexArg) -> Result<Arc<SimplicialComplex>, CliError> {
    complex_from_text(&read(&arg.complex)?)
}

fn load_cochain(path: &Path, k: &Arc<SimplicialComplex>) -> Result<Cochain, CliError> {
    cochain_from_json(&read_json(path)?, k)
}

struct Session {
    max_dim: usize,
}

impl Session {
    fn check_dim(&self, n: usize) -> Result<usize, CliError> {
        if n > self.max_dim {
            return Err(CliError::DimensionLimit {
                requested: n,
                limit: self.max_dim,
            });
        }
        if n == 0 {
            return Err(CliError::domain(Error::InvalidDegree {
                degree: 0,
                reason: "ambient dimension must be positive",
            }));
        }
        Ok(n)
    }

    /// Dimension to use for `sources`: explicit, else the fallback, else the
    /// largest index mentioned (at least 1).
    fn resolve_dim(
        &self,
        explicit: Option<usize>,
        fallback: Option<usize>,
        sources: &[&str],
    ) -> Result<usize, CliError> {
        if let Some(n) = explicit.or(fallback) {
            return self.check_dim(n);
        }
        let mut n = 1;
        for src in sources {
            n = n.max(parse_form(src, self.max_dim)?.max_index());
        }
        self.check_dim(n)
    }

    fn form(&self, src: &str, n: usize) -> Result<DifferentialForm, CliError> {
        let expr: Expr = parse_form(src, n)?;
        Ok(evaluate(&expr, n)?)
    }

    fn form_arg(&self, args: &FormArgs, fallback: Option<usize>) -> Result<DifferentialForm, CliError> {
        let n = self.resolve_dim(args.dim, fallback, &[&args.expr])?;
        self.form(&args.expr, n)
    }
}

fn form_output(w: &DifferentialForm) -> Value {
    let mut v = form_to_json(w);
    v["text"] = json!(w.to_string());
    v
}

fn rational_value(r: &Rational) -> Value {
    json!({ "value": format_rational(r) })
}

/// Run one command and return its JSON result.
pub fn execute(cfg: &RunConfig) -> Result<Value, CliError> {
    let s = Session { max_dim: cfg.max_dim };
    let out = match &cfg.command {
        Command::Eval(a) => form_output(&s.form_arg(a, None)?),
        Command::D(a) => form_output(&s.form_arg(a, None)?.d()),
        Command::Star(a) => form_output(&s.form_arg(a, None)?.star()),
        Command::Codiff(a) => form_output(&s.form_arg(a, None)?.codiff()),
        Command::Laplacian(a) => form_output(&s.form_arg(a, None)?.laplacian()),
        Command::Homotopy(a) => form_output(&s.form_arg(a, None)?.homotopy()?),
        Command::Witten { form, t, f } => {
            let n = s.resolve_dim(form.dim, None, &[&form.expr, f])?;
            let t =
                parse_rational(t.trim()).ok_or_else(|| CliError::Format(format!("cannot read '{t}' as a rational")))?;
            let fw = s.form(f, n)?;
            let f = fw.as_scalar().ok_or(Error::DegreeMismatch {
                expected: 0,
                found: fw.degree(),
            })?;
            form_output(&s.form(&form.expr, n)?.witten_d(&f, &t)?)
        }
        Command::Grad(a) => form_output(&exterior::grad(&s.form_arg(a, Some(3))?)?),
        Command::Curl(a) => form_output(&exterior::curl(&s.form_arg(a, Some(3))?)?),
        Command::Div(a) => form_output(&exterior::div(&s.form_arg(a, Some(3))?)?),
        Command::Maxwell { form, domain } => {
            let report = exterior::maxwell_field(&s.form_arg(form, Some(4))?)?;
            let mut v = json!({
                "bianchi_ok": report.bianchi_ok,
                "continuity_ok": report.continuity_ok,
                "field": form_output(&report.field),
                "four_pi_current": form_output(&report.four_pi_current),
            });
            if let Some(path) = domain {
                let chain = chain_from_json(&read_json(path)?)?;
                let action = exterior::maxwell_action(&report.field, &chain)?;
                v["action"] = json!(format_rational(&action));
            }
            v
        }
        Command::Integrate { form, chain } => {
            let chain = chain_from_json(&read_json(chain)?)?;
            let w = s.form_arg(form, Some(chain.ambient()))?;
            rational_value(&integrate::integrate_form(&w, &chain)?)
        }
        Command::Stokes { form, chain } => {
            let chain = chain_from_json(&read_json(chain)?)?;
            let w = s.form_arg(form, Some(chain.ambient()))?;
            let report = integrate::stokes_check(&w, &chain)?;
            json!({
                "equal": report.equal,
                "lhs": format_rational(&report.lhs),
                "rhs": format_rational(&report.rhs),
            })
        }
        Command::L2 { a, b, domain, dim } => {
            let chain: EmbeddedChain = chain_from_json(&read_json(domain)?)?;
            let n = s.resolve_dim(*dim, Some(chain.ambient()), &[a, b])?;
            rational_value(&integrate::l2_inner(&s.form(a, n)?, &s.form(b, n)?, &chain)?)
        }
        Command::Betti { complex, basis } => {
            let k = load_complex(complex)?;
            let report = cochain::cohomology_report(&k)?;
            let mut v = json!({ "betti": report.betti, "euler": report.euler });
            if *basis {
                let bases: Vec<Vec<Value>> = report
                    .harmonic_basis
                    .iter()
                    .map(|b| b.iter().map(cochain_to_json).collect())
                    .collect();
                v["harmonic_basis"] = json!(bases);
            }
            v
        }
        Command::Euler { complex } => {
            let k = load_complex(complex)?;
            let report = cochain::cohomology_report(&k)?;
            json!({ "euler": report.euler, "simplex_counts": k.counts() })
        }
        Command::Decompose { complex, cochain: path } => {
            let k = load_complex(complex)?;
            let split = cochain::hodge_decompose(&load_cochain(path, &k)?);
            json!({
                "alpha": split.alpha.as_ref().map(cochain_to_json),
                "beta": cochain_to_json(&split.beta),
                "coexact": cochain_to_json(&split.coexact),
                "exact": cochain_to_json(&split.exact),
                "harmonic": cochain_to_json(&split.harmonic),
            })
        }
        Command::HarmonicRep { complex, cochain: path } => {
            let k = load_complex(complex)?;
            cochain_to_json(&cochain::harmonic_representative(&load_cochain(path, &k)?)?)
        }
        Command::Pairing {
            complex,
            chain,
            cochain: path,
        } => {
            let k = load_complex(complex)?;
            let c = complex_chain_from_json(&read_json(chain)?, &k)?;
            rational_value(&cochain::pairing(&c, &load_cochain(path, &k)?)?)
        }
        Command::Cohomologous { complex, first, second } => {
            let k = load_complex(complex)?;
            let report = cochain::cohomologous(&load_cochain(first, &k)?, &load_cochain(second, &k)?)?;
            json!({
                "cohomologous": report.cohomologous,
                "witness": report.witness.as_ref().map(cochain_to_json),
            })
        }
    };
    Ok(out)
}

fn emit(cfg_output: Option<&Path>, doc: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string(doc).expect("JSON values always serialize");
    text.push('\n');
    match cfg_output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    message: e.to_string(),
                })
        }
    }
}

/// Execute `cfg`, print the result or the error report, and return the
/// process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    match execute(cfg).and_then(|doc| emit(cfg.output.as_deref(), &doc)) {
        Ok(()) => 0,
        Err(e) => {
            let mut text = serde_json::to_string(&e.to_json()).expect("JSON values always serialize");
            text.push('\n');
            let _ = std::io::stdout().write_all(text.as_bytes());
            e.exit_code()
        }
    }
}

/// Parse process arguments and run. Usage errors exit with code 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
    }
}
