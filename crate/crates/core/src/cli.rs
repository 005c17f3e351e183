//! The `colsym` command line.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 parse or shape errors,
//! 3 enumeration limit, 4 domain violations, 5 non-closed form.

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::expr_io;
use crate::formal_geometry::{self, BasePoint, OneForm};
use crate::matrix_ring::{self, RingShape, DEFAULT_ENUM_LIMIT};
use crate::par::Execution;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::rowsum_iso;
use crate::selftest::{self, SelftestConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "colsym",
    version,
    about = "Column-symmetric polynomial calculus"
)]
pub struct Cli {
    /// Rows of the variable matrix.
    #[arg(short = 'm', global = true, default_value_t = 1)]
    pub m: u32,

    /// Columns of the variable matrix (truncation order).
    #[arg(short = 'n', global = true, default_value_t = 2)]
    pub n: u32,

    /// Seed for the randomized self-test.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    pub output: OutputMode,

    /// Largest n for which all n! column permutations are enumerated.
    #[arg(long, global = true, env = "COLSYM_ENUM_LIMIT", default_value_t = DEFAULT_ENUM_LIMIT)]
    pub enum_limit: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discard inadmissible terms of a matrix polynomial.
    Reduce { expr: String },
    /// Average a matrix polynomial over all column permutations.
    Symmetrize { expr: String },
    /// Rewrite a column-symmetric admissible polynomial in terms of row sums.
    ToRowsums {
        expr: String,
        /// Reduce and symmetrize the input first.
        #[arg(long)]
        symmetrize: bool,
    },
    /// Substitute row sums into a polynomial in y1..ym and reduce.
    Expand { expr: String },
    /// Primitive of a closed 1-form on the order-n neighbourhood of a point.
    Primitive {
        /// Coefficient a_i in x1..xm; give once per dimension.
        #[arg(long = "form", required = true, allow_hyphen_values = true)]
        forms: Vec<String>,
        /// Base point coordinates (comma separated or repeated); defaults to the origin.
        #[arg(long = "at", value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Run the randomized invariant suites over all shapes up to m x n.
    Selftest {
        /// Cases per suite per shape.
        #[arg(long, default_value_t = 20)]
        cases: u32,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::EnumerationLimitExceeded { .. } => 3,
        Error::NotAdmissible | Error::NotColumnSymmetric | Error::DegreeExceedsN { .. } => 4,
        Error::NotClosed { .. } => 5,
        _ => 2,
    }
}

fn render(p: &Polynomial, mode: OutputMode) -> String {
    match mode {
        OutputMode::Text => format!("{}\n", expr_io::print_canonical(p)),
        OutputMode::Structured => {
            let json = serde_json::to_string(&expr_io::to_structured(p)).expect("serializable");
            format!("{json}\n")
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(2, text),
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => Outcome::fail(exit_code(&e), format!("colsym: {e}\n")),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let shape = RingShape::new(cli.m, cli.n)?;
    let limit = cli.enum_limit;
    let out = match &cli.command {
        Command::Reduce { expr } => {
            let p = expr_io::parse(expr, shape)?;
            render(&matrix_ring::reduce_admissible(&p, shape)?, cli.output)
        }
        Command::Symmetrize { expr } => {
            let p = expr_io::parse(expr, shape)?;
            render(
                &matrix_ring::symmetrize_with_limit(&p, shape, limit)?,
                cli.output,
            )
        }
        Command::ToRowsums { expr, symmetrize } => {
            let mut p = expr_io::parse(expr, shape)?;
            if *symmetrize {
                let reduced = matrix_ring::reduce_admissible(&p, shape)?;
                p = matrix_ring::symmetrize_with_limit(&reduced, shape, limit)?;
            }
            render(&rowsum_iso::to_rowsums(&p, shape)?, cli.output)
        }
        Command::Expand { expr } => {
            let g = expr_io::parse(expr, shape)?;
            render(&rowsum_iso::expand(&g, shape)?, cli.output)
        }
        Command::Primitive { forms, at } => return primitive(cli, shape, forms, at),
        Command::Selftest { cases } => {
            let config = SelftestConfig {
                m: cli.m,
                n: cli.n,
                seed: cli.seed.unwrap_or(selftest::DEFAULT_SEED),
                cases: *cases,
            };
            let report = selftest::run(&config, Execution::default());
            let text = match cli.output {
                OutputMode::Text => format!("{report}\n"),
                OutputMode::Structured => {
                    format!(
                        "{}\n",
                        serde_json::to_string(&report).expect("serializable")
                    )
                }
            };
            return Ok(Outcome {
                code: if report.all_passed() { 0 } else { 1 },
                stdout: text,
                stderr: String::new(),
            });
        }
    };
    Ok(Outcome::ok(out))
}

fn primitive(
    cli: &Cli,
    shape: RingShape,
    forms: &[String],
    at: &[String],
) -> Result<Outcome, Error> {
    let m = shape.m();
    if forms.len() != m as usize {
        return Err(Error::ShapeMismatch(format!(
            "{} --form coefficients given for m = {m}",
            forms.len()
        )));
    }
    let coeffs = forms
        .iter()
        .map(|src| expr_io::parse_ambient(src, m))
        .collect::<Result<Vec<_>, _>>()?;
    let w = OneForm::new(coeffs)?;
    let x0 = if at.is_empty() {
        BasePoint::origin(m)
    } else {
        let coords = at
            .iter()
            .map(|s| {
                s.parse::<Rational>().map_err(|e| Error::Syntax {
                    pos: 0,
                    msg: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        BasePoint::new(coords)
    };
    let f = formal_geometry::primitive(&w, &x0, shape)?;
    let verified = formal_geometry::verify_primitive(&w, &x0, &f, shape)?;
    let stdout = render(&f, cli.output);
    if verified {
        Ok(Outcome {
            code: 0,
            stdout,
            stderr: "verify_primitive: ok\n".to_string(),
        })
    } else {
        Ok(Outcome {
            code: 1,
            stdout,
            stderr: "verify_primitive: FAILED\n".to_string(),
        })
    }
}
