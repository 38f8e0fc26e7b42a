//! Command-line front end: generate, count, verify and convert.
//!
//! Exit statuses: 0 success or valid input, 1 invalid input, 2 search
//! budget exhausted or enumeration refused, 3 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use sudoku_pi_core::text::{
    join_documents, parse_grid_documents, parse_pi_documents, parse_sperm_documents, write_grid,
    write_pi, write_sperm,
};
use sudoku_pi_core::{
    compose, count_pi_enumerated, count_sudoku, decompose, generate_tuple, theta, theta_inv,
    validate_pi, validate_sperm, validate_sudoku, CandidateOrder, ChoiceStrategy, CountOptions,
    CountReport, Error, GenerationBudget, GenerationStats, PiMatrix, SPermMatrix, SudokuMatrix,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sudoku-pi",
    version,
    about = "Generate, count, verify and convert Sudoku matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random n²×n² Sudoku matrix.
    Generate {
        #[arg(long)]
        n: usize,
        /// Drawn from system entropy when omitted; always echoed on stderr.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_backtracks: Option<u64>,
        #[arg(long)]
        max_restarts: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count pair matrices or Sudoku matrices exactly.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        what: What,
        /// Permit enumerations known to be beyond desk scale.
        #[arg(long)]
        allow_large: bool,
        /// Stop after this many search nodes and report a partial count.
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Order::RowMajor)]
        order: Order,
    },
    /// Check a file against the definitions; violations are listed 1-based.
    Verify {
        #[arg(long, value_enum)]
        format: Format,
        /// Input file, `-` for standard input.
        path: PathBuf,
    },
    /// Convert between pair matrices, S-permutation matrices and Sudoku grids.
    Convert {
        #[arg(long, value_enum)]
        from: Format,
        #[arg(long, value_enum)]
        to: Format,
        /// Input files, read in order; `-` for standard input.
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Pi,
    Sudoku,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Grid,
    Pi,
    Sperm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    RowMajor,
    ColumnMajor,
}

impl From<Order> for CandidateOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::RowMajor => CandidateOrder::RowMajor,
            Order::ColumnMajor => CandidateOrder::ColumnMajor,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(PathBuf, io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(
                Error::BudgetExhausted { .. } | Error::NoSolution | Error::Refused(_),
            ) => EXIT_BUDGET,
            CliError::Core(Error::UnsupportedOrder(_)) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(_) | CliError::Io(..) => EXIT_INVALID,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub grid: SudokuMatrix,
    pub seed: u64,
    pub stats: GenerationStats,
    pub elapsed: Duration,
}

/// Random tuple → S-permutation matrices → weighted sum.
pub fn cmd_generate(n: usize, seed: u64, budget: GenerationBudget) -> Result<Generated, Error> {
    let start = std::time::Instant::now();
    let (tuple, stats) = generate_tuple(n, ChoiceStrategy::Random { seed }, budget)?;
    let parts: Vec<SPermMatrix> = tuple.iter().map(theta).collect();
    let grid = compose(&parts)?;
    Ok(Generated {
        grid,
        seed,
        stats,
        elapsed: start.elapsed(),
    })
}

pub fn cmd_count(n: usize, what: What, opts: &CountOptions) -> Result<CountReport, Error> {
    match what {
        What::Pi => count_pi_enumerated(n, opts),
        What::Sudoku => count_sudoku(n, opts),
    }
}

/// Validation outcome for every document in the input; empty inner lists mean valid.
pub fn cmd_verify(text: &str, format: Format) -> Result<Vec<Vec<String>>, Error> {
    fn lines<V: ToString>(v: &[V]) -> Vec<String> {
        v.iter().map(V::to_string).collect()
    }
    Ok(match format {
        Format::Pi => parse_pi_documents(text)?
            .iter()
            .map(|doc| validate_pi(doc).map(|r| lines(r.violations())))
            .collect::<Result<_, _>>()?,
        Format::Sperm => parse_sperm_documents(text)?
            .iter()
            .map(|(n, doc)| validate_sperm(doc, *n).map(|r| lines(r.violations())))
            .collect::<Result<_, _>>()?,
        Format::Grid => parse_grid_documents(text)?
            .iter()
            .map(|(n, doc)| match validate_sudoku(doc, *n) {
                Ok(r) => Ok(lines(r.violations())),
                Err(e @ Error::Range { .. }) => Ok(vec![e.to_string()]),
                Err(e) => Err(e),
            })
            .collect::<Result<_, _>>()?,
    })
}

enum Docs {
    Pi(Vec<PiMatrix>),
    Sperm(Vec<SPermMatrix>),
    Grid(Vec<SudokuMatrix>),
}

fn read_docs(texts: &[String], format: Format) -> Result<Docs, Error> {
    let mut docs = match format {
        Format::Pi => Docs::Pi(Vec::new()),
        Format::Sperm => Docs::Sperm(Vec::new()),
        Format::Grid => Docs::Grid(Vec::new()),
    };
    for text in texts {
        match &mut docs {
            Docs::Pi(v) => {
                for raw in parse_pi_documents(text)? {
                    v.push(PiMatrix::new(raw)?);
                }
            }
            Docs::Sperm(v) => {
                for (n, raw) in parse_sperm_documents(text)? {
                    v.push(SPermMatrix::from_dense(&raw, n)?);
                }
            }
            Docs::Grid(v) => {
                for (n, raw) in parse_grid_documents(text)? {
                    v.push(SudokuMatrix::from_rows(&raw, n)?);
                }
            }
        }
    }
    Ok(docs)
}

fn to_sperms(docs: Docs) -> Result<Vec<SPermMatrix>, Error> {
    Ok(match docs {
        Docs::Pi(v) => v.iter().map(theta).collect(),
        Docs::Sperm(v) => v,
        Docs::Grid(v) => v.iter().flat_map(decompose).collect(),
    })
}

/// Converts the documents in `texts` (read in order) to `to`.
///
/// Pair matrices and S-permutation matrices convert one to one. A Sudoku
/// grid becomes its `n²` parts; `n²` parts in order compose one grid.
pub fn cmd_convert(texts: &[String], from: Format, to: Format) -> Result<String, Error> {
    let docs = read_docs(texts, from)?;
    let out: Vec<String> = match (docs, to) {
        (Docs::Pi(v), Format::Pi) => v.iter().map(write_pi).collect(),
        (Docs::Grid(v), Format::Grid) => v.iter().map(write_grid).collect(),
        (docs, Format::Sperm) => to_sperms(docs)?.iter().map(write_sperm).collect(),
        (docs, Format::Pi) => to_sperms(docs)?
            .iter()
            .map(|s| write_pi(&theta_inv(s)))
            .collect(),
        (docs, Format::Grid) => vec![write_grid(&compose(&to_sperms(docs)?)?)],
    };
    Ok(join_documents(out))
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
    }
}

fn write_output(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e)),
    }
}

fn budget(
    max_backtracks: Option<u64>,
    max_restarts: Option<u32>,
) -> Result<GenerationBudget, CliError> {
    let d = GenerationBudget::default();
    GenerationBudget::new(
        max_backtracks.unwrap_or(d.max_backtracks()),
        max_restarts.unwrap_or(d.max_restarts()),
    )
    .map_err(|_| CliError::Usage("--max-backtracks and --max-restarts must be positive".into()))
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Generate {
            n,
            seed,
            max_backtracks,
            max_restarts,
            output,
        } => {
            let budget = budget(max_backtracks, max_restarts)?;
            let seed = seed.unwrap_or_else(rand::random);
            let _ = writeln!(stderr, "seed={seed} n={n}");
            let g = cmd_generate(n, seed, budget)?;
            let _ = writeln!(
                stderr,
                "restarts={} nodes={} backtracks={} elapsed_ms={}",
                g.stats.restarts,
                g.stats.nodes,
                g.stats.backtracks,
                g.elapsed.as_millis()
            );
            write_output(output.as_deref(), &write_grid(&g.grid), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Count {
            n,
            what,
            allow_large,
            max_nodes,
            jobs,
            order,
        } => {
            if jobs == 0 {
                return Err(CliError::Usage("--jobs must be positive".into()));
            }
            let opts = CountOptions {
                order: order.into(),
                allow_large,
                max_nodes,
                jobs,
            };
            let report = cmd_count(n, what, &opts)?;
            let _ = writeln!(stdout, "{report}");
            let _ = writeln!(stderr, "{}", report.summary());
            Ok(EXIT_OK)
        }
        Command::Verify { format, path } => {
            let text = read_input(&path)?;
            let results = cmd_verify(&text, format)?;
            let multi = results.len() > 1;
            let mut all_ok = true;
            for (idx, violations) in results.iter().enumerate() {
                let prefix = if multi {
                    format!("document {}: ", idx + 1)
                } else {
                    String::new()
                };
                if violations.is_empty() {
                    let _ = writeln!(stdout, "{prefix}valid");
                } else {
                    all_ok = false;
                    let _ = writeln!(stdout, "{prefix}invalid");
                    for v in violations {
                        let _ = writeln!(stdout, "  {v}");
                    }
                }
            }
            Ok(if all_ok { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Convert {
            from,
            to,
            paths,
            output,
        } => {
            let texts = paths
                .iter()
                .map(|p| read_input(p))
                .collect::<Result<Vec<_>, _>>()?;
            let out = cmd_convert(&texts, from, to)?;
            write_output(output.as_deref(), &out, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
