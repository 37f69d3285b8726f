//! The `tropfan` command line: matrix files in, fans or Newton polytope
//! vertices out.
//!
//! Output is line oriented and deterministic for a given input, flag set and
//! seed. Ground set elements are printed 1-based; ray indices (in `MAXCONES`)
//! and cone indices (in `BERGMAN`) are 0-based positions in the preceding
//! section.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::Parser;
use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::IntMat;
use crate::discriminant::{DiscriminantError, DiscriminantProblem};
use crate::fan::{self, compare_with_bergman, cyclic_bergman_fan_with, FanError, FanOptions};
use crate::matroid::{Matroid, MatroidError};
use crate::set::ElementSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

/// Parses `m n` followed by `m` rows of `n` integers. Lines starting with
/// `#` and blank lines are skipped.
pub fn parse_matrix(text: &str) -> Result<IntMat, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line, reason: String| ParseError { line, reason };
    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(err(hline, format!("expected `m n`, found {header:?}")));
    }
    let parse_dim = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| err(hline, format!("bad dimension {s:?}")))
    };
    let (m, n) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
    let mut rows = Vec::with_capacity(m);
    let mut last = hline;
    for (no, line) in lines {
        if rows.len() == m {
            return Err(err(no, format!("more than {m} rows")));
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| err(no, format!("not an integer: {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(err(no, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
        last = no;
    }
    if rows.len() < m {
        return Err(err(last, format!("expected {m} rows, found {}", rows.len())));
    }
    Ok(IntMat::from_big_rows(rows, n))
}

#[derive(Parser, Debug)]
#[command(
    name = "tropfan",
    version,
    about = "Cyclic Bergman fans of integer matrices and vertices of A-discriminant Newton polytopes"
)]
pub struct Args {
    /// Matrix file: `m n`, then m rows of n integers.
    pub input: PathBuf,
    /// Compute the fan of a Gale dual of the input.
    #[arg(long)]
    pub dual: bool,
    /// Group the maximal cones by cones of the Bergman fan.
    #[arg(long)]
    pub compare: bool,
    /// Compute N random vertices of the A-discriminant's Newton polytope.
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,
    /// Seed for --random.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Print all bases.
    #[arg(long)]
    pub bases: bool,
    /// Print all circuits.
    #[arg(long)]
    pub circuits: bool,
    /// Print the Tutte polynomial.
    #[arg(long)]
    pub tutte: bool,
    /// Print section headers and counts only.
    #[arg(long)]
    pub counts_only: bool,
    /// Write to a file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Worker threads; 0 runs sequentially.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Fan,
    FanDual,
    Discriminant,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Reports {
    pub bases: bool,
    pub circuits: bool,
    pub tutte: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub mode: Mode,
    pub compare: bool,
    pub random_count: usize,
    pub seed: u64,
    pub reports: Reports,
    pub output: Option<PathBuf>,
    pub counts_only: bool,
    pub threads: usize,
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<Self, String> {
        let mode = match (args.random, args.dual) {
            (Some(_), true) => {
                return Err("--random works on A itself; drop --dual".into());
            }
            (Some(_), false) => Mode::Discriminant,
            (None, true) => Mode::FanDual,
            (None, false) => Mode::Fan,
        };
        if args.compare && mode == Mode::Discriminant {
            return Err("--compare cannot be combined with --random".into());
        }
        Ok(Self {
            input: args.input,
            mode,
            compare: args.compare,
            random_count: args.random.unwrap_or(0),
            seed: args.seed,
            reports: Reports {
                bases: args.bases,
                circuits: args.circuits,
                tutte: args.tutte,
            },
            output: args.output,
            counts_only: args.counts_only,
            threads: args.threads,
        })
    }
}

#[derive(Debug, Error)]
enum RunError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Fan(FanError),
    #[error(transparent)]
    Discriminant(DiscriminantError),
}

impl From<FanError> for RunError {
    fn from(e: FanError) -> Self {
        match e {
            FanError::Matroid(m) => RunError::Matroid(m),
            e => RunError::Fan(e),
        }
    }
}

impl From<DiscriminantError> for RunError {
    fn from(e: DiscriminantError) -> Self {
        match e {
            DiscriminantError::Fan(f) => f.into(),
            e => RunError::Discriminant(e),
        }
    }
}

impl RunError {
    fn exit_code(&self) -> i32 {
        match self {
            RunError::Io(_) | RunError::Read { .. } | RunError::Parse { .. } | RunError::Fan(_) => EXIT_FAILURE,
            RunError::Matroid(_) | RunError::Discriminant(_) => EXIT_PRECONDITION,
        }
    }
}

/// Parses `argv` (including the program name) and runs. Returns the exit
/// code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = match RunConfig::from_args(args) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_FAILURE;
        }
    };
    run(&config, &mut io::stderr())
}

/// Runs `config`, writing to its output target. Diagnostics and statistics
/// go to `log`.
pub fn run(config: &RunConfig, log: &mut dyn Write) -> i32 {
    let result = match &config.output {
        Some(path) => File::create(path)
            .map_err(RunError::from)
            .and_then(|f| run_to(config, &mut BufWriter::new(f), log)),
        None => run_to(config, &mut BufWriter::new(io::stdout().lock()), log),
    };
    finish(result, log)
}

/// Like [`run`] but always writes to `out`, ignoring `config.output`.
pub fn run_with_writer(config: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> i32 {
    let result = run_to(config, out, log);
    finish(result, log)
}

fn finish(result: Result<(), RunError>, log: &mut dyn Write) -> i32 {
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(log, "error: {e}");
            e.exit_code()
        }
    }
}

fn run_to(config: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<(), RunError> {
    let text = std::fs::read_to_string(&config.input).map_err(|source| RunError::Read {
        path: config.input.display().to_string(),
        source,
    })?;
    let a = parse_matrix(&text).map_err(|source| RunError::Parse {
        path: config.input.display().to_string(),
        source,
    })?;
    let base = Matroid::from_matrix_lenient(&a)?;
    if base.representation().rows() < a.rows() {
        writeln!(
            log,
            "note: dropped {} redundant rows, effective m = {}",
            a.rows() - base.representation().rows(),
            base.representation().rows()
        )?;
    }
    let matroid = match config.mode {
        Mode::FanDual => base.dual(),
        _ => base,
    };
    write_reports(&matroid, config, out)?;
    match config.mode {
        Mode::Fan | Mode::FanDual => {
            matroid.check_loopless_coloopless()?;
            write_fan(&matroid, config, out)?;
        }
        Mode::Discriminant => write_vertices(&a, config, out, log)?,
    }
    out.flush()?;
    Ok(())
}

/// 1-based, space separated.
fn elements_line(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|e| (e + 1).to_string()).collect();
    parts.join(" ")
}

fn write_reports(m: &Matroid, config: &RunConfig, out: &mut dyn Write) -> io::Result<()> {
    let r = config.reports;
    if r.bases {
        writeln!(out, "BASES {}", m.basis_count())?;
        if !config.counts_only {
            for b in m.bases() {
                writeln!(out, "{}", elements_line(b))?;
            }
        }
    }
    if r.circuits {
        let cs = m.circuits();
        writeln!(out, "CIRCUITS {}", cs.len())?;
        if !config.counts_only {
            for c in &cs {
                writeln!(out, "{}", elements_line(c))?;
            }
        }
    }
    if r.tutte {
        let text = m.tutte_polynomial().to_string();
        writeln!(out, "TUTTE {}", text.lines().count())?;
        if !config.counts_only {
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn write_header(
    out: &mut dyn Write,
    m: &Matroid,
    rays: usize,
    cones: usize,
    classes: Option<usize>,
) -> io::Result<()> {
    writeln!(out, "# ray and cone indices are 0-based")?;
    writeln!(out, "AMBIENT_DIM {}", m.ground_size())?;
    writeln!(out, "RANK {}", m.rank())?;
    writeln!(out, "NUM_RAYS {rays}")?;
    writeln!(out, "NUM_MAXCONES {cones}")?;
    if let Some(k) = classes {
        writeln!(out, "NUM_BERGMAN_CLASSES {k}")?;
    }
    Ok(())
}

fn write_index_line(out: &mut dyn Write, idx: &[u32]) -> io::Result<()> {
    let mut line = String::with_capacity(4 * idx.len());
    for (k, i) in idx.iter().enumerate() {
        if k > 0 {
            line.push(' ');
        }
        line.push_str(&i.to_string());
    }
    line.push('\n');
    out.write_all(line.as_bytes())
}

fn write_rays(out: &mut dyn Write, n: usize, rays: &[ElementSet]) -> io::Result<()> {
    writeln!(out, "RAYS")?;
    for r in rays {
        writeln!(out, "{}", r.indicator_line(n))?;
    }
    Ok(())
}

fn write_fan(m: &Matroid, config: &RunConfig, out: &mut dyn Write) -> Result<(), RunError> {
    let n = m.ground_size();
    let options = FanOptions {
        threads: config.threads,
        keep_pairs: false,
        check_duplicates: config.compare,
    };
    if config.compare {
        let fan = cyclic_bergman_fan_with(m, &options)?;
        let classes = compare_with_bergman(&fan, m);
        write_header(out, m, fan.ray_count(), fan.cone_count(), Some(classes.len()))?;
        if config.counts_only {
            return Ok(());
        }
        write_rays(out, n, fan.rays())?;
        writeln!(out, "MAXCONES")?;
        for c in fan.cones() {
            write_index_line(out, &c.rays)?;
        }
        writeln!(out, "BERGMAN")?;
        for class in &classes {
            let idx: Vec<u32> = class.iter().map(|&c| c as u32).collect();
            write_index_line(out, &idx)?;
        }
        return Ok(());
    }
    // first pass: rays and the cone count; second pass streams the cones
    let (rays, cone_count) = fan::fan_rays(m, &options)?;
    write_header(out, m, rays.len(), cone_count, None)?;
    if config.counts_only {
        return Ok(());
    }
    write_rays(out, n, &rays)?;
    writeln!(out, "MAXCONES")?;
    let index: HashMap<&ElementSet, u32> = rays.iter().zip(0..).collect();
    let width = m.rank() - 1;
    let mut io_err = None;
    fan::for_each_basis(m, &options, |bc| {
        if io_err.is_some() {
            return Ok(());
        }
        let mut idx = Vec::with_capacity(width);
        for c in 0..bc.cone_count {
            idx.clear();
            idx.extend(bc.rays[c * width..(c + 1) * width].iter().map(|r| index[r]));
            idx.sort_unstable();
            if let Err(e) = write_index_line(out, &idx) {
                io_err = Some(e);
                break;
            }
        }
        Ok(())
    })?;
    match io_err {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn write_vector(out: &mut dyn Write, v: &[BigInt]) -> io::Result<()> {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    writeln!(out, "{}", parts.join(" "))
}

fn write_vertices(
    a: &IntMat,
    config: &RunConfig,
    out: &mut dyn Write,
    log: &mut dyn Write,
) -> Result<(), RunError> {
    let prob = DiscriminantProblem::setup_with(a, config.threads)?;
    writeln!(
        log,
        "maximal cones {}, codimension 1 after adding rowspace(A): {}",
        prob.fan().cone_count(),
        prob.codim1_cones().len()
    )?;
    if !prob.lattice_spanned() {
        writeln!(
            log,
            "warning: the columns of A span a sublattice of index {}",
            prob.lattice_index()
        )?;
    }
    let mut vertices = prob.random_vertices(config.random_count, config.seed)?;
    let degree = match vertices.first() {
        Some(v) => v.a_degree.clone(),
        None => prob.random_vertices(1, config.seed)?.remove(0).a_degree,
    };
    write!(out, "A-DEGREE ")?;
    write_vector(out, &degree)?;
    let distinct = vertices.iter().filter(|v| v.duplicate_of.is_none()).count();
    writeln!(log, "vertices {}, distinct {}", vertices.len(), distinct)?;
    if config.counts_only {
        writeln!(out, "NUM_VERTICES {}", vertices.len())?;
        return Ok(());
    }
    for v in vertices.drain(..) {
        write_vector(out, &v.u)?;
    }
    Ok(())
}
