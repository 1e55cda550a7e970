//! The `recblock` command line.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage or parse error,
//! 3 singular matrix, 4 singular pivot block, 5 randomness exhausted.
//!
//! Inputs whose size is not a power of two are padded with an identity
//! block before any block algorithm runs; `invert` and `mul` cut the result
//! back to the input size, `lu` and `ldu` write the padded factors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::blockmat::io::{parse_matrix, write_matrix, AnyMatrix, FormatError, RingSpec};
use crate::blockmat::{BlockError, BlockMatrix, DenseMatrix, MulStrategy, OpCounter};
use crate::complexity::{render_lines, render_table, verify_counts, ComplexityError, Operation};
use crate::inversion::{auto_invert, invert_gram_gv, schur_invert, GramFallback, InversionError};
use crate::lu::{ldu, lu_decompose_with, randomized_lu, LuError, LuOptions, LuResult, Preconditioners};
use crate::random::{all_blocks_singular, random_invertible, random_matrix, rng_from_seed, Sample, SeededRng};
use crate::rings::{Field, Fp, GaussianRational, Quaternion, Rational, RationalFunction, Scalar};

#[derive(Debug, Parser)]
#[command(name = "recblock", version, about = "Exact block-recursive matrix inversion and LU")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded random matrix.
    Gen {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        invertible: bool,
        /// Invertible, with all four half-size blocks singular.
        #[arg(long)]
        all_blocks_singular: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Multiply two matrices.
    Mul {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Naive)]
        strategy: StrategyArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Invert a matrix.
    Invert {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Factor M = P L U Q; writes PREFIX.L, PREFIX.U and PREFIX.perm.
    Lu {
        input: PathBuf,
        #[arg(long)]
        prefix: PathBuf,
        /// Skip block pivoting and precondition right away.
        #[arg(long)]
        randomized: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_retries: u32,
    },
    /// Single-level block LDU; writes PREFIX.Lb, PREFIX.Db and PREFIX.Ub.
    Ldu {
        input: PathBuf,
        #[arg(long)]
        prefix: PathBuf,
    },
    /// Verify a result exactly.
    Check {
        #[arg(long, value_enum)]
        kind: CheckKind,
        /// inverse: M N; pluq: M L U PERM; ldu: M Lb Db Ub
        inputs: Vec<PathBuf>,
    },
    /// Compare measured operation counts with the cost formulas.
    VerifyCounts {
        #[arg(long)]
        op: String,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 4, 8])]
        sizes: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Naive,
    Strassen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Schur,
    Gram,
    Gv,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Inverse,
    Pluq,
    Ldu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Lines,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("{0}")]
    Singular(String),
    #[error("{0}")]
    Pivot(String),
    #[error("{0}")]
    Exhausted(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Usage(_) | CliError::Io { .. } | CliError::Format { .. } => 2,
            CliError::Singular(_) => 3,
            CliError::Pivot(_) => 4,
            CliError::Exhausted(_) => 5,
        }
    }
}

impl From<InversionError> for CliError {
    fn from(e: InversionError) -> Self {
        match e {
            InversionError::PivotBlockSingular { .. } => CliError::Pivot(e.to_string()),
            InversionError::SingularMatrix | InversionError::GramSingular => CliError::Singular(e.to_string()),
            InversionError::NonConstantResidue { .. } => CliError::Verify(e.to_string()),
            InversionError::Block(b) => CliError::Usage(b.to_string()),
        }
    }
}

impl From<LuError> for CliError {
    fn from(e: LuError) -> Self {
        match e {
            LuError::SingularMatrix | LuError::AllBlocksSingular | LuError::SingularDiagonal { .. } => {
                CliError::Singular(e.to_string())
            }
            LuError::PivotBlockSingular { .. } | LuError::LeadingMinorSingular => CliError::Pivot(e.to_string()),
            LuError::RandomnessExhausted { .. } => CliError::Exhausted(e.to_string()),
            LuError::NotTriangular => CliError::Verify(e.to_string()),
            LuError::Block(b) => CliError::Usage(b.to_string()),
        }
    }
}

impl From<BlockError> for CliError {
    fn from(e: BlockError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ComplexityError> for CliError {
    fn from(e: ComplexityError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Gen { ring, size, seed, invertible, all_blocks_singular, output } => {
            let ring = RingSpec::parse(&ring).map_err(|e| CliError::Usage(e.to_string()))?;
            if size == 0 || size > 256 {
                return Err(CliError::Usage(format!("size must be in 1..=256, got {size}")));
            }
            let req = GenRequest { size, seed, invertible, all_blocks_singular };
            let text = match ring {
                RingSpec::Rational => generate::<Rational>(&(), &req),
                RingSpec::PrimeField(p) => generate::<Fp>(&p, &req),
                RingSpec::Gaussian => generate::<GaussianRational>(&(), &req),
                RingSpec::Quaternion => generate::<Quaternion>(&(), &req),
                RingSpec::RatFunRational => generate::<RationalFunction<Rational>>(&(), &req),
                RingSpec::RatFunPrime(p) => generate::<RationalFunction<Fp>>(&p, &req),
            }?;
            emit(out, output.as_deref(), &format!("{text}# generator chacha8 seed {seed}\n"))
        }
        Command::Mul { a, b, strategy, output } => {
            let strategy = match strategy {
                StrategyArg::Naive => MulStrategy::Naive,
                StrategyArg::Strassen => MulStrategy::Strassen,
            };
            let b_text = read(&b)?;
            let text = with_matrix!(read_any(&a)?, m => multiply(&m, &b_text, &b, strategy, out))?;
            emit(out, output.as_deref(), &text)
        }
        Command::Invert { input, method, output } => {
            let text = with_matrix!(read_any(&input)?, m => invert(&m, method, out))?;
            emit(out, output.as_deref(), &text)
        }
        Command::Lu { input, prefix, randomized, seed, max_retries } => {
            let options = LuOptions { seed, max_retries };
            with_matrix!(read_any(&input)?, m => factor(&m, &prefix, randomized, options, out))
        }
        Command::Ldu { input, prefix } => with_matrix!(read_any(&input)?, m => block_ldu(&m, &prefix, out)),
        Command::Check { kind, inputs } => {
            let expected = match kind {
                CheckKind::Inverse => 2,
                CheckKind::Pluq | CheckKind::Ldu => 4,
            };
            if inputs.len() != expected {
                return Err(CliError::Usage(format!("check --kind {kind:?} takes {expected} files")));
            }
            let rest: Vec<(PathBuf, String)> =
                inputs[1..].iter().map(|p| read(p).map(|t| (p.clone(), t))).collect::<Result<_, _>>()?;
            with_matrix!(read_any(&inputs[0])?, m => check(&m, kind, &rest, out))
        }
        Command::VerifyCounts { op, sizes, seed, format } => {
            let op: Operation = op.parse()?;
            let reports = verify_counts(op, &sizes, seed)?;
            let text = match format {
                ReportFormat::Table => render_table(&reports),
                ReportFormat::Lines => render_lines(&reports),
            };
            write_out(out, &text)?;
            if let Some(bad) = reports.iter().find(|r| !r.ok()) {
                return Err(CliError::Verify(format!("{} at n = {} disagrees with its recurrence", bad.operation, bad.n)));
            }
            Ok(())
        }
    }
}

/// Runs `$body` with `$m` bound to the dense matrix inside an [`AnyMatrix`].
macro_rules! with_matrix {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            AnyMatrix::Rational($m) => $body,
            AnyMatrix::PrimeField($m) => $body,
            AnyMatrix::Gaussian($m) => $body,
            AnyMatrix::Quaternion($m) => $body,
            AnyMatrix::RatFunRational($m) => $body,
            AnyMatrix::RatFunPrime($m) => $body,
        }
    };
}
use with_matrix;

/// Per-ring capabilities beyond [`GramFallback`].
pub trait CliRing: GramFallback + Sample {
    /// `(M° M)^-1 M°`, for fields only.
    fn invert_gv(_m: &BlockMatrix<Self>, _counter: &mut OpCounter) -> Option<Result<BlockMatrix<Self>, InversionError>> {
        None
    }

    fn gen_all_blocks_singular(_ctx: &Self::Ctx, _n: usize, _rng: &mut SeededRng) -> Option<DenseMatrix<Self>> {
        None
    }
}

macro_rules! field_ring {
    ($t:ty) => {
        impl CliRing for $t {
            fn invert_gv(m: &BlockMatrix<Self>, counter: &mut OpCounter) -> Option<Result<BlockMatrix<Self>, InversionError>> {
                Some(invert_gram_gv(m, counter))
            }

            fn gen_all_blocks_singular(ctx: &Self::Ctx, n: usize, rng: &mut SeededRng) -> Option<DenseMatrix<Self>> {
                all_blocks_singular(ctx, n, rng)
            }
        }
    };
}

field_ring!(Rational);
field_ring!(Fp);
field_ring!(GaussianRational);

impl CliRing for Quaternion {}

impl<F: Field + Sample> CliRing for RationalFunction<F> {
    fn gen_all_blocks_singular(ctx: &F::Ctx, n: usize, rng: &mut SeededRng) -> Option<DenseMatrix<Self>> {
        all_blocks_singular(ctx, n, rng)
    }
}

struct GenRequest {
    size: usize,
    seed: u64,
    invertible: bool,
    all_blocks_singular: bool,
}

fn generate<S: CliRing>(ctx: &S::Ctx, req: &GenRequest) -> Result<String, CliError> {
    let mut rng = rng_from_seed(req.seed);
    let m = if req.all_blocks_singular {
        S::gen_all_blocks_singular(ctx, req.size, &mut rng).ok_or_else(|| {
            CliError::Usage(format!(
                "--all-blocks-singular needs a field and a power-of-two size of at least 4 (ring {}, size {})",
                S::ring_tag(ctx),
                req.size
            ))
        })?
    } else if req.invertible {
        random_invertible(ctx, req.size, &mut rng)
    } else {
        random_matrix(ctx, req.size, &mut rng)
    };
    Ok(write_matrix(&m))
}

fn multiply<S: CliRing>(
    a: &DenseMatrix<S>,
    b_text: &str,
    b_path: &Path,
    strategy: MulStrategy,
    out: &mut dyn Write,
) -> Result<String, CliError> {
    let b = parse_like(a, b_text, b_path)?;
    let mut counter = OpCounter::new("mul");
    let p = a.embed().mul(&b.embed(), strategy, &mut counter)?;
    summary(out, &counter)?;
    Ok(write_matrix(&p.to_dense().leading(a.dim())))
}

fn invert<S: CliRing>(m: &DenseMatrix<S>, method: Method, out: &mut dyn Write) -> Result<String, CliError> {
    let block = m.embed();
    let mut counter = OpCounter::new("invert");
    let inv = match method {
        Method::Schur => schur_invert(&block, &mut counter)?,
        Method::Gram => S::invert_via_gram(&block, &mut counter)?,
        Method::Gv => S::invert_gv(&block, &mut counter)
            .ok_or_else(|| CliError::Usage(format!("--method gv needs a field, not {}", S::ring_tag(&m.ctx()))))??,
        Method::Auto => auto_invert(&block, &mut counter)?,
    };
    summary(out, &counter)?;
    Ok(write_matrix(&inv.to_dense().leading(m.dim())))
}

fn factor<S: CliRing>(
    m: &DenseMatrix<S>,
    prefix: &Path,
    randomized: bool,
    options: LuOptions,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let block = m.embed();
    let mut counter = OpCounter::new("lu");
    let result = if randomized {
        let r = randomized_lu(&block, options.seed, options.max_retries, &mut counter)?;
        LuResult {
            p: r.p,
            l: r.lower,
            u: r.upper,
            q: r.q,
            preconditioners: Some(Preconditioners { left: r.left, right: r.right, attempts: r.attempts }),
        }
    } else {
        lu_decompose_with(&block, options, &mut counter)?
    };
    write_file(&with_ext(prefix, "L"), &write_matrix(&result.l.body().to_dense()))?;
    write_file(&with_ext(prefix, "U"), &write_matrix(&result.u.body().to_dense()))?;
    let mut perm = format!("perm-rows {}\nperm-cols {}\n", one_based(&result.p.to_vector()), one_based(&result.q.to_vector()));
    match &result.preconditioners {
        Some(pre) => {
            write_file(&with_ext(prefix, "left"), &write_matrix(&pre.left.body().to_dense()))?;
            write_file(&with_ext(prefix, "right"), &write_matrix(&pre.right.body().to_dense()))?;
            perm.push_str("preconditioned\n");
            write_out(out, &format!("randomized: yes, attempts {}\n", pre.attempts))?;
        }
        None => write_out(out, "randomized: no\n")?,
    }
    write_file(&with_ext(prefix, "perm"), &perm)?;
    summary(out, &counter)
}

fn block_ldu<S: CliRing>(m: &DenseMatrix<S>, prefix: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let block = m.embed();
    if block.depth() == 0 {
        return Err(CliError::Usage("ldu needs a matrix of size at least 2".into()));
    }
    let mut counter = OpCounter::new("ldu");
    let f = ldu(&block, &mut counter)?;
    write_file(&with_ext(prefix, "Lb"), &write_matrix(&f.lower.to_dense()))?;
    write_file(&with_ext(prefix, "Db"), &write_matrix(&f.diagonal.to_dense()))?;
    write_file(&with_ext(prefix, "Ub"), &write_matrix(&f.upper.to_dense()))?;
    summary(out, &counter)
}

fn check<S: CliRing>(
    m: &DenseMatrix<S>,
    kind: CheckKind,
    rest: &[(PathBuf, String)],
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let parse = |k: usize| parse_like(m, &rest[k].1, &rest[k].0);
    let (expected, actual) = match kind {
        CheckKind::Inverse => {
            let n = parse(0)?;
            same_size(m, &n, &rest[0].0)?;
            (DenseMatrix::identity(m.dim(), &m.ctx()), m.mul(&n))
        }
        CheckKind::Ldu => {
            let (lb, db, ub) = (parse(0)?, parse(1)?, parse(2)?);
            let m = padded(m, lb.dim());
            for (f, (p, _)) in [&lb, &db, &ub].into_iter().zip(rest) {
                same_size(&m, f, p)?;
            }
            let product = lb.mul(&db).mul(&ub);
            (m, product)
        }
        CheckKind::Pluq => {
            let (l, u) = (parse(0)?, parse(1)?);
            let m = padded(m, l.dim());
            same_size(&m, &l, &rest[0].0)?;
            same_size(&m, &u, &rest[1].0)?;
            if let Some((i, j)) = triangular_violation(&l, true, true) {
                return fail(out, format!("L is not unit lower triangular at ({}, {})", i + 1, j + 1));
            }
            if let Some((i, j)) = triangular_violation(&u, false, false) {
                return fail(out, format!("U is not upper triangular at ({}, {})", i + 1, j + 1));
            }
            let perm_path = &rest[2].0;
            let perm = Permutations::parse(&rest[2].1, m.dim()).map_err(|e| CliError::Usage(format!("{}: {e}", perm_path.display())))?;
            let lu = l.mul(&u);
            let plu_q = DenseMatrix::from_fn(m.dim(), |i, j| lu.get(perm.rows[i], perm.cols[j]).clone());
            if perm.preconditioned {
                let left_path = perm_path.with_extension("left");
                let right_path = perm_path.with_extension("right");
                let left = parse_like(&m, &read(&left_path)?, &left_path)?;
                let right = parse_like(&m, &read(&right_path)?, &right_path)?;
                same_size(&m, &left, &left_path)?;
                same_size(&m, &right, &right_path)?;
                if triangular_violation(&left, false, true).is_some() || triangular_violation(&right, true, true).is_some() {
                    return fail(out, "preconditioners are not unit triangular".into());
                }
                (left.mul(&m).mul(&right), plu_q)
            } else {
                (m, plu_q)
            }
        }
    };
    match expected.first_mismatch(&actual) {
        None => write_out(out, "ok\n"),
        Some((i, j)) => fail(
            out,
            format!("first mismatch at row {}, column {}: expected {}, found {}", i + 1, j + 1, expected.get(i, j), actual.get(i, j)),
        ),
    }
}

fn fail(out: &mut dyn Write, message: String) -> Result<(), CliError> {
    write_out(out, &format!("FAIL {message}\n"))?;
    Err(CliError::Verify(message))
}

/// First entry breaking the triangular shape (and unit diagonal, if asked).
fn triangular_violation<S: Scalar>(m: &DenseMatrix<S>, lower: bool, unit: bool) -> Option<(usize, usize)> {
    let n = m.dim();
    (0..n * n).map(|k| (k / n, k % n)).find(|&(i, j)| {
        let x = m.get(i, j);
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => unit && !x.is_one(),
            std::cmp::Ordering::Less => lower && !x.is_zero(),
            std::cmp::Ordering::Greater => !lower && !x.is_zero(),
        }
    })
}

/// Zero-based permutation vectors read from a `.perm` file.
pub struct Permutations {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub preconditioned: bool,
}

impl Permutations {
    pub fn parse(text: &str, n: usize) -> Result<Self, String> {
        let mut rows = None;
        let mut cols = None;
        let mut preconditioned = false;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let mut words = line.split_whitespace();
            match words.next() {
                Some("perm-rows") => rows = Some(parse_perm(words, n)?),
                Some("perm-cols") => cols = Some(parse_perm(words, n)?),
                Some("preconditioned") => preconditioned = true,
                _ => return Err(format!("unexpected line `{line}`")),
            }
        }
        Ok(Permutations {
            rows: rows.ok_or("missing perm-rows")?,
            cols: cols.ok_or("missing perm-cols")?,
            preconditioned,
        })
    }
}

fn parse_perm<'a>(words: impl Iterator<Item = &'a str>, n: usize) -> Result<Vec<usize>, String> {
    let v: Vec<usize> = words
        .map(|w| w.parse::<usize>().ok().filter(|&k| (1..=n).contains(&k)).map(|k| k - 1).ok_or(format!("bad index `{w}`")))
        .collect::<Result<_, _>>()?;
    let mut seen = vec![false; n];
    for &k in &v {
        if std::mem::replace(&mut seen[k], true) {
            return Err(format!("index {} repeated", k + 1));
        }
    }
    if v.len() != n {
        return Err(format!("expected {n} indices, found {}", v.len()));
    }
    Ok(v)
}

fn one_based(v: &[usize]) -> String {
    v.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn padded<S: Scalar>(m: &DenseMatrix<S>, size: usize) -> DenseMatrix<S> {
    if size > m.dim() && size == m.dim().next_power_of_two() {
        m.embed().to_dense()
    } else {
        m.clone()
    }
}

fn same_size<S: Scalar>(m: &DenseMatrix<S>, other: &DenseMatrix<S>, path: &Path) -> Result<(), CliError> {
    if m.dim() != other.dim() {
        return Err(CliError::Usage(format!("{}: size {} does not match {}", path.display(), other.dim(), m.dim())));
    }
    Ok(())
}

/// Parses `text` over the ring of `like`.
fn parse_like<S: Scalar>(like: &DenseMatrix<S>, text: &str, path: &Path) -> Result<DenseMatrix<S>, CliError> {
    let m: DenseMatrix<S> = parse_matrix(text).map_err(|source| CliError::Format { path: path.into(), source })?;
    if m.ctx() != like.ctx() {
        let source = FormatError::RingMismatch { expected: S::ring_tag(&like.ctx()), found: S::ring_tag(&m.ctx()) };
        return Err(CliError::Format { path: path.into(), source });
    }
    Ok(m)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn read_any(path: &Path) -> Result<AnyMatrix, CliError> {
    AnyMatrix::parse(&read(path)?).map_err(|source| CliError::Format { path: path.into(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

/// Writes the matrix to `path`, or to `out` when no path is given.
fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => write_out(out, text),
    }
}

fn summary(out: &mut dyn Write, counter: &OpCounter) -> Result<(), CliError> {
    write_out(out, &format!("# {counter}\n"))?;
    for (label, tally) in counter.breakdown() {
        write_out(out, &format!("#   {label}: {tally}\n"))?;
    }
    Ok(())
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}
