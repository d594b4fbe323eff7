//! `idemat` — exact arithmetic for idempotent matrices on the command line.
//!
//! One subcommand per library capability: verification (`check`),
//! enumeration over 𝔽_p (`enumerate`), Hasse diagrams (`hasse`), counting
//! (`count`), Smith normal form (`snf`), the E = S·T factorization
//! (`factor`), the AC + BD = I block construction (`build`), Kronecker
//! products of scaled idempotents (`kron`), and the dimension of the
//! idempotent variety (`dim`).
//!
//! Matrices travel in the text grammar (`<ring> <rows> <cols>` header, one
//! row per line) or, with `--json`, in its JSON mirror. Exit codes: 0 on
//! success, 1 on domain errors (with a one-line diagnostic on stderr), 2 on
//! usage and parse errors.

use std::fmt::Display;
use std::io::{ErrorKind, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use idemat::ring::Scalar;
use idemat::{
    block_build_idempotent, buchberger, build_hasse_with, enumerate_idempotents_with, format,
    idempotent_count, idempotent_ideal, idempotent_snf_factor, is_idempotent, kron_idempotent,
    leading_term_ideal, linalg, smith_normal_form, BlockBuilderInput, Error, Idempotent, MPoly,
    Matrix, Monomial, MonomialOrder, OrderKind, Ring, DEFAULT_ENUM_BUDGET, DEFAULT_PAIR_BUDGET,
};
use serde_json::{json, Value};

/// Environment variable supplying the default for `--threads`.
const THREADS_ENV: &str = "IDEMAT_THREADS";

#[derive(Parser)]
#[command(
    name = "idemat",
    version,
    about = "Exact arithmetic for idempotent matrices: verification, enumeration over \
             finite fields, Hasse diagrams, Smith normal form, block and Kronecker \
             constructions, and variety dimension."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify that a matrix is idempotent and report its rank.
    ///
    /// Reads one matrix from stdin (or --input). Prints `idempotent rank=r`
    /// and exits 0, or prints `not idempotent` and exits 1.
    Check(CheckArgs),
    /// Stream every idempotent of M_n(F_p), one block per matrix,
    /// rank-ascending, in a deterministic canonical order.
    Enumerate(EnumerateArgs),
    /// Hasse diagram of the poset of idempotents of M_n(F_p) under
    /// e ≤ f ⟺ ef = e = fe, as DOT or JSON.
    Hasse(HasseArgs),
    /// Count rank-r idempotents in M_n(F_q): [n r]_q · q^{r(n−r)}.
    /// Without --r, the total over all ranks.
    Count(CountArgs),
    /// Smith normal form: prints P, D, Q with P·A·Q = D (text mode prints
    /// the three matrices as a blank-line-separated stream).
    Snf(IoArgs),
    /// Factor an idempotent E as S·T with T·S = diag(I_ell, O); emits S, T,
    /// and ell in one JSON document.
    Factor(IoArgs),
    /// Assemble the idempotent (CA CB / DA DB) from blocks A, B, C, D with
    /// AC + BD = I, read as a stream of four matrices.
    Build(IoArgs),
    /// Kronecker product of two reciprocally scaled idempotents
    /// (A² = kA, B² = k⁻¹B), read as a stream of two matrices.
    Kron(IoArgs),
    /// Dimension of the variety of idempotent n×n matrices over the
    /// rationals, via a reduced Gröbner basis; emits JSON.
    Dim(DimArgs),
}

#[derive(Args)]
struct IoArgs {
    /// Read input from this file instead of stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Use the JSON mirror of the matrix format for input and output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Require the matrix to live over this ring (token as in the text
    /// header: Z, Q, Fp:<p>, Zx, Fpx:<p>, Qx).
    #[arg(long)]
    ring: Option<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Matrix dimension n.
    #[arg(long)]
    n: usize,
    /// Field characteristic (prime).
    #[arg(long)]
    p: u64,
    /// Abort if the poset holds more than this many elements.
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    max: u64,
    /// Worker threads; the output is identical for any count.
    /// Defaults to the IDEMAT_THREADS environment variable, then 1.
    #[arg(long)]
    threads: Option<usize>,
    /// Emit one JSON object per line instead of text blocks.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum HasseFormat {
    Dot,
    Json,
}

#[derive(Args)]
struct HasseArgs {
    /// Matrix dimension n.
    #[arg(long)]
    n: usize,
    /// Field characteristic (prime).
    #[arg(long)]
    p: u64,
    /// Output format.
    #[arg(long, value_enum, default_value = "dot")]
    format: HasseFormat,
    /// Abort if the poset holds more than this many elements.
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    max: u64,
    /// Worker threads; the output is identical for any count.
    /// Defaults to the IDEMAT_THREADS environment variable, then 1.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct CountArgs {
    /// Matrix dimension n.
    #[arg(long)]
    n: u32,
    /// Rank r; omit for the total over all ranks.
    #[arg(long)]
    r: Option<u32>,
    /// Field size q ≥ 2.
    #[arg(long)]
    q: u64,
}

#[derive(Args)]
struct DimArgs {
    /// Matrix dimension n.
    #[arg(long)]
    n: usize,
    /// Intersect with the trace hyperplane tr(X) = r.
    #[arg(long)]
    slice: Option<i64>,
    /// Cap on Buchberger S-polynomial pairs.
    #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
    budget: u64,
    /// Include the reduced Gröbner basis in the output.
    #[arg(long)]
    basis: bool,
}

/// A diagnostic plus the exit code its class carries.
struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn domain(e: impl Display) -> Failure {
        Failure {
            message: e.to_string(),
            code: 1,
        }
    }

    fn usage(e: impl Display) -> Failure {
        Failure {
            message: e.to_string(),
            code: 2,
        }
    }

    /// Library errors split by class: malformed input text is a usage
    /// error, everything else is a domain error on well-formed data.
    fn lib(e: Error) -> Failure {
        match e {
            Error::Parse { .. } => Failure::usage(e),
            other => Failure::domain(other),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Check(args) => cmd_check(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Hasse(args) => cmd_hasse(args),
        Command::Count(args) => cmd_count(args),
        Command::Snf(args) => cmd_snf(args),
        Command::Factor(args) => cmd_factor(args),
        Command::Build(args) => cmd_build(args),
        Command::Kron(args) => cmd_kron(args),
        Command::Dim(args) => cmd_dim(args),
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    let mut buf = String::new();
    match path {
        Some(p) => {
            buf = std::fs::read_to_string(p)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", p.display())))?;
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(buf)
}

/// Read exactly `want` matrices, honoring the `--json` direction. JSON input
/// is a single document: one matrix object, or an array of them.
fn read_matrices(io: &IoArgs, want: usize) -> Result<Vec<Matrix>, Failure> {
    let text = read_input(&io.input)?;
    let mats = if io.json {
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("malformed JSON input: {e}")))?;
        match &v {
            Value::Array(items) => items
                .iter()
                .map(format::from_json)
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::lib)?,
            _ => vec![format::from_json(&v).map_err(Failure::lib)?],
        }
    } else {
        format::parse_text_stream(&text).map_err(Failure::lib)?
    };
    if mats.len() != want {
        return Err(Failure::usage(format!(
            "expected {want} matrix input{}, got {}",
            if want == 1 { "" } else { "s" },
            mats.len()
        )));
    }
    Ok(mats)
}

fn read_matrix(io: &IoArgs) -> Result<Matrix, Failure> {
    Ok(read_matrices(io, 1)?.pop().expect("length checked"))
}

fn emit(s: impl Display) -> Result<(), Failure> {
    writeln!(std::io::stdout(), "{s}")
        .map_err(|e| Failure::domain(format!("cannot write to stdout: {e}")))
}

fn emit_matrix(m: &Matrix, json: bool) -> Result<(), Failure> {
    if json {
        emit(format::to_json(m).map_err(Failure::lib)?)
    } else {
        // to_text already ends in a newline; print without adding another.
        write!(
            std::io::stdout(),
            "{}",
            format::to_text(m).map_err(Failure::lib)?
        )
        .map_err(|e| Failure::domain(format!("cannot write to stdout: {e}")))
    }
}

fn threads_or_default(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
    })
    .filter(|&t| t >= 1)
    .unwrap_or(1)
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode, Failure> {
    let m = read_matrix(&args.io)?;
    if let Some(token) = &args.ring {
        let want = Ring::from_token(token).map_err(Failure::usage)?;
        if m.ring() != &want {
            return Err(Failure::domain(format!(
                "matrix ring {} does not match --ring {}",
                m.ring(),
                want
            )));
        }
    }
    let idempotent = is_idempotent(&m).map_err(Failure::lib)?;
    if idempotent {
        let rank = linalg::rank(&m).map_err(Failure::lib)?;
        if args.io.json {
            emit(json!({ "idempotent": true, "rank": rank }))?;
        } else {
            emit(format!("idempotent rank={rank}"))?;
        }
        Ok(ExitCode::SUCCESS)
    } else {
        if args.io.json {
            emit(json!({ "idempotent": false }))?;
        } else {
            emit("not idempotent")?;
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<ExitCode, Failure> {
    let threads = threads_or_default(args.threads);
    let elements =
        enumerate_idempotents_with(args.n, args.p, args.max, threads).map_err(Failure::lib)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for e in &elements {
        let block = if args.json {
            let mut s = format::to_json(e.matrix())
                .map_err(Failure::lib)?
                .to_string();
            s.push('\n');
            s
        } else {
            let mut s = format::to_text(e.matrix()).map_err(Failure::lib)?;
            s.push('\n');
            s
        };
        if let Err(e) = out.write_all(block.as_bytes()) {
            // A consumer such as `head` closing the pipe is a normal way to
            // stop the stream, not a failure.
            if e.kind() == ErrorKind::BrokenPipe {
                return Ok(ExitCode::SUCCESS);
            }
            return Err(Failure::domain(format!("cannot write to stdout: {e}")));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hasse(args: HasseArgs) -> Result<ExitCode, Failure> {
    let threads = threads_or_default(args.threads);
    let diagram = build_hasse_with(args.n, args.p, args.max, threads).map_err(Failure::lib)?;
    match args.format {
        HasseFormat::Dot => {
            // to_dot ends in a newline already.
            write!(std::io::stdout(), "{}", diagram.to_dot())
                .map_err(|e| Failure::domain(format!("cannot write to stdout: {e}")))?;
        }
        HasseFormat::Json => emit(diagram.to_json().map_err(Failure::lib)?)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_count(args: CountArgs) -> Result<ExitCode, Failure> {
    let total = match args.r {
        Some(r) => idempotent_count(args.n, r, args.q).map_err(Failure::lib)?,
        None => {
            let mut sum = num_bigint::BigInt::from(0);
            for r in 0..=args.n {
                sum += idempotent_count(args.n, r, args.q).map_err(Failure::lib)?;
            }
            sum
        }
    };
    emit(total)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_snf(args: IoArgs) -> Result<ExitCode, Failure> {
    let m = read_matrix(&args)?;
    let snf = smith_normal_form(&m).map_err(Failure::lib)?;
    if args.json {
        emit(json!({
            "p": format::to_json(snf.p()).map_err(Failure::lib)?,
            "d": format::to_json(snf.d()).map_err(Failure::lib)?,
            "q": format::to_json(snf.q()).map_err(Failure::lib)?,
            "p_inv": format::to_json(snf.p_inv()).map_err(Failure::lib)?,
            "q_inv": format::to_json(snf.q_inv()).map_err(Failure::lib)?,
        }))?;
    } else {
        // A parseable stream: P, then D, then Q, with P·A·Q = D.
        for (i, mat) in [snf.p(), snf.d(), snf.q()].into_iter().enumerate() {
            if i > 0 {
                emit("")?;
            }
            emit_matrix(mat, false)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_factor(args: IoArgs) -> Result<ExitCode, Failure> {
    let m = read_matrix(&args)?;
    let e = Idempotent::new(m).map_err(Failure::lib)?;
    let f = idempotent_snf_factor(&e).map_err(Failure::lib)?;
    emit(json!({
        "ell": f.ell(),
        "s": format::to_json(f.s()).map_err(Failure::lib)?,
        "t": format::to_json(f.t()).map_err(Failure::lib)?,
    }))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_build(args: IoArgs) -> Result<ExitCode, Failure> {
    let mut mats = read_matrices(&args, 4)?;
    let d = mats.pop().expect("length checked");
    let c = mats.pop().expect("length checked");
    let b = mats.pop().expect("length checked");
    let a = mats.pop().expect("length checked");
    let input = BlockBuilderInput::new(a, b, c, d).map_err(Failure::lib)?;
    let e = block_build_idempotent(&input).map_err(Failure::lib)?;
    emit_matrix(e.matrix(), args.json)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_kron(args: IoArgs) -> Result<ExitCode, Failure> {
    let mut mats = read_matrices(&args, 2)?;
    let b = mats.pop().expect("length checked");
    let a = mats.pop().expect("length checked");
    let e = kron_idempotent(&a, &b).map_err(Failure::lib)?;
    emit_matrix(e.matrix(), args.json)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_dim(args: DimArgs) -> Result<ExitCode, Failure> {
    if args.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let num_vars = args.n * args.n;
    let ideal = idempotent_ideal(args.n, args.slice).map_err(Failure::lib)?;
    let order = MonomialOrder::new(OrderKind::Grlex, num_vars);
    let gb = buchberger(&ideal, &order, args.budget).map_err(Failure::lib)?;
    let lt = leading_term_ideal(&gb);
    let dimension = idemat::monomial_ideal_dimension(&lt, num_vars).map_err(Failure::lib)?;

    let ring = ideal.ring();
    let mono_text = |m: &Monomial| -> String {
        ring.format_scalar(&Scalar::MPoly(MPoly::term(
            num_vars,
            m.clone(),
            Ring::rationals().one(),
        )))
    };
    let mut doc = json!({
        "n": args.n,
        "num_vars": num_vars,
        "order": "grlex",
        "slice": args.slice,
        "dimension": dimension,
        "basis_size": gb.len(),
        "pairs_processed": gb.pairs_processed(),
        "leading_terms": lt.iter().map(mono_text).collect::<Vec<_>>(),
    });
    if args.basis {
        let basis: Vec<String> = gb
            .elements()
            .iter()
            .map(|g| ring.format_scalar(&Scalar::MPoly(g.clone())))
            .collect();
        doc["basis"] = json!(basis);
    }
    emit(doc)?;
    Ok(ExitCode::SUCCESS)
}
