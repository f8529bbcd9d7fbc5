//! Command-line front end. Every command writes one JSON document.

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::fastmul::{mul, MulConfig, MulVariant};
use crate::inversion::{
    det_only_with, ff_invert_v1, ff_invert_v2, CancelPolicy, FFResult, InvertConfig,
};
use crate::matrix::{MatrixJson, PadMode, PolyMatrix};
use crate::oracle::{bareiss_det, cofactor_adjugate, ADJUGATE_ORACLE_LIMIT};
use crate::poly::{Monomial, Ring};
use crate::profile::{DegreeProfile, ProfileReport};

pub const SEED_ENV: &str = "POLYFRAC_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_SINGULAR: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_NOT_DIVISIBLE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "polyfrac",
    version,
    about = "Fraction-free inversion of polynomial matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a random matrix of uniform degree.
    Gen {
        #[command(flatten)]
        spec: GenSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute d1 * Adj(A) and Det(A).
    Invert(RunArgs),
    /// Compute Det(A) through the recursion.
    Det(RunArgs),
    /// Multiply two matrices.
    Mul {
        #[command(flatten)]
        run: RunArgs,
        /// Right factor; generated from seed + 1 when absent.
        #[arg(long)]
        right: Option<PathBuf>,
    },
    /// Invert and report the recursion profile with its degree checks.
    Profile(RunArgs),
    /// Invert and check the result against the brute-force oracles.
    Verify(RunArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GenSpec {
    /// Matrix size.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Number of variables.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Total degree of every entry.
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 9)]
    pub coeff_bound: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    V1,
    V2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CancelArg {
    None,
    Theorem,
    Gcd,
    Hybrid,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PadArg {
    UpperLeft,
    LowerRight,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Matrix JSON file (`-` for stdin). Without it a matrix is generated.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub gen: GenSpec,
    #[arg(long, value_enum, default_value_t = CancelArg::Hybrid)]
    pub cancel: CancelArg,
    #[arg(long, value_enum, default_value_t = AlgoArg::V2)]
    pub algo: AlgoArg,
    /// Sizes at or below this use schoolbook multiplication.
    #[arg(long, default_value_t = 2)]
    pub cutoff: usize,
    /// Use schoolbook multiplication throughout.
    #[arg(long)]
    pub naive: bool,
    #[arg(long, value_enum, default_value_t = PadArg::UpperLeft)]
    pub pad: PadArg,
    /// Check the result against the oracles.
    #[arg(long)]
    pub verify: bool,
    /// Include removed contents in the profile.
    #[arg(long)]
    pub record_contents: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SingularPivot { .. } => EXIT_SINGULAR,
            Error::NotDivisible { .. } | Error::DivisionByZero => EXIT_NOT_DIVISIBLE,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(msg: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message: msg.into(),
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Variable names used by the generator.
pub fn default_vars(m: usize) -> Vec<String> {
    match m {
        1..=3 => ["x", "y", "z"][..m].iter().map(|s| s.to_string()).collect(),
        _ => (1..=m).map(|i| format!("x{i}")).collect(),
    }
}

fn monomials(m: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(m, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, d, &mut Vec::new(), &mut out);
    out
}

/// Random `n x n` matrix whose entries use every monomial of degree at most
/// `d`, each with a nonzero coefficient in `[-bound, bound]`.
pub fn generate(spec: &GenSpec) -> crate::Result<PolyMatrix> {
    if spec.n == 0 || spec.m == 0 || spec.coeff_bound == 0 {
        return Err(Error::InvalidArgument(
            "n, m and coeff-bound must be positive".into(),
        ));
    }
    let ring = Ring::new(&default_vars(spec.m))?;
    let monos = monomials(spec.m, spec.d);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let b = spec.coeff_bound as i64;
    Ok(PolyMatrix::from_fn(&ring, spec.n, |_, _| {
        let mut p = ring.zero();
        for e in &monos {
            let mut c = rng.gen_range(-b..b);
            if c >= 0 {
                c += 1;
            }
            p = &p + &ring.term(Monomial::new(e), BigInt::from(c));
        }
        p
    }))
}

fn seed_override(spec: &GenSpec) -> CliResult<GenSpec> {
    let mut spec = spec.clone();
    if let Ok(s) = std::env::var(SEED_ENV) {
        spec.seed = s
            .trim()
            .parse()
            .map_err(|_| input_error(format!("{SEED_ENV} must be an unsigned integer")))?;
    }
    Ok(spec)
}

fn read_matrix(path: &PathBuf) -> CliResult<PolyMatrix> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| input_error(format!("reading {}: {e}", path.display())))?
    };
    Ok(PolyMatrix::from_json_str(&text)?)
}

fn load(run: &RunArgs) -> CliResult<(PolyMatrix, GenSpec)> {
    let spec = seed_override(&run.gen)?;
    let a = match &run.input {
        Some(p) => read_matrix(p)?,
        None => generate(&spec)?,
    };
    Ok((a, spec))
}

fn config(run: &RunArgs, seed: u64) -> CliResult<InvertConfig> {
    let mul = if run.naive {
        MulConfig::new(run.cutoff, MulVariant::NaiveOnly)?
    } else {
        MulConfig::strassen(run.cutoff)?
    };
    Ok(InvertConfig {
        cancel: match run.cancel {
            CancelArg::None => CancelPolicy::None,
            CancelArg::Theorem => CancelPolicy::Theorem,
            CancelArg::Gcd => CancelPolicy::Gcd,
            CancelArg::Hybrid => CancelPolicy::Hybrid,
        },
        mul,
        pad: match run.pad {
            PadArg::UpperLeft => PadMode::UpperLeft,
            PadArg::LowerRight => PadMode::LowerRight,
        },
        seed,
        record_contents: run.record_contents,
    })
}

fn invert(run: &RunArgs, a: &PolyMatrix, cfg: &InvertConfig) -> CliResult<FFResult> {
    let one = a.ring().one();
    Ok(match run.algo {
        AlgoArg::V1 => ff_invert_v1(a, &one, cfg)?,
        AlgoArg::V2 => ff_invert_v2(a, &one, cfg)?,
    })
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub verified: bool,
    pub left_identity: bool,
    pub right_identity: bool,
    pub det_matches_oracle: bool,
    /// Only checked for sizes within the cofactor oracle's limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjugate_matches_oracle: Option<bool>,
}

/// Check `A B = B A = Det(A) I` and compare with the oracles. Assumes `d1 = 1`.
pub fn verify(a: &PolyMatrix, res: &FFResult) -> crate::Result<Verification> {
    let n = a.size();
    let scalar = PolyMatrix::scalar(a.ring(), n, &res.det);
    let cfg = MulConfig::default();
    let left_identity = mul(a, &res.adj_scaled, &cfg)? == scalar;
    let right_identity = mul(&res.adj_scaled, a, &cfg)? == scalar;
    let det_matches_oracle = bareiss_det(a) == res.det;
    let adjugate_matches_oracle = if n <= ADJUGATE_ORACLE_LIMIT {
        Some(cofactor_adjugate(a)? == res.adj_scaled)
    } else {
        None
    };
    Ok(Verification {
        verified: left_identity
            && right_identity
            && det_matches_oracle
            && adjugate_matches_oracle != Some(false),
        left_identity,
        right_identity,
        det_matches_oracle,
        adjugate_matches_oracle,
    })
}

#[derive(Serialize)]
struct InvertOutput {
    adjugate: MatrixJson,
    det: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
    profile: DegreeProfile,
}

#[derive(Serialize)]
struct DetOutput {
    det: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

#[derive(Serialize)]
struct VerifyOutput {
    n: usize,
    #[serde(flatten)]
    verification: Verification,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output types serialize");
    s.push('\n');
    s
}

fn emit(out: &Option<PathBuf>, text: String) -> CliResult<String> {
    match out {
        Some(p) => {
            fs::write(p, &text)
                .map_err(|e| input_error(format!("writing {}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Run one command and return what it prints on standard output.
pub fn execute(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Gen { spec, out } => {
            let spec = seed_override(spec)?;
            let a = generate(&spec)?;
            emit(out, to_json(&a.to_json()))
        }
        Command::Invert(run) => {
            let (a, spec) = load(run)?;
            let cfg = config(run, spec.seed)?;
            let res = invert(run, &a, &cfg)?;
            let verified = if run.verify {
                Some(verify(&a, &res)?.verified)
            } else {
                None
            };
            let out = InvertOutput {
                adjugate: res.adj_scaled.to_json(),
                det: res.det.to_string(),
                verified,
                profile: res.profile,
            };
            emit(&run.out, to_json(&out))
        }
        Command::Det(run) => {
            let (a, spec) = load(run)?;
            let cfg = config(run, spec.seed)?;
            let (det, _) = det_only_with(&a, &cfg)?;
            let verified = run.verify.then(|| bareiss_det(&a) == det);
            emit(
                &run.out,
                to_json(&DetOutput {
                    det: det.to_string(),
                    verified,
                }),
            )
        }
        Command::Mul { run, right } => {
            let (a, spec) = load(run)?;
            let b = match right {
                Some(p) => read_matrix(p)?,
                None => generate(&GenSpec {
                    seed: spec.seed.wrapping_add(1),
                    ..spec.clone()
                })?,
            };
            let cfg = config(run, spec.seed)?;
            let c = mul(&a, &b, &cfg.mul)?;
            emit(&run.out, to_json(&c.to_json()))
        }
        Command::Profile(run) => {
            let (a, spec) = load(run)?;
            let cfg = config(run, spec.seed)?;
            let res = invert(run, &a, &cfg)?;
            let report: ProfileReport = res.profile.report();
            emit(&run.out, to_json(&report))
        }
        Command::Verify(run) => {
            let (a, spec) = load(run)?;
            let cfg = config(run, spec.seed)?;
            let res = invert(run, &a, &cfg)?;
            let v = verify(&a, &res)?;
            emit(
                &run.out,
                to_json(&VerifyOutput {
                    n: a.size(),
                    verification: v,
                }),
            )
        }
    }
}

/// Parse arguments and run. Returns the exit code and the text for stdout
/// (on success) or stderr (on failure).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    match execute(&cli) {
        Ok(s) => (EXIT_OK, s),
        Err(e) => (e.code, e.message),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, m: usize, d: u32, seed: u64) -> GenSpec {
        GenSpec {
            n,
            m,
            d,
            coeff_bound: 5,
            seed,
        }
    }

    #[test]
    fn generator_is_uniform_and_seeded() {
        let a = generate(&spec(3, 2, 2, 7)).unwrap();
        for p in a.entries() {
            assert_eq!(p.total_degree().finite(), Some(2));
            assert_eq!(p.num_terms(), 6);
        }
        assert_eq!(a, generate(&spec(3, 2, 2, 7)).unwrap());
        assert_ne!(a, generate(&spec(3, 2, 2, 8)).unwrap());
        let c = generate(&spec(2, 1, 0, 7)).unwrap();
        assert!(c.entries().all(|p| p.is_constant() && !p.is_zero()));
        assert!(generate(&spec(0, 1, 1, 0)).is_err());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(1, 3).len(), 4);
        assert_eq!(monomials(2, 2).len(), 6);
        assert_eq!(monomials(3, 1).len(), 4);
    }

    #[test]
    fn exit_codes() {
        let (code, _) = run(["polyfrac", "invert", "--input", "/nonexistent/file.json"]);
        assert_eq!(code, EXIT_INPUT);
        let (code, _) = run(["polyfrac", "frobnicate"]);
        assert_eq!(code, EXIT_INPUT);
        let (code, out) = run(["polyfrac", "det", "--n", "2", "--seed", "3"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(
            CliError::from(Error::SingularPivot {
                path: Default::default()
            })
            .code
                == EXIT_SINGULAR
        );
        assert!(CliError::from(Error::not_divisible()).code == EXIT_NOT_DIVISIBLE);
    }
}
