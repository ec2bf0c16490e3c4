//! Command handlers for the `odolat` binary. Each handler returns the JSON
//! text to print, or a [`CliError`] carrying the exit code.

pub mod json;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::{Serialize, SerializeMap, Serializer};

use odolat::cocycle::{check_cocycle_identity, cocycle_from_dual_vector, verify_coordinate_sums, FiniteLevelSystem};
use odolat::exact::{good_basis, Lattice};
use odolat::odometer::{classify, is_dense, verify_witness, Config};
use odolat::polyarith::{factor, IntPolynomial};

use json::{parse_rational_str, MatrixFile, PolyFile, ReportFile, VerdictJson};

/// Exit code for malformed input.
pub const EXIT_INPUT: u8 = 2;
/// Exit code for a failed mathematical precondition.
pub const EXIT_PRECONDITION: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PRECONDITION, message: message.into() }
    }

    /// Maps a library error, prefixing the input it concerns.
    fn from_lib(context: &str, e: odolat::Error) -> Self {
        use odolat::Error as E;
        let message = format!("{context}: {e}");
        match e {
            E::NotInDual { .. } | E::NotACocycle { .. } | E::NotApplicable(_) | E::InconsistentReport(_) => {
                CliError::precondition(message)
            }
            _ => CliError::input(message),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "odolat", version, about = "Classify Z^d-odometers defined by integer matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: density, orbit equivalence, conjugacy, isomorphism and
    /// continuous orbit equivalence.
    Classify {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Density of G_A in Q^d.
    Density { a: PathBuf },
    /// Unimodular P with column i of M·P equal to a·e_i.
    GoodBasis {
        m: PathBuf,
        /// Column index, 1-based.
        #[arg(long, short)]
        i: usize,
    },
    /// Factor an integer polynomial over Z.
    Factor { poly: PathBuf },
    /// Build the cocycle realizing a dual vector h of the lattice G spanned
    /// by the columns of the matrix file.
    Cocycle {
        lattice: PathBuf,
        /// Comma-separated entries of h, e.g. "1/2,0".
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        /// Coordinate whose normalized basis defines the construction.
        #[arg(long, default_value_t = 1)]
        coordinate: usize,
        /// Check the cocycle identity and the per-coordinate sums.
        #[arg(long)]
        verify: bool,
        /// Box radius for the identity check.
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },
    /// Check a candidate T (integer or "p/q" entries) with T·G_A = G_B.
    Verify {
        t: PathBuf,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        depth: Option<u32>,
    },
}

#[derive(Debug, Args)]
pub struct SearchFlags {
    /// Truncation depth J (default from the determinants).
    #[arg(long)]
    pub depth: Option<u32>,
    /// Coefficient bound for witness searches.
    #[arg(long, default_value_t = 2)]
    pub search_bound: u32,
    /// Wall-clock budget for witness searches, in milliseconds.
    #[arg(long = "time-budget", default_value_t = 20_000)]
    pub time_budget_ms: u64,
    /// Only complete criteria; everything else is Unknown.
    #[arg(long)]
    pub fast_path_only: bool,
}

impl SearchFlags {
    pub fn config(&self) -> Config {
        Config {
            depth: self.depth,
            search_bound: self.search_bound,
            time_budget_ms: self.time_budget_ms,
            fast_path_only: self.fast_path_only,
        }
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Classify { a, b, search } => cmd_classify(a, b, &search.config()),
        Command::Density { a } => cmd_density(a),
        Command::GoodBasis { m, i } => cmd_good_basis(m, *i),
        Command::Factor { poly } => cmd_factor(poly),
        Command::Cocycle { lattice, h, coordinate, verify, radius } => {
            cmd_cocycle(lattice, h, *coordinate, *verify, *radius)
        }
        Command::Verify { t, a, b, depth } => cmd_verify(t, a, b, *depth),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::input(format!("stdin: {e}")));
    }
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<MatrixFile, CliError> {
    MatrixFile::parse(&read(path)?).map_err(|e| CliError::input(format!("{}: {}", path.display(), e.message)))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn cmd_classify(a: &Path, b: &Path, config: &Config) -> Result<String, CliError> {
    let ma = read_matrix(a)?.integer().map_err(|e| CliError::input(format!("{}: {}", a.display(), e.message)))?;
    let mb = read_matrix(b)?.integer().map_err(|e| CliError::input(format!("{}: {}", b.display(), e.message)))?;
    let report = classify(&ma, &mb, config).map_err(|e| CliError::from_lib("classify", e))?;
    let file = ReportFile::new(&report);
    file.check().map_err(CliError::precondition)?;
    Ok(to_json(&file))
}

#[derive(serde::Serialize)]
struct DensityOut {
    dense: String,
    #[serde(flatten)]
    verdict: VerdictJson,
}

pub fn cmd_density(a: &Path) -> Result<String, CliError> {
    let m = read_matrix(a)?.integer()?;
    let v = is_dense(&m).map_err(|e| CliError::from_lib("a", e))?;
    let mut verdict = VerdictJson::from(&v);
    let dense = std::mem::take(&mut verdict.answer);
    Ok(to_json(&DensityOut { dense, verdict }))
}

#[derive(serde::Serialize)]
struct GoodBasisOut {
    i: usize,
    a: String,
    #[serde(rename = "P")]
    p: Vec<Vec<String>>,
    #[serde(rename = "MP")]
    mp: Vec<Vec<String>>,
}

pub fn cmd_good_basis(m: &Path, i: usize) -> Result<String, CliError> {
    let m = read_matrix(m)?.integer()?;
    let (p, a) = good_basis(&m, i).map_err(|e| CliError::from_lib("good-basis", e))?;
    let mp = &m * &p;
    let rows = |x: &odolat::IntMatrix| x.to_rows().iter().map(|r| strings(r)).collect();
    Ok(to_json(&GoodBasisOut { i, a: a.to_string(), p: rows(&p), mp: rows(&mp) }))
}

#[derive(serde::Serialize)]
struct FactorEntry {
    coeffs: Vec<String>,
    multiplicity: u32,
    display: String,
}

#[derive(serde::Serialize)]
struct FactorOut {
    polynomial: String,
    unit: i8,
    factors: Vec<FactorEntry>,
    irreducible: bool,
}

pub fn cmd_factor(poly: &Path) -> Result<String, CliError> {
    let coeffs = PolyFile::parse(&read(poly)?)?;
    let f = IntPolynomial::new(coeffs);
    if f.is_zero() {
        return Err(CliError::input("coeffs: the zero polynomial has no factorization"));
    }
    let fl = factor(&f);
    let factors = fl
        .factors()
        .iter()
        .map(|(g, m)| FactorEntry { coeffs: strings(g.coeffs()), multiplicity: *m, display: g.to_string() })
        .collect();
    Ok(to_json(&FactorOut { polynomial: f.to_string(), unit: fl.unit(), factors, irreducible: fl.is_irreducible() }))
}

/// Coset representative → generator values, in coset order.
struct TableOut(Vec<(String, Vec<String>)>);

impl Serialize for TableOut {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(serde::Serialize)]
struct CocycleOut {
    index: String,
    tau: Vec<String>,
    table: TableOut,
}

#[derive(serde::Serialize)]
struct CocycleVerifyOut {
    identity: bool,
    tau: Vec<String>,
    eform2: bool,
}

pub fn cmd_cocycle(lattice: &Path, h: &str, coordinate: usize, verify: bool, radius: u32) -> Result<String, CliError> {
    let basis = read_matrix(lattice)?.integer()?;
    let g = Lattice::from_int_basis(&basis).map_err(|e| CliError::from_lib("lattice", e))?;
    let h: Vec<BigRational> = h
        .split(',')
        .enumerate()
        .map(|(k, s)| parse_rational_str(s).map_err(|e| CliError::input(format!("h[{k}]: {e}"))))
        .collect::<Result<_, _>>()?;
    if h.len() != g.dim() {
        return Err(CliError::input(format!("h: expected {} entries, found {}", g.dim(), h.len())));
    }
    let sys = FiniteLevelSystem::new(&g).map_err(|e| CliError::from_lib("lattice", e))?;
    let theta = cocycle_from_dual_vector(&sys, &h, coordinate).map_err(|e| CliError::from_lib("h", e))?;
    let tau = strings(&theta.tau());
    if verify {
        let identity = check_cocycle_identity(&theta, radius).is_none();
        let eform2 = theta.tau() == h
            && verify_coordinate_sums(&sys, &h).map_err(|e| CliError::from_lib("h", e))?.iter().all(|c| c.holds());
        return Ok(to_json(&CocycleVerifyOut { identity, tau, eform2 }));
    }
    let table = (0..sys.index())
        .map(|x| (strings(sys.rep(x)).join(","), strings(&theta.table()[x])))
        .collect();
    Ok(to_json(&CocycleOut { index: BigInt::from(sys.index()).to_string(), tau, table: TableOut(table) }))
}

pub fn cmd_verify(t: &Path, a: &Path, b: &Path, depth: Option<u32>) -> Result<String, CliError> {
    let t = read_matrix(t)?.rational()?;
    let ma = read_matrix(a)?.integer()?;
    let mb = read_matrix(b)?.integer()?;
    let depth = match depth {
        Some(j) => j,
        None => odolat::odometer::default_depth(&ma, &mb).map_err(|e| CliError::from_lib("verify", e))?,
    };
    let v = verify_witness(&t, &ma, &mb, depth).map_err(|e| CliError::from_lib("verify", e))?;
    Ok(to_json(&VerdictJson::from(&v)))
}
