use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cmhl", version, about = "Faltings heights of CM types via Dirichlet L-functions")]
pub struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "CMHL_PREC", default_value_t = 256)]
    pub prec: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized commands; echoed in every report.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Directory for cached unit-group tables.
    #[arg(long, global = true, env = "CMHL_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the Dirichlet characters mod n.
    Characters(CharactersArgs),
    /// Evaluate L(χ, s) or its derivative in s.
    Lfun(LfunArgs),
    /// Height of a CM type by both routes, with the calibration constant.
    Height(HeightArgs),
    /// Equivariant torsion: closed form against the spectral oracle.
    Torsion(TorsionArgs),
    /// Search for an integer relation between a target and a basis.
    Relation(RelationArgs),
    /// Run a bundled verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CharactersArgs {
    #[arg(long, short = 'n')]
    pub modulus: u64,
    #[arg(long, conflicts_with = "even")]
    pub odd: bool,
    #[arg(long)]
    pub even: bool,
}

#[derive(Debug, Args)]
pub struct LfunArgs {
    #[arg(long, short = 'n')]
    pub modulus: u64,
    /// Character index as listed by `characters`.
    #[arg(long = "char")]
    pub character: usize,
    /// Real part of s; accepts expressions such as `1/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub s_im: String,
    #[arg(long)]
    pub derivative: bool,
}

#[derive(Debug, Args)]
pub struct HeightArgs {
    #[arg(long, short = 'n')]
    pub modulus: u64,
    /// Residues of the CM type, e.g. `1,2`.
    #[arg(long = "type", value_delimiter = ',', required = true)]
    pub residues: Vec<u64>,
    /// Generators of the subgroup H fixing the CM subfield.
    #[arg(long, value_delimiter = ',')]
    pub subgroup: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct TorsionArgs {
    /// Eigenvalue weights ν_j, one per pair; expressions such as `1/3` allowed.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub nu: Vec<String>,
    /// Rotation angles as fractions of a full turn, e.g. `1/2` for π.
    #[arg(long, value_delimiter = ',', required = true)]
    pub angle: Vec<String>,
    /// The trace `L_Tr` as a Gaussian rational, e.g. `1+0i` or `-2i`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub ltr: String,
    #[arg(long)]
    pub theorem_sign: bool,
}

#[derive(Debug, Args)]
pub struct RelationArgs {
    /// Expression for the target value.
    #[arg(long, allow_hyphen_values = true)]
    pub target: String,
    /// Comma-separated basis expressions.
    #[arg(long, conflicts_with = "modulus", required_unless_present = "modulus")]
    pub basis: Option<String>,
    /// Use the log-span basis of the primes dividing n.
    #[arg(long, short = 'n')]
    pub modulus: Option<u64>,
    /// Largest coefficient norm searched.
    #[arg(long)]
    pub max_coeff: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of functional-equation, cotangent, half-sum, waslem,
    /// system-vs-character, torsion, invariance, all.
    pub suite: String,
    #[arg(long = "modulus", short = 'n', value_delimiter = ',')]
    pub moduli: Vec<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub theorem_sign: bool,
}
