use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact experiments with valid compositions, Carlitz power sums and Newton
/// polygons of the Goss zeta function of F_q[T].
#[derive(Debug, Parser)]
#[command(name = "goss-zeta", version)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Characteristic p (prime).
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,

    /// Extension degree s, so q = p^s.
    #[arg(long, global = true, default_value_t = 1)]
    pub s: u32,

    /// Cap on the tuples a brute-force enumeration may visit.
    #[arg(long, global = true, env = "GOSSZETA_BUDGET", default_value_t = goss_zeta::DEFAULT_BUDGET)]
    pub budget: u128,

    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    V,
    U,
}

impl From<ModeArg> for goss_zeta::Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::V => goss_zeta::Mode::V,
            ModeArg::U => goss_zeta::Mode::U,
        }
    }
}

#[derive(Debug, Args)]
pub struct CompositionArgs {
    /// Number of parts.
    #[arg(long)]
    pub m: usize,

    /// The integer N, in decimal or as a base-p numeral like 11212_3.
    #[arg(long)]
    pub n: String,

    /// V requires a positive last part; U allows zero.
    #[arg(long, value_enum, default_value_t = ModeArg::V)]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Field shapes to sweep, written P^S; repeatable. Defaults to --p/--s.
    #[arg(long = "shape", value_name = "P^S")]
    pub shapes: Vec<String>,

    #[arg(long)]
    pub m_min: Option<usize>,

    #[arg(long)]
    pub m_max: Option<usize>,

    /// Single part count, shorthand for --m-min M --m-max M.
    #[arg(long)]
    pub m: Option<usize>,

    #[arg(long)]
    pub n_min: Option<u128>,

    #[arg(long)]
    pub n_max: Option<u128>,

    /// Single N, shorthand for --n-min N --n-max N.
    #[arg(long)]
    pub n: Option<u128>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every member of V_m(N) or U_m(N) with its weight.
    Enumerate(CompositionArgs),

    /// The greedy element of V_m(N) or U_m(N).
    Greedy(CompositionArgs),

    /// The weight-maximising element, by exhaustive search, next to the greedy one.
    Optimal(CompositionArgs),

    /// Membership of Γ(N), or of a given vector, in 𝔍, I_m, J_m and J_m^i.
    Member {
        /// Integer whose Γ-vector is tested.
        #[arg(long, conflicts_with = "gamma", required_unless_present = "gamma")]
        n: Option<String>,

        /// Comma-separated vector of length s.
        #[arg(long)]
        gamma: Option<String>,

        #[arg(long, default_value_t = 1)]
        m: usize,
    },

    /// Check that greedy equals the unique optimum on every cell of a grid.
    #[command(name = "verify-theorem12")]
    VerifyTheorem12 {
        #[command(flatten)]
        grid: GridArgs,

        #[arg(long, value_enum, default_value_t = ModeArg::V)]
        mode: ModeArg,
    },

    /// Check the vanishing, degree and multinomial statements for power sums on a grid.
    #[command(name = "verify-theorem14")]
    VerifyTheorem14 {
        /// Field shapes to sweep, written P^S; repeatable. Defaults to --p/--s.
        #[arg(long = "shape", value_name = "P^S")]
        shapes: Vec<String>,

        #[arg(long, default_value_t = 2)]
        k_max: usize,

        #[arg(long, default_value_t = 100)]
        n_max: u128,
    },

    /// S'_k(N) directly and combinatorially, with the predicted degree.
    PowerSum {
        #[arg(long)]
        k: usize,

        #[arg(long)]
        n: u128,
    },

    /// Points, slopes and hull check for the Newton polygon of ζ(x, -y).
    NewtonPolygon {
        /// An integer, a negative integer, or a stream PRE:PERIOD written from y_0 up.
        #[arg(long, allow_hyphen_values = true)]
        y: String,

        #[arg(long, default_value_t = 8)]
        max_m: usize,

        /// Largest truncation index tried when stabilizing.
        #[arg(long, default_value_t = 64)]
        t_cap: usize,

        /// Consecutive equal values needed to accept; defaults to s + period length.
        #[arg(long)]
        window: Option<usize>,

        /// Also write the polygon as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}
