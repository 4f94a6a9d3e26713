use clap::{Args, Parser, Subcommand, ValueEnum};

use qcat_core::sequences::Method;
use qcat_core::verify::Suite;

/// Exact pair-partition combinatorics and (q,2)-Fock vacuum moments.
#[derive(Parser, Debug)]
#[command(name = "qcat", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for per-word parallel work (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integer and polynomial sequences.
    Seq(SeqArgs),
    /// Enumerate pair partitions or plus-class words.
    Enum(EnumArgs),
    /// Non-crossing counterpart of a sign word.
    Counterpart {
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
    },
    /// The index set P_n(eps) of a plus-class word.
    Pset {
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        /// Print every member with its crossing number.
        #[arg(long)]
        list: bool,
    },
    /// Vacuum moment of an operator word by both routes.
    Moment(MomentArgs),
    /// Run self-check suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    #[arg(value_enum)]
    pub which: SeqKind,
    #[arg(long)]
    pub max: usize,
    /// Evaluate polynomial entries at this rational, written p/r.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqKind {
    Catalan,
    W,
    U,
    Table,
}

impl SeqKind {
    pub fn name(self) -> &'static str {
        match self {
            SeqKind::Catalan => "catalan",
            SeqKind::W => "w",
            SeqKind::U => "u",
            SeqKind::Table => "table",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Closed,
    Recurrence,
    Operator,
    Enumerate,
    All,
}

impl MethodArg {
    pub fn method(self) -> Option<Method> {
        match self {
            MethodArg::Direct => Some(Method::Direct),
            MethodArg::Closed => Some(Method::Closed),
            MethodArg::Recurrence => Some(Method::Recurrence),
            MethodArg::Operator => Some(Method::Operator),
            MethodArg::Enumerate => Some(Method::Enumeration),
            MethodArg::All => None,
        }
    }
}

#[derive(Args, Debug)]
pub struct EnumArgs {
    #[arg(value_enum)]
    pub kind: EnumKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumKind {
    Pp,
    Ncpp,
    Plus,
}

#[derive(Args, Debug)]
pub struct MomentArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub eps: String,
    /// Semicolon-separated rational vectors, one per operator (default: all e1).
    #[arg(long, allow_hyphen_values = true)]
    pub tests: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Also print the state reached before taking the vacuum coefficient.
    #[arg(long)]
    pub dump_state: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 5)]
    pub max: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Convolution,
    Counterpart,
    Fock,
    Moments,
    Genfun,
}

impl SuiteArg {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::All => Suite::ALL.to_vec(),
            SuiteArg::Convolution => vec![Suite::Convolution],
            SuiteArg::Counterpart => vec![Suite::Counterpart],
            SuiteArg::Fock => vec![Suite::Fock],
            SuiteArg::Moments => vec![Suite::Moments],
            SuiteArg::Genfun => vec![Suite::Genfun],
        }
    }
}
