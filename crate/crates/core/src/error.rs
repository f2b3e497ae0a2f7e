use thiserror::Error;

/// Errors produced while building, compiling, loading or applying networks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symbol name is empty")]
    EmptyName,
    #[error("`{0}` is a reserved symbol spelling")]
    ReservedName(String),
    #[error("{0}: operand is not an automaton (identity relation)")]
    NotAnAutomaton(&'static str),
    #[error("the upper language of a directed replacement accepts the empty string")]
    EpsilonInUpper,
    #[error("parallel replacement needs at least one rule")]
    EmptyRuleSet,
    #[error("parallel rules must share direction and match length")]
    MixedModes,
    #[error("{0}: operand must denote a set of single symbols")]
    NotASymbolSet(&'static str),
    #[error("only `||` contexts are supported")]
    UnsupportedContextOrientation,
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unterminated quoted symbol starting at offset {offset}")]
    UnterminatedQuote { offset: usize },
    #[error("dangling escape `%` at offset {offset}")]
    DanglingEscape { offset: usize },
    #[error("line {line}, column {column}: {source}")]
    AtLine {
        line: usize,
        column: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("program contains no main expression")]
    EmptyProgram,
    #[error("action language has strings longer than the enumeration bound {0}")]
    ActionLanguageInfinite(usize),
    #[error("chunk {chunk}: transducer produced {count} outputs")]
    AmbiguousOutput { chunk: usize, count: usize },
    #[error("chunk {chunk}: transducer produced no output")]
    NoOutput { chunk: usize },
    #[error("malformed network text at line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
