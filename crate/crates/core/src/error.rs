use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet size {0} is not supported (need 2 <= q <= 256)")]
    InvalidAlphabet(usize),

    #[error("symbol {symbol} at position {position} is outside the alphabet of size {q}")]
    SymbolOutOfRange { symbol: usize, position: usize, q: usize },

    #[error("could not parse `{0}` as a comma-separated string of symbols")]
    Parse(String),

    #[error("run count is undefined for the empty string")]
    EmptyString,

    #[error("transposition location {location} is outside 1..={max}")]
    LocationOutOfRange { location: usize, max: usize },

    #[error("transposition locations {0} and {1} overlap; disjoint patterns need a gap of at least 2")]
    NotDisjoint(usize, usize),

    #[error("{t} transpositions cannot be placed in a string of length {n}")]
    InfeasiblePattern { n: usize, t: usize },

    #[error("pattern model does not match the requested channel")]
    WrongModel,

    #[error("strings differ in length or alphabet ({0} vs {1})")]
    Mismatch(String, String),

    #[error("codeword {0} appears more than once")]
    DuplicateCodeword(String),

    #[error("a code must contain at least one codeword")]
    EmptyCode,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what}: instance size {size} exceeds the limit {limit}")]
    TooLarge { what: &'static str, size: u128, limit: u128 },

    #[error("uncorrectable input")]
    Uncorrectable,

    #[error("{name} = {value} is outside the domain {domain}")]
    OutOfDomain { name: &'static str, value: f64, domain: &'static str },
}
