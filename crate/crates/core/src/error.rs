use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed presentation: {0}")]
    Presentation(String),
    #[error("duplicate generator '{0}'")]
    DuplicateGenerator(char),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(char),
    #[error("empty generating set")]
    EmptyAlphabet,
    #[error("letter '{0}' is not in the alphabet")]
    UnknownLetter(char),
    #[error("word '{0}' is not geodesic")]
    NotGeodesic(String),
    #[error("vertex cap of {cap} exceeded")]
    VertexCap { cap: usize },
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("index out of range: segment {i}..{j} on a path of length {len}")]
    SegmentOutOfRange { i: usize, j: usize, len: usize },
    #[error("vertex {0} lies outside the region where distances are exact")]
    OutsideCorrectRegion(usize),
    #[error("horizon must be at least 1")]
    InvalidHorizon,
    #[error("word '{word}' is not {d}-contracting at horizon {horizon}")]
    NotContracting { word: String, d: u32, horizon: u32 },
    #[error("fingerprint of '{first}' and '{second}' agree but their '{letter}' extensions disagree; m is too small")]
    InconsistentFingerprint {
        first: String,
        second: String,
        letter: char,
    },
    #[error("cone table did not close before representatives reached length {max_len}")]
    ConeClosure { max_len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown state label '{0}'")]
    UnknownState(String),
    #[error("automata have different alphabets")]
    AlphabetMismatch,
    #[error("denominator has no positive real root")]
    NoPositiveRoot,
    #[error("unknown reference automaton '{0}'")]
    UnknownReference(String),
}

pub type Result<T> = std::result::Result<T, Error>;
