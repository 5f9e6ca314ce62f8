use thiserror::Error;

use crate::scheme::SchemeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid network configuration: {0}")]
    InvalidConfig(String),

    #[error("scheme {scheme} is only defined at mu = {required}, got mu = {actual}")]
    CachePrecondition {
        scheme: SchemeId,
        required: f64,
        actual: f64,
    },

    #[error("cache fraction {mu} lies outside the anchor interval [{lo}, {hi}]")]
    CacheOutOfRange { mu: f64, lo: f64, hi: f64 },

    #[error("time sharing needs two distinct anchor cache fractions, both are {0}")]
    DegenerateAnchors(f64),

    #[error("this operation requires at least {required} edge nodes, got {actual}")]
    TooFewEdgeNodes { required: usize, actual: usize },

    #[error("cut-set index l = {l} outside 0..={max}")]
    CutIndexOutOfRange { l: usize, max: usize },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("sweep grid is empty")]
    EmptyGrid,

    #[error("file length {len} bits is not divisible by {parts} parts; pad the library first")]
    NotDivisible { len: usize, parts: usize },

    #[error("invalid library: {0}")]
    InvalidLibrary(String),

    #[error("invalid demand: {0}")]
    InvalidDemand(String),

    #[error("fronthaul rate r must be positive to time a delivery")]
    ZeroFronthaulRate,

    #[error("cannot decode subfile ({file}, {part}): coded message {file}:{chain} is missing")]
    DecodeFailure {
        file: usize,
        part: usize,
        chain: usize,
    },

    #[error("edge nodes {ens:?} failed to reconstruct the demanded files")]
    ProtocolViolation { ens: Vec<usize> },
}
