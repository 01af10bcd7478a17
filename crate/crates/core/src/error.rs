//! Crate-wide operational error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a product space needs at least 2 parts, got {0}")]
    TooFewParts(usize),
    #[error("part {part} has size {size}; every part needs at least 2 symbols")]
    PartTooSmall { part: usize, size: u32 },
    #[error("product space holds {count} vectors, exceeding the configured limit {limit}")]
    VectorBudget { count: u128, limit: u64 },
    #[error("edge {edge_index} has {got} coordinates, expected {expected}")]
    EdgeArity {
        edge_index: usize,
        expected: usize,
        got: usize,
    },
    #[error("edge {edge_index}: coordinate {symbol} in part {part} is outside 1..={size}")]
    CoordinateRange {
        edge_index: usize,
        part: usize,
        symbol: u32,
        size: u32,
    },
    #[error("operands belong to different product spaces")]
    SpecMismatch,
    #[error("part index {part} is outside 1..={r}")]
    PartRange { part: usize, r: usize },
    #[error("shift symbol must satisfy 2 <= j <= {size}, got {symbol}")]
    ShiftSymbol { symbol: u32, size: u32 },
    #[error("t must satisfy {min} <= t <= {max}, got {t}")]
    TRange { t: usize, min: usize, max: usize },
    #[error("t must be at least 1, got {t}")]
    TTooSmall { t: usize },
    #[error("s must satisfy 1 <= s < {limit}, got {s}")]
    SRange { s: usize, limit: u32 },
    #[error("n must be at least 2, got {n}")]
    NRange { n: u32 },
    #[error("construction requires equal part sizes")]
    EqualSizesRequired,
    #[error("construction requires at least 3 parts, got {r}")]
    NeedsThreeParts { r: usize },
    #[error("set family ground size {got} does not match the {expected}-part product space")]
    GroundSizeMismatch { expected: usize, got: usize },
    #[error("set element {element} is outside the ground set 1..={ground}")]
    GroundRange { element: usize, ground: usize },
    #[error("invalid relabeling: {0}")]
    BadRelabeling(String),
    #[error("the family is not {t}-intersecting")]
    NotTIntersecting { t: usize },
    #[error("the family is trivial: at least {t} coordinates are fixed")]
    TrivialIntersecting { t: usize },
    #[error("part {part} is neither shifted nor shift-resistant; not a shift fixpoint")]
    NotShiftFixpoint { part: usize },
    #[error("matching number {nu} exceeds the supplied s = {s}")]
    MatchingAboveS { nu: usize, s: usize },
    #[error("trivial family: transversal number {tau} <= s = {s}")]
    CoverAtMostS { tau: usize, s: usize },
    #[error("shrink core must be nonempty")]
    EmptyShrinkCore,
    #[error("shrink core is not a proper subset of any member")]
    ShrinkCoreNotContained,
    #[error("grounded set families may not contain the empty set")]
    EmptySetMember,
    #[error("set member contains {0}, which is outside the ground set")]
    GroundMembership(String),
    #[error("petal count must be at least 1")]
    PetalCountZero,
    #[error("uniform search supports r <= {max}, got r = {r}")]
    UniformRTooLarge { r: usize, max: usize },
    #[error("this statement applies to exactly {expected} parts, got {got}")]
    TheoremArity { expected: usize, got: usize },
    #[error("search instance rejected: {0}")]
    Infeasible(String),
    #[error("internal consistency violation: {0}")]
    Internal(String),
}
