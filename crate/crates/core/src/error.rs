use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are grouped by [`ErrorClass`] so front ends can map them onto
/// stable exit codes without matching every variant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("table is empty")]
    EmptyTable,
    #[error("table is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("declared order {declared} but the table has {rows} rows")]
    OrderMismatch { declared: usize, rows: usize },
    #[error("table entry at ({x}, {y}) is {value}, outside 0..{n}")]
    EntryOutOfRange {
        x: usize,
        y: usize,
        value: usize,
        n: usize,
    },
    #[error("operation is not associative at ({x}, {y}, {z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("map has length {len}, semigroup has order {n}")]
    MapLength { len: usize, n: usize },
    #[error("map is not a permutation (element {0} is hit twice or out of range)")]
    NotPermutation(usize),
    #[error("map is not involutive at element {0}")]
    NotInvolutive(usize),
    #[error("map does not satisfy the {kind} law at ({x}, {y})")]
    NotMorphism {
        kind: &'static str,
        x: usize,
        y: usize,
    },
    #[error("measure point {point} is outside 0..{n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("function has {len} values, semigroup has order {n}")]
    FunctionLength { len: usize, n: usize },
    #[error("character has {len} values, semigroup has order {n}")]
    CharacterLength { len: usize, n: usize },
    #[error("invalid root of unity {q}/{m}")]
    BadRoot { q: u32, m: u32 },
    #[error("values are not multiplicative at ({x}, {y})")]
    NotMultiplicative { x: usize, y: usize },
    #[error("the zero function is not a character")]
    ZeroCharacter,

    #[error("support not contained in the center of S (point {0} is not central)")]
    NonCentralSupport(usize),
    #[error("this equation requires an involutive {expected}")]
    WrongMorphismKind { expected: &'static str },
    #[error("measure is not invariant under sigma")]
    NotSigmaInvariant,
    #[error("semigroup has no identity element")]
    NotAMonoid,
    #[error("element {0} is not central")]
    NotCentral(usize),
    #[error("integral of f against mu is {0:e}, too close to zero")]
    DegenerateIntegral(f64),
    #[error("fixture has no nonzero base solutions")]
    EmptySolutionSet,
    #[error("closed-form candidate from character #{index} has residual {residual:e}")]
    UnverifiedSolution { index: usize, residual: f64 },
    #[error("specialized and general solvers disagree: {0}")]
    RouteMismatch(String),

    #[error("order {n} exceeds the limit {max} for {what}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed structure in otherwise parseable input.
    Structural,
    /// A standing hypothesis of an equation is violated.
    Hypothesis,
    /// Parameters outside the supported range.
    Usage,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            EmptyTable
            | NotSquare { .. }
            | OrderMismatch { .. }
            | EntryOutOfRange { .. }
            | NotAssociative { .. }
            | MapLength { .. }
            | NotPermutation(_)
            | NotInvolutive(_)
            | NotMorphism { .. }
            | PointOutOfRange { .. }
            | NonFinite(_)
            | FunctionLength { .. }
            | CharacterLength { .. }
            | BadRoot { .. }
            | NotMultiplicative { .. }
            | ZeroCharacter => ErrorClass::Structural,
            NonCentralSupport(_)
            | WrongMorphismKind { .. }
            | NotSigmaInvariant
            | NotAMonoid
            | NotCentral(_)
            | DegenerateIntegral(_)
            | EmptySolutionSet
            | UnverifiedSolution { .. }
            | RouteMismatch(_) => ErrorClass::Hypothesis,
            TooLarge { .. } | BadParams(_) => ErrorClass::Usage,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
