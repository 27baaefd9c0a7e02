use thiserror::Error;

use crate::words::Word;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("irreducibility over the rationals is only decided up to degree 4 (got degree {0})")]
    UnsupportedDegree(usize),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("matrix shapes do not match: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("target matrix is derogatory; similarity decided without a transform")]
    NotNonderogatory,
    #[error("quaternion algebras need characteristic different from 2")]
    CharacteristicTwo,
    #[error("quaternion parameters must be nonzero")]
    ZeroParameter,
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit vector is not a two-sided identity")]
    BadUnit,
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("the zero element has no inverse")]
    ZeroElement,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("generator is central")]
    CentralGenerator,
    #[error("element is central")]
    CentralElement,
    #[error("minimal polynomial of the generator is reducible")]
    NotIrreducible,
    #[error("generator has degree {found}, a maximal subfield needs degree {expected}")]
    WrongDegree { expected: usize, found: usize },
    #[error("center of the algebra is {0}-dimensional, not the base field")]
    CenterNotField(usize),
    #[error("left minimal polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("element does not generate a maximal subfield")]
    NotMaximalGenerator,
    #[error("search exhausted after {tried} candidates")]
    SearchExhausted { tried: usize },
    #[error("algebra dimension {0} is not a perfect square")]
    DimensionNotSquare(usize),
    #[error("algebra is not a field")]
    NotAField,
    #[error("the given elements do not generate the field")]
    NotGenerating,
    #[error("matrix is not a direct sum of companion blocks of size > 1 with total size > 2")]
    BadBlockStructure,
    #[error("words are over different alphabets")]
    AlphabetMismatch,
    #[error("left algebraic degree {found} exceeds the bound {bound}")]
    DegreeTooLarge { bound: usize, found: usize },
    #[error("rewriting did not finish within {0} steps")]
    StepBudgetExceeded(usize),
    #[error("word {0} admits neither a power nor a Shirshov decomposition")]
    Undecomposable(Word),
    #[error("some word of length {0} does not decompose")]
    NotFoundUpTo(usize),
    #[error("identity check failed: {0}")]
    IdentityViolated(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("invalid value for `{key}`: {reason}")]
    Validation { key: String, reason: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("{0}")]
    InvalidInput(String),
}
