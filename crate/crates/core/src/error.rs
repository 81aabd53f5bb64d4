use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line has all coefficients zero")]
    ZeroLine,
    #[error("cannot intersect a line with itself")]
    IdenticalLines,
    #[error("lines {first} and {second} coincide")]
    DuplicateLine { first: usize, second: usize },
    #[error("an arrangement needs at least 3 lines, got {0}")]
    TooFewLines(usize),
    #[error("index {index} out of range for {len} lines")]
    BadIndex { index: usize, len: usize },
    #[error("multiplicity divisor k must be at least 2, got {0}")]
    BadK(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported word-size range")]
    ModulusTooLarge(u64),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("vector is not in the span")]
    NotInSpan,
    #[error("coefficient sum {sum} is not invertible mod {p}")]
    NotInvertible { sum: u64, p: u64 },
    #[error("fixture size {0} is out of range")]
    BadSize(usize),
    #[error("total degeneration needs at least 2 parallel classes, got {0}")]
    TooFewClasses(usize),
    #[error("parallel class {class} does not exist ({count} classes)")]
    BadClass { class: usize, count: usize },
    #[error("parallel class {0} contains every line, no transversal exists")]
    NoTransversal(usize),
    #[error("class sums are only defined for the total degeneration")]
    NotTotal,
    #[error("degeneration map is not an algebra homomorphism")]
    NotHomomorphism,
    #[error("degree n+1 must be at least 3, got {0}")]
    BadDegree(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown builtin arrangement `{0}`")]
    UnknownBuiltin(String),
    #[error("builtin `{name}` cannot be realized with parameter {m}")]
    Unrealizable { name: String, m: usize },
}
