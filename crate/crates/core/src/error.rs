use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate route: need at least 2 points, got {0}")]
    DegenerateRoute(usize),
    #[error("cannot scale degenerate route (mean adjacent distance is zero)")]
    CannotScale,
    #[error("target mean distance must be positive and finite, got {0}")]
    InvalidTarget(f64),
    #[error("route too short: need at least 2 points, got {0}")]
    RouteTooShort(usize),
    #[error("negative threshold: {0}")]
    NegativeThreshold(f64),
    #[error("non-finite coordinate at point {0}")]
    NonFinitePoint(usize),
    #[error("vertex index out of range: ({from}, {to}) with {n} vertices")]
    IndexOutOfRange { from: usize, to: usize, n: usize },
    #[error("invalid edge ({from}, {to}): {reason}")]
    InvalidEdge { from: usize, to: usize, reason: &'static str },
    #[error("vertex {0} has no forward edge")]
    Disconnected(usize),
    #[error("code {code} out of range for vertex {vertex} with {bits} bits")]
    CodeOutOfRange { vertex: usize, code: usize, bits: u32 },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("qubit budget must be at least 1")]
    ZeroBudget,
    #[error("budget too small for vertex fan-out: vertex {vertex} needs {bits} bits, budget is {budget}")]
    BudgetTooSmall { vertex: usize, bits: u32, budget: usize },
    #[error("exact solve budget exceeded: {vars} variables, limit {limit}")]
    ExactBudgetExceeded { vars: usize, limit: usize },
    #[error("problem too large for simulator: {qubits} qubits, limit {limit}")]
    ProblemTooLarge { qubits: usize, limit: usize },
    #[error("invalid QAOA configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("empty epsilon list")]
    EmptySweep,
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
}
