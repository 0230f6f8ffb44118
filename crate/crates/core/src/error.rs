use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("ring of size p^(a*ell) = {p}^{exponent} exceeds the configured budget of {budget} elements")]
    BudgetExceeded { p: u64, exponent: u64, budget: u64 },
    #[error("no primitive polynomial of degree {0} found")]
    DegreeUnsupported(usize),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("residue factors {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("product of residue factors does not match the reduced polynomial")]
    ProductMismatch,
    #[error("root enumeration exceeded the cap of {cap}")]
    RootBudgetExceeded { cap: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("diagonal entry {0} is not a unit")]
    DiagonalNotUnit(usize),
    #[error("entry ({0}, {1}) above the diagonal is not divisible by p")]
    UpperNotDivisibleByP(usize, usize),
    #[error("message degree {degree} is not below k = {k}")]
    DegreeTooHigh { degree: usize, k: usize },
    #[error("interpolation needs more than {constraints} unknowns, only {unknowns} available")]
    InsufficientDegree { unknowns: usize, constraints: usize },
    #[error("interpolation system has no nonzero solution")]
    InterpolationFailed,
    #[error("error budget e = {e} exceeds the Johnson radius {johnson_radius}")]
    RadiusTooLarge { e: usize, johnson_radius: usize },
    #[error("degree parameter D = {d} too small: {unknowns} unknowns for {constraints} constraints")]
    DTooSmall { d: i64, unknowns: usize, constraints: usize },
    #[error("agreement t = {t} too low: need t >= {min_t}")]
    AgreementTooLow { t: usize, min_t: usize },
    #[error("basis reductions mod p are linearly dependent")]
    DependentBasis,
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
}
