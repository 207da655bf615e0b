use thiserror::Error;

/// Errors raised by the library.
///
/// Resource-cap errors are kept distinct from validation errors so that callers
/// can map them onto a different exit status or record them as an abstention.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {order} exceeds the table cap {cap}")]
    TableCap { order: u64, cap: u64 },
    #[error("element {value} does not belong to a field of order {order}")]
    ForeignElement { value: u64, order: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("conjugation needs an even extension degree, got {0}")]
    NoConjugation(u32),
    #[error("no primitive {n}-th root of unity: {n} does not divide {group_order}")]
    RootUnavailable { n: u64, group_order: u64 },
    #[error("invalid coset context n={n}, q={q}: {reason}")]
    InvalidContext { n: u64, q: u64, reason: &'static str },
    #[error("residue {residue} out of range for modulus {n}")]
    ResidueOutOfRange { residue: u64, n: u64 },
    #[error("residue set is not closed under multiplication by q^2 mod {n} (missing {missing})")]
    NotCosetClosed { n: u64, missing: u64 },
    #[error("mismatched coset contexts")]
    ContextMismatch,
    #[error("{t} does not divide {target}")]
    InvalidDivisor { t: u64, target: u64 },
    #[error("length n={0} is odd; family B needs an even length")]
    OddLength(u64),
    #[error("m={m} outside the admissible range [{lo}, {hi}] (use force to override)")]
    MOutOfRange { m: u64, lo: u64, hi: u64 },
    #[error("m must be at least 1")]
    ZeroM,
    #[error("length n={n} is not admissible: {reason}")]
    InvalidLength { n: u64, reason: &'static str },
    #[error("generator coefficient escapes GF(q^2)")]
    CoefficientEscape,
    #[error("generator does not divide x^n - 1")]
    InexactDivision,
    #[error("generator matrix is rank deficient ({rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },
    #[error("decomposition is not a partition of its source set")]
    InvalidDecomposition,
}

impl Error {
    /// True for failures caused by a configured resource limit rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::TableCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
