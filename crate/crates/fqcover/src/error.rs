//! Crate-wide error type.

use num_bigint::BigUint;
use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation combined values that belong to different fields.
    #[error("field mismatch: operands belong to different fields")]
    FieldMismatch,

    /// `p` is not a prime number.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// The requested field order does not fit the supported range.
    #[error("field order p^e = {p}^{e} does not fit in 64 bits")]
    OrderTooLarge { p: u64, e: u32 },

    /// A supplied extension modulus was rejected.
    #[error("invalid extension modulus: {0}")]
    BadExtensionModulus(String),

    /// Division by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// gcd of two zero polynomials is undefined.
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    /// The operation requires a non-constant polynomial.
    #[error("expected a non-constant polynomial")]
    ConstantPolynomial,

    /// The operation requires a nonzero polynomial.
    #[error("expected a nonzero polynomial")]
    ZeroPolynomial,

    /// A congruence modulus must be non-constant.
    #[error("congruence modulus must have degree at least 1")]
    ConstantModulus,

    /// An element index or coefficient was out of range for the field.
    #[error("value {value} out of range for a field of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },

    /// Polynomial text that could not be parsed.
    #[error("parse error at byte {offset}: {msg}")]
    PolyParse { offset: usize, msg: String },

    /// The text form only supports prime fields.
    #[error("the polynomial text form supports prime fields only")]
    TextNeedsPrimeField,

    /// Chinese remaindering over moduli that share a factor.
    #[error("moduli are not pairwise coprime")]
    NonCoprimeModuli,

    /// Chinese remaindering over an empty list.
    #[error("empty congruence list")]
    EmptyCongruenceList,

    /// An exhaustive check would exceed the configured class cap.
    #[error("exhaustive check needs {required} classes, above the cap {cap}")]
    CapExceeded { required: BigUint, cap: u64 },

    /// A parameter was outside the operation's domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Normalization was called on a system that does not satisfy its premise.
    #[error("normalization premise violated: {0}")]
    NormalizePremise(String),

    /// Normalization finished but its output failed a required condition.
    /// This signals either an implementation bug or a genuine counterexample
    /// to the coverage theorem, and is reported distinctly for that reason.
    #[error("normalization postcondition failed: {0}")]
    NormalizePostcondition(String),

    /// The inductive sharp-system construction did not find a unique residue.
    #[error("sharp construction step {step}: expected exactly one candidate, found {found}")]
    SharpNotUnique { step: usize, found: usize },

    /// The sharp-system construction only works over the two-element field.
    #[error("sharp systems are only defined over the field of two elements")]
    NotBinaryField,

    /// A sharp-system verification clause failed.
    #[error("sharp verification failed: {clause}")]
    SharpCheckFailed { clause: String },

    /// A bound instance violated a structural invariant.
    #[error("invalid bound instance: {0}")]
    BadBoundInstance(String),

    /// Neither exchange-inequality case applies to the given parameters.
    #[error("neither exchange case applies: d1={d1}, k1={k1}, d2={d2}, k2={k2}")]
    NoExchangeCase { d1: usize, k1: u64, d2: usize, k2: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
