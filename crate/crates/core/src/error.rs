use alloc::string::String;
use core::fmt;

/// Errors shared by all modules of the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A fraction was constructed with denominator zero.
    ZeroDenominator,
    /// A string failed to parse as a reduced fraction `num/den`.
    ParseFraction(String),
    /// The zero polynomial has no cyclotomic factorization.
    ZeroPolynomial,
    /// `rho_n` (the divided Verschiebung) was requested for an element with
    /// integer coefficients.
    CoefficientMode,
    /// Ghost data is not in the image of the ghost map over the integers;
    /// holds the first component where the triangular solve left a remainder.
    NotAWittVector(u64),
    /// Ghost data is missing the component for the given divisor.
    GhostIncomplete(u64),
    /// Witt vectors on different truncation sets cannot be combined, and a
    /// vector cannot be restricted to a set it does not contain.
    TruncationMismatch,
    /// The truncation set does not contain `n`, so the Frobenius `F_n` has
    /// no components to land in.
    TruncationTooSmall(u64),
    /// The characteristic polynomial in the given degree is not a product of
    /// cyclotomics (and powers of `t` where permitted), so the endomorphism
    /// has no spectrum in `Q/Z`.
    NotQuasiUnipotent(u32),
    /// Two matrix blocks were declared for the same homology degree.
    DuplicateDegree(u32),
    /// Inverse temperature outside the convergence range `beta > 1`.
    BetaOutOfDomain,
    /// Hurwitz parameter outside `(0, 1]`.
    HurwitzParamOutOfDomain,
    /// A covering family, class or functor image refers to a label that is
    /// not an object of the presentation.
    UnknownObject(String),
    /// The same object label was declared twice in a presentation.
    DuplicateObject(String),
    /// An object has no image under a functor whose induced map was requested.
    MissingImage(String),
    /// A functor does not respect a covering family; holds the target label
    /// of the offending family.
    RelationViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => write!(f, "denominator must be nonzero"),
            Error::ParseFraction(s) => write!(f, "cannot parse {s:?} as num/den"),
            Error::ZeroPolynomial => write!(f, "the zero polynomial cannot be factorized"),
            Error::CoefficientMode => {
                write!(f, "operation requires rational coefficients")
            }
            Error::NotAWittVector(m) => {
                write!(
                    f,
                    "ghost data is not an integral Witt vector at component {m}"
                )
            }
            Error::GhostIncomplete(m) => {
                write!(f, "ghost data missing component {m}")
            }
            Error::TruncationMismatch => write!(f, "truncation sets do not match"),
            Error::TruncationTooSmall(n) => {
                write!(f, "truncation too small: {n} is not in the set")
            }
            Error::NotQuasiUnipotent(k) => {
                write!(f, "block in degree {k} is not quasi-unipotent")
            }
            Error::DuplicateDegree(k) => write!(f, "duplicate block for degree {k}"),
            Error::BetaOutOfDomain => write!(f, "beta must be > 1"),
            Error::HurwitzParamOutOfDomain => write!(f, "hurwitz parameter must lie in (0, 1]"),
            Error::UnknownObject(l) => write!(f, "unknown object label {l:?}"),
            Error::DuplicateObject(l) => write!(f, "duplicate object label {l:?}"),
            Error::MissingImage(l) => write!(f, "no functor image for object {l:?}"),
            Error::RelationViolation(l) => {
                write!(f, "functor does not respect the covering family of {l:?}")
            }
        }
    }
}

impl core::error::Error for Error {}
