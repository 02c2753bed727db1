//! Quadratic number fields, their rings of integers, residue rings and
//! principal primes.

mod element;
mod embed;
mod field;
mod prime;
mod residue;

use thiserror::Error;

pub use element::FieldElement;
pub use embed::{sign_of_surd, sqrt_enclosure, totally_positive_and_large, RealPlace};
pub use field::{Decomposition, OmegaKind, QuadraticField};
pub use prime::{is_principal_prime, is_square_mod, PrimeRejection, PrincipalPrime, ResidueRing};
pub use residue::{Fq, ResidueField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NfError {
    #[error("delta0 = {0} is not a nonzero square-free integer")]
    NotSquarefree(i64),
    #[error("cannot parse field element {0:?}")]
    Parse(String),
    #[error("{0} is not integral")]
    NotIntegral(String),
    #[error("{0} is zero or a unit")]
    ZeroOrUnit(String),
    #[error("{element} does not generate a prime ideal: {reason}")]
    NotPrime { element: String, reason: PrimeRejection },
    #[error("valuation of zero is infinite")]
    InfiniteValuation,
    #[error("{0} has negative valuation")]
    NegativeValuation(String),
    #[error("{element} is not a unit at {prime}")]
    NotUnitAt { element: String, prime: String },
    #[error("residue characteristic of {0} is 2")]
    EvenResidueCharacteristic(String),
    #[error("residue characteristic {0} exceeds the supported word size")]
    ResidueFieldTooLarge(String),
}
