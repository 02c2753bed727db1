//! Exact polynomial algebra over Q.

pub mod elim;
pub mod form;
pub mod groebner;
pub mod multi;
pub mod upoly;

use thiserror::Error;

pub use form::BinaryForm;
pub use multi::{poly, Monomial, MultiPoly, Var};
pub use upoly::{irreducibility, subresultant_gcd, Irreducibility, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("variables left unassigned in {0}")]
    Unassigned(String),
    #[error("{0} is not univariate in the requested variable")]
    NotUnivariate(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("{0} has degree too small")]
    DegreeTooSmall(String),
    #[error("inexact division of {0}")]
    Inexact(String),
    #[error("{0} is not homogeneous in the requested variables")]
    NotHomogeneous(String),
    #[error("{0} has non-integer coefficients")]
    NotIntegral(String),
}
