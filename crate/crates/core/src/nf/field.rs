use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{int, is_squarefree};
use crate::nf::NfError;

/// Shape of the second integral-basis element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaKind {
    /// K = Q; there is no second basis element.
    Absent,
    /// omega = sqrt(delta0), for delta0 = 2, 3 mod 4.
    Sqrt,
    /// omega = (1 + sqrt(delta0)) / 2, for delta0 = 1 mod 4.
    Half,
}

/// K = Q(sqrt(delta0)) with `delta0` square-free; `delta0 = 1` is Q itself.
///
/// The integral basis is (1, omega) with omega^2 = t*omega - n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub struct QuadraticField {
    delta0: i64,
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    delta0: i64,
}

impl TryFrom<FieldRepr> for QuadraticField {
    type Error = NfError;
    fn try_from(r: FieldRepr) -> Result<Self, NfError> {
        QuadraticField::new(r.delta0)
    }
}

impl From<QuadraticField> for FieldRepr {
    fn from(k: QuadraticField) -> Self {
        FieldRepr { delta0: k.delta0 }
    }
}

impl QuadraticField {
    pub fn new(delta0: i64) -> Result<Self, NfError> {
        if delta0 == 0 || !is_squarefree(&int(delta0)) {
            return Err(NfError::NotSquarefree(delta0));
        }
        Ok(QuadraticField { delta0 })
    }

    pub fn rational() -> Self {
        QuadraticField { delta0: 1 }
    }

    pub fn delta0(&self) -> i64 {
        self.delta0
    }

    pub fn is_rational(&self) -> bool {
        self.delta0 == 1
    }

    pub fn degree(&self) -> usize {
        if self.is_rational() {
            1
        } else {
            2
        }
    }

    pub fn omega_kind(&self) -> OmegaKind {
        if self.is_rational() {
            OmegaKind::Absent
        } else if self.delta0.rem_euclid(4) == 1 {
            OmegaKind::Half
        } else {
            OmegaKind::Sqrt
        }
    }

    /// (t, n) with omega^2 = t*omega - n; (0, 0) for Q.
    pub fn omega_min_poly(&self) -> (i64, i64) {
        match self.omega_kind() {
            OmegaKind::Absent => (0, 0),
            OmegaKind::Sqrt => (0, -self.delta0),
            OmegaKind::Half => (1, (1 - self.delta0) / 4),
        }
    }

    pub fn discriminant(&self) -> i64 {
        match self.omega_kind() {
            OmegaKind::Absent => 1,
            OmegaKind::Half => self.delta0,
            OmegaKind::Sqrt => 4 * self.delta0,
        }
    }

    pub fn real_embedding_count(&self) -> usize {
        if self.is_rational() {
            1
        } else if self.delta0 > 1 {
            2
        } else {
            0
        }
    }

    pub fn is_imaginary(&self) -> bool {
        self.delta0 < 0
    }

    /// Decomposition of a rational prime q in K.
    pub fn decomposition(&self, q: &crate::arith::Int) -> Decomposition {
        use crate::arith::{kronecker_two, legendre};
        if self.is_rational() {
            return Decomposition::Inert;
        }
        let d = int(self.discriminant());
        let symbol = if *q == int(2) {
            kronecker_two(&d)
        } else {
            legendre(&d, q)
        };
        match symbol {
            0 => Decomposition::Ramified,
            1 => Decomposition::Split,
            _ => Decomposition::Inert,
        }
    }

    pub(crate) fn check_coords(&self, y: &crate::arith::Rat) -> bool {
        !self.is_rational() || y.is_zero()
    }
}

/// How a rational prime factors in O_K. Over Q every prime counts as inert
/// (it stays prime).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decomposition {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "Q")
        } else {
            write!(f, "Q(sqrt({}))", self.delta0)
        }
    }
}
