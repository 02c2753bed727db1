//! Short Weierstrass curves y^2 = x^3 + A x + B over Q with the chord-tangent law.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat_to_string, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub a: Rat,
    pub b: Rat,
}

/// Projective point (x : y : z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl CurvePoint {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Option<Self> {
        if x.is_zero() && y.is_zero() && z.is_zero() {
            None
        } else {
            Some(CurvePoint { x, y, z })
        }
    }

    pub fn affine(x: Rat, y: Rat) -> Self {
        CurvePoint { x, y, z: Rat::one() }
    }

    pub fn is_infinity(&self) -> bool {
        self.z.is_zero()
    }

    /// Scaled so that the last nonzero coordinate is 1.
    pub fn normalized(&self) -> CurvePoint {
        let s = [&self.z, &self.y, &self.x].into_iter().find(|c| !c.is_zero()).unwrap().clone();
        CurvePoint { x: &self.x / &s, y: &self.y / &s, z: &self.z / &s }
    }

    pub fn same_point(&self, other: &CurvePoint) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn coords_string(&self) -> String {
        let n = self.normalized();
        format!("({}:{}:{})", rat_to_string(&n.x), rat_to_string(&n.y), rat_to_string(&n.z))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCheck {
    pub point: String,
    pub on_curve: bool,
    pub doubles_to_identity: bool,
}

impl Curve {
    pub fn new(a: Rat, b: Rat) -> Self {
        Curve { a, b }
    }

    pub fn discriminant(&self) -> Rat {
        let four = Rat::from_integer(4.into());
        let tw7 = Rat::from_integer(27.into());
        -Rat::from_integer(16.into()) * (four * &self.a * &self.a * &self.a + tw7 * &self.b * &self.b)
    }

    pub fn identity(&self) -> CurvePoint {
        CurvePoint { x: Rat::zero(), y: Rat::one(), z: Rat::zero() }
    }

    /// y^2 z = x^3 + A x z^2 + B z^3.
    pub fn contains(&self, p: &CurvePoint) -> bool {
        let lhs = &p.y * &p.y * &p.z;
        let rhs = &p.x * &p.x * &p.x + &self.a * &p.x * &p.z * &p.z + &self.b * &p.z * &p.z * &p.z;
        lhs == rhs
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        CurvePoint { x: p.x.clone(), y: -&p.y, z: p.z.clone() }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        if p.is_infinity() {
            return q.normalized();
        }
        if q.is_infinity() {
            return p.normalized();
        }
        let p = p.normalized();
        let q = q.normalized();
        let lambda = if p.x == q.x {
            if (&p.y + &q.y).is_zero() {
                return self.identity();
            }
            let three = Rat::from_integer(3.into());
            (three * &p.x * &p.x + &self.a) / (Rat::from_integer(2.into()) * &p.y)
        } else {
            (&q.y - &p.y) / (&q.x - &p.x)
        };
        let x3 = &lambda * &lambda - &p.x - &q.x;
        let y3 = &lambda * (&p.x - &x3) - &p.y;
        CurvePoint::affine(x3, y3)
    }

    pub fn double(&self, p: &CurvePoint) -> CurvePoint {
        self.add(p, p)
    }

    pub fn mul(&self, p: &CurvePoint, n: u64) -> CurvePoint {
        let mut acc = self.identity();
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.double(&base);
            n >>= 1;
        }
        acc
    }

    pub fn torsion_check(&self, p: &CurvePoint) -> TorsionCheck {
        TorsionCheck {
            point: p.coords_string(),
            on_curve: self.contains(p),
            doubles_to_identity: self.double(p).is_infinity(),
        }
    }
}
