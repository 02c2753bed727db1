//! Real embeddings, decided with exact rational enclosures of sqrt(delta0).

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{isqrt, Int, Rat};
use crate::nf::{FieldElement, OmegaKind, QuadraticField};

/// A real place of K. Over Q there is exactly one (`Identity`); a real
/// quadratic field has the two places sqrt(delta0) -> +sqrt(delta0) and
/// sqrt(delta0) -> -sqrt(delta0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealPlace {
    Identity,
    Plus,
    Minus,
}

impl fmt::Display for RealPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealPlace::Identity => write!(f, "real"),
            RealPlace::Plus => write!(f, "real:+"),
            RealPlace::Minus => write!(f, "real:-"),
        }
    }
}

impl RealPlace {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "real" | "inf" => Some(RealPlace::Identity),
            "real:+" => Some(RealPlace::Plus),
            "real:-" => Some(RealPlace::Minus),
            _ => None,
        }
    }
}

impl QuadraticField {
    pub fn real_places(&self) -> Vec<RealPlace> {
        match self.real_embedding_count() {
            1 => vec![RealPlace::Identity],
            2 => vec![RealPlace::Plus, RealPlace::Minus],
            _ => vec![],
        }
    }
}

/// Rational enclosure [lo, hi] of sqrt(d) with width 2^-bits.
pub fn sqrt_enclosure(d: &Int, bits: u32) -> (Rat, Rat) {
    let scale = Int::one() << bits;
    let s = isqrt(&(d * &scale * &scale));
    let lo = Rat::new(s.clone(), scale.clone());
    let hi = if &s * &s == d * &scale * &scale {
        lo.clone()
    } else {
        Rat::new(s + 1u32, scale)
    };
    (lo, hi)
}

/// Sign of p + q*sqrt(d) for d > 0 not a perfect square, by refining the
/// enclosure of sqrt(d) until the sign is determined.
pub fn sign_of_surd(p: &Rat, q: &Rat, d: &Int) -> Ordering {
    if q.is_zero() {
        return p.cmp(&Rat::zero());
    }
    let mut bits = 8;
    loop {
        let (lo, hi) = sqrt_enclosure(d, bits);
        let (a, b) = (p + q * &lo, p + q * &hi);
        let (min, max) = if a <= b { (a, b) } else { (b, a) };
        if min.is_positive() {
            return Ordering::Greater;
        }
        if max.is_negative() {
            return Ordering::Less;
        }
        if lo == hi {
            // d was a perfect square after all; the enclosure is exact.
            return min.cmp(&Rat::zero());
        }
        bits *= 2;
    }
}

impl FieldElement {
    /// Coordinates (A, B) with self = A + B*sqrt(delta0).
    pub fn sqrt_form(&self) -> (Rat, Rat) {
        match self.field().omega_kind() {
            OmegaKind::Absent | OmegaKind::Sqrt => (self.x().clone(), self.y().clone()),
            OmegaKind::Half => {
                let half = Rat::new(1.into(), 2.into());
                (self.x() + self.y() * &half, self.y() * &half)
            }
        }
    }

    /// Sign of (self - bound) at the given real place.
    pub fn compare_at(&self, place: RealPlace, bound: &Rat) -> Ordering {
        let (a, b) = self.sqrt_form();
        let p = a - bound;
        match place {
            RealPlace::Identity => p.cmp(&Rat::zero()),
            RealPlace::Plus => sign_of_surd(&p, &b, &Int::from(self.field().delta0())),
            RealPlace::Minus => sign_of_surd(&p, &-b, &Int::from(self.field().delta0())),
        }
    }

    pub fn sign_at(&self, place: RealPlace) -> Ordering {
        self.compare_at(place, &Rat::zero())
    }

    /// Rational enclosure of the image of self at a real place.
    pub fn enclose_at(&self, place: RealPlace, bits: u32) -> (Rat, Rat) {
        let (a, b) = self.sqrt_form();
        let b = match place {
            RealPlace::Identity => return (a.clone(), a),
            RealPlace::Plus => b,
            RealPlace::Minus => -b,
        };
        let (lo, hi) = sqrt_enclosure(&Int::from(self.field().delta0()), bits);
        let (x, y) = (&a + &b * lo, &a + &b * hi);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }
}

/// True iff every real embedding of `alpha` exceeds `bound` (vacuous for
/// imaginary K).
pub fn totally_positive_and_large(alpha: &FieldElement, bound: &Rat) -> bool {
    alpha
        .field()
        .real_places()
        .into_iter()
        .all(|p| alpha.compare_at(p, bound) == Ordering::Greater)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn examples() {
        let q = QuadraticField::rational();
        assert!(totally_positive_and_large(&FieldElement::from_i64(q, 17), &rat(1)));
        let k = QuadraticField::new(3).unwrap();
        assert!(!totally_positive_and_large(&k.element("-2+w"), &rat(0)));
        assert!(totally_positive_and_large(&k.element("2+w"), &rat(0)));
        let k = QuadraticField::new(-5).unwrap();
        assert!(totally_positive_and_large(&k.element("-7"), &rat(1_000_000)));
    }

    #[test]
    fn near_ties_resolved_exactly() {
        // 1351/780 is a convergent of sqrt(3); 1351 - 780*sqrt(3) > 0 but tiny.
        let k = QuadraticField::new(3).unwrap();
        let a = k.element("1351-780*w");
        assert_eq!(a.sign_at(RealPlace::Plus), Ordering::Greater);
        assert_eq!(a.sign_at(RealPlace::Minus), Ordering::Greater);
        let b = k.element("-1351+780*w");
        assert_eq!(b.sign_at(RealPlace::Plus), Ordering::Less);
        let (lo, hi) = a.enclose_at(RealPlace::Plus, 64);
        assert!(lo <= hi && lo > rat(0) && hi < ratio(1, 1000));
    }

    #[test]
    fn half_basis_embedding() {
        // omega = (1 + sqrt 5)/2 ~ 1.618, conjugate ~ -0.618
        let k = QuadraticField::new(5).unwrap();
        let w = FieldElement::omega(k);
        assert_eq!(w.compare_at(RealPlace::Plus, &ratio(8, 5)), Ordering::Greater);
        assert_eq!(w.sign_at(RealPlace::Minus), Ordering::Less);
    }
}
