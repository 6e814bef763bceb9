use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Ring;

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Exact element `p + q sqrt(3)` of `Q(sqrt 3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExtRational {
    p: BigRational,
    q: BigRational,
}

impl QuadExtRational {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Self { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        Self::new(BigRational::from_integer(p.into()), BigRational::from_integer(q.into()))
    }

    pub fn sqrt3() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.p
    }

    pub fn sqrt3_part(&self) -> &BigRational {
        &self.q
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.p.clone(), -self.q.clone())
    }

    /// `p^2 - 3 q^2`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - BigRational::from_integer(BigInt::from(3)) * &self.q * &self.q
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = self.norm();
        let c = self.conjugate();
        Some(Self::new(c.p / &norm, c.q / norm))
    }

    fn sign(&self) -> Ordering {
        let sp = self.p.cmp(&BigRational::zero());
        let sq = self.q.cmp(&BigRational::zero());
        match (sp, sq) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            // opposite signs: compare p^2 with 3 q^2
            (sp, _) => {
                let three = BigRational::from_integer(BigInt::from(3));
                match (&self.p * &self.p).cmp(&(three * &self.q * &self.q)) {
                    Ordering::Greater => sp,
                    Ordering::Less => sp.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl PartialOrd for QuadExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

impl Zero for QuadExtRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QuadExtRational {
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
}

impl Add for QuadExtRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl Sub for QuadExtRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl Mul for QuadExtRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let three = BigRational::from_integer(BigInt::from(3));
        Self::new(
            &self.p * &rhs.p + three * &self.q * &rhs.q,
            &self.p * &rhs.q + &self.q * &rhs.p,
        )
    }
}

impl Neg for QuadExtRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.p, -self.q)
    }
}

impl Ring for QuadExtRational {
    fn from_i64(value: i64) -> Self {
        Self::from_ints(value, 0)
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(&self.p) + rational_to_f64(&self.q) * SQRT3
    }

    fn sign_and_magnitude(&self) -> (bool, String) {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => (self.p.is_negative(), fmt_rational(&self.p.abs())),
            (true, false) => {
                let q = self.q.abs();
                let mag = if q.is_one() {
                    "sqrt3".to_string()
                } else {
                    format!("{}*sqrt3", fmt_rational(&q))
                };
                (self.q.is_negative(), mag)
            }
            (false, false) => (false, format!("({self})")),
        }
    }
}

impl fmt::Display for QuadExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", fmt_rational(&self.p));
        }
        let q = self.q.abs();
        let q_str = if q.is_one() {
            "sqrt3".to_string()
        } else {
            format!("{}*sqrt3", fmt_rational(&q))
        };
        if self.p.is_zero() {
            let sign = if self.q.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{q_str}");
        }
        let op = if self.q.is_negative() { "-" } else { "+" };
        write!(f, "{} {op} {q_str}", fmt_rational(&self.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, s: i64) -> QuadExtRational {
        QuadExtRational::from_ints(p, s)
    }

    fn frac(pn: i64, pd: i64, qn: i64, qd: i64) -> QuadExtRational {
        QuadExtRational::new(
            BigRational::new(pn.into(), pd.into()),
            BigRational::new(qn.into(), qd.into()),
        )
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(q(1, 1) * q(-1, 1), q(2, 0));
        assert_eq!(QuadExtRational::sqrt3() * QuadExtRational::sqrt3(), q(3, 0));
    }

    #[test]
    fn inverse_and_display() {
        let x = q(1, 1);
        assert_eq!(x.clone() * x.inverse().unwrap(), QuadExtRational::one());
        assert!(QuadExtRational::zero().inverse().is_none());
        assert_eq!(q(2, -1).to_string(), "2 - sqrt3");
        assert_eq!(q(0, -3).to_string(), "-3*sqrt3");
        assert_eq!(frac(1, 2, 0, 1).to_string(), "1/2");
    }

    #[test]
    fn ordering_is_exact() {
        // 7 - 4 sqrt3 ~ 0.0718 > 0 ; 97 - 56 sqrt3 ~ 0.00893 > 0
        assert!(q(7, -4) > QuadExtRational::zero());
        assert!(q(-7, 4) < QuadExtRational::zero());
        assert!(q(97, -56) < q(7, -4));
        assert_eq!(q(0, 0).cmp(&q(0, 0)), Ordering::Equal);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn add_then_sub_is_identity(a in (-50i64..50, 1i64..9, -50i64..50, 1i64..9),
                                    b in (-50i64..50, 1i64..9, -50i64..50, 1i64..9)) {
            let x = frac(a.0, a.1, a.2, a.3);
            let y = frac(b.0, b.1, b.2, b.3);
            prop_assert_eq!((x.clone() + y.clone()) - y, x);
        }

        #[test]
        fn embedding_respects_order(a in (-50i64..50, 1i64..9, -50i64..50, 1i64..9),
                                    b in (-50i64..50, 1i64..9, -50i64..50, 1i64..9)) {
            let x = frac(a.0, a.1, a.2, a.3);
            let y = frac(b.0, b.1, b.2, b.3);
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
            }
        }
    }
}
