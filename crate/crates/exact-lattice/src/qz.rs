use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An element of `Q/Z`, stored as its reduced representative in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QZ(BigRational);

impl QZ {
    pub fn zero() -> Self {
        QZ(BigRational::zero())
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_bigs(num: BigInt, den: BigInt) -> Self {
        Self::from_rational(BigRational::new(num, den))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let f = r.floor();
        QZ(r - f)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Additive order, i.e. the reduced denominator.
    pub fn order(&self) -> BigInt {
        self.0.denom().clone()
    }

    pub fn scale(&self, k: &BigInt) -> QZ {
        QZ::from_rational(&self.0 * BigRational::from_integer(k.clone()))
    }

    pub fn scale_i64(&self, k: i64) -> QZ {
        self.scale(&BigInt::from(k))
    }

    /// `sum_i a_i * x_i` for an integer vector `a` and a `Q/Z` vector `x`.
    pub fn dot(a: &[BigInt], x: &[QZ]) -> QZ {
        assert_eq!(a.len(), x.len(), "dimension mismatch in Q/Z pairing");
        let mut acc = BigRational::zero();
        for (k, v) in a.iter().zip(x) {
            if !k.is_zero() && !v.is_zero() {
                acc += BigRational::from_integer(k.clone()) * &v.0;
            }
        }
        QZ::from_rational(acc)
    }

    /// Least common multiple of the denominators, i.e. the order of the vector.
    pub fn vec_order(v: &[QZ]) -> BigInt {
        v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a QZ>>(it: I) -> QZ {
        let mut acc = BigRational::zero();
        for x in it {
            acc += &x.0;
        }
        QZ::from_rational(acc)
    }
}

impl Default for QZ {
    fn default() -> Self {
        QZ::zero()
    }
}

impl Add for QZ {
    type Output = QZ;
    fn add(self, rhs: QZ) -> QZ {
        QZ::from_rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a QZ> for &'a QZ {
    type Output = QZ;
    fn add(self, rhs: &QZ) -> QZ {
        QZ::from_rational(&self.0 + &rhs.0)
    }
}

impl AddAssign<&QZ> for QZ {
    fn add_assign(&mut self, rhs: &QZ) {
        *self = &*self + rhs;
    }
}

impl Sub for QZ {
    type Output = QZ;
    fn sub(self, rhs: QZ) -> QZ {
        QZ::from_rational(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a QZ> for &'a QZ {
    type Output = QZ;
    fn sub(self, rhs: &QZ) -> QZ {
        QZ::from_rational(&self.0 - &rhs.0)
    }
}

impl SubAssign<&QZ> for QZ {
    fn sub_assign(&mut self, rhs: &QZ) {
        *self = &*self - rhs;
    }
}

impl Neg for QZ {
    type Output = QZ;
    fn neg(self) -> QZ {
        QZ::from_rational(-self.0)
    }
}

impl Neg for &QZ {
    type Output = QZ;
    fn neg(self) -> QZ {
        QZ::from_rational(-self.0.clone())
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseQZError(pub String);

impl fmt::Display for ParseQZError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse Q/Z value {:?}", self.0)
    }
}

impl std::error::Error for ParseQZError {}

impl FromStr for QZ {
    type Err = ParseQZError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseQZError(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(QZ::from_bigs(n, d))
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| err())?;
                Ok(QZ::from_bigs(n, BigInt::one()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        assert_eq!(QZ::new(5, 4), QZ::new(1, 4));
        assert_eq!(QZ::new(-1, 4), QZ::new(3, 4));
        assert!(QZ::new(3, 1).is_zero());
        assert_eq!(QZ::new(2, 6).to_string(), "1/3");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0/1", "1/2", "5/7", "-1/3"] {
            let q: QZ = s.parse().unwrap();
            let q2: QZ = q.to_string().parse().unwrap();
            assert_eq!(q, q2);
        }
        assert!("1/0".parse::<QZ>().is_err());
        assert!("x".parse::<QZ>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = QZ::new(2, 3);
        let b = QZ::new(1, 2);
        assert_eq!(&a + &b, QZ::new(1, 6));
        assert_eq!(&a - &b, QZ::new(1, 6));
        assert_eq!(-a.clone(), QZ::new(1, 3));
        assert_eq!(a.scale_i64(3), QZ::zero());
    }
}
