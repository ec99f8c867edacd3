use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of Q/Z as a reduced fraction num/den with 0 <= num < den.
///
/// Doubles as the exponent of a root of unity: `QmodZ::new(k, m)` stands for
/// e^(2πik/m). Character exponents, eigenvalue exponents and V-function
/// arguments all use this one type.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QmodZ {
    num: i64,
    den: i64,
}

impl QmodZ {
    pub const ZERO: QmodZ = QmodZ { num: 0, den: 1 };

    /// Reduce num/den mod 1. `den` may be negative; zero panics.
    pub fn new(num: i64, den: i64) -> QmodZ {
        assert!(den != 0, "zero denominator");
        let r = Ratio::new(num, den);
        let num = r.numer().mod_floor(r.denom());
        QmodZ { num, den: *r.denom() }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.num == 0
    }

    /// The fraction as an exact rational in [0, 1).
    pub fn as_ratio(&self) -> Ratio<i64> {
        Ratio::new_raw(self.num, self.den)
    }

    pub fn add(&self, other: QmodZ) -> QmodZ {
        QmodZ::new(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )
    }

    pub fn sub(&self, other: QmodZ) -> QmodZ {
        QmodZ::new(
            self.num * other.den - other.num * self.den,
            self.den * other.den,
        )
    }

    pub fn neg(&self) -> QmodZ {
        QmodZ::new(-self.num, self.den)
    }

    /// k·x mod 1.
    pub fn mul_int(&self, k: i64) -> QmodZ {
        QmodZ::new(self.num.checked_mul(k).expect("overflow in QmodZ::mul_int"), self.den)
    }

    /// (x + k)/n mod 1, the shape of hypergeometric character exponents.
    pub fn shift_div(&self, k: i64, n: i64) -> QmodZ {
        assert!(n != 0);
        QmodZ::new(self.num + k * self.den, self.den * n)
    }

    /// Multiplicative order as a root of unity (= den).
    pub fn order(&self) -> i64 {
        self.den
    }
}

/// Sorted by (den, num): the canonical display and scan order for
/// character sets and search spaces.
impl Ord for QmodZ {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.den, self.num).cmp(&(other.den, other.num))
    }
}

impl PartialOrd for QmodZ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for QmodZ {
    type Err = String;

    fn from_str(s: &str) -> Result<QmodZ, String> {
        let (n, d) = s.split_once('/').ok_or_else(|| format!("expected num/den, got {s:?}"))?;
        let num: i64 = n.trim().parse().map_err(|e| format!("bad numerator {n:?}: {e}"))?;
        let den: i64 = d.trim().parse().map_err(|e| format!("bad denominator {d:?}: {e}"))?;
        if den == 0 {
            return Err("zero denominator".into());
        }
        Ok(QmodZ::new(num, den))
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<QmodZ, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_range() {
        assert_eq!(QmodZ::new(7, 3), QmodZ::new(1, 3));
        assert_eq!(QmodZ::new(-1, 3), QmodZ::new(2, 3));
        assert_eq!(QmodZ::new(2, -3), QmodZ::new(1, 3));
        assert_eq!(QmodZ::new(4, 6), QmodZ::new(2, 3));
        assert_eq!(QmodZ::new(6, 3), QmodZ::ZERO);
        let x = QmodZ::new(-5, 15);
        assert_eq!((x.num(), x.den()), (2, 3));
    }

    #[test]
    fn arithmetic() {
        let a = QmodZ::new(2, 3);
        let b = QmodZ::new(2, 3);
        assert_eq!(a.add(b), QmodZ::new(1, 3));
        assert_eq!(a.sub(b), QmodZ::ZERO);
        assert_eq!(a.neg(), QmodZ::new(1, 3));
        assert_eq!(QmodZ::ZERO.neg(), QmodZ::ZERO);
        assert_eq!(a.mul_int(3), QmodZ::ZERO);
        assert_eq!(QmodZ::new(1, 7).shift_div(2, 3), QmodZ::new(15, 21));
    }

    #[test]
    fn ordering_is_den_then_num() {
        let mut v = vec![QmodZ::new(1, 3), QmodZ::new(1, 2), QmodZ::new(2, 3), QmodZ::ZERO];
        v.sort();
        assert_eq!(
            v,
            vec![QmodZ::ZERO, QmodZ::new(1, 2), QmodZ::new(1, 3), QmodZ::new(2, 3)]
        );
    }

    #[test]
    fn display_parse_round_trip() {
        for x in [QmodZ::ZERO, QmodZ::new(3, 7), QmodZ::new(13, 21)] {
            let s = x.to_string();
            assert_eq!(s.parse::<QmodZ>().unwrap(), x);
        }
        assert!("1".parse::<QmodZ>().is_err());
        assert!("1/0".parse::<QmodZ>().is_err());
    }
}
