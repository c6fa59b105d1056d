//! Exact arithmetic in `Q/Z`.
//!
//! An element is stored as the unique reduced representative `num/den` with
//! `0 <= num < den` and `gcd(num, den) = 1`; zero is `0/1`. Under the
//! correspondence `r -> exp(2*pi*i*r)` these index the roots of unity, and
//! `order(r) = den`.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::error::Error;

/// A reduced fraction `num/den` taken mod 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QZ {
    num: u64,
    den: u64,
}

impl QZ {
    /// Zero, represented as `0/1`.
    pub const ZERO: QZ = QZ { num: 0, den: 1 };

    /// The class of `num/den` mod 1. Negative and unreduced inputs are
    /// normalized silently; only `den == 0` is rejected.
    pub fn new(num: i64, den: i64) -> Result<QZ, Error> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let (num, den) = if den < 0 {
            (-(num as i128), -(den as i128))
        } else {
            (num as i128, den as i128)
        };
        let num = num.rem_euclid(den);
        Ok(QZ::reduced_u128(num as u128, den as u128))
    }

    fn reduced_u128(num: u128, den: u128) -> QZ {
        debug_assert!(den > 0 && num < den);
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        assert!(den <= u64::MAX as u128, "denominator overflow in Q/Z");
        QZ {
            num: num as u64,
            den: den as u64,
        }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// The order of this element in `Q/Z`, i.e. its reduced denominator.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `n * r` in `Q/Z`, the underlying map of `sigma_n`.
    pub fn mul_nat(&self, n: u64) -> QZ {
        QZ::reduced_u128(
            (self.num as u128 * n as u128) % self.den as u128,
            self.den as u128,
        )
    }

    /// The `n` solutions `r'` of `n * r' = r`, in increasing numeric order:
    /// `(num + k*den) / (n*den)` for `0 <= k < n`.
    pub fn preimages(&self, n: u64) -> Vec<QZ> {
        assert!(n >= 1, "preimages: n must be positive");
        let den = self.den as u128 * n as u128;
        (0..n)
            .map(|k| QZ::reduced_u128(self.num as u128 + k as u128 * self.den as u128, den))
            .collect()
    }
}

/// The `n`-division points `{k/n : 0 <= k < n}` of `Q/Z`, in increasing
/// numeric order — the support of the idempotent `pi_n`.
pub fn division_points(n: u64) -> Vec<QZ> {
    assert!(n >= 1, "division_points: n must be positive");
    (0..n)
        .map(|k| QZ::reduced_u128(k as u128, n as u128))
        .collect()
}

impl core::ops::Add for QZ {
    type Output = QZ;

    fn add(self, rhs: QZ) -> QZ {
        let den = self.den as u128 * rhs.den as u128;
        let num = (self.num as u128 * rhs.den as u128 + rhs.num as u128 * self.den as u128) % den;
        QZ::reduced_u128(num, den)
    }
}

// The basis order used everywhere for serialization: by order of the root,
// then by numerator. This is not the numeric order on [0, 1).
impl Ord for QZ {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.den, self.num).cmp(&(other.den, other.num))
    }
}

impl PartialOrd for QZ {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for QZ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (num, den) = s
            .split_once('/')
            .ok_or_else(|| Error::ParseFraction(s.to_string()))?;
        let num: i64 = num
            .trim()
            .parse()
            .map_err(|_| Error::ParseFraction(s.to_string()))?;
        let den: i64 = den
            .trim()
            .parse()
            .map_err(|_| Error::ParseFraction(s.to_string()))?;
        QZ::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn qz(n: i64, d: i64) -> QZ {
        QZ::new(n, d).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(qz(5, 3), qz(2, 3));
        assert_eq!(qz(0, 7), QZ::ZERO);
        assert_eq!(qz(-1, 4), qz(3, 4));
        assert_eq!(qz(6, 4), qz(1, 2));
        assert_eq!(qz(1, -2), qz(1, 2));
        assert_eq!(QZ::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn division_point_lists() {
        assert_eq!(division_points(1), vec![QZ::ZERO]);
        assert_eq!(division_points(2), vec![QZ::ZERO, qz(1, 2)]);
        assert_eq!(
            division_points(4),
            vec![QZ::ZERO, qz(1, 4), qz(1, 2), qz(3, 4)]
        );
    }

    #[test]
    fn preimage_lists() {
        assert_eq!(QZ::ZERO.preimages(2), vec![QZ::ZERO, qz(1, 2)]);
        assert_eq!(qz(1, 3).preimages(1), vec![qz(1, 3)]);
        assert_eq!(qz(1, 2).preimages(2), vec![qz(1, 4), qz(3, 4)]);
    }

    #[test]
    fn preimages_multiply_back() {
        for num in 0..12i64 {
            for den in 1..=12i64 {
                let r = qz(num, den);
                for n in 1..=8u64 {
                    let pre = r.preimages(n);
                    assert_eq!(pre.len(), n as usize);
                    for p in pre {
                        assert_eq!(p.mul_nat(n), r);
                    }
                }
            }
        }
    }

    #[test]
    fn preimages_of_zero_are_division_points() {
        for n in 1..=16 {
            let mut pre = QZ::ZERO.preimages(n);
            let mut div = division_points(n);
            pre.sort();
            div.sort();
            assert_eq!(pre, div);
        }
    }

    #[test]
    fn addition_is_mod_one() {
        assert_eq!(qz(1, 2) + qz(1, 2), QZ::ZERO);
        assert_eq!(qz(1, 3) + qz(1, 3), qz(2, 3));
        assert_eq!(qz(1, 6) + qz(1, 3), qz(1, 2));
    }

    #[test]
    fn string_round_trip() {
        for num in 0..10i64 {
            for den in 1..=10i64 {
                let r = qz(num, den);
                let s = format!("{r}");
                assert_eq!(s.parse::<QZ>().unwrap(), r);
            }
        }
        assert!("3".parse::<QZ>().is_err());
        assert!("1/0".parse::<QZ>().is_err());
    }

    #[test]
    fn basis_order_is_by_order_then_numerator() {
        let mut v = vec![qz(3, 4), qz(1, 2), qz(1, 4), QZ::ZERO];
        v.sort();
        assert_eq!(v, vec![QZ::ZERO, qz(1, 2), qz(1, 4), qz(3, 4)]);
    }
}
