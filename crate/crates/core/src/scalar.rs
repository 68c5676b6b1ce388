//! Coefficient rings: the integers and the prime fields `F_p`.
//!
//! Values are plain `i64`s; a [`Ring`] knows how to normalize them. Over
//! `F_p` every stored value lies in `[0, p)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Prime(u32),
}

impl Ring {
    pub fn prime_field(p: u32) -> Result<Self> {
        if is_prime(p as u64) {
            Ok(Ring::Prime(p))
        } else {
            Err(Error::Malformed(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Ring::Integers => 0,
            Ring::Prime(p) => p,
        }
    }

    #[inline]
    pub fn reduce(self, x: i64) -> i64 {
        match self {
            Ring::Integers => x,
            Ring::Prime(p) => x.rem_euclid(p as i64),
        }
    }

    #[inline]
    pub fn add(self, a: i64, b: i64) -> i64 {
        self.reduce(a + b)
    }

    #[inline]
    pub fn sub(self, a: i64, b: i64) -> i64 {
        self.reduce(a - b)
    }

    #[inline]
    pub fn mul(self, a: i64, b: i64) -> i64 {
        match self {
            Ring::Integers => a.checked_mul(b).expect("integer overflow in exact arithmetic"),
            Ring::Prime(p) => ((a as i128 * b as i128).rem_euclid(p as i128)) as i64,
        }
    }

    #[inline]
    pub fn neg(self, a: i64) -> i64 {
        self.reduce(-a)
    }

    /// `(-1)^k` as an element of the ring.
    #[inline]
    pub fn sign(self, k: usize) -> i64 {
        self.reduce(if k % 2 == 0 { 1 } else { -1 })
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Ring::Integers);
        }
        let digits = s
            .strip_prefix('F')
            .ok_or_else(|| Error::Malformed(format!("unknown ring {s:?}; expected Z or F<p>")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Malformed(format!("unknown ring {s:?}; expected Z or F<p>")))?;
        Ring::prime_field(p)
    }
}

/// A single ring element tagged with its ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub ring: Ring,
    pub value: i64,
}

impl Scalar {
    pub fn new(ring: Ring, value: i64) -> Self {
        Self { ring, value: ring.reduce(value) }
    }

    pub fn reduce(self, p: u32) -> Result<Scalar> {
        let target = Ring::prime_field(p)?;
        match self.ring {
            Ring::Integers => Ok(Scalar::new(target, self.value)),
            Ring::Prime(q) if q == p => Ok(self),
            Ring::Prime(q) => Err(Error::RingMismatch(format!("cannot reduce an F{q} value mod {p}"))),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, n)` with `q = p^n`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut n = 0;
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rings() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("F5".parse::<Ring>().unwrap(), Ring::Prime(5));
        assert!("F4".parse::<Ring>().is_err());
        assert!("Q".parse::<Ring>().is_err());
    }

    #[test]
    fn field_arithmetic_stays_normalized() {
        let r = Ring::Prime(3);
        assert_eq!(r.reduce(-1), 2);
        assert_eq!(r.mul(2, 2), 1);
        assert_eq!(r.sign(1), 2);
        assert_eq!(Ring::Integers.sign(3), -1);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn reduction_is_explicit() {
        let s = Scalar::new(Ring::Integers, -3);
        assert_eq!(s.reduce(2).unwrap(), Scalar::new(Ring::Prime(2), 1));
        assert!(Scalar::new(Ring::Prime(3), 1).reduce(2).is_err());
    }
}
