use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A root of unity `exp(2πi·a/n)`, stored as a reduced fraction `a/n` in `[0, 1)`.
///
/// The group law is addition of fractions modulo 1, so the order of the root is
/// exactly the reduced denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawRoot", into = "RawRoot")]
pub struct RootOfUnity {
    num: u32,
    den: u32,
}

#[derive(Serialize, Deserialize)]
struct RawRoot {
    a: i64,
    n: u32,
}

impl TryFrom<RawRoot> for RootOfUnity {
    type Error = Error;
    fn try_from(raw: RawRoot) -> Result<Self> {
        if raw.n == 0 {
            return Err(Error::Parse("root of unity with zero denominator".into()));
        }
        Ok(RootOfUnity::new(raw.a, raw.n))
    }
}

impl From<RootOfUnity> for RawRoot {
    fn from(r: RootOfUnity) -> Self {
        RawRoot {
            a: r.num as i64,
            n: r.den,
        }
    }
}

impl RootOfUnity {
    /// `exp(2πi·a/n)`; panics if `n == 0`.
    pub fn new(a: i64, n: u32) -> Self {
        assert!(n > 0, "root of unity denominator must be positive");
        let a = a.rem_euclid(n as i64) as u32;
        if a == 0 {
            return RootOfUnity { num: 0, den: 1 };
        }
        let g = a.gcd(&n);
        RootOfUnity {
            num: a / g,
            den: n / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 2 }
    }

    /// The primitive root `exp(2πi/n)`.
    pub fn primitive(n: u32) -> Self {
        RootOfUnity::new(1, n)
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    pub fn order(&self) -> u32 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let n = self.den.lcm(&other.den);
        let a = self.num as u64 * (n / self.den) as u64 + other.num as u64 * (n / other.den) as u64;
        RootOfUnity::new((a % n as u64) as i64, n)
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        let a = (self.num as i64 * k.rem_euclid(self.den as i64)) % self.den as i64;
        RootOfUnity::new(a, self.den)
    }

    pub fn inv(&self) -> RootOfUnity {
        self.pow(-1)
    }

    /// True when the order of `self` is exactly `n` (membership in `G'_n`).
    pub fn is_primitive(&self, n: u32) -> bool {
        self.den == n
    }

    /// True when `self^n = 1`.
    pub fn divides_order(&self, n: u32) -> bool {
        n.is_multiple_of(self.den)
    }

    /// Exponent `k` with `self = exp(2πi·k/conductor)`; requires `order | conductor`.
    pub fn exponent_at(&self, conductor: u32) -> Option<u32> {
        if !conductor.is_multiple_of(self.den) {
            return None;
        }
        Some(self.num * (conductor / self.den))
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let t = 2.0 * std::f64::consts::PI * self.num as f64 / self.den as f64;
        (t.cos(), t.sin())
    }
}

impl Default for RootOfUnity {
    fn default() -> Self {
        RootOfUnity::one()
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `a/n`, `1`, `-1`, `w` (primitive cube root), `w2` (its square) and
/// `i` (primitive fourth root).
impl FromStr for RootOfUnity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "1" => return Ok(RootOfUnity::one()),
            "-1" => return Ok(RootOfUnity::minus_one()),
            "w" | "ω" => return Ok(RootOfUnity::new(1, 3)),
            "w2" | "ω2" | "ω²" => return Ok(RootOfUnity::new(2, 3)),
            "i" => return Ok(RootOfUnity::new(1, 4)),
            _ => {}
        }
        let (a, n) = t
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("cannot read root of unity '{t}'")))?;
        let a: i64 = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in '{t}'")))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in '{t}'")))?;
        if n == 0 {
            return Err(Error::Parse(format!("zero denominator in '{t}'")));
        }
        Ok(RootOfUnity::new(a, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law() {
        let w = RootOfUnity::new(1, 3);
        assert_eq!(w.mul(&w), RootOfUnity::new(2, 3));
        assert_eq!(RootOfUnity::new(1, 12).order(), 12);
        let half = RootOfUnity::new(1, 2);
        let third = RootOfUnity::new(1, 3);
        let p = half.mul(&third);
        assert_eq!(p, RootOfUnity::new(5, 6));
        // numeric cross-check
        let (x1, y1) = half.to_complex();
        let (x2, y2) = third.to_complex();
        let (x, y) = p.to_complex();
        assert!((x1 * x2 - y1 * y2 - x).abs() < 1e-12);
        assert!((x1 * y2 + y1 * x2 - y).abs() < 1e-12);
    }

    #[test]
    fn reduction_and_pow() {
        assert_eq!(RootOfUnity::new(4, 6), RootOfUnity::new(2, 3));
        assert_eq!(RootOfUnity::new(-1, 3), RootOfUnity::new(2, 3));
        assert_eq!(RootOfUnity::new(6, 6), RootOfUnity::one());
        assert_eq!(RootOfUnity::new(1, 9).pow(3), RootOfUnity::new(1, 3));
        assert_eq!(RootOfUnity::new(1, 5).inv(), RootOfUnity::new(4, 5));
        assert!(RootOfUnity::new(1, 1).is_one());
    }

    #[test]
    fn parsing() {
        assert_eq!("w".parse::<RootOfUnity>().unwrap(), RootOfUnity::new(1, 3));
        assert_eq!("-1".parse::<RootOfUnity>().unwrap(), RootOfUnity::new(1, 2));
        assert_eq!("3/12".parse::<RootOfUnity>().unwrap(), RootOfUnity::new(1, 4));
        assert!("1/0".parse::<RootOfUnity>().is_err());
        let json = serde_json::to_string(&RootOfUnity::new(2, 6)).unwrap();
        assert_eq!(json, r#"{"a":1,"n":3}"#);
    }
}
