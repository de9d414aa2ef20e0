//! Elements of the cyclotomic field `Q(ζ_N)` in the power basis `1, ζ, …, ζ^{φ(N)-1}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::RootOfUnity;
use crate::error::{Error, Result};

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

struct Context {
    /// Coefficients of Φ_N, lowest degree first; monic of degree φ(N).
    phi_poly: Vec<i64>,
    /// `ζ^k` reduced modulo Φ_N for `k = 0..N`.
    powers: Vec<Vec<i64>>,
}

fn context(n: u32) -> Arc<Context> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Context>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ctx) = cache.lock().unwrap().get(&n) {
        return ctx.clone();
    }
    let phi_poly = cyclotomic_polynomial(n);
    let deg = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[deg - 1];
        let mut next = vec![0i64; deg];
        for j in (1..deg).rev() {
            next[j] = cur[j - 1];
        }
        if deg >= 1 {
            for j in 0..deg {
                next[j] -= top * phi_poly[j];
            }
        }
        cur = next;
    }
    let ctx = Arc::new(Context { phi_poly, powers });
    cache.lock().unwrap().insert(n, ctx.clone());
    ctx
}

/// The `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0);
    // x^n - 1
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_div_monic(&poly, &divisor);
        }
    }
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for j in 0..=dd {
            rem[k + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// An element of `Q(ζ_N)` with `N` the conductor it is expressed at.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    pub fn zero(conductor: u32) -> Self {
        let d = euler_phi(conductor) as usize;
        CycloNumber {
            conductor,
            coeffs: vec![BigRational::zero(); d],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(BigRational::one(), conductor)
    }

    pub fn from_rational(r: BigRational, conductor: u32) -> Self {
        let mut x = Self::zero(conductor);
        x.coeffs[0] = r;
        x
    }

    pub fn from_int(v: i64, conductor: u32) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)), conductor)
    }

    /// Embeds a root of unity; its order must divide `conductor`.
    pub fn from_root(root: &RootOfUnity, conductor: u32) -> Result<Self> {
        let k = root.exponent_at(conductor).ok_or(Error::ConductorMismatch {
            from: root.order(),
            to: conductor,
        })?;
        let ctx = context(conductor);
        Ok(CycloNumber {
            conductor,
            coeffs: ctx.powers[k as usize]
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        })
    }

    /// `Σ_k counts[k] ζ_N^k` for a group-ring element of `Z[Z/N]`.
    pub fn from_group_ring(counts: &[i64], conductor: u32) -> Self {
        assert_eq!(counts.len(), conductor as usize);
        let ctx = context(conductor);
        let d = ctx.phi_poly.len() - 1;
        let mut acc = vec![0i128; d];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &p) in ctx.powers[k].iter().enumerate() {
                acc[j] += c as i128 * p as i128;
            }
        }
        CycloNumber {
            conductor,
            coeffs: acc
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// Builds from raw power-basis coefficients, reducing modulo Φ_N if the vector is longer
    /// than `φ(N)`.
    pub fn from_coeffs(coeffs: Vec<BigRational>, conductor: u32) -> Self {
        let ctx = context(conductor);
        CycloNumber {
            conductor,
            coeffs: reduce(coeffs, &ctx.phi_poly),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Number of nonzero power-basis coefficients; a cheap pivoting weight.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses `self` at conductor `target` via `ζ_N = ζ_M^{M/N}`.
    pub fn lift_conductor(&self, target: u32) -> Result<Self> {
        if !target.is_multiple_of(self.conductor) {
            return Err(Error::ConductorMismatch {
                from: self.conductor,
                to: target,
            });
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let ctx = context(target);
        let d = ctx.phi_poly.len() - 1;
        let mut coeffs = vec![BigRational::zero(); d];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (k * step) % target as usize;
            for (j, &p) in ctx.powers[e].iter().enumerate() {
                if p != 0 {
                    coeffs[j] += c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
        Ok(CycloNumber {
            conductor: target,
            coeffs,
        })
    }

    fn aligned(a: &CycloNumber, b: &CycloNumber) -> (CycloNumber, CycloNumber) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let n = a.conductor.lcm(&b.conductor);
        (a.lift_conductor(n).unwrap(), b.lift_conductor(n).unwrap())
    }

    /// Equality of the underlying algebraic numbers, whatever the conductors.
    pub fn value_eq(&self, other: &CycloNumber) -> bool {
        if self.conductor == other.conductor {
            return self == other;
        }
        let (a, b) = Self::aligned(self, other);
        a == b
    }

    pub fn scale(&self, r: &BigRational) -> CycloNumber {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// `self += a * b` at a common conductor.
    pub fn add_mul_assign(&mut self, a: &CycloNumber, b: &CycloNumber) {
        let prod = a * b;
        *self = &*self + &prod;
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycloNumber {
        let n = self.conductor as usize;
        let ctx = context(self.conductor);
        let d = self.coeffs.len();
        let mut coeffs = vec![BigRational::zero(); d];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (n - k % n) % n;
            for (j, &p) in ctx.powers[e].iter().enumerate() {
                if p != 0 {
                    coeffs[j] += c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
        CycloNumber {
            conductor: self.conductor,
            coeffs,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inverse(&self) -> Option<CycloNumber> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(CycloNumber::from_rational(r.recip(), self.conductor));
        }
        let ctx = context(self.conductor);
        let modulus: Vec<BigRational> = ctx
            .phi_poly
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let inv = poly_inverse_mod(&self.coeffs, &modulus)?;
        Some(CycloNumber::from_coeffs(inv, self.conductor))
    }

    /// If `self` equals some root of unity `±ζ_N^k`, returns it.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        if self.weight() > self.coeffs.len() {
            return None;
        }
        let n = self.conductor;
        let ctx = context(n);
        for k in 0..n {
            let p = &ctx.powers[k as usize];
            let pos = p
                .iter()
                .zip(&self.coeffs)
                .all(|(&a, b)| BigRational::from_integer(BigInt::from(a)) == *b);
            if pos {
                return Some(RootOfUnity::new(k as i64, n));
            }
            let neg = p
                .iter()
                .zip(&self.coeffs)
                .all(|(&a, b)| BigRational::from_integer(BigInt::from(-a)) == *b);
            if neg {
                return Some(RootOfUnity::new(2 * k as i64 + n as i64, 2 * n));
            }
        }
        None
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.conductor as f64;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

fn reduce(mut coeffs: Vec<BigRational>, phi_poly: &[i64]) -> Vec<BigRational> {
    let d = phi_poly.len() - 1;
    if coeffs.len() < d {
        coeffs.resize(d, BigRational::zero());
        return coeffs;
    }
    for k in (d..coeffs.len()).rev() {
        let top = std::mem::replace(&mut coeffs[k], BigRational::zero());
        if top.is_zero() {
            continue;
        }
        for (j, &p) in phi_poly[..d].iter().enumerate() {
            if p != 0 {
                coeffs[k - d + j] -= &top * BigRational::from_integer(BigInt::from(p));
            }
        }
    }
    coeffs.truncate(d);
    coeffs
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let lead = b[db].clone();
    let da = match degree(&rem) {
        Some(d) if d >= db => d,
        _ => return (vec![BigRational::zero()], rem),
    };
    let mut quot = vec![BigRational::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            let t = &c * &b[j];
            rem[k + j] -= t;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m`.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while degree(&r1).is_some_and(|d| d > 0) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let c = r1.first()?.clone();
    if c.is_zero() {
        return None;
    }
    Some(s1.into_iter().map(|x| x / &c).collect())
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CycloNumber::aligned(self, rhs);
            return &a + &b;
        }
        CycloNumber {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CycloNumber::aligned(self, rhs);
            return &a - &b;
        }
        CycloNumber {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor != rhs.conductor {
            let (a, b) = CycloNumber::aligned(self, rhs);
            return &a * &b;
        }
        let d = self.coeffs.len();
        if d == 1 {
            return CycloNumber {
                conductor: self.conductor,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let ctx = context(self.conductor);
        let prod = poly_mul(&self.coeffs, &rhs.coeffs);
        CycloNumber {
            conductor: self.conductor,
            coeffs: reduce(prod, &ctx.phi_poly),
        }
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z{}^{k}", self.conductor)?,
                _ => write!(f, "{mag}*z{}^{k}", self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawCyclo {
    #[serde(rename = "N")]
    n: u32,
    coeffs: Vec<[serde_json::Value; 2]>,
}

fn int_to_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

fn json_to_int(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("non-integer coefficient {n}")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer '{s}'")),
        other => Err(format!("unexpected coefficient {other}")),
    }
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawCyclo {
            n: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [int_to_json(c.numer()), int_to_json(c.denom())])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCyclo::deserialize(deserializer)?;
        if raw.n == 0 {
            return Err(de::Error::custom("conductor must be positive"));
        }
        let mut coeffs = Vec::with_capacity(raw.coeffs.len());
        for [p, q] in &raw.coeffs {
            let p = json_to_int(p).map_err(de::Error::custom)?;
            let q = json_to_int(q).map_err(de::Error::custom)?;
            if q.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            coeffs.push(BigRational::new(p, q));
        }
        Ok(CycloNumber::from_coeffs(coeffs, raw.n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(a: i64, n: u32) -> RootOfUnity {
        RootOfUnity::new(a, n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(360), 96);
        assert_eq!(cyclotomic_polynomial(360).len(), 97);
    }

    #[test]
    fn lift_examples() {
        let one = CycloNumber::one(1);
        assert!(one.lift_conductor(12).unwrap().is_one());
        let z3 = CycloNumber::from_root(&root(1, 3), 3).unwrap();
        let lifted = z3.lift_conductor(6).unwrap();
        let z6sq = CycloNumber::from_root(&root(2, 6), 6).unwrap();
        assert_eq!(lifted, z6sq);
        // squaring back: (ζ_6^2)^3 = 1
        let cube = &(&lifted * &lifted) * &lifted;
        assert!(cube.is_one());
        let m1 = CycloNumber::from_root(&root(1, 2), 2).unwrap();
        for m in [2u32, 4, 6, 12, 30] {
            let l = m1.lift_conductor(m).unwrap();
            assert_eq!(l.as_rational(), Some(BigRational::from_integer((-1).into())));
        }
        assert!(z3.lift_conductor(4).is_err());
    }

    #[test]
    fn inverse_and_conj() {
        let n = 12;
        let x = &CycloNumber::from_root(&root(1, 12), n).unwrap()
            + &CycloNumber::from_int(2, n);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        let w = CycloNumber::from_root(&root(1, 3), 3).unwrap();
        let wc = w.conj();
        assert_eq!(wc, CycloNumber::from_root(&root(2, 3), 3).unwrap());
        // 1 + ω + ω² = 0
        let s = &(&CycloNumber::one(3) + &w) + &wc;
        assert!(s.is_zero());
        assert!(CycloNumber::zero(5).inverse().is_none());
    }

    #[test]
    fn root_detection() {
        for n in [1u32, 2, 3, 4, 5, 6, 9, 12] {
            for a in 0..n {
                let r = root(a as i64, n);
                let x = CycloNumber::from_root(&r, n).unwrap();
                assert_eq!(x.as_root_of_unity(), Some(r));
            }
        }
        let m = -&CycloNumber::from_root(&root(1, 3), 3).unwrap();
        assert_eq!(m.as_root_of_unity(), Some(root(5, 6)));
        assert_eq!(CycloNumber::from_int(2, 3).as_root_of_unity(), None);
    }

    #[test]
    fn serde_round_trip() {
        let x = &CycloNumber::from_root(&root(1, 5), 5).unwrap()
            + &CycloNumber::from_rational(BigRational::new(1.into(), 3.into()), 5);
        let s = serde_json::to_string(&x).unwrap();
        let back: CycloNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
