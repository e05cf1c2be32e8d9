use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_rational, NumericError, Rational};

/// Splits `n > 0` as `s^2 * r` with `r` squarefree and returns `(s, r)`.
pub fn squarefree_decompose(mut n: u64) -> (u64, u64) {
    assert!(n > 0, "squarefree_decompose(0)");
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    (square, free * n)
}

/// A finite sum `Σ q_r √r` over squarefree `r`, kept in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    terms: BTreeMap<u64, Rational>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn one() -> Self {
        Surd::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Surd::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = Surd::zero();
        s.add_term(1, q);
        s
    }

    /// `q * √n` for any positive integer `n`.
    pub fn scaled_sqrt(q: Rational, n: u64) -> Self {
        let (sq, free) = squarefree_decompose(n);
        let mut s = Surd::zero();
        s.add_term(free, q * Rational::from_integer(BigInt::from(sq)));
        s
    }

    pub fn sqrt(n: u64) -> Self {
        Surd::scaled_sqrt(Rational::one(), n)
    }

    /// `√q` for a positive rational `q`, written as `√(num·den)/den`.
    pub fn sqrt_rational(q: &Rational) -> Self {
        assert!(q.is_positive(), "sqrt of non-positive rational");
        let num = q.numer().to_u64().expect("numerator fits u64");
        let den = q.denom().to_u64().expect("denominator fits u64");
        Surd::scaled_sqrt(Rational::new(BigInt::one(), BigInt::from(den)), num * den)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&1).is_some_and(|q| q.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(r, q)| (*r, q))
    }

    /// The rational value if no irrational part is present.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    fn add_term(&mut self, r: u64, q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(r).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&r);
        }
    }

    pub fn scale(&self, q: &Rational) -> Surd {
        if q.is_zero() {
            return Surd::zero();
        }
        Surd { terms: self.terms.iter().map(|(r, c)| (*r, c * q)).collect() }
    }

    pub fn pow(&self, e: u32) -> Surd {
        let mut acc = Surd::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign, decided by refining rational enclosures of each square root.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(q) = self.as_rational() {
            return q.cmp(&Rational::zero());
        }
        let mut bits = 32u32;
        loop {
            let scale = BigInt::one() << bits;
            let denom = Rational::from_integer(scale.clone());
            let mut lo = Rational::zero();
            let mut hi = Rational::zero();
            for (r, q) in &self.terms {
                let (a, b) = if *r == 1 {
                    (q.clone(), q.clone())
                } else {
                    let root = (BigInt::from(*r) * &scale * &scale).sqrt();
                    let low = Rational::from_integer(root.clone()) / &denom;
                    let high = Rational::from_integer(root + 1) / &denom;
                    if q.is_negative() {
                        (q * high, q * low)
                    } else {
                        (q * low, q * high)
                    }
                };
                lo += a;
                hi += b;
            }
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, q)| q.to_f64().unwrap_or(f64::NAN) * (*r as f64).sqrt())
            .sum()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *r == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}*sqrt({r})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

impl FromStr for Surd {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(NumericError::Parse(s.to_string()));
        }
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            let c = bytes[i];
            let prev = bytes[i - 1];
            if (c == b'+' || c == b'-') && !matches!(prev, b'+' | b'-' | b'*' | b'/' | b'(') {
                pieces.push(&compact[start..i]);
                start = if c == b'+' { i + 1 } else { i };
            }
        }
        pieces.push(&compact[start..]);
        let mut out = Surd::zero();
        for piece in pieces {
            out += parse_term(piece).ok_or_else(|| NumericError::Parse(s.to_string()))?;
        }
        Ok(out)
    }
}

fn parse_term(t: &str) -> Option<Surd> {
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-Rational::one(), rest),
        None => (Rational::one(), t.strip_prefix('+').unwrap_or(t)),
    };
    let (coef, radical) = match body.find("sqrt(") {
        Some(pos) => {
            let coef = if pos == 0 {
                Rational::one()
            } else {
                parse_rational(body[..pos].strip_suffix('*')?).ok()?
            };
            let inner = body[pos + 5..].strip_suffix(')')?;
            let r: u64 = inner.parse().ok()?;
            (coef, r)
        }
        None => (parse_rational(body).ok()?, 1),
    };
    if radical == 0 {
        return Some(Surd::zero());
    }
    Some(Surd::scaled_sqrt(sign * coef, radical))
}

impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}


impl From<Rational> for Surd {
    fn from(q: Rational) -> Self {
        Surd::from_rational(q)
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(mut self, rhs: Surd) -> Surd {
        self += &rhs;
        self
    }
}

impl AddAssign<&Surd> for Surd {
    fn add_assign(&mut self, rhs: &Surd) {
        for (r, q) in &rhs.terms {
            self.add_term(*r, q.clone());
        }
    }
}

impl AddAssign for Surd {
    fn add_assign(&mut self, rhs: Surd) {
        for (r, q) in rhs.terms {
            self.add_term(r, q);
        }
    }
}

impl SubAssign<&Surd> for Surd {
    fn sub_assign(&mut self, rhs: &Surd) {
        for (r, q) in &rhs.terms {
            self.add_term(*r, -q.clone());
        }
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(mut self, rhs: Surd) -> Surd {
        self -= &rhs;
        self
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { terms: self.terms.into_iter().map(|(r, q)| (r, -q)).collect() }
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -self.clone()
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (r1, q1) in &self.terms {
            for (r2, q2) in &rhs.terms {
                let g = r1.gcd(r2);
                let r = (r1 / g) * (r2 / g);
                out.add_term(r, q1 * q2 * Rational::from_integer(BigInt::from(g)));
            }
        }
        out
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        &self * &rhs
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self - other).signum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational;

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decompose(12), (2, 3));
        assert_eq!(squarefree_decompose(1), (1, 1));
        assert_eq!(squarefree_decompose(72), (6, 2));
        assert_eq!(squarefree_decompose(30), (1, 30));
    }

    #[test]
    fn products_reduce_radicands() {
        assert_eq!(&Surd::sqrt(2) * &Surd::sqrt(2), Surd::from_int(2));
        assert_eq!(&Surd::sqrt(2) * &Surd::sqrt(6), Surd::scaled_sqrt(int2(), 3));
        let a = Surd::one() + Surd::sqrt(2);
        let b = Surd::one() - Surd::sqrt(2);
        assert_eq!(&a * &b, Surd::from_int(-1));
    }

    fn int2() -> Rational {
        rational(2, 1)
    }

    #[test]
    fn text_round_trip() {
        let x = Surd::from_rational(rational(-1, 3)) + Surd::scaled_sqrt(rational(5, 2), 6);
        let text = x.to_string();
        assert_eq!(text, "-1/3 + 5/2*sqrt(6)");
        assert_eq!(text.parse::<Surd>().unwrap(), x);
        assert_eq!("sqrt(12)".parse::<Surd>().unwrap(), Surd::scaled_sqrt(int2(), 3));
        assert_eq!("1 - sqrt(2)".parse::<Surd>().unwrap(), Surd::one() - Surd::sqrt(2));
        assert_eq!("0".parse::<Surd>().unwrap(), Surd::zero());
        assert_eq!(Surd::zero().to_string(), "0");
        assert!("sqrt(2".parse::<Surd>().is_err());
    }

    #[test]
    fn sign_of_near_cancellation() {
        let x = Surd::sqrt(2) - Surd::from_rational(rational(1414213562, 1000000000));
        assert_eq!(x.signum(), Ordering::Greater);
        let y = Surd::sqrt(3) + Surd::sqrt(2) - Surd::sqrt(10);
        assert_eq!(y.signum(), Ordering::Less);
        let z = Surd::sqrt(5) - Surd::sqrt(2) - Surd::sqrt(3) + Surd::from_rational(rational(9, 10));
        assert_eq!(z.signum(), z.to_f64().partial_cmp(&0.0).unwrap());
    }

    #[test]
    fn sqrt_of_rational() {
        let s = Surd::sqrt_rational(&rational(1, 2));
        assert_eq!(&s * &s, Surd::from_rational(rational(1, 2)));
    }
}
